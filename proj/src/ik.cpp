#include "iklink/ik.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

namespace iklink {

namespace {

constexpr double kInitialDamping = 1e-3;
constexpr double kMaxDamping = 1e8;
constexpr double kMaxStep = 1.0;  // rad, per joint per iteration

struct Evaluation {
  KinematicsState kin;
  Eigen::Vector3d position_residual;
  Eigen::Vector3d rotation_residual;
  PoseError error;
};

Evaluation evaluate(const KinematicChain& chain, const JointConfig& q, const Pose& target) {
  Evaluation ev;
  ev.kin = compute_kinematics(chain, q, true);
  // Same construction as forward_kinematics so the tolerance test here and any
  // external validator agree bit for bit.
  const Pose current(ev.kin.position, Eigen::Quaterniond(ev.kin.rotation));
  ev.error = pose_error(current, target);
  ev.position_residual = target.translation() - current.translation();
  ev.rotation_residual = rotation_vector_between(current.orientation(), target.orientation());
  return ev;
}

double objective(const Evaluation& ev, const JointConfig& q, const JointConfig& anchor,
                 const IKWeights& w) {
  return w.position * ev.position_residual.squaredNorm() +
         w.rotation * ev.rotation_residual.squaredNorm() +
         w.displacement * (q - anchor).squaredNorm();
}

}  // namespace

std::optional<IKResult> solve_greedy(const KinematicChain& chain, const Pose& target,
                                     const JointConfig& seed, const IKTolerances& tol,
                                     int max_iters, const IKWeights& weights) {
  const int k = chain.dof();
  JointConfig q = chain.clamp(seed);
  JointConfig anchor = q;
  Evaluation ev = evaluate(chain, q, target);
  if (tol.accepts(ev.error)) return IKResult{q, ev.error, 0};

  double cost = objective(ev, q, anchor, weights);
  double damping = kInitialDamping;
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(k, k);

  for (int iter = 1; iter <= max_iters; ++iter) {
    const auto jv = ev.kin.jacobian.topRows<3>();
    const auto jw = ev.kin.jacobian.bottomRows<3>();
    const Eigen::MatrixXd hessian = weights.position * jv.transpose() * jv +
                                    weights.rotation * jw.transpose() * jw +
                                    weights.displacement * identity;
    const Eigen::VectorXd gradient = weights.position * jv.transpose() * ev.position_residual +
                                     weights.rotation * jw.transpose() * ev.rotation_residual -
                                     weights.displacement * (q - anchor);

    Eigen::VectorXd step = (hessian + damping * identity).ldlt().solve(gradient);
    const double largest = step.cwiseAbs().maxCoeff();
    if (largest > kMaxStep) step *= kMaxStep / largest;

    const JointConfig candidate = chain.clamp(q + step);
    Evaluation next = evaluate(chain, candidate, target);
    const double next_cost = objective(next, candidate, anchor, weights);

    if (next_cost < cost) {
      const double improvement = (cost - next_cost) / std::max(cost, 1e-300);
      q = candidate;
      ev = std::move(next);
      cost = next_cost;
      damping = std::max(damping / 3.0, 1e-9);
      if (tol.accepts(ev.error)) return IKResult{q, ev.error, iter};
      if (improvement < 1e-2) {
        // Converged on the regularized objective without meeting tolerance.
        anchor = q;
        cost = objective(ev, q, anchor, weights);
      }
    } else {
      damping *= 10.0;
      if (damping > kMaxDamping) {
        anchor = q;
        cost = objective(ev, q, anchor, weights);
        damping = kInitialDamping;
      }
    }
  }
  return std::nullopt;
}

std::optional<IKResult> sample_ik(const KinematicChain& chain, const Pose& target,
                                  const IKTolerances& tol, int attempts, Rng& rng, int max_iters,
                                  const IKWeights& weights) {
  for (int a = 0; a < attempts; ++a) {
    const JointConfig seed = sample_uniform_config(chain, rng);
    if (auto r = solve_greedy(chain, target, seed, tol, max_iters, weights)) return r;
  }
  return std::nullopt;
}

bool check_reachable(const KinematicChain& chain, const Pose& pose, int attempts, Rng& rng,
                     const IKTolerances& tol) {
  return sample_ik(chain, pose, tol, attempts, rng).has_value();
}

ChainWaypointSolver::ChainWaypointSolver(const KinematicChain& chain, std::vector<Pose> targets,
                                         IKSettings settings)
    : chain_(chain), targets_(std::move(targets)), settings_(settings) {}

std::optional<JointConfig> ChainWaypointSolver::propagate(std::size_t waypoint,
                                                          const JointConfig& from) const {
  auto r = solve_greedy(chain_, targets_.at(waypoint), from, settings_.tolerances,
                        settings_.max_iters, settings_.weights);
  if (!r) return std::nullopt;
  return std::move(r->config);
}

std::optional<JointConfig> ChainWaypointSolver::sample(std::size_t waypoint, Rng& rng,
                                                       int attempts) const {
  auto r = sample_ik(chain_, targets_.at(waypoint), settings_.tolerances, attempts, rng,
                     settings_.max_iters, settings_.weights);
  if (!r) return std::nullopt;
  return std::move(r->config);
}

}  // namespace iklink
