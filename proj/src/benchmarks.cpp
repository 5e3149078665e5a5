#include "iklink/benchmarks.hpp"

#include <cmath>

#include "iklink/errors.hpp"

namespace iklink {

namespace {

Eigen::Quaterniond rot_z(double angle) {
  return Eigen::Quaterniond(Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitZ()));
}

Eigen::Quaterniond tool_down() {
  return Eigen::Quaterniond(Eigen::AngleAxisd(M_PI, Eigen::Vector3d::UnitX()));
}

template <typename Sampler, typename CurveOf>
ReferenceTrajectory reachable_task(const KinematicChain& chain, Rng& rng,
                                   const DiscretizeOptions& options,
                                   const ReachabilityOptions& reach, const char* what,
                                   Sampler sample, CurveOf curve_of) {
  for (int retry = 0; retry < reach.max_retries; ++retry) {
    ReferenceTrajectory traj = discretize(curve_of(sample()), options);
    if (trajectory_reachable(chain, traj, reach, rng)) return traj;
  }
  throw InfeasibleError(std::string("no reachable ") + what + " trajectory after " +
                        std::to_string(reach.max_retries) + " samples");
}

}  // namespace

Eigen::Vector3d WorkspaceBox::sample(Rng& rng) const {
  return Eigen::Vector3d(rng.uniform(min.x(), max.x()), rng.uniform(min.y(), max.y()),
                         rng.uniform(min.z(), max.z()));
}

WorkspaceBox default_task_box(const KinematicChain& chain) {
  double shoulder = 0.0;
  for (int i = 0; i < std::min(2, chain.dof()); ++i) {
    shoulder += chain.joint(i).origin.translation().z();
  }
  const double arm = std::max(chain.max_reach() - shoulder, 1e-3);
  WorkspaceBox box;
  box.min = Eigen::Vector3d(0.35 * arm, -0.25 * arm, shoulder - 0.35 * arm);
  box.max = Eigen::Vector3d(0.60 * arm, 0.25 * arm, shoulder + 0.05 * arm);
  return box;
}

WeldParams sample_weld_params(Rng& rng, const WorkspaceBox& box) {
  WeldParams p;
  p.radius = rng.uniform(0.1, 0.2);
  p.center = box.sample(rng);
  return p;
}

ScrewParams sample_screw_params(Rng& rng, const WorkspaceBox& box) {
  ScrewParams p;
  p.length = rng.uniform(0.02, 0.04);
  p.turns = rng.uniform(5.0, 10.0);
  p.start_yaw = rng.uniform(-M_PI, M_PI);
  p.top = box.sample(rng);
  return p;
}

ValveParams sample_valve_params(Rng& rng, const WorkspaceBox& box) {
  ValveParams p;
  p.turns = rng.uniform(3.0, 5.0);
  p.start_angle = rng.uniform(-M_PI, M_PI);
  p.center = box.sample(rng);
  return p;
}

PoseCurve weld_curve(const WeldParams& p) {
  // Tool frame at theta = 0: x along travel (+y), z pointing inwards and down.
  const double c = std::cos(kWeldInclination);
  const double s = std::sin(kWeldInclination);
  Eigen::Matrix3d base;
  base.col(0) = Eigen::Vector3d(0.0, 1.0, 0.0);
  base.col(2) = Eigen::Vector3d(-c, 0.0, -s);
  base.col(1) = base.col(2).cross(base.col(0));
  const Eigen::Quaterniond tool0(base);
  return [p, tool0](double u) {
    const double theta = 2.0 * M_PI * u;
    const Eigen::Vector3d pos =
        p.center + p.radius * Eigen::Vector3d(std::cos(theta), std::sin(theta), 0.0);
    return Pose(pos, rot_z(theta) * tool0);
  };
}

PoseCurve screw_curve(const ScrewParams& p) {
  const Eigen::Quaterniond down = tool_down();
  return [p, down](double u) {
    // Positive rotation about the (downward) approach axis is clockwise when
    // looking along that axis.
    const double angle = p.start_yaw + 2.0 * M_PI * p.turns * u;
    const Eigen::Vector3d pos = p.top - p.length * u * Eigen::Vector3d::UnitZ();
    return Pose(pos, down * rot_z(angle));
  };
}

PoseCurve valve_curve(const ValveParams& p) {
  const Eigen::Quaterniond down = tool_down();
  return [p, down](double u) {
    const double phi = p.start_angle - 2.0 * M_PI * p.turns * u;
    const Eigen::Vector3d pos =
        p.center + kValveRadius * Eigen::Vector3d(std::cos(phi), std::sin(phi), 0.0);
    return Pose(pos, rot_z(phi) * down);
  };
}

ReferenceTrajectory gen_welding(Rng& rng, const WorkspaceBox& box,
                                const DiscretizeOptions& options) {
  return discretize(weld_curve(sample_weld_params(rng, box)), options);
}

ReferenceTrajectory gen_screw(Rng& rng, const WorkspaceBox& box, const DiscretizeOptions& options) {
  return discretize(screw_curve(sample_screw_params(rng, box)), options);
}

ReferenceTrajectory gen_valve(Rng& rng, const WorkspaceBox& box, const DiscretizeOptions& options) {
  return discretize(valve_curve(sample_valve_params(rng, box)), options);
}

BezierPair sample_bezier_pair(const KinematicChain& chain, Rng& rng) {
  std::array<Pose, 7> controls;
  for (auto& c : controls) c = forward_kinematics(chain, sample_uniform_config(chain, rng));
  return BezierPair{make_cubic_pose_curve({controls[0], controls[1], controls[2], controls[3]}),
                    make_cubic_pose_curve({controls[3], controls[4], controls[5], controls[6]})};
}

PoseCurve bezier_pair_curve(const BezierPair& pair) {
  return [pair](double u) {
    if (u <= 0.5) return eval_pose_curve(pair.first, std::min(1.0, 2.0 * u));
    return eval_pose_curve(pair.second, std::clamp(2.0 * u - 1.0, 0.0, 1.0));
  };
}

bool trajectory_reachable(const KinematicChain& chain, const ReferenceTrajectory& traj,
                          const ReachabilityOptions& options, Rng& rng) {
  std::optional<JointConfig> witness;
  for (const auto& w : traj.waypoints()) {
    std::optional<IKResult> r;
    if (witness) r = solve_greedy(chain, w.pose, *witness, options.tolerances);
    if (!r) r = sample_ik(chain, w.pose, options.tolerances, options.attempts, rng);
    if (!r) return false;
    witness = r->config;
  }
  return true;
}

ReferenceTrajectory gen_random_bezier(const KinematicChain& chain, Rng& rng,
                                      const DiscretizeOptions& options,
                                      const ReachabilityOptions& reach) {
  return reachable_task(
      chain, rng, options, reach, "random Bezier", [&] { return sample_bezier_pair(chain, rng); },
      [](const BezierPair& pair) { return bezier_pair_curve(pair); });
}

BenchmarkKind parse_benchmark(std::string_view name) {
  if (name == "random") return BenchmarkKind::kRandom;
  if (name == "weld") return BenchmarkKind::kWeld;
  if (name == "screw") return BenchmarkKind::kScrew;
  if (name == "valve") return BenchmarkKind::kValve;
  throw ValidationError("unknown benchmark '" + std::string(name) +
                        "' (expected random, weld, screw or valve)");
}

std::string to_string(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::kRandom:
      return "random";
    case BenchmarkKind::kWeld:
      return "weld";
    case BenchmarkKind::kScrew:
      return "screw";
    case BenchmarkKind::kValve:
      return "valve";
  }
  return "unknown";
}

ReferenceTrajectory generate_benchmark(BenchmarkKind kind, const KinematicChain& chain,
                                       const WorkspaceBox& box, Rng& rng,
                                       const DiscretizeOptions& options,
                                       const ReachabilityOptions& reach) {
  switch (kind) {
    case BenchmarkKind::kRandom:
      return gen_random_bezier(chain, rng, options, reach);
    case BenchmarkKind::kWeld:
      return reachable_task(
          chain, rng, options, reach, "weld", [&] { return sample_weld_params(rng, box); },
          [](const WeldParams& p) { return weld_curve(p); });
    case BenchmarkKind::kScrew:
      return reachable_task(
          chain, rng, options, reach, "screw", [&] { return sample_screw_params(rng, box); },
          [](const ScrewParams& p) { return screw_curve(p); });
    case BenchmarkKind::kValve:
      return reachable_task(
          chain, rng, options, reach, "valve", [&] { return sample_valve_params(rng, box); },
          [](const ValveParams& p) { return valve_curve(p); });
  }
  throw ValidationError("unknown benchmark kind");
}

}  // namespace iklink
