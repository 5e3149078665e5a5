#pragma once

#include <optional>
#include <vector>

#include "iklink/geometry.hpp"
#include "iklink/random.hpp"
#include "iklink/robot.hpp"

namespace iklink {

/// Acceptance thresholds for an IK solution.
struct IKTolerances {
  double position = 1e-3;  // m
  double rotation = 1e-2;  // rad

  bool accepts(const PoseError& e) const {
    return e.position_error <= position && e.rotation_error <= rotation;
  }
};

/// Weights of the greedy objective
///   w_p |p - p*|^2 + w_r angle(R, R*)^2 + w_d |q - q_seed|^2.
struct IKWeights {
  double position = 100.0;     // per m^2
  double rotation = 10.0;      // per rad^2
  double displacement = 1.0;   // per rad^2
};

struct IKSettings {
  IKTolerances tolerances;
  IKWeights weights;
  int max_iters = 100;
};

struct IKResult {
  JointConfig config;
  PoseError achieved;
  int iterations = 0;
};

/// Local solve from `seed`: damped Gauss-Newton (Levenberg-Marquardt) on the
/// weighted objective with joint-limit clamping. The displacement term keeps the
/// answer close to the seed; when the iteration stalls short of the tolerances
/// the anchor is moved to the current iterate so the pose error can still be
/// driven below tolerance. Returns nullopt when `max_iters` runs out.
std::optional<IKResult> solve_greedy(const KinematicChain& chain, const Pose& target,
                                     const JointConfig& seed, const IKTolerances& tol,
                                     int max_iters = 100, const IKWeights& weights = {});

/// Random-restart solve: up to `attempts` uniform seeds, first success wins.
std::optional<IKResult> sample_ik(const KinematicChain& chain, const Pose& target,
                                  const IKTolerances& tol, int attempts, Rng& rng,
                                  int max_iters = 100, const IKWeights& weights = {});

bool check_reachable(const KinematicChain& chain, const Pose& pose, int attempts, Rng& rng,
                     const IKTolerances& tol = {});

/// The two IK primitives every planner is built from: greedy propagation from
/// a neighbouring solution and random sampling at a waypoint. Planners take
/// this interface so they all share the same solver, and tests can script it.
class WaypointSolver {
 public:
  virtual ~WaypointSolver() = default;

  virtual std::size_t waypoint_count() const = 0;
  virtual std::optional<JointConfig> propagate(std::size_t waypoint,
                                               const JointConfig& from) const = 0;
  virtual std::optional<JointConfig> sample(std::size_t waypoint, Rng& rng,
                                            int attempts) const = 0;
};

/// WaypointSolver backed by solve_greedy / sample_ik on a real chain.
class ChainWaypointSolver : public WaypointSolver {
 public:
  ChainWaypointSolver(const KinematicChain& chain, std::vector<Pose> targets,
                      IKSettings settings = {});

  std::size_t waypoint_count() const override { return targets_.size(); }
  std::optional<JointConfig> propagate(std::size_t waypoint,
                                       const JointConfig& from) const override;
  std::optional<JointConfig> sample(std::size_t waypoint, Rng& rng, int attempts) const override;

 private:
  const KinematicChain& chain_;
  std::vector<Pose> targets_;
  IKSettings settings_;
};

}  // namespace iklink
