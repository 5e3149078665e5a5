#pragma once

#include <string>
#include <vector>

#include "iklink/ik.hpp"
#include "iklink/motion.hpp"
#include "iklink/robot.hpp"
#include "iklink/trajectory.hpp"

namespace iklink {

struct MotionMetrics {
  std::size_t num_reconfigurations = 0;
  double mean_joint_velocity = 0.0;  // rad/s
  double max_position_error = 0.0;   // m
  double max_rotation_error = 0.0;   // rad
  double computation_time = 0.0;     // s, planner wall clock
};

/// Reconfiguration count, tracking errors and mean joint velocity. The mean is
/// over consecutive pairs ||dq|| / dt; pairs straddling a reconfiguration are
/// skipped unless `include_boundaries`. computation_time is left at zero.
/// Throws ValidationError when motion and trajectory do not line up.
MotionMetrics evaluate(const JointMotion& motion, const ReferenceTrajectory& traj,
                       const KinematicChain& chain, bool include_boundaries = false);

struct Violation {
  enum class Kind {
    kSampleCount,
    kTimestamp,
    kDimension,
    kBoundary,
    kPositionLimit,
    kPositionTolerance,
    kRotationTolerance,
    kVelocity,
  };
  Kind kind;
  std::size_t index = 0;  // sample index (for velocity: the later sample of the pair)
  int joint = -1;
  double value = 0.0;
  std::string message;
};

/// Independent checker for planner output: sample/timestamp agreement,
/// boundary bookkeeping, position limits, FK tracking within `tol`, and
/// velocity limits inside every boundary-free segment. Empty means valid.
std::vector<Violation> validate_motion(const JointMotion& motion, const ReferenceTrajectory& traj,
                                       const KinematicChain& chain, const IKTolerances& tol);

}  // namespace iklink
