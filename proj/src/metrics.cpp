#include "iklink/metrics.hpp"

#include <algorithm>
#include <string>

#include "iklink/errors.hpp"

namespace iklink {

MotionMetrics evaluate(const JointMotion& motion, const ReferenceTrajectory& traj,
                       const KinematicChain& chain, bool include_boundaries) {
  if (motion.size() != traj.size()) {
    throw ValidationError("motion has " + std::to_string(motion.size()) +
                          " samples, trajectory has " + std::to_string(traj.size()));
  }
  MotionMetrics m;
  m.num_reconfigurations = motion.reconfiguration_count();
  for (std::size_t i = 0; i < motion.size(); ++i) {
    if (motion.samples[i].time != traj[i].time) {
      throw ValidationError("timestamp mismatch at sample " + std::to_string(i));
    }
    const PoseError e = pose_error(forward_kinematics(chain, motion.samples[i].q), traj[i].pose);
    m.max_position_error = std::max(m.max_position_error, e.position_error);
    m.max_rotation_error = std::max(m.max_rotation_error, e.rotation_error);
  }
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 1; i < motion.size(); ++i) {
    if (!include_boundaries && motion.is_boundary(i)) continue;
    const double dt = motion.samples[i].time - motion.samples[i - 1].time;
    sum += (motion.samples[i].q - motion.samples[i - 1].q).norm() / dt;
    ++pairs;
  }
  m.mean_joint_velocity = pairs > 0 ? sum / static_cast<double>(pairs) : 0.0;
  return m;
}

std::vector<Violation> validate_motion(const JointMotion& motion, const ReferenceTrajectory& traj,
                                       const KinematicChain& chain, const IKTolerances& tol) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;
  if (motion.size() != traj.size()) {
    out.push_back({Kind::kSampleCount, 0, -1, static_cast<double>(motion.size()),
                   "motion has " + std::to_string(motion.size()) + " samples, trajectory has " +
                       std::to_string(traj.size())});
    return out;
  }

  for (std::size_t b = 0; b < motion.boundaries.size(); ++b) {
    const std::size_t x = motion.boundaries[b];
    if (x == 0 || x >= motion.size() || (b > 0 && motion.boundaries[b - 1] >= x)) {
      out.push_back({Kind::kBoundary, x, -1, 0.0,
                     "boundary " + std::to_string(x) + " is out of range or not ascending"});
    }
  }

  std::vector<bool> usable(motion.size(), true);
  for (std::size_t i = 0; i < motion.size(); ++i) {
    const MotionSample& s = motion.samples[i];
    if (s.time != traj[i].time) {
      out.push_back({Kind::kTimestamp, i, -1, s.time,
                     "sample " + std::to_string(i) + " timestamp differs from waypoint"});
    }
    if (s.q.size() != chain.dof()) {
      out.push_back({Kind::kDimension, i, -1, static_cast<double>(s.q.size()),
                     "sample " + std::to_string(i) + " has wrong joint count"});
      usable[i] = false;
      continue;
    }
    for (int j = 0; j < chain.dof(); ++j) {
      if (s.q[j] < chain.joint(j).lower || s.q[j] > chain.joint(j).upper) {
        out.push_back({Kind::kPositionLimit, i, j, s.q[j],
                       "sample " + std::to_string(i) + " joint " + chain.joint(j).name +
                           " outside position limits"});
      }
    }
    const PoseError e = pose_error(forward_kinematics(chain, s.q), traj[i].pose);
    if (e.position_error > tol.position) {
      out.push_back({Kind::kPositionTolerance, i, -1, e.position_error,
                     "sample " + std::to_string(i) + " position error " +
                         std::to_string(e.position_error) + " m exceeds tolerance"});
    }
    if (e.rotation_error > tol.rotation) {
      out.push_back({Kind::kRotationTolerance, i, -1, e.rotation_error,
                     "sample " + std::to_string(i) + " rotation error " +
                         std::to_string(e.rotation_error) + " rad exceeds tolerance"});
    }
  }

  for (std::size_t i = 1; i < motion.size(); ++i) {
    if (motion.is_boundary(i) || !usable[i] || !usable[i - 1]) continue;
    const double dt = motion.samples[i].time - motion.samples[i - 1].time;
    if (!(dt > 0.0)) {
      out.push_back({Kind::kTimestamp, i, -1, dt, "non-increasing timestamps"});
      continue;
    }
    for (int j = 0; j < chain.dof(); ++j) {
      const double v = std::abs(motion.samples[i].q[j] - motion.samples[i - 1].q[j]) / dt;
      if (v > chain.joint(j).velocity_limit) {
        out.push_back({Kind::kVelocity, i, j, v,
                       "joint " + chain.joint(j).name + " velocity " + std::to_string(v) +
                           " rad/s exceeds limit between samples " + std::to_string(i - 1) +
                           " and " + std::to_string(i)});
      }
    }
  }
  return out;
}

}  // namespace iklink
