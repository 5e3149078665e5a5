#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

#include "iklink/geometry.hpp"

namespace iklink {

struct Waypoint {
  double time = 0.0;  // s
  Pose pose;
};

/// Timestamped end-effector waypoints. Timestamps strictly increase.
class ReferenceTrajectory {
 public:
  explicit ReferenceTrajectory(std::vector<Waypoint> waypoints);

  std::size_t size() const { return waypoints_.size(); }
  const std::vector<Waypoint>& waypoints() const { return waypoints_; }
  const Waypoint& operator[](std::size_t i) const { return waypoints_[i]; }

  std::vector<Pose> poses() const;
  std::vector<double> timestamps() const;

  /// Sum of consecutive translation distances (m).
  double path_length() const;
  /// Sum of consecutive geodesic angles (rad).
  double total_rotation() const;

 private:
  std::vector<Waypoint> waypoints_;
};

struct DiscretizeOptions {
  double density_per_meter = 300.0;
  double density_per_radian = 24.0;
  double dt = 0.1;  // s between waypoints
};

/// A continuous pose curve parameterized over u in [0, 1].
using PoseCurve = std::function<Pose(double)>;

/// Waypoint count for a curve of the given length and rotation:
/// max(2, ceil(max(length * per_meter, rotation * per_radian))), or 1 when the
/// curve neither moves nor turns.
std::size_t waypoint_count(double length, double rotation, const DiscretizeOptions& options);

/// Samples `curve` at waypoints equally spaced in the combined measure
/// (translation + rotation * per_radian / per_meter), timestamps i * dt.
ReferenceTrajectory discretize(const PoseCurve& curve, const DiscretizeOptions& options);

/// CSV with header `t,x,y,z,qw,qx,qy,qz`, 17 significant digits.
void write_trajectory_csv(const ReferenceTrajectory& traj, std::ostream& out);
void write_trajectory_csv(const ReferenceTrajectory& traj, const std::filesystem::path& path);
ReferenceTrajectory read_trajectory_csv(std::istream& in);
ReferenceTrajectory read_trajectory_csv(const std::filesystem::path& path);

}  // namespace iklink
