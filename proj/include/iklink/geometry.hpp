#pragma once

#include <array>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace iklink {

/// Returns `q` normalized and sign-canonicalized: w >= 0, and when w == 0 the
/// first nonzero vector component is positive.
Eigen::Quaterniond canonicalize(const Eigen::Quaterniond& q);

/// Rigid transform in SE(3). The orientation is always a canonical unit
/// quaternion, so two poses describing the same rotation compare equal.
class Pose {
 public:
  Pose();
  Pose(const Eigen::Vector3d& translation, const Eigen::Quaterniond& orientation);

  static Pose identity() { return Pose(); }
  static Pose from_translation(const Eigen::Vector3d& translation);

  const Eigen::Vector3d& translation() const { return translation_; }
  const Eigen::Quaterniond& orientation() const { return orientation_; }
  Eigen::Matrix3d rotation() const { return orientation_.toRotationMatrix(); }

  Pose inverse() const;
  Pose operator*(const Pose& rhs) const;
  Eigen::Vector3d operator*(const Eigen::Vector3d& point) const;

  bool operator==(const Pose& rhs) const;

 private:
  Eigen::Vector3d translation_;
  Eigen::Quaterniond orientation_;
};

struct PoseError {
  double position_error = 0.0;  // m
  double rotation_error = 0.0;  // rad, in [0, pi]
};

/// Geodesic rotation angle between two unit quaternions, in [0, pi].
/// q and -q are the same rotation and give 0.
double geodesic_angle(const Eigen::Quaterniond& qa, const Eigen::Quaterniond& qb);

PoseError pose_error(const Pose& a, const Pose& b);

/// Quaternion logarithm on the shortest-arc branch. Returns the half-angle
/// vector v with q = exp(v) = (cos|v|, sin|v| v/|v|).
Eigen::Vector3d quat_log(const Eigen::Quaterniond& q);
Eigen::Quaterniond quat_exp(const Eigen::Vector3d& v);

/// Rotation vector (axis * angle, angle in [0, pi]) taking `from` onto `to`
/// expressed in the world frame: exp(result) * from == to.
Eigen::Vector3d rotation_vector_between(const Eigen::Quaterniond& from,
                                        const Eigen::Quaterniond& to);

/// Cumulative cubic Bernstein basis, i in {1, 2, 3}.
double cumulative_bernstein3(int i, double u);

/// Cumulative cubic Bezier quaternion curve
///   q(u) = q0 * prod_{i=1..3} exp(w_i * Bt_i(u)),  w_i = log(q_{i-1}^-1 q_i).
/// Endpoint-interpolating and C1. Throws std::domain_error for u outside [0, 1].
Eigen::Quaterniond quat_cubic_bezier(const Eigen::Quaterniond& q0, const Eigen::Quaterniond& q1,
                                     const Eigen::Quaterniond& q2, const Eigen::Quaterniond& q3,
                                     double u);

Eigen::Vector3d cubic_bezier(const Eigen::Vector3d& p0, const Eigen::Vector3d& p1,
                             const Eigen::Vector3d& p2, const Eigen::Vector3d& p3, double u);

/// Cubic Bezier curve in SE(3): standard Bezier in translation, cumulative
/// quaternion Bezier in orientation.
struct CubicPoseCurve {
  std::array<Pose, 4> control_poses;
  double arc_length = 0.0;      // m, chord estimate
  double total_rotation = 0.0;  // rad, chord estimate
};

/// Builds a curve and its chord-sum length/rotation estimates.
CubicPoseCurve make_cubic_pose_curve(const std::array<Pose, 4>& controls);

/// Throws std::domain_error for u outside [0, 1].
Pose eval_pose_curve(const CubicPoseCurve& curve, double u);

}  // namespace iklink
