#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "iklink/geometry.hpp"
#include "iklink/random.hpp"

namespace iklink {

/// Joint values in radians, one per chain joint.
using JointConfig = Eigen::VectorXd;

using Jacobian = Eigen::Matrix<double, 6, Eigen::Dynamic>;

/// Revolute joint. `origin` places the joint frame relative to the previous
/// joint's rotated frame; `axis` is expressed in the joint frame.
struct JointSpec {
  std::string name;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  Pose origin;
  double lower = 0.0;           // rad
  double upper = 0.0;           // rad
  double velocity_limit = 0.0;  // rad/s
};

class KinematicChain {
 public:
  /// Validates every joint; throws ValidationError naming the offending field.
  KinematicChain(std::string name, std::vector<JointSpec> joints, Pose end_effector_offset);

  const std::string& name() const { return name_; }
  const std::vector<JointSpec>& joints() const { return joints_; }
  const JointSpec& joint(std::size_t i) const { return joints_[i]; }
  const Pose& end_effector_offset() const { return end_effector_offset_; }
  int dof() const { return static_cast<int>(joints_.size()); }

  Eigen::VectorXd lower_limits() const;
  Eigen::VectorXd upper_limits() const;
  Eigen::VectorXd velocity_limits() const;

  bool within_limits(const JointConfig& q) const;
  JointConfig clamp(const JointConfig& q) const;

  const Eigen::Matrix3d& origin_rotation(std::size_t i) const { return origin_rotations_[i]; }
  const Eigen::Matrix3d& end_effector_rotation() const { return end_effector_rotation_; }

  /// Sum of link offset lengths; an upper bound on the distance from the base.
  double max_reach() const;

 private:
  std::string name_;
  std::vector<JointSpec> joints_;
  Pose end_effector_offset_;

  // Cached rotation matrices of the fixed transforms.
  std::vector<Eigen::Matrix3d> origin_rotations_;
  Eigen::Matrix3d end_effector_rotation_;
};

/// End-effector position, orientation and (optionally) geometric Jacobian.
struct KinematicsState {
  Eigen::Vector3d position;
  Eigen::Matrix3d rotation;
  Jacobian jacobian;
};

KinematicsState compute_kinematics(const KinematicChain& chain, const JointConfig& q,
                                   bool with_jacobian);

Pose forward_kinematics(const KinematicChain& chain, const JointConfig& q);

/// Geometric Jacobian at the end effector: column i is [z_i x (p_e - p_i); z_i].
Jacobian jacobian(const KinematicChain& chain, const JointConfig& q);

JointConfig sample_uniform_config(const KinematicChain& chain, Rng& rng);

/// Chain description documents (JSON key/value tree).
KinematicChain load_chain(std::string_view document);
KinematicChain load_chain_file(const std::filesystem::path& path);
std::string serialize_chain(const KinematicChain& chain);

}  // namespace iklink
