#include "iklink/robot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "iklink/errors.hpp"

namespace iklink {

using nlohmann::json;

KinematicChain::KinematicChain(std::string name, std::vector<JointSpec> joints,
                               Pose end_effector_offset)
    : name_(std::move(name)),
      joints_(std::move(joints)),
      end_effector_offset_(std::move(end_effector_offset)) {
  if (joints_.empty()) {
    throw ValidationError("chain must have at least one joint");
  }
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    const JointSpec& j = joints_[i];
    const std::string where = "joints[" + std::to_string(i) + "] (" + j.name + "): ";
    if (!std::isfinite(j.lower) || !std::isfinite(j.upper)) {
      throw ValidationError(where + "position_limits must be finite");
    }
    if (!(j.lower < j.upper)) {
      throw ValidationError(where + "position_limits lower must be less than upper");
    }
    if (!(j.velocity_limit > 0.0) || !std::isfinite(j.velocity_limit)) {
      throw ValidationError(where + "velocity_limit must be positive");
    }
    if (!j.axis.allFinite() || std::abs(j.axis.norm() - 1.0) > 1e-9) {
      throw ValidationError(where + "axis must be unit-length");
    }
    origin_rotations_.push_back(j.origin.rotation());
  }
  end_effector_rotation_ = end_effector_offset_.rotation();
}

Eigen::VectorXd KinematicChain::lower_limits() const {
  Eigen::VectorXd v(dof());
  for (int i = 0; i < dof(); ++i) v[i] = joints_[i].lower;
  return v;
}

Eigen::VectorXd KinematicChain::upper_limits() const {
  Eigen::VectorXd v(dof());
  for (int i = 0; i < dof(); ++i) v[i] = joints_[i].upper;
  return v;
}

Eigen::VectorXd KinematicChain::velocity_limits() const {
  Eigen::VectorXd v(dof());
  for (int i = 0; i < dof(); ++i) v[i] = joints_[i].velocity_limit;
  return v;
}

bool KinematicChain::within_limits(const JointConfig& q) const {
  if (q.size() != dof()) return false;
  for (int i = 0; i < dof(); ++i) {
    if (q[i] < joints_[i].lower || q[i] > joints_[i].upper) return false;
  }
  return true;
}

JointConfig KinematicChain::clamp(const JointConfig& q) const {
  JointConfig out = q;
  for (int i = 0; i < dof(); ++i) {
    out[i] = std::clamp(out[i], joints_[i].lower, joints_[i].upper);
  }
  return out;
}

double KinematicChain::max_reach() const {
  double reach = end_effector_offset_.translation().norm();
  for (const auto& j : joints_) reach += j.origin.translation().norm();
  return reach;
}

namespace {

void require_dof(const KinematicChain& chain, const JointConfig& q) {
  if (q.size() != chain.dof()) {
    throw ValidationError("joint configuration has " + std::to_string(q.size()) +
                          " values, chain has " + std::to_string(chain.dof()) + " joints");
  }
}

Eigen::Matrix3d axis_rotation(const Eigen::Vector3d& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  const double x = axis.x(), y = axis.y(), z = axis.z();
  Eigen::Matrix3d r;
  r << t * x * x + c, t * x * y - s * z, t * x * z + s * y,  //
      t * x * y + s * z, t * y * y + c, t * y * z - s * x,   //
      t * x * z - s * y, t * y * z + s * x, t * z * z + c;
  return r;
}

}  // namespace

KinematicsState compute_kinematics(const KinematicChain& chain, const JointConfig& q,
                                   bool with_jacobian) {
  require_dof(chain, q);
  const int k = chain.dof();
  Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
  Eigen::Vector3d pos = Eigen::Vector3d::Zero();

  Eigen::Matrix3Xd joint_positions(3, k);
  Eigen::Matrix3Xd joint_axes(3, k);
  for (int i = 0; i < k; ++i) {
    const JointSpec& j = chain.joint(i);
    pos += rot * j.origin.translation();
    rot = rot * chain.origin_rotation(i);
    joint_positions.col(i) = pos;
    joint_axes.col(i) = rot * j.axis;
    rot = rot * axis_rotation(j.axis, q[i]);
  }
  KinematicsState state;
  state.position = pos + rot * chain.end_effector_offset().translation();
  state.rotation = rot * chain.end_effector_rotation();
  if (with_jacobian) {
    state.jacobian.resize(6, k);
    for (int i = 0; i < k; ++i) {
      const Eigen::Vector3d z = joint_axes.col(i);
      state.jacobian.block<3, 1>(0, i) = z.cross(state.position - joint_positions.col(i));
      state.jacobian.block<3, 1>(3, i) = z;
    }
  }
  return state;
}

Pose forward_kinematics(const KinematicChain& chain, const JointConfig& q) {
  const KinematicsState s = compute_kinematics(chain, q, false);
  return Pose(s.position, Eigen::Quaterniond(s.rotation));
}

Jacobian jacobian(const KinematicChain& chain, const JointConfig& q) {
  return compute_kinematics(chain, q, true).jacobian;
}

JointConfig sample_uniform_config(const KinematicChain& chain, Rng& rng) {
  JointConfig q(chain.dof());
  for (int i = 0; i < chain.dof(); ++i) {
    const JointSpec& j = chain.joint(i);
    q[i] = rng.uniform(j.lower, j.upper);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Chain description documents

namespace {

const json& require_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

double read_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

std::vector<double> read_array(const json& v, std::size_t n, const std::string& where) {
  if (!v.is_array() || v.size() != n) {
    throw ParseError(where + ": expected an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(read_number(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Pose read_pose(const json& v, const std::string& where) {
  const auto xyz = read_array(require_field(v, "xyz", where), 3, where + ".xyz");
  Eigen::Quaterniond q = Eigen::Quaterniond::Identity();
  if (v.contains("wxyz")) {
    const auto wxyz = read_array(v.at("wxyz"), 4, where + ".wxyz");
    q = Eigen::Quaterniond(wxyz[0], wxyz[1], wxyz[2], wxyz[3]);
    if (std::abs(q.norm() - 1.0) > 1e-6) {
      throw ValidationError(where + ".wxyz: quaternion must be unit-length");
    }
  }
  return Pose(Eigen::Vector3d(xyz[0], xyz[1], xyz[2]), q);
}

json write_pose(const Pose& p) {
  const auto& t = p.translation();
  const auto& q = p.orientation();
  return json{{"xyz", {t.x(), t.y(), t.z()}}, {"wxyz", {q.w(), q.x(), q.y(), q.z()}}};
}

}  // namespace

KinematicChain load_chain(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("chain description: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("chain description: top level must be an object");

  std::string name = "chain";
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("name: expected a string");
    name = doc["name"].get<std::string>();
  }
  Pose ee;
  if (doc.contains("end_effector_offset")) {
    ee = read_pose(doc["end_effector_offset"], "end_effector_offset");
  }
  const json& joints = require_field(doc, "joints", "chain description");
  if (!joints.is_array()) throw ParseError("joints: expected a list");

  std::vector<JointSpec> specs;
  for (std::size_t i = 0; i < joints.size(); ++i) {
    const std::string where = "joints[" + std::to_string(i) + "]";
    const json& jv = joints[i];
    if (!jv.is_object()) throw ParseError(where + ": expected an object");
    JointSpec spec;
    spec.name = jv.contains("name") && jv["name"].is_string() ? jv["name"].get<std::string>()
                                                              : "joint" + std::to_string(i);
    const auto axis = read_array(require_field(jv, "axis", where), 3, where + ".axis");
    spec.axis = Eigen::Vector3d(axis[0], axis[1], axis[2]);
    if (jv.contains("origin")) spec.origin = read_pose(jv["origin"], where + ".origin");
    const json& limits = require_field(jv, "position_limits", where);
    if (limits.is_array()) {
      for (const auto& l : limits) {
        if (l.is_null()) {
          throw ValidationError(where + ".position_limits: unlimited joints are not supported");
        }
      }
    }
    const auto lim = read_array(limits, 2, where + ".position_limits");
    spec.lower = lim[0];
    spec.upper = lim[1];
    spec.velocity_limit =
        read_number(require_field(jv, "velocity_limit", where), where + ".velocity_limit");
    specs.push_back(std::move(spec));
  }
  return KinematicChain(std::move(name), std::move(specs), ee);
}

KinematicChain load_chain_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open chain file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return load_chain(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string serialize_chain(const KinematicChain& chain) {
  json doc;
  doc["name"] = chain.name();
  doc["end_effector_offset"] = write_pose(chain.end_effector_offset());
  json joints = json::array();
  for (const auto& j : chain.joints()) {
    joints.push_back(json{{"name", j.name},
                          {"axis", {j.axis.x(), j.axis.y(), j.axis.z()}},
                          {"origin", write_pose(j.origin)},
                          {"position_limits", {j.lower, j.upper}},
                          {"velocity_limit", j.velocity_limit}});
  }
  doc["joints"] = std::move(joints);
  return doc.dump(2) + "\n";
}

}  // namespace iklink
