#include "iklink/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iklink {

namespace {

// Renormalize only when drift is visible; keeps already-unit inputs bit-exact.
constexpr double kNormSlack = 1e-12;

void require_unit_interval(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::domain_error("curve parameter must lie in [0, 1]");
  }
}

}  // namespace

Eigen::Quaterniond canonicalize(const Eigen::Quaterniond& q) {
  Eigen::Quaterniond out = q;
  const double n2 = out.squaredNorm();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw std::invalid_argument("quaternion must be finite and nonzero");
  }
  if (std::abs(n2 - 1.0) > kNormSlack) {
    out.coeffs() /= std::sqrt(n2);
  }
  bool flip = false;
  if (out.w() < 0.0) {
    flip = true;
  } else if (out.w() == 0.0) {
    for (double c : {out.x(), out.y(), out.z()}) {
      if (c != 0.0) {
        flip = c < 0.0;
        break;
      }
    }
  }
  if (flip) out.coeffs() = -out.coeffs();
  // Avoid -0.0 so that equal rotations compare equal and print identically.
  for (int i = 0; i < 4; ++i) {
    if (out.coeffs()[i] == 0.0) out.coeffs()[i] = 0.0;
  }
  return out;
}

Pose::Pose() : translation_(Eigen::Vector3d::Zero()), orientation_(Eigen::Quaterniond::Identity()) {}

Pose::Pose(const Eigen::Vector3d& translation, const Eigen::Quaterniond& orientation)
    : translation_(translation), orientation_(canonicalize(orientation)) {}

Pose Pose::from_translation(const Eigen::Vector3d& translation) {
  return Pose(translation, Eigen::Quaterniond::Identity());
}

Pose Pose::inverse() const {
  const Eigen::Quaterniond inv = orientation_.conjugate();
  return Pose(-(inv * translation_), inv);
}

Pose Pose::operator*(const Pose& rhs) const {
  return Pose(translation_ + orientation_ * rhs.translation_, orientation_ * rhs.orientation_);
}

Eigen::Vector3d Pose::operator*(const Eigen::Vector3d& point) const {
  return translation_ + orientation_ * point;
}

bool Pose::operator==(const Pose& rhs) const {
  return translation_ == rhs.translation_ && orientation_.coeffs() == rhs.orientation_.coeffs();
}

double geodesic_angle(const Eigen::Quaterniond& qa, const Eigen::Quaterniond& qb) {
  // 2*acos(|<qa,qb>|), evaluated through atan2 to stay accurate near zero.
  const Eigen::Quaterniond rel = qa.conjugate() * qb;
  const double s = rel.vec().norm();
  const double c = std::abs(rel.w());
  return std::clamp(2.0 * std::atan2(s, c), 0.0, M_PI);
}

PoseError pose_error(const Pose& a, const Pose& b) {
  return {(a.translation() - b.translation()).norm(),
          geodesic_angle(a.orientation(), b.orientation())};
}

Eigen::Vector3d quat_log(const Eigen::Quaterniond& q) {
  Eigen::Quaterniond p = q;
  if (p.w() < 0.0) p.coeffs() = -p.coeffs();
  const double s = p.vec().norm();
  if (s < 1e-12) {
    // sin(a)/a -> 1
    return p.vec();
  }
  const double half_angle = std::atan2(s, p.w());
  return p.vec() * (half_angle / s);
}

Eigen::Quaterniond quat_exp(const Eigen::Vector3d& v) {
  const double a = v.norm();
  if (a < 1e-12) {
    Eigen::Quaterniond q(1.0, v.x(), v.y(), v.z());
    q.normalize();
    return q;
  }
  const double k = std::sin(a) / a;
  return Eigen::Quaterniond(std::cos(a), k * v.x(), k * v.y(), k * v.z());
}

Eigen::Vector3d rotation_vector_between(const Eigen::Quaterniond& from,
                                        const Eigen::Quaterniond& to) {
  return 2.0 * quat_log(to * from.conjugate());
}

double cumulative_bernstein3(int i, double u) {
  const double v = 1.0 - u;
  switch (i) {
    case 1:
      return 1.0 - v * v * v;
    case 2:
      return u * u * (3.0 - 2.0 * u);
    case 3:
      return u * u * u;
    default:
      throw std::out_of_range("cumulative basis index must be 1, 2 or 3");
  }
}

Eigen::Quaterniond quat_cubic_bezier(const Eigen::Quaterniond& q0, const Eigen::Quaterniond& q1,
                                     const Eigen::Quaterniond& q2, const Eigen::Quaterniond& q3,
                                     double u) {
  require_unit_interval(u);
  const std::array<Eigen::Quaterniond, 4> ctrl = {q0.normalized(), q1.normalized(),
                                                  q2.normalized(), q3.normalized()};
  // Exact endpoints rather than the accumulated product.
  if (u == 0.0) return ctrl[0];
  if (u == 1.0) return ctrl[3];
  Eigen::Quaterniond result = ctrl[0];
  for (int i = 1; i <= 3; ++i) {
    const Eigen::Vector3d omega = quat_log(ctrl[i - 1].conjugate() * ctrl[i]);
    result = result * quat_exp(omega * cumulative_bernstein3(i, u));
  }
  return result.normalized();
}

Eigen::Vector3d cubic_bezier(const Eigen::Vector3d& p0, const Eigen::Vector3d& p1,
                             const Eigen::Vector3d& p2, const Eigen::Vector3d& p3, double u) {
  const double v = 1.0 - u;
  return v * v * v * p0 + 3.0 * v * v * u * p1 + 3.0 * v * u * u * p2 + u * u * u * p3;
}

CubicPoseCurve make_cubic_pose_curve(const std::array<Pose, 4>& controls) {
  constexpr int kSamples = 1000;
  CubicPoseCurve curve{controls, 0.0, 0.0};
  Pose prev = eval_pose_curve(curve, 0.0);
  for (int i = 1; i <= kSamples; ++i) {
    const Pose cur = eval_pose_curve(curve, static_cast<double>(i) / kSamples);
    const PoseError step = pose_error(prev, cur);
    curve.arc_length += step.position_error;
    curve.total_rotation += step.rotation_error;
    prev = cur;
  }
  return curve;
}

Pose eval_pose_curve(const CubicPoseCurve& curve, double u) {
  require_unit_interval(u);
  const auto& c = curve.control_poses;
  if (u == 0.0) return c[0];
  if (u == 1.0) return c[3];
  return Pose(cubic_bezier(c[0].translation(), c[1].translation(), c[2].translation(),
                           c[3].translation(), u),
              quat_cubic_bezier(c[0].orientation(), c[1].orientation(), c[2].orientation(),
                                c[3].orientation(), u));
}

}  // namespace iklink
