#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "iklink/geometry.hpp"
#include "oracles.hpp"

namespace iklink {
namespace {

Eigen::Quaterniond rz(double angle) {
  return Eigen::Quaterniond(Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitZ()));
}

TEST(PoseError, IdenticalPosesHaveNoError) {
  const Pose p(Eigen::Vector3d(0.1, -0.2, 0.3), rz(0.7));
  const PoseError e = pose_error(p, p);
  EXPECT_EQ(e.position_error, 0.0);
  EXPECT_EQ(e.rotation_error, 0.0);
}

TEST(PoseError, ThreeFourFiveTriangle) {
  const PoseError e = pose_error(Pose::from_translation({0, 0, 0}), Pose::from_translation({0, 3, 4}));
  EXPECT_DOUBLE_EQ(e.position_error, 5.0);
  EXPECT_EQ(e.rotation_error, 0.0);
}

TEST(PoseError, QuarterTurnMatchesRotationMatrixLog) {
  const Pose a;
  const Pose b(Eigen::Vector3d::Zero(), rz(M_PI / 2));
  const double expected =
      oracle::rotation_angle(a.rotation().transpose() * b.rotation());
  EXPECT_NEAR(pose_error(a, b).rotation_error, expected, 1e-12);
  EXPECT_NEAR(pose_error(a, b).rotation_error, M_PI / 2, 1e-12);
}

TEST(PoseError, SymmetricAndIdentityOfIndiscernibles) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const Pose a(oracle::random_vector(rng, -1, 1), oracle::random_quaternion(rng));
    const Pose b(oracle::random_vector(rng, -1, 1), oracle::random_quaternion(rng));
    const PoseError ab = pose_error(a, b);
    const PoseError ba = pose_error(b, a);
    EXPECT_NEAR(ab.position_error, ba.position_error, 1e-12);
    EXPECT_NEAR(ab.rotation_error, ba.rotation_error, 1e-12);
    EXPECT_LE(pose_error(a, a).position_error, 1e-12);
    EXPECT_LE(pose_error(a, a).rotation_error, 1e-12);
    EXPECT_GE(ab.rotation_error, 0.0);
    EXPECT_LE(ab.rotation_error, M_PI);
  }
}

TEST(GeodesicAngle, DoubleCoverIsTheSameRotation) {
  Rng rng(3);
  const Eigen::Quaterniond q = oracle::random_quaternion(rng);
  Eigen::Quaterniond neg = q;
  neg.coeffs() = -q.coeffs();
  EXPECT_EQ(geodesic_angle(q, q), 0.0);
  EXPECT_NEAR(geodesic_angle(q, neg), 0.0, 1e-15);
}

TEST(GeodesicAngle, ThirdTurnAboutDiagonal) {
  const Eigen::Vector3d axis = Eigen::Vector3d(1, 1, 1).normalized();
  const Eigen::Quaterniond q(Eigen::AngleAxisd(2 * M_PI / 3, axis));
  // Axis-angle construction: the 120 degree diagonal turn permutes the axes.
  Eigen::Matrix3d perm;
  perm << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  EXPECT_NEAR((q.toRotationMatrix() - perm).norm(), 0.0, 1e-12);
  EXPECT_NEAR(geodesic_angle(Eigen::Quaterniond::Identity(), q), oracle::rotation_angle(perm), 1e-12);
  EXPECT_NEAR(geodesic_angle(Eigen::Quaterniond::Identity(), q), 2 * M_PI / 3, 1e-12);
}

TEST(Pose, CanonicalSignAndUnitNorm) {
  const Pose p(Eigen::Vector3d::Zero(), Eigen::Quaterniond(-0.5, 0.5, -0.5, 0.5));
  EXPECT_GE(p.orientation().w(), 0.0);
  EXPECT_NEAR(p.orientation().norm(), 1.0, 1e-9);

  const Pose half_turn(Eigen::Vector3d::Zero(), Eigen::Quaterniond(0.0, 0.0, -1.0, 0.0));
  EXPECT_EQ(half_turn.orientation().w(), 0.0);
  EXPECT_FALSE(std::signbit(half_turn.orientation().w()));
  EXPECT_EQ(half_turn.orientation().y(), 1.0);

  const Pose scaled(Eigen::Vector3d::Zero(), Eigen::Quaterniond(2.0, 0.0, 0.0, 0.0));
  EXPECT_EQ(scaled.orientation().w(), 1.0);
}

TEST(Pose, CompositionAndInverse) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Pose a(oracle::random_vector(rng, -1, 1), oracle::random_quaternion(rng));
    const Pose b(oracle::random_vector(rng, -1, 1), oracle::random_quaternion(rng));
    const Eigen::Matrix4d ab = oracle::homogeneous(a.rotation(), a.translation()) *
                               oracle::homogeneous(b.rotation(), b.translation());
    const Pose c = a * b;
    EXPECT_NEAR((c.translation() - ab.topRightCorner<3, 1>()).norm(), 0.0, 1e-12);
    EXPECT_NEAR((c.rotation() - ab.topLeftCorner<3, 3>()).norm(), 0.0, 1e-12);
    const PoseError e = pose_error(a * a.inverse(), Pose::identity());
    EXPECT_LE(e.position_error, 1e-12);
    EXPECT_LE(e.rotation_error, 1e-7);
    EXPECT_NEAR(c.orientation().norm(), 1.0, 1e-9);
  }
}

TEST(Pose, RejectsZeroQuaternion) {
  EXPECT_THROW(Pose(Eigen::Vector3d::Zero(), Eigen::Quaterniond(0, 0, 0, 0)),
               std::invalid_argument);
}

TEST(QuatLogExp, RoundTrip) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Quaterniond q = canonicalize(oracle::random_quaternion(rng));
    const Eigen::Quaterniond back = quat_exp(quat_log(q));
    EXPECT_NEAR(geodesic_angle(q, back), 0.0, 1e-7);
    // Half-angle convention: |log q| is half the rotation angle.
    EXPECT_NEAR(2.0 * quat_log(q).norm(), geodesic_angle(Eigen::Quaterniond::Identity(), q),
                1e-9);
  }
  EXPECT_EQ(quat_log(Eigen::Quaterniond::Identity()).norm(), 0.0);
}

TEST(CumulativeBasis, Values) {
  EXPECT_DOUBLE_EQ(cumulative_bernstein3(1, 0.5), 0.875);
  EXPECT_DOUBLE_EQ(cumulative_bernstein3(2, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(cumulative_bernstein3(3, 0.5), 0.125);
  for (int i = 1; i <= 3; ++i) {
    EXPECT_EQ(cumulative_bernstein3(i, 0.0), 0.0);
    EXPECT_EQ(cumulative_bernstein3(i, 1.0), 1.0);
  }
  EXPECT_THROW(cumulative_bernstein3(0, 0.5), std::out_of_range);
}

TEST(QuatBezier, ConstantCurve) {
  Rng rng(2);
  const Eigen::Quaterniond q = canonicalize(oracle::random_quaternion(rng));
  for (double u = 0.0; u <= 1.0; u += 0.125) {
    EXPECT_NEAR(geodesic_angle(quat_cubic_bezier(q, q, q, q, u), q), 0.0, 1e-12);
  }
}

TEST(QuatBezier, EndpointsExact) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    Eigen::Quaterniond c[4];
    for (auto& q : c) q = canonicalize(oracle::random_quaternion(rng));
    const auto at0 = quat_cubic_bezier(c[0], c[1], c[2], c[3], 0.0);
    const auto at1 = quat_cubic_bezier(c[0], c[1], c[2], c[3], 1.0);
    EXPECT_EQ(at0.coeffs(), c[0].normalized().coeffs());
    EXPECT_EQ(at1.coeffs(), c[3].normalized().coeffs());
  }
}

TEST(QuatBezier, QuarterTurnMidpointMatchesScalarEvaluation) {
  // Only the first increment is nonzero (pi/4 half-angle about z); its weight
  // at u = 0.5 is 1 - 0.5^3 = 0.875, so the result turns 0.875 * pi/2.
  const Eigen::Quaterniond q0 = Eigen::Quaterniond::Identity();
  const Eigen::Quaterniond q1 = rz(M_PI / 2);
  const auto q = quat_cubic_bezier(q0, q1, q1, q1, 0.5);
  EXPECT_NEAR(geodesic_angle(q, rz(0.4375 * M_PI)), 0.0, 1e-12);
}

TEST(QuatBezier, RejectsParameterOutsideUnitInterval) {
  const Eigen::Quaterniond q = Eigen::Quaterniond::Identity();
  EXPECT_THROW(quat_cubic_bezier(q, q, q, q, -1e-9), std::domain_error);
  EXPECT_THROW(quat_cubic_bezier(q, q, q, q, 1.0 + 1e-9), std::domain_error);
  EXPECT_THROW(quat_cubic_bezier(q, q, q, q, std::nan("")), std::domain_error);
}

TEST(QuatBezier, UnitNormEverywhere) {
  Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    Eigen::Quaterniond c[4];
    for (auto& q : c) q = oracle::random_quaternion(rng);
    const double u = rng.uniform01();
    EXPECT_LT(std::abs(quat_cubic_bezier(c[0], c[1], c[2], c[3], u).norm() - 1.0), 1e-9);
  }
}

TEST(QuatBezier, AngularVelocityEstimateIsContinuous) {
  Rng rng(21);
  Eigen::Quaterniond c[4];
  for (auto& q : c) q = oracle::random_quaternion(rng);
  auto speed = [&](double u, double h) {
    return geodesic_angle(quat_cubic_bezier(c[0], c[1], c[2], c[3], u - h),
                          quat_cubic_bezier(c[0], c[1], c[2], c[3], u + h)) /
           (2 * h);
  };
  const double h = 1e-3;
  double previous = speed(h, h);
  for (double u = 2 * h; u <= 1.0 - 2 * h; u += 0.01) {
    const double coarse = speed(u, h);
    const double fine = speed(u, h / 2);
    EXPECT_NEAR(coarse, fine, 100 * h) << "u = " << u;
    // Successive grid points differ by a bounded amount: no jumps.
    EXPECT_LT(std::abs(coarse - previous), 1.0) << "u = " << u;
    previous = coarse;
  }
}

Eigen::Vector3d de_casteljau(std::array<Eigen::Vector3d, 4> p, double u) {
  for (int level = 3; level > 0; --level) {
    for (int i = 0; i < level; ++i) p[i] = (1 - u) * p[i] + u * p[i + 1];
  }
  return p[0];
}

TEST(PoseCurve, TranslationMatchesDeCasteljau) {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    std::array<Pose, 4> controls;
    std::array<Eigen::Vector3d, 4> pts;
    for (int k = 0; k < 4; ++k) {
      controls[k] = Pose(oracle::random_vector(rng, -1, 1), oracle::random_quaternion(rng));
      pts[k] = controls[k].translation();
    }
    const CubicPoseCurve curve = make_cubic_pose_curve(controls);
    for (double u : {0.0, 0.3, 0.5, 0.77, 1.0}) {
      EXPECT_NEAR((eval_pose_curve(curve, u).translation() - de_casteljau(pts, u)).norm(), 0.0,
                  1e-12);
    }
  }
}

TEST(PoseCurve, EndpointsAndLinearCase) {
  std::array<Pose, 4> controls;
  for (int k = 0; k < 4; ++k) controls[k] = Pose::from_translation({static_cast<double>(k), 0, 0});
  const CubicPoseCurve curve = make_cubic_pose_curve(controls);
  EXPECT_EQ(eval_pose_curve(curve, 0.0), controls[0]);
  EXPECT_EQ(eval_pose_curve(curve, 1.0), controls[3]);
  EXPECT_NEAR((eval_pose_curve(curve, 0.5).translation() - Eigen::Vector3d(1.5, 0, 0)).norm(), 0.0,
              1e-15);
  EXPECT_NEAR(curve.arc_length, 3.0, 1e-9);
  EXPECT_EQ(curve.total_rotation, 0.0);
  EXPECT_THROW(eval_pose_curve(curve, 1.5), std::domain_error);
}

}  // namespace
}  // namespace iklink
