// Independent reference computations used by the unit and acceptance tests.
// None of these call into the code they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "iklink/linker.hpp"
#include "iklink/random.hpp"
#include "iklink/robot.hpp"

namespace oracle {

inline std::string fixture(const std::string& name) {
  return std::string(IKLINK_FIXTURE_DIR) + "/" + name;
}

inline Eigen::Quaterniond random_quaternion(iklink::Rng& rng) {
  // Shoemake's uniform sampling.
  const double u1 = rng.uniform01(), u2 = rng.uniform01(), u3 = rng.uniform01();
  return Eigen::Quaterniond(std::sqrt(u1) * std::cos(2 * M_PI * u3),
                            std::sqrt(1 - u1) * std::sin(2 * M_PI * u2),
                            std::sqrt(1 - u1) * std::cos(2 * M_PI * u2),
                            std::sqrt(u1) * std::sin(2 * M_PI * u3));
}

inline Eigen::Vector3d random_vector(iklink::Rng& rng, double lo, double hi) {
  return Eigen::Vector3d(rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi));
}

inline Eigen::Vector3d random_unit_vector(iklink::Rng& rng) {
  Eigen::Vector3d v;
  do {
    v = random_vector(rng, -1.0, 1.0);
  } while (v.norm() < 0.1 || v.norm() > 1.0);
  return v.normalized();
}

inline iklink::KinematicChain random_chain(iklink::Rng& rng, int dof) {
  std::vector<iklink::JointSpec> joints;
  for (int i = 0; i < dof; ++i) {
    iklink::JointSpec j;
    j.name = "j" + std::to_string(i);
    j.axis = random_unit_vector(rng);
    j.origin = iklink::Pose(random_vector(rng, -0.3, 0.3), random_quaternion(rng));
    j.lower = -M_PI;
    j.upper = M_PI;
    j.velocity_limit = rng.uniform(0.5, 3.0);
    joints.push_back(j);
  }
  const iklink::Pose ee(random_vector(rng, -0.2, 0.2), random_quaternion(rng));
  return iklink::KinematicChain("random", std::move(joints), ee);
}

inline Eigen::Matrix4d homogeneous(const Eigen::Matrix3d& r, const Eigen::Vector3d& t) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = r;
  m.topRightCorner<3, 1>() = t;
  return m;
}

// Product of 4x4 homogeneous transforms: origin_i * Rot(axis_i, q_i), then the
// end-effector offset.
inline Eigen::Matrix4d fk_matrix_chain(const iklink::KinematicChain& chain,
                                       const Eigen::VectorXd& q) {
  Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
  for (int i = 0; i < chain.dof(); ++i) {
    const auto& j = chain.joint(i);
    const Eigen::Quaterniond& o = j.origin.orientation();
    t = t * homogeneous(o.toRotationMatrix(), j.origin.translation());
    t = t * homogeneous(Eigen::AngleAxisd(q[i], j.axis).toRotationMatrix(),
                        Eigen::Vector3d::Zero());
  }
  const auto& ee = chain.end_effector_offset();
  return t * homogeneous(ee.orientation().toRotationMatrix(), ee.translation());
}

// Rotation angle of R via the trace formula.
inline double rotation_angle(const Eigen::Matrix3d& r) {
  const double c = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(c);
}

// Connected components of the eps-neighbourhood graph by union-find.
struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

inline std::vector<std::size_t> component_roots(const std::vector<Eigen::VectorXd>& pts,
                                                double eps, bool max_norm = false) {
  UnionFind uf(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Eigen::VectorXd d = pts[i] - pts[j];
      const double dist = max_norm ? d.cwiseAbs().maxCoeff() : std::sqrt(d.dot(d));
      if (dist <= eps) uf.unite(i, j);
    }
  }
  std::vector<std::size_t> roots(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) roots[i] = uf.find(i);
  return roots;
}

inline std::size_t component_count(const std::vector<Eigen::VectorXd>& pts, double eps,
                                   bool max_norm = false) {
  auto roots = component_roots(pts, eps, max_norm);
  std::sort(roots.begin(), roots.end());
  return static_cast<std::size_t>(std::unique(roots.begin(), roots.end()) - roots.begin());
}

// Explicit layered graph: validity, continuity and distance given as tables.
class MaskGraph : public iklink::LinkGraph {
 public:
  MaskGraph(std::size_t n, std::size_t m)
      : n_(n), m_(m), valid_(n * m, true), cont_(n * m * m, false), dist_(n * m * m, 0.0) {}

  std::size_t columns() const override { return n_; }
  std::size_t slots() const override { return m_; }
  bool valid(std::size_t x, std::size_t y) const override { return valid_[x * m_ + y]; }
  bool continuous(std::size_t x, std::size_t prev, std::size_t y) const override {
    return cont_[(x * m_ + prev) * m_ + y];
  }
  double distance(std::size_t x, std::size_t prev, std::size_t y) const override {
    return dist_[(x * m_ + prev) * m_ + y];
  }

  void set_valid(std::size_t x, std::size_t y, bool v) { valid_[x * m_ + y] = v; }
  void set_link(std::size_t x, std::size_t prev, std::size_t y, bool cont, double d) {
    cont_[(x * m_ + prev) * m_ + y] = cont;
    dist_[(x * m_ + prev) * m_ + y] = d;
  }

  static MaskGraph random(iklink::Rng& rng, std::size_t n, std::size_t m, double p_cont,
                          double p_empty) {
    MaskGraph g(n, m);
    for (std::size_t x = 0; x < n; ++x) {
      bool any = false;
      for (std::size_t y = 0; y < m; ++y) {
        const bool v = rng.uniform01() >= p_empty;
        g.set_valid(x, y, v);
        any = any || v;
      }
      if (!any) g.set_valid(x, static_cast<std::size_t>(rng.next() % m), true);
      if (x == 0) continue;
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
          // Distances on a coarse grid make length ties common.
          g.set_link(x, a, b, rng.uniform01() < p_cont,
                     0.25 * static_cast<double>(rng.next() % 8));
        }
      }
    }
    return g;
  }

 private:
  std::size_t n_, m_;
  std::vector<bool> valid_;
  std::vector<bool> cont_;
  std::vector<double> dist_;
};

struct BruteForceResult {
  std::int64_t count = std::numeric_limits<std::int64_t>::max();
  double length = std::numeric_limits<double>::infinity();
  std::size_t optimal_paths = 0;  // sequences attaining (count, length)
  std::vector<std::size_t> path;  // one of them
};

// Enumerates every row sequence through valid cells. A link costs
// (0 reconfigurations, distance) when continuous, else (1, 0).
inline BruteForceResult brute_force_link(const iklink::LinkGraph& g) {
  BruteForceResult best;
  const std::size_t n = g.columns(), m = g.slots();
  std::vector<std::size_t> seq(n);
  auto visit = [&](auto&& self, std::size_t x, std::int64_t c, double l) -> void {
    if (x == n) {
      if (c < best.count || (c == best.count && l < best.length)) {
        best.count = c;
        best.length = l;
        best.optimal_paths = 1;
        best.path = seq;
      } else if (c == best.count && l == best.length) {
        ++best.optimal_paths;
      }
      return;
    }
    for (std::size_t y = 0; y < m; ++y) {
      if (!g.valid(x, y)) continue;
      seq[x] = y;
      if (x == 0) {
        self(self, 1, 0, 0.0);
      } else if (g.continuous(x, seq[x - 1], y)) {
        self(self, x + 1, c, l + g.distance(x, seq[x - 1], y));
      } else {
        self(self, x + 1, c + 1, l);
      }
    }
  };
  visit(visit, 0, 0, 0.0);
  return best;
}

}  // namespace oracle
