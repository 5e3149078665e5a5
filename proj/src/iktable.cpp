#include "iklink/iktable.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <ostream>

#include "iklink/csv.hpp"
#include "iklink/errors.hpp"

namespace iklink {

double joint_distance(const JointConfig& a, const JointConfig& b, JointMetric metric) {
  switch (metric) {
    case JointMetric::kMaxNorm:
      return (a - b).cwiseAbs().maxCoeff();
    case JointMetric::kEuclidean:
    default:
      return (a - b).norm();
  }
}

ClusterResult cluster_merge(std::span<const JointConfig> solutions, const ClusterParams& params) {
  if (!(params.epsilon > 0.0)) throw ValidationError("cluster epsilon must be positive");
  const std::size_t n = solutions.size();
  ClusterResult result;
  result.labels.assign(n, -1);
  if (n == 0) return result;
  for (const auto& s : solutions) {
    if (s.size() != solutions.front().size()) {
      throw ValidationError("cluster_merge: solutions differ in dimension");
    }
  }

  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<std::size_t>> neighbours(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist[i][j] = dist[j][i] = joint_distance(solutions[i], solutions[j], params.metric);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (dist[i][j] <= params.epsilon) neighbours[i].push_back(j);
    }
  }
  const std::size_t min_points = static_cast<std::size_t>(std::max(1, params.min_points));
  auto is_core = [&](std::size_t i) { return neighbours[i].size() >= min_points; };

  int next_label = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (result.labels[i] != -1 || !is_core(i)) continue;
    const int label = next_label++;
    std::deque<std::size_t> frontier{i};
    result.labels[i] = label;
    while (!frontier.empty()) {
      const std::size_t p = frontier.front();
      frontier.pop_front();
      if (!is_core(p)) continue;
      for (std::size_t q : neighbours[p]) {
        if (result.labels[q] == -1) {
          result.labels[q] = label;
          frontier.push_back(q);
        }
      }
    }
  }
  // Noise stays a candidate of its own.
  for (std::size_t i = 0; i < n; ++i) {
    if (result.labels[i] == -1) result.labels[i] = next_label++;
  }

  std::vector<std::size_t> medoid(next_label, n);
  std::vector<double> best(next_label, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (result.labels[j] == result.labels[i]) sum += dist[i][j];
    }
    const int l = result.labels[i];
    if (sum < best[l]) {
      best[l] = sum;
      medoid[l] = i;
    }
  }
  std::sort(medoid.begin(), medoid.end());
  for (std::size_t idx : medoid) {
    result.representative_indices.push_back(idx);
    result.representatives.push_back(solutions[idx]);
  }
  result.freed = n - result.representatives.size();
  return result;
}

IKTable::IKTable(std::size_t n, std::size_t m) : n_(n), m_(m), cells_(n * m) {}

std::size_t IKTable::filled(std::size_t x) const {
  std::size_t count = 0;
  for (std::size_t y = 0; y < m_; ++y) count += has(x, y) ? 1 : 0;
  return count;
}

std::vector<std::size_t> IKTable::empty_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < n_; ++x) {
    if (filled(x) == 0) out.push_back(x);
  }
  return out;
}

namespace {

enum Phase : std::uint64_t { kInitialPhase = 0, kRefillPhase = 1 };

// Merges the filled cells of column x in place; non-representatives are cleared.
void merge_column(IKTable& table, std::size_t x, const ClusterParams& params) {
  if (!params.enabled) return;
  std::vector<JointConfig> configs;
  std::vector<std::size_t> slots;
  for (std::size_t y = 0; y < table.m(); ++y) {
    if (table.has(x, y)) {
      configs.push_back(table.config(x, y));
      slots.push_back(y);
    }
  }
  const ClusterResult merged = cluster_merge(configs, params);
  std::vector<bool> keep(slots.size(), false);
  for (std::size_t idx : merged.representative_indices) keep[idx] = true;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!keep[i]) table.cell(x, slots[i]) = TableCell{};
  }
}

void refill_column(IKTable& table, std::size_t x, const WaypointSolver& solver,
                   const TableBuildOptions& options, std::uint64_t seed, Provenance::Kind kind,
                   std::uint64_t phase) {
  for (std::size_t y = 0; y < table.m(); ++y) {
    if (table.has(x, y)) continue;
    Rng rng(derive_seed(seed, {x, y, phase}));
    if (auto q = solver.sample(x, rng, options.sample_attempts)) {
      table.cell(x, y) = TableCell{std::move(q), Provenance{kind, -1}};
    }
  }
}

}  // namespace

IKTable build_table(const WaypointSolver& solver, std::size_t m, const TableBuildOptions& options,
                    std::uint64_t seed) {
  const std::size_t n = solver.waypoint_count();
  if (m == 0) throw ValidationError("table needs at least one slot per waypoint");
  if (n == 0) throw ValidationError("trajectory is empty");
  IKTable table(n, m);

  refill_column(table, 0, solver, options, seed, Provenance::Kind::kRandom, kInitialPhase);
  merge_column(table, 0, options.cluster);
  refill_column(table, 0, solver, options, seed, Provenance::Kind::kRefill, kRefillPhase);
  if (table.filled(0) == 0) {
    throw InfeasibleError("no IK solution found for waypoint 0");
  }

  for (std::size_t x = 1; x < n; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      if (!table.has(x - 1, y)) continue;
      if (auto q = solver.propagate(x, table.config(x - 1, y))) {
        table.cell(x, y) =
            TableCell{std::move(q), Provenance{Provenance::Kind::kPropagated, static_cast<int>(y)}};
      }
    }
    merge_column(table, x, options.cluster);
    refill_column(table, x, solver, options, seed, Provenance::Kind::kRefill, kRefillPhase);
  }
  return table;
}

IKTable build_table(const KinematicChain& chain, const ReferenceTrajectory& traj, std::size_t m,
                    const IKSettings& settings, const ClusterParams& cluster, std::uint64_t seed) {
  const ChainWaypointSolver solver(chain, traj.poses(), settings);
  TableBuildOptions options;
  options.cluster = cluster;
  return build_table(solver, m, options, seed);
}

void write_table_csv(const IKTable& table, std::ostream& out) {
  std::size_t k = 0;
  for (std::size_t x = 0; x < table.n() && k == 0; ++x) {
    for (std::size_t y = 0; y < table.m(); ++y) {
      if (table.has(x, y)) {
        k = static_cast<std::size_t>(table.config(x, y).size());
        break;
      }
    }
  }
  out << "waypoint_index,slot,provenance";
  for (std::size_t j = 0; j < k; ++j) out << ",q" << j;
  out << '\n';
  for (std::size_t x = 0; x < table.n(); ++x) {
    for (std::size_t y = 0; y < table.m(); ++y) {
      const TableCell& c = table.cell(x, y);
      if (!c.config) continue;
      out << x << ',' << y << ',';
      switch (c.provenance.kind) {
        case Provenance::Kind::kRandom:
          out << "random";
          break;
        case Provenance::Kind::kPropagated:
          out << "propagated:" << c.provenance.from_slot;
          break;
        case Provenance::Kind::kRefill:
          out << "refill";
          break;
      }
      for (int j = 0; j < c.config->size(); ++j) out << ',' << csv::format_double((*c.config)[j]);
      out << '\n';
    }
  }
}

void write_table_csv(const IKTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write table file " + path.string());
  write_table_csv(table, out);
}

}  // namespace iklink
