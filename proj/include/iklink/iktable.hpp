#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "iklink/ik.hpp"
#include "iklink/robot.hpp"
#include "iklink/trajectory.hpp"

namespace iklink {

enum class JointMetric { kEuclidean, kMaxNorm };

double joint_distance(const JointConfig& a, const JointConfig& b,
                      JointMetric metric = JointMetric::kEuclidean);

/// DBSCAN parameters for merging near-duplicate IK solutions. With
/// min_points = 1 clusters are exactly the connected components of the graph
/// joining solutions at distance <= epsilon.
struct ClusterParams {
  double epsilon = 0.05;  // rad
  int min_points = 1;
  JointMetric metric = JointMetric::kEuclidean;
  bool enabled = true;
};

struct ClusterResult {
  std::vector<JointConfig> representatives;
  std::vector<std::size_t> representative_indices;  // into the input, ascending
  std::vector<int> labels;                          // cluster id per input
  std::size_t freed = 0;                            // inputs minus representatives
};

/// One representative (the medoid, lowest index on ties) per cluster. Points
/// DBSCAN would label noise (only possible with min_points > 1) are kept as
/// their own singleton clusters.
ClusterResult cluster_merge(std::span<const JointConfig> solutions, const ClusterParams& params);

struct Provenance {
  enum class Kind { kRandom, kPropagated, kRefill };
  Kind kind = Kind::kRandom;
  int from_slot = -1;  // predecessor slot for kPropagated
};

struct TableCell {
  std::optional<JointConfig> config;
  Provenance provenance;
};

/// n x m grid of IK candidates: one column per waypoint, m slots per column.
class IKTable {
 public:
  IKTable(std::size_t n, std::size_t m);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }

  TableCell& cell(std::size_t x, std::size_t y) { return cells_[x * m_ + y]; }
  const TableCell& cell(std::size_t x, std::size_t y) const { return cells_[x * m_ + y]; }
  bool has(std::size_t x, std::size_t y) const { return cell(x, y).config.has_value(); }
  const JointConfig& config(std::size_t x, std::size_t y) const { return *cell(x, y).config; }

  std::size_t filled(std::size_t x) const;
  std::vector<std::size_t> empty_columns() const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<TableCell> cells_;
};

struct TableBuildOptions {
  ClusterParams cluster;
  int sample_attempts = 10;  // sample_ik restarts per initial or refilled slot
};

/// Builds the table column by column: random samples for the first waypoint,
/// then greedy propagation of every filled cell, merging of near-duplicates
/// and random refills of the freed and empty slots. Every slot draws from its
/// own random stream derived from `seed`. Throws InfeasibleError when the
/// first column ends up empty; later empty columns are allowed.
IKTable build_table(const WaypointSolver& solver, std::size_t m, const TableBuildOptions& options,
                    std::uint64_t seed);

IKTable build_table(const KinematicChain& chain, const ReferenceTrajectory& traj, std::size_t m,
                    const IKSettings& settings, const ClusterParams& cluster, std::uint64_t seed);

/// Debug dump: `waypoint_index,slot,provenance,q0..q{k-1}`, filled cells only.
void write_table_csv(const IKTable& table, std::ostream& out);
void write_table_csv(const IKTable& table, const std::filesystem::path& path);

}  // namespace iklink
