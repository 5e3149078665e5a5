#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "iklink/iktable.hpp"
#include "iklink/motion.hpp"
#include "iklink/robot.hpp"

namespace iklink {

/// True iff every joint can move from q1 to q2 within dt without exceeding its
/// velocity limit (|dq_j| / dt <= limit_j, boundary included).
/// Throws std::domain_error when dt <= 0.
bool check_cont(const JointConfig& q1, const JointConfig& q2, double dt,
                const KinematicChain& chain);

/// Layered graph the linker runs on: `columns()` layers of `slots()` nodes.
/// Column x's nodes may link to any valid node of column x-1 through a
/// reconfiguration, or without one when `continuous` holds.
class LinkGraph {
 public:
  virtual ~LinkGraph() = default;
  virtual std::size_t columns() const = 0;
  virtual std::size_t slots() const = 0;
  virtual bool valid(std::size_t x, std::size_t y) const = 0;
  virtual bool continuous(std::size_t x, std::size_t prev, std::size_t y) const = 0;
  virtual double distance(std::size_t x, std::size_t prev, std::size_t y) const = 0;
};

/// Link graph over an IK table: continuity is check_cont at the waypoint
/// spacing, distance is the Euclidean joint-space step.
class TableLinkGraph : public LinkGraph {
 public:
  TableLinkGraph(const IKTable& table, const KinematicChain& chain,
                 std::span<const double> timestamps);

  std::size_t columns() const override { return table_.n(); }
  std::size_t slots() const override { return table_.m(); }
  bool valid(std::size_t x, std::size_t y) const override { return table_.has(x, y); }
  bool continuous(std::size_t x, std::size_t prev, std::size_t y) const override;
  double distance(std::size_t x, std::size_t prev, std::size_t y) const override;

 private:
  const IKTable& table_;
  const KinematicChain& chain_;
  std::vector<double> timestamps_;
};

enum class LinkKind : std::uint8_t { kStart, kContinuous, kReconfiguration };

/// Per-cell dynamic programming state: minimum reconfiguration count,
/// predecessor slot, accumulated joint-space length and the kind of link used
/// to reach the cell.
struct DPState {
  static constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();

  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::int64_t> c;
  std::vector<std::int64_t> p;
  std::vector<double> l;
  std::vector<LinkKind> link;
  std::uint64_t relaxations = 0;  // predecessor/successor pairs examined

  std::size_t index(std::size_t x, std::size_t y) const { return x * m + y; }
  bool reachable(std::size_t x, std::size_t y) const { return c[index(x, y)] != kUnreachable; }
};

/// Forward pass over all columns. Throws InfeasibleError naming the first
/// column without any valid cell.
DPState dp_forward(const LinkGraph& graph);

/// Final-column cell with the fewest reconfigurations, then the shortest
/// length, then the lowest slot.
std::size_t best_final_slot(const DPState& dp);

struct LinkedPath {
  std::vector<std::size_t> slots;       // one per column
  std::vector<std::size_t> boundaries;  // columns entered through a reconfiguration
};

/// Walks predecessors back from `final_slot`, re-checking every recorded link
/// against the graph. A broken chain throws std::logic_error.
LinkedPath trace_back(const DPState& dp, const LinkGraph& graph, std::size_t final_slot);

struct LinkResult {
  JointMotion motion;
  LinkedPath path;
  DPState dp;
};

LinkResult link_table(const IKTable& table, const KinematicChain& chain,
                      std::span<const double> timestamps);

/// Minimum-reconfiguration motion through the table (fewest reconfigurations,
/// ties broken by joint-space length).
JointMotion dp_link(const IKTable& table, const KinematicChain& chain,
                    std::span<const double> timestamps);

}  // namespace iklink
