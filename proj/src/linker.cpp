#include "iklink/linker.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "iklink/errors.hpp"

namespace iklink {

bool check_cont(const JointConfig& q1, const JointConfig& q2, double dt,
                const KinematicChain& chain) {
  if (!(dt > 0.0)) throw std::domain_error("check_cont: dt must be positive");
  if (q1.size() != chain.dof() || q2.size() != chain.dof()) {
    throw ValidationError("check_cont: configuration size does not match chain");
  }
  for (int j = 0; j < chain.dof(); ++j) {
    if (std::abs(q2[j] - q1[j]) / dt > chain.joint(j).velocity_limit) return false;
  }
  return true;
}

TableLinkGraph::TableLinkGraph(const IKTable& table, const KinematicChain& chain,
                               std::span<const double> timestamps)
    : table_(table), chain_(chain), timestamps_(timestamps.begin(), timestamps.end()) {
  if (timestamps_.size() != table_.n()) {
    throw ValidationError("timestamp count does not match table columns");
  }
}

bool TableLinkGraph::continuous(std::size_t x, std::size_t prev, std::size_t y) const {
  return check_cont(table_.config(x - 1, prev), table_.config(x, y),
                    timestamps_[x] - timestamps_[x - 1], chain_);
}

double TableLinkGraph::distance(std::size_t x, std::size_t prev, std::size_t y) const {
  return (table_.config(x - 1, prev) - table_.config(x, y)).norm();
}

DPState dp_forward(const LinkGraph& graph) {
  const std::size_t n = graph.columns();
  const std::size_t m = graph.slots();
  if (n == 0 || m == 0) throw ValidationError("link graph is empty");

  DPState dp;
  dp.n = n;
  dp.m = m;
  dp.c.assign(n * m, DPState::kUnreachable);
  dp.p.assign(n * m, -1);
  dp.l.assign(n * m, std::numeric_limits<double>::infinity());
  dp.link.assign(n * m, LinkKind::kStart);

  auto require_column = [&](std::size_t x) {
    for (std::size_t y = 0; y < m; ++y) {
      if (graph.valid(x, y)) return;
    }
    throw InfeasibleError("no IK solution in column " + std::to_string(x));
  };

  require_column(0);
  for (std::size_t y = 0; y < m; ++y) {
    if (!graph.valid(0, y)) continue;
    dp.c[dp.index(0, y)] = 0;
    dp.l[dp.index(0, y)] = 0.0;
  }

  for (std::size_t x = 1; x < n; ++x) {
    require_column(x);
    for (std::size_t y1 = 0; y1 < m; ++y1) {
      dp.relaxations += m;
      if (!graph.valid(x, y1)) continue;
      std::int64_t& c = dp.c[dp.index(x, y1)];
      double& l = dp.l[dp.index(x, y1)];
      for (std::size_t y2 = 0; y2 < m; ++y2) {
        const std::size_t prev = dp.index(x - 1, y2);
        if (dp.c[prev] == DPState::kUnreachable) continue;
        const std::int64_t c_prev = dp.c[prev];
        const double l_prev = dp.l[prev];

        // Link with a reconfiguration: always admissible, length carried over.
        if (c_prev + 1 < c || (c_prev + 1 == c && l_prev < l)) {
          c = c_prev + 1;
          l = l_prev;
          dp.p[dp.index(x, y1)] = static_cast<std::int64_t>(y2);
          dp.link[dp.index(x, y1)] = LinkKind::kReconfiguration;
        }
        // Link without one, when the velocity limits allow it.
        if (graph.continuous(x, y2, y1)) {
          const double d = l_prev + graph.distance(x, y2, y1);
          if (c_prev < c || (c_prev == c && d < l)) {
            c = c_prev;
            l = d;
            dp.p[dp.index(x, y1)] = static_cast<std::int64_t>(y2);
            dp.link[dp.index(x, y1)] = LinkKind::kContinuous;
          }
        }
      }
    }
  }
  return dp;
}

std::size_t best_final_slot(const DPState& dp) {
  const std::size_t x = dp.n - 1;
  std::int64_t c_min = DPState::kUnreachable;
  double l_min = std::numeric_limits<double>::infinity();
  std::size_t best = dp.m;
  for (std::size_t y = 0; y < dp.m; ++y) {
    const std::int64_t c = dp.c[dp.index(x, y)];
    const double l = dp.l[dp.index(x, y)];
    if (c == DPState::kUnreachable) continue;
    if (c < c_min || (c == c_min && l < l_min) || best == dp.m) {
      c_min = c;
      l_min = l;
      best = y;
    }
  }
  if (best == dp.m) throw InfeasibleError("no reachable cell in the final column");
  return best;
}

LinkedPath trace_back(const DPState& dp, const LinkGraph& graph, std::size_t final_slot) {
  if (final_slot >= dp.m || !dp.reachable(dp.n - 1, final_slot)) {
    throw std::logic_error("trace_back: final slot is not reachable");
  }
  LinkedPath path;
  path.slots.assign(dp.n, 0);
  std::size_t y = final_slot;
  for (std::size_t x = dp.n; x-- > 0;) {
    if (!dp.reachable(x, y)) {
      throw std::logic_error("trace_back: predecessor chain broken at column " +
                             std::to_string(x));
    }
    path.slots[x] = y;
    if (x == 0) break;
    const std::int64_t prev = dp.p[dp.index(x, y)];
    if (prev < 0 || static_cast<std::size_t>(prev) >= dp.m) {
      throw std::logic_error("trace_back: missing predecessor at column " + std::to_string(x));
    }
    const bool cont = graph.continuous(x, static_cast<std::size_t>(prev), y);
    switch (dp.link[dp.index(x, y)]) {
      case LinkKind::kContinuous:
        if (!cont) {
          throw std::logic_error("trace_back: continuous link fails check at column " +
                                 std::to_string(x));
        }
        break;
      case LinkKind::kReconfiguration:
        if (cont) {
          throw std::logic_error("trace_back: reconfiguration recorded on a continuous link at "
                                 "column " + std::to_string(x));
        }
        path.boundaries.push_back(x);
        break;
      case LinkKind::kStart:
        throw std::logic_error("trace_back: no link recorded at column " + std::to_string(x));
    }
    y = static_cast<std::size_t>(prev);
  }
  std::reverse(path.boundaries.begin(), path.boundaries.end());
  return path;
}

LinkResult link_table(const IKTable& table, const KinematicChain& chain,
                      std::span<const double> timestamps) {
  const TableLinkGraph graph(table, chain, timestamps);
  LinkResult result;
  result.dp = dp_forward(graph);
  result.path = trace_back(result.dp, graph, best_final_slot(result.dp));
  result.motion.samples.reserve(table.n());
  for (std::size_t x = 0; x < table.n(); ++x) {
    result.motion.samples.push_back(MotionSample{timestamps[x], table.config(x, result.path.slots[x])});
  }
  result.motion.boundaries = result.path.boundaries;
  return result;
}

JointMotion dp_link(const IKTable& table, const KinematicChain& chain,
                    std::span<const double> timestamps) {
  return link_table(table, chain, timestamps).motion;
}

}  // namespace iklink
