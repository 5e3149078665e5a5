#include <gtest/gtest.h>

#include "iklink/benchmarks.hpp"
#include "iklink/errors.hpp"
#include "iklink/linker.hpp"
#include "oracles.hpp"

namespace iklink {
namespace {

// Replays a path through the graph with the (count, length) cost model.
std::pair<std::int64_t, double> replay(const LinkGraph& g, const std::vector<std::size_t>& path) {
  std::int64_t c = 0;
  double l = 0.0;
  for (std::size_t x = 1; x < path.size(); ++x) {
    if (g.continuous(x, path[x - 1], path[x])) {
      l += g.distance(x, path[x - 1], path[x]);
    } else {
      ++c;
    }
  }
  return {c, l};
}

TEST(CheckCont, VelocityLimitBoundaryIsInclusive) {
  const KinematicChain chain = load_chain_file(oracle::fixture("one_joint.json"));
  // Limit 0.2 rad/s: over 0.5 s a 0.1 rad step is exactly at the limit.
  EXPECT_TRUE(check_cont(JointConfig::Constant(1, 0.0), JointConfig::Constant(1, 0.1), 0.5, chain));
  EXPECT_TRUE(check_cont(JointConfig::Constant(1, 0.1), JointConfig::Constant(1, 0.0), 0.5, chain));
  EXPECT_FALSE(
      check_cont(JointConfig::Constant(1, 0.0), JointConfig::Constant(1, 0.1001), 0.5, chain));
  EXPECT_TRUE(check_cont(JointConfig::Constant(1, 1.0), JointConfig::Constant(1, 1.0), 1e-9, chain));
}

TEST(CheckCont, EveryJointIsChecked) {
  const KinematicChain chain = load_chain_file(oracle::fixture("arm7.json"));
  const JointConfig a = JointConfig::Zero(7);
  for (int j = 0; j < 7; ++j) {
    JointConfig b = a;
    b[j] = chain.joint(j).velocity_limit * 0.1 * 1.01;
    EXPECT_FALSE(check_cont(a, b, 0.1, chain)) << j;
    b[j] = chain.joint(j).velocity_limit * 0.1 * 0.99;
    EXPECT_TRUE(check_cont(a, b, 0.1, chain)) << j;
  }
}

TEST(CheckCont, RejectsBadInput) {
  const KinematicChain chain = load_chain_file(oracle::fixture("one_joint.json"));
  const JointConfig q = JointConfig::Zero(1);
  EXPECT_THROW(check_cont(q, q, 0.0, chain), std::domain_error);
  EXPECT_THROW(check_cont(q, q, -0.1, chain), std::domain_error);
  EXPECT_THROW(check_cont(q, JointConfig::Zero(2), 0.1, chain), ValidationError);
}

TEST(DpLink, SingleColumn) {
  oracle::MaskGraph g(1, 3);
  g.set_valid(0, 0, false);
  const DPState dp = dp_forward(g);
  EXPECT_EQ(best_final_slot(dp), 1u);
  const LinkedPath path = trace_back(dp, g, 1);
  EXPECT_EQ(path.slots, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(path.boundaries.empty());
  EXPECT_EQ(dp.relaxations, 0u);
}

TEST(DpLink, PrefersContinuousRowOverShortcuts) {
  // 3 columns x 2 slots. Row 0 is continuous throughout; row 1 is continuous
  // too but longer. Cross links are discontinuous.
  oracle::MaskGraph g(3, 2);
  for (std::size_t x = 1; x < 3; ++x) {
    g.set_link(x, 0, 0, true, 1.0);
    g.set_link(x, 1, 1, true, 2.0);
  }
  const DPState dp = dp_forward(g);
  const LinkedPath path = trace_back(dp, g, best_final_slot(dp));
  EXPECT_EQ(path.slots, (std::vector<std::size_t>{0, 0, 0}));
  EXPECT_TRUE(path.boundaries.empty());
  EXPECT_EQ(dp.c[dp.index(2, 0)], 0);
  EXPECT_EQ(dp.l[dp.index(2, 0)], 2.0);

  // Break row 0 at column 2: row 1 now wins with no reconfigurations.
  g.set_link(2, 0, 0, false, 0.0);
  const DPState dp2 = dp_forward(g);
  EXPECT_EQ(trace_back(dp2, g, best_final_slot(dp2)).slots, (std::vector<std::size_t>{1, 1, 1}));
}

TEST(DpLink, ReconfigurationWhenNothingIsContinuous) {
  oracle::MaskGraph g(4, 2);
  g.set_link(1, 0, 0, true, 1.0);
  g.set_link(3, 1, 1, true, 1.0);
  const DPState dp = dp_forward(g);
  const LinkedPath path = trace_back(dp, g, best_final_slot(dp));
  EXPECT_EQ(path.boundaries.size(), 1u);
  EXPECT_EQ(replay(g, path.slots).first, 1);
}

TEST(DpLink, MatchesBruteForceOnRandomInstances) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.next() % 6;
    const std::size_t m = 1 + rng.next() % 4;
    const oracle::MaskGraph g =
        oracle::MaskGraph::random(rng, n, m, rng.uniform(0.2, 0.9), rng.uniform(0.0, 0.4));
    const oracle::BruteForceResult expected = oracle::brute_force_link(g);
    const DPState dp = dp_forward(g);
    const std::size_t final_slot = best_final_slot(dp);
    EXPECT_EQ(dp.c[dp.index(n - 1, final_slot)], expected.count) << trial;
    EXPECT_EQ(dp.l[dp.index(n - 1, final_slot)], expected.length) << trial;

    // Forward replay of the recovered path reproduces the optimum.
    const LinkedPath path = trace_back(dp, g, final_slot);
    ASSERT_EQ(path.slots.size(), n);
    for (std::size_t x = 0; x < n; ++x) ASSERT_TRUE(g.valid(x, path.slots[x]));
    const auto [c, l] = replay(g, path.slots);
    EXPECT_EQ(c, expected.count);
    EXPECT_EQ(l, expected.length);
    EXPECT_EQ(static_cast<std::int64_t>(path.boundaries.size()), c);
    for (std::size_t b : path.boundaries) {
      EXPECT_FALSE(g.continuous(b, path.slots[b - 1], path.slots[b]));
    }
    EXPECT_EQ(dp.relaxations, (n - 1) * m * m);
  }
}

TEST(DpLink, TiedOptimaAreAllSound) {
  // Every slot pair is continuous at zero distance: all m^n paths tie.
  const std::size_t n = 5, m = 3;
  oracle::MaskGraph g(n, m);
  for (std::size_t x = 1; x < n; ++x) {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) g.set_link(x, a, b, true, 0.0);
    }
  }
  EXPECT_EQ(oracle::brute_force_link(g).optimal_paths, 243u);
  const DPState dp = dp_forward(g);
  EXPECT_EQ(best_final_slot(dp), 0u);
  const LinkedPath path = trace_back(dp, g, 0);
  EXPECT_EQ(replay(g, path.slots), std::make_pair(std::int64_t{0}, 0.0));
}

TEST(DpLink, EmptyColumnIsInfeasible) {
  oracle::MaskGraph g(4, 2);
  g.set_valid(2, 0, false);
  g.set_valid(2, 1, false);
  try {
    dp_forward(g);
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_NE(std::string(e.what()).find("column 2"), std::string::npos);
  }
}

TEST(DpLink, TraceBackDetectsCorruptState) {
  oracle::MaskGraph g(3, 2);
  g.set_link(1, 0, 0, true, 1.0);
  g.set_link(2, 0, 0, true, 1.0);
  DPState dp = dp_forward(g);
  EXPECT_THROW(trace_back(dp, g, 5), std::logic_error);

  DPState broken = dp;
  broken.p[broken.index(2, 0)] = -1;
  EXPECT_THROW(trace_back(broken, g, 0), std::logic_error);

  DPState mislabeled = dp;
  mislabeled.link[mislabeled.index(2, 0)] = LinkKind::kReconfiguration;
  EXPECT_THROW(trace_back(mislabeled, g, 0), std::logic_error);

  DPState unreachable = dp;
  unreachable.c[unreachable.index(1, 0)] = DPState::kUnreachable;
  EXPECT_THROW(trace_back(unreachable, g, 0), std::logic_error);
}

TEST(DpLink, RelaxationCountIsQuadraticInSlots) {
  for (std::size_t n : {2u, 10u, 40u}) {
    for (std::size_t m : {1u, 5u, 12u}) {
      Rng rng(n * 100 + m);
      const DPState dp = dp_forward(oracle::MaskGraph::random(rng, n, m, 0.5, 0.2));
      EXPECT_EQ(dp.relaxations, (n - 1) * m * m);
    }
  }
}

TEST(LinkTable, RealTableGivesContinuousSegments) {
  const KinematicChain arm7 = load_chain_file(oracle::fixture("arm7.json"));
  Rng rng(8);
  const ReferenceTrajectory traj =
      generate_benchmark(BenchmarkKind::kScrew, arm7, default_task_box(arm7), rng);
  const IKTable table = build_table(arm7, traj, 20, {}, {}, 3);
  const std::vector<double> times = traj.timestamps();
  const LinkResult r = link_table(table, arm7, times);
  ASSERT_EQ(r.motion.size(), traj.size());
  for (std::size_t x = 1; x < r.motion.size(); ++x) {
    const bool cont = check_cont(r.motion.samples[x - 1].q, r.motion.samples[x].q,
                                 times[x] - times[x - 1], arm7);
    EXPECT_EQ(!cont, r.motion.is_boundary(x)) << x;
  }
  EXPECT_EQ(static_cast<std::int64_t>(r.motion.reconfiguration_count()),
            r.dp.c[r.dp.index(table.n() - 1, r.path.slots.back())]);
  EXPECT_EQ(dp_link(table, arm7, times).boundaries, r.motion.boundaries);
  EXPECT_THROW(link_table(table, arm7, std::vector<double>(3, 0.0)), ValidationError);
}

}  // namespace
}  // namespace iklink
