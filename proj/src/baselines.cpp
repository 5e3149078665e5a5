#include "iklink/baselines.hpp"

#include <string>

#include "iklink/errors.hpp"
#include "iklink/linker.hpp"

namespace iklink {

namespace {

void require_timestamps(const WaypointSolver& solver, std::span<const double> timestamps) {
  if (timestamps.size() != solver.waypoint_count()) {
    throw ValidationError("timestamp count does not match waypoint count");
  }
  if (timestamps.empty()) throw ValidationError("trajectory is empty");
}

}  // namespace

JointMotion greedy_ik_track(const WaypointSolver& solver, const KinematicChain& chain,
                            std::span<const double> timestamps, const BaselineParams& params,
                            std::uint64_t seed) {
  require_timestamps(solver, timestamps);
  auto reseed = [&](std::size_t x) {
    Rng rng(derive_seed(seed, {x, 0, 0}));
    auto q = solver.sample(x, rng, params.restart_attempts);
    if (!q) {
      throw InfeasibleError("GreedyIK: no IK solution for waypoint " + std::to_string(x) +
                            " after " + std::to_string(params.restart_attempts) + " attempts");
    }
    return std::move(*q);
  };

  JointMotion motion;
  motion.samples.push_back(MotionSample{timestamps[0], reseed(0)});
  for (std::size_t x = 1; x < timestamps.size(); ++x) {
    const JointConfig& prev = motion.samples.back().q;
    auto next = solver.propagate(x, prev);
    if (!next || !check_cont(prev, *next, timestamps[x] - timestamps[x - 1], chain)) {
      motion.boundaries.push_back(x);
      next = reseed(x);
    }
    motion.samples.push_back(MotionSample{timestamps[x], std::move(*next)});
  }
  return motion;
}

JointMotion greedy_ik_track(const KinematicChain& chain, const ReferenceTrajectory& traj,
                            const IKSettings& settings, const BaselineParams& params,
                            std::uint64_t seed) {
  const ChainWaypointSolver solver(chain, traj.poses(), settings);
  const auto t = traj.timestamps();
  return greedy_ik_track(solver, chain, t, params, seed);
}

JointMotion multi_gik_track(const WaypointSolver& solver, const KinematicChain& chain,
                            std::span<const double> timestamps, std::size_t trackers,
                            const BaselineParams& params, std::uint64_t seed,
                            std::vector<MultiGikRound>* rounds) {
  require_timestamps(solver, timestamps);
  if (trackers == 0) throw ValidationError("MultiGIK needs at least one tracker");
  const std::size_t n = timestamps.size();

  JointMotion motion;
  std::size_t start = 0;
  while (start < n) {
    MultiGikRound round;
    round.start = start;
    std::vector<JointConfig> best;
    for (std::size_t i = 0; i < trackers; ++i) {
      // Same stream as IK table slot (start, i) so paired runs share samples.
      Rng rng(derive_seed(seed, {start, i, 0}));
      auto q = solver.sample(start, rng, params.tracker_attempts);
      if (!q) {
        round.reach.push_back(-1);
        continue;
      }
      std::vector<JointConfig> segment{std::move(*q)};
      for (std::size_t x = start + 1; x < n; ++x) {
        auto next = solver.propagate(x, segment.back());
        if (!next || !check_cont(segment.back(), *next, timestamps[x] - timestamps[x - 1], chain)) {
          break;
        }
        segment.push_back(std::move(*next));
      }
      round.reach.push_back(static_cast<std::ptrdiff_t>(start + segment.size() - 1));
      if (segment.size() > best.size()) {
        best = std::move(segment);
        round.winner = i;
      }
    }
    if (best.empty()) {
      throw InfeasibleError("MultiGIK: no tracker could be seeded at waypoint " +
                            std::to_string(start));
    }
    if (start > 0) motion.boundaries.push_back(start);
    for (std::size_t j = 0; j < best.size(); ++j) {
      motion.samples.push_back(MotionSample{timestamps[start + j], std::move(best[j])});
    }
    start += best.size();
    if (rounds) rounds->push_back(std::move(round));
  }
  return motion;
}

JointMotion multi_gik_track(const KinematicChain& chain, const ReferenceTrajectory& traj,
                            const IKSettings& settings, const BaselineParams& params,
                            std::uint64_t seed, bool scaled, std::vector<MultiGikRound>* rounds) {
  const ChainWaypointSolver solver(chain, traj.poses(), settings);
  const auto t = traj.timestamps();
  const std::size_t trackers =
      scaled ? params.m * static_cast<std::size_t>(params.k_multiplier) : params.m;
  return multi_gik_track(solver, chain, t, trackers, params, seed, rounds);
}

}  // namespace iklink
