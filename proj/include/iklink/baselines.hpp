#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "iklink/ik.hpp"
#include "iklink/motion.hpp"
#include "iklink/robot.hpp"
#include "iklink/trajectory.hpp"

namespace iklink {

struct BaselineParams {
  std::size_t m = 300;        // parallel greedy trackers per MultiGIK round
  int restart_attempts = 100; // sample_ik restarts when GreedyIK re-seeds
  int tracker_attempts = 10;  // sample_ik restarts per MultiGIK tracker seed
  int k_multiplier = 30;      // MultiGIKxK runs m * k trackers
};

/// Single greedy tracker. A solver failure or a velocity-limit jump at a step
/// counts as a reconfiguration: the tracker is re-seeded by random sampling at
/// that waypoint. Throws InfeasibleError when re-seeding fails.
JointMotion greedy_ik_track(const WaypointSolver& solver, const KinematicChain& chain,
                            std::span<const double> timestamps, const BaselineParams& params,
                            std::uint64_t seed);

JointMotion greedy_ik_track(const KinematicChain& chain, const ReferenceTrajectory& traj,
                            const IKSettings& settings, const BaselineParams& params,
                            std::uint64_t seed);

/// One MultiGIK round: every tracker's last waypoint (or -1 if it could not
/// be seeded) and the winner.
struct MultiGikRound {
  std::size_t start = 0;
  std::vector<std::ptrdiff_t> reach;
  std::size_t winner = 0;
};

/// Runs `trackers` greedy trackers from random seeds at the current start
/// waypoint, keeps the one that gets furthest (lowest index on ties), and
/// restarts after its last waypoint until the trajectory is covered.
JointMotion multi_gik_track(const WaypointSolver& solver, const KinematicChain& chain,
                            std::span<const double> timestamps, std::size_t trackers,
                            const BaselineParams& params, std::uint64_t seed,
                            std::vector<MultiGikRound>* rounds = nullptr);

/// MultiGIK with params.m trackers, or params.m * params.k_multiplier when
/// `scaled` (the MultiGIKxK budget-matched variant).
JointMotion multi_gik_track(const KinematicChain& chain, const ReferenceTrajectory& traj,
                            const IKSettings& settings, const BaselineParams& params,
                            std::uint64_t seed, bool scaled = false,
                            std::vector<MultiGikRound>* rounds = nullptr);

}  // namespace iklink
