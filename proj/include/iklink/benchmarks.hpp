#pragma once

#include <array>
#include <string>
#include <string_view>

#include "iklink/geometry.hpp"
#include "iklink/ik.hpp"
#include "iklink/random.hpp"
#include "iklink/robot.hpp"
#include "iklink/trajectory.hpp"

namespace iklink {

/// Axis-aligned region (world frame) from which task sites are drawn.
struct WorkspaceBox {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();

  Eigen::Vector3d sample(Rng& rng) const;
};

/// A box in front of the chain (+x), spanning from just above the shoulder
/// down towards the base, scaled by the chain's reach.
WorkspaceBox default_task_box(const KinematicChain& chain);

// Task frame conventions (tool z axis is the approach direction):
//  - weld: tool tip on the seam, approach inclined 45 degrees down towards the
//    cylinder axis, tool x along the direction of travel;
//  - screw: approach straight down, rotating clockwise as seen along the
//    approach axis while descending;
//  - valve: horizontal handwheel, approach straight down, grip frame fixed to
//    the rim and turning clockwise seen from above.
inline constexpr double kWeldInclination = M_PI / 4.0;
inline constexpr double kValveRadius = 0.15;

struct WeldParams {
  Eigen::Vector3d center;  // seam circle centre on the plane
  double radius = 0.15;
};

struct ScrewParams {
  Eigen::Vector3d top;  // screw head position at the start
  double length = 0.03;
  double turns = 7.5;
  double start_yaw = 0.0;
};

struct ValveParams {
  Eigen::Vector3d center;
  double turns = 4.0;
  double start_angle = 0.0;
};

WeldParams sample_weld_params(Rng& rng, const WorkspaceBox& box);
ScrewParams sample_screw_params(Rng& rng, const WorkspaceBox& box);
ValveParams sample_valve_params(Rng& rng, const WorkspaceBox& box);

PoseCurve weld_curve(const WeldParams& p);
PoseCurve screw_curve(const ScrewParams& p);
PoseCurve valve_curve(const ValveParams& p);

ReferenceTrajectory gen_welding(Rng& rng, const WorkspaceBox& box,
                                const DiscretizeOptions& options = {});
ReferenceTrajectory gen_screw(Rng& rng, const WorkspaceBox& box,
                              const DiscretizeOptions& options = {});
ReferenceTrajectory gen_valve(Rng& rng, const WorkspaceBox& box,
                              const DiscretizeOptions& options = {});

/// Two C0-joined cubic pose curves; the second starts at the first's last control.
struct BezierPair {
  CubicPoseCurve first;
  CubicPoseCurve second;
};

/// Control poses are forward kinematics of uniform joint samples, so every
/// control point lies in the chain's workspace.
BezierPair sample_bezier_pair(const KinematicChain& chain, Rng& rng);
PoseCurve bezier_pair_curve(const BezierPair& pair);

struct ReachabilityOptions {
  IKTolerances tolerances;
  int attempts = 20;     // sample_ik restarts per waypoint
  int max_retries = 100; // task resamples before giving up
};

/// True when every waypoint has an IK solution. The previous waypoint's
/// solution is tried as a warm start before random restarts.
bool trajectory_reachable(const KinematicChain& chain, const ReferenceTrajectory& traj,
                          const ReachabilityOptions& options, Rng& rng);

/// Resamples control poses until every discretized waypoint is reachable.
/// Throws InfeasibleError when the retry budget runs out.
ReferenceTrajectory gen_random_bezier(const KinematicChain& chain, Rng& rng,
                                      const DiscretizeOptions& options = {},
                                      const ReachabilityOptions& reach = {});

enum class BenchmarkKind { kRandom, kWeld, kScrew, kValve };

BenchmarkKind parse_benchmark(std::string_view name);
std::string to_string(BenchmarkKind kind);

/// Generates a reachable trajectory of the given kind on `chain`; weld, screw
/// and valve sites are resampled inside `box` until reachable.
ReferenceTrajectory generate_benchmark(BenchmarkKind kind, const KinematicChain& chain,
                                       const WorkspaceBox& box, Rng& rng,
                                       const DiscretizeOptions& options = {},
                                       const ReachabilityOptions& reach = {});

}  // namespace iklink
