#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iklink/baselines.hpp"
#include "iklink/benchmarks.hpp"
#include "iklink/iktable.hpp"
#include "iklink/metrics.hpp"

namespace iklink {

enum class PlannerKind { kIKLink, kGreedyIK, kMultiGIK, kMultiGIKScaled };

PlannerKind parse_planner(std::string_view name);
std::string to_string(PlannerKind kind);

struct PlannerOptions {
  std::size_t m = 300;
  IKSettings ik;
  ClusterParams cluster;
  BaselineParams baseline;
};

/// Runs one planner on a trajectory. MultiGIK uses options.m trackers,
/// the scaled variant options.m * baseline.k_multiplier.
JointMotion run_planner(PlannerKind planner, const KinematicChain& chain,
                        const ReferenceTrajectory& traj, const PlannerOptions& options,
                        std::uint64_t seed);

struct ExperimentConfig {
  std::filesystem::path chain;
  std::vector<BenchmarkKind> benchmarks{BenchmarkKind::kRandom};
  std::vector<PlannerKind> planners{PlannerKind::kIKLink};
  std::size_t m = 300;
  int k_multiplier = 30;
  int trials = 10;
  std::uint64_t seed = 0;
  IKTolerances tolerances;
  ClusterParams cluster;
  DiscretizeOptions discretize;
  std::optional<WorkspaceBox> box;  // defaults to default_task_box(chain)
  bool include_boundaries = false;
  bool record_timing = false;  // wall-clock times are not reproducible
  std::filesystem::path output_dir = "results";
};

/// JSON document mirroring ExperimentConfig. A relative `chain` path is taken
/// relative to the config file. Throws ParseError / ValidationError.
ExperimentConfig parse_experiment_config(std::string_view document,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct TrialRecord {
  BenchmarkKind benchmark;
  int trial = 0;
  PlannerKind planner;
  bool ok = false;
  std::string error;
  MotionMetrics metrics;
  std::size_t violations = 0;
  std::size_t waypoints = 0;
  double path_length = 0.0;
  double total_rotation = 0.0;
};

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

Aggregate aggregate(const std::vector<double>& values);

struct ExperimentReport {
  std::vector<TrialRecord> records;
};

/// Generates every (benchmark, trial) trajectory, runs every planner on it and
/// writes, under output_dir:
///   metrics.csv, aggregates.csv, summary.txt, reconfigurations.csv
///   (deterministic for a fixed seed), timing.csv when record_timing, and per trial
///   <benchmark>/trial_<i>/trajectory.csv and <planner>.csv motions.
/// A failing trial is recorded and the run continues.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Long-format per-trial reconfiguration counts from a metrics.csv file.
void write_reconfiguration_long_csv(const std::filesystem::path& metrics_csv,
                                    const std::filesystem::path& out);

}  // namespace iklink
