// Command-line front end: trajectory generation, planning, evaluation and
// seeded benchmark runs.
//
// Exit codes: 0 success, 2 validation or infeasible input, 3 I/O or parse error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "iklink/benchmarks.hpp"
#include "iklink/csv.hpp"
#include "iklink/errors.hpp"
#include "iklink/experiment.hpp"
#include "iklink/metrics.hpp"
#include "iklink/motion.hpp"

namespace {

using namespace iklink;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitParse = 3;

struct GenArgs {
  std::string benchmark;
  std::string chain;
  std::uint64_t seed = 0;
  std::string out;
  DiscretizeOptions discretize;
};

struct PlanArgs {
  std::string planner;
  std::string chain;
  std::string traj;
  std::size_t m = 300;
  int k_mult = 1;
  std::uint64_t seed = 0;
  std::string out;
  double eps = 0.05;
  double pos_tol = 1e-3;
  double rot_tol = 1e-2;
  std::string table_out;
};

struct EvalArgs {
  std::string chain;
  std::string traj;
  std::string motion;
  std::string out;
  double pos_tol = 1e-3;
  double rot_tol = 1e-2;
  bool include_boundaries = false;
};

struct RadarArgs {
  std::string metrics;
  std::string out;
};

int run_gen(const GenArgs& a) {
  const KinematicChain chain = load_chain_file(a.chain);
  const BenchmarkKind kind = parse_benchmark(a.benchmark);
  Rng rng(a.seed);
  const ReferenceTrajectory traj =
      generate_benchmark(kind, chain, default_task_box(chain), rng, a.discretize, {});
  std::filesystem::create_directories(a.out);
  write_trajectory_csv(traj, std::filesystem::path(a.out) / "trajectory.csv");
  std::cout << a.benchmark << ": " << traj.size() << " waypoints, length "
            << traj.path_length() << " m, rotation " << traj.total_rotation() << " rad\n";
  return kExitOk;
}

int run_plan(const PlanArgs& a) {
  const KinematicChain chain = load_chain_file(a.chain);
  const ReferenceTrajectory traj = read_trajectory_csv(a.traj);
  PlannerOptions options;
  options.m = a.m;
  options.ik.tolerances = IKTolerances{a.pos_tol, a.rot_tol};
  options.cluster.epsilon = a.eps;
  options.baseline.k_multiplier = a.k_mult;
  const PlannerKind planner = parse_planner(a.planner);
  const bool scaled = planner == PlannerKind::kMultiGIK && a.k_mult > 1;
  const JointMotion motion =
      run_planner(scaled ? PlannerKind::kMultiGIKScaled : planner, chain, traj, options, a.seed);
  if (!a.table_out.empty()) {
    if (planner != PlannerKind::kIKLink) throw ValidationError("--table is only produced by iklink");
    write_table_csv(build_table(chain, traj, a.m, options.ik, options.cluster, a.seed),
                    a.table_out);
  }
  write_motion_csv(motion, a.out);
  std::cout << a.planner << ": " << motion.reconfiguration_count() << " reconfigurations over "
            << motion.size() << " samples\n";
  return kExitOk;
}

const char* violation_name(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kSampleCount:
      return "sample_count";
    case Violation::Kind::kTimestamp:
      return "timestamp";
    case Violation::Kind::kDimension:
      return "dimension";
    case Violation::Kind::kBoundary:
      return "boundary";
    case Violation::Kind::kPositionLimit:
      return "position_limit";
    case Violation::Kind::kPositionTolerance:
      return "position_tolerance";
    case Violation::Kind::kRotationTolerance:
      return "rotation_tolerance";
    case Violation::Kind::kVelocity:
      return "velocity";
  }
  return "unknown";
}

int run_eval(const EvalArgs& a) {
  const KinematicChain chain = load_chain_file(a.chain);
  const ReferenceTrajectory traj = read_trajectory_csv(a.traj);
  const JointMotion motion = read_motion_csv(a.motion);
  const IKTolerances tol{a.pos_tol, a.rot_tol};
  const auto violations = validate_motion(motion, traj, chain, tol);

  std::ofstream out(a.out);
  if (!out) throw ParseError("cannot write " + a.out);
  out << "metric,value\n";
  bool comparable = true;
  try {
    const MotionMetrics m = evaluate(motion, traj, chain, a.include_boundaries);
    out << "num_reconfigurations," << m.num_reconfigurations << '\n'
        << "mean_joint_velocity," << csv::format_double(m.mean_joint_velocity) << '\n'
        << "max_position_error," << csv::format_double(m.max_position_error) << '\n'
        << "max_rotation_error," << csv::format_double(m.max_rotation_error) << '\n';
  } catch (const ValidationError&) {
    comparable = false;
  }
  out << "violations," << violations.size() << '\n';
  for (const auto& v : violations) {
    out << "violation," << violation_name(v.kind) << ':' << v.index << ':' << v.joint << ':'
        << csv::format_double(v.value) << '\n';
    std::cerr << "violation: " << v.message << '\n';
  }
  if (!comparable || !violations.empty()) return kExitValidation;
  return kExitOk;
}

int run_bench(const std::string& config_path, bool timing) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  cfg.record_timing = cfg.record_timing || timing;
  const ExperimentReport report = run_experiment(cfg);
  std::size_t failed = 0;
  for (const auto& r : report.records) failed += r.ok ? 0 : 1;
  std::ifstream summary(cfg.output_dir / "summary.txt");
  std::cout << summary.rdbuf();
  if (failed > 0) std::cout << failed << " planner runs failed (see metrics.csv)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconfiguration-aware trajectory tracking for serial manipulators"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a benchmark reference trajectory");
  gen_cmd->add_option("--benchmark", gen.benchmark, "random | weld | screw | valve")->required();
  gen_cmd->add_option("--chain", gen.chain, "Chain description (JSON)")->required();
  gen_cmd->add_option("--seed", gen.seed, "Master seed")->required();
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();
  gen_cmd->add_option("--density-m", gen.discretize.density_per_meter, "Waypoints per meter")
      ->capture_default_str();
  gen_cmd->add_option("--density-rad", gen.discretize.density_per_radian, "Waypoints per radian")
      ->capture_default_str();
  gen_cmd->add_option("--dt", gen.discretize.dt, "Seconds between waypoints")->capture_default_str();

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Plan a joint motion for a trajectory");
  plan_cmd->add_option("--planner", plan.planner, "iklink | greedyik | multigik")->required();
  plan_cmd->add_option("--chain", plan.chain, "Chain description (JSON)")->required();
  plan_cmd->add_option("--traj", plan.traj, "Trajectory CSV")->required();
  plan_cmd->add_option("--m", plan.m, "IK solutions per waypoint / MultiGIK trackers")
      ->capture_default_str();
  plan_cmd->add_option("--k-mult", plan.k_mult, "MultiGIK tracker multiplier")
      ->capture_default_str();
  plan_cmd->add_option("--seed", plan.seed, "Master seed")->required();
  plan_cmd->add_option("--out", plan.out, "Motion CSV")->required();
  plan_cmd->add_option("--eps", plan.eps, "Cluster merge radius (rad)")->capture_default_str();
  plan_cmd->add_option("--pos-tol", plan.pos_tol, "IK position tolerance (m)")->capture_default_str();
  plan_cmd->add_option("--rot-tol", plan.rot_tol, "IK rotation tolerance (rad)")
      ->capture_default_str();
  plan_cmd->add_option("--table", plan.table_out, "Also write the IK table CSV (iklink only)");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Compute metrics and validate a motion");
  eval_cmd->add_option("--chain", eval.chain, "Chain description (JSON)")->required();
  eval_cmd->add_option("--traj", eval.traj, "Trajectory CSV")->required();
  eval_cmd->add_option("--motion", eval.motion, "Motion CSV")->required();
  eval_cmd->add_option("--out", eval.out, "Metrics CSV")->required();
  eval_cmd->add_option("--pos-tol", eval.pos_tol, "Position tolerance (m)")->capture_default_str();
  eval_cmd->add_option("--rot-tol", eval.rot_tol, "Rotation tolerance (rad)")->capture_default_str();
  eval_cmd->add_flag("--include-boundaries", eval.include_boundaries,
                     "Count reconfiguration pairs in the mean joint velocity");

  std::string config;
  auto* bench_cmd = app.add_subcommand("bench", "Run a full seeded experiment");
  bench_cmd->add_option("--config", config, "Experiment config (JSON)")->required();
  bool timing = false;
  bench_cmd->add_flag("--timing", timing, "Also write wall-clock planner times to timing.csv");

  RadarArgs radar;
  auto* radar_cmd =
      app.add_subcommand("radar", "Per-trial reconfiguration counts in long format for plotting");
  radar_cmd->add_option("--metrics", radar.metrics, "metrics.csv from a bench run")->required();
  radar_cmd->add_option("--out", radar.out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*plan_cmd) return run_plan(plan);
    if (*eval_cmd) return run_eval(eval);
    if (*bench_cmd) return run_bench(config, timing);
    if (*radar_cmd) {
      write_reconfiguration_long_csv(radar.metrics, radar.out);
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
