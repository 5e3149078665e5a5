#include "iklink/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "iklink/csv.hpp"
#include "iklink/errors.hpp"
#include "iklink/linker.hpp"

namespace iklink {

using nlohmann::json;

PlannerKind parse_planner(std::string_view name) {
  if (name == "iklink") return PlannerKind::kIKLink;
  if (name == "greedyik") return PlannerKind::kGreedyIK;
  if (name == "multigik") return PlannerKind::kMultiGIK;
  if (name == "multigik_x") return PlannerKind::kMultiGIKScaled;
  throw ValidationError("unknown planner '" + std::string(name) +
                        "' (expected iklink, greedyik, multigik or multigik_x)");
}

std::string to_string(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::kIKLink:
      return "iklink";
    case PlannerKind::kGreedyIK:
      return "greedyik";
    case PlannerKind::kMultiGIK:
      return "multigik";
    case PlannerKind::kMultiGIKScaled:
      return "multigik_x";
  }
  return "unknown";
}

JointMotion run_planner(PlannerKind planner, const KinematicChain& chain,
                        const ReferenceTrajectory& traj, const PlannerOptions& options,
                        std::uint64_t seed) {
  BaselineParams baseline = options.baseline;
  baseline.m = options.m;
  switch (planner) {
    case PlannerKind::kIKLink: {
      const IKTable table = build_table(chain, traj, options.m, options.ik, options.cluster, seed);
      const auto t = traj.timestamps();
      return dp_link(table, chain, t);
    }
    case PlannerKind::kGreedyIK:
      return greedy_ik_track(chain, traj, options.ik, baseline, seed);
    case PlannerKind::kMultiGIK:
      return multi_gik_track(chain, traj, options.ik, baseline, seed, false);
    case PlannerKind::kMultiGIKScaled:
      return multi_gik_track(chain, traj, options.ik, baseline, seed, true);
  }
  throw ValidationError("unknown planner");
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config field '") + key + "': " + e.what());
  }
}

Eigen::Vector3d read_vec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) throw ParseError(where + ": expected 3 numbers");
  return Eigen::Vector3d(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view document,
                                         const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("experiment config: top level must be an object");
  if (!doc.contains("chain")) throw ParseError("experiment config: missing field 'chain'");

  ExperimentConfig cfg;
  cfg.chain = doc["chain"].get<std::string>();
  if (cfg.chain.is_relative() && !base_dir.empty()) cfg.chain = base_dir / cfg.chain;

  if (doc.contains("benchmarks")) {
    cfg.benchmarks.clear();
    for (const auto& b : doc["benchmarks"]) cfg.benchmarks.push_back(parse_benchmark(b.get<std::string>()));
  }
  if (doc.contains("planners")) {
    cfg.planners.clear();
    for (const auto& p : doc["planners"]) cfg.planners.push_back(parse_planner(p.get<std::string>()));
  }
  const auto m = get_or<long long>(doc, "m", static_cast<long long>(cfg.m));
  cfg.k_multiplier = get_or<int>(doc, "k_multiplier", cfg.k_multiplier);
  cfg.trials = get_or<int>(doc, "trials", cfg.trials);
  cfg.seed = get_or<std::uint64_t>(doc, "seed", cfg.seed);
  cfg.tolerances.position = get_or<double>(doc, "pos_tol", cfg.tolerances.position);
  cfg.tolerances.rotation = get_or<double>(doc, "rot_tol", cfg.tolerances.rotation);
  cfg.cluster.epsilon = get_or<double>(doc, "eps", cfg.cluster.epsilon);
  cfg.cluster.min_points = get_or<int>(doc, "min_points", cfg.cluster.min_points);
  const auto metric = get_or<std::string>(doc, "metric", "euclidean");
  if (metric == "euclidean") {
    cfg.cluster.metric = JointMetric::kEuclidean;
  } else if (metric == "max") {
    cfg.cluster.metric = JointMetric::kMaxNorm;
  } else {
    throw ValidationError("metric must be 'euclidean' or 'max'");
  }
  cfg.discretize.dt = get_or<double>(doc, "dt", cfg.discretize.dt);
  cfg.discretize.density_per_meter = get_or<double>(doc, "density_m", cfg.discretize.density_per_meter);
  cfg.discretize.density_per_radian =
      get_or<double>(doc, "density_rad", cfg.discretize.density_per_radian);
  cfg.include_boundaries = get_or<bool>(doc, "include_boundaries", cfg.include_boundaries);
  cfg.record_timing = get_or<bool>(doc, "record_timing", cfg.record_timing);
  cfg.output_dir = get_or<std::string>(doc, "output_dir", cfg.output_dir.string());
  if (doc.contains("workspace_box")) {
    const json& b = doc["workspace_box"];
    if (!b.is_object() || !b.contains("min") || !b.contains("max")) {
      throw ParseError("workspace_box: expected {\"min\": [x,y,z], \"max\": [x,y,z]}");
    }
    cfg.box = WorkspaceBox{read_vec3(b["min"], "workspace_box.min"),
                           read_vec3(b["max"], "workspace_box.max")};
  }

  if (m < 1) throw ValidationError("m must be at least 1");
  cfg.m = static_cast<std::size_t>(m);
  if (cfg.trials < 1) throw ValidationError("trials must be at least 1");
  if (cfg.k_multiplier < 1) throw ValidationError("k_multiplier must be at least 1");
  if (!(cfg.tolerances.position > 0.0) || !(cfg.tolerances.rotation > 0.0)) {
    throw ValidationError("tolerances must be positive");
  }
  if (!(cfg.cluster.epsilon > 0.0)) throw ValidationError("eps must be positive");
  if (!(cfg.discretize.dt > 0.0)) throw ValidationError("dt must be positive");
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str(), path.parent_path());
}

// ---------------------------------------------------------------------------
// Running and reporting

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate a;
  if (values.empty()) return a;
  double sum = 0.0;
  for (double v : values) sum += v;
  a.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - a.mean) * (v - a.mean);
  a.stddev = std::sqrt(sq / static_cast<double>(values.size()));
  return a;
}

namespace {

constexpr char kMetricsHeader[] =
    "benchmark,trial,planner,status,num_reconfigurations,mean_joint_velocity,"
    "max_position_error,max_rotation_error,violations,waypoints,path_length,total_rotation";

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  return out;
}

std::string sanitize(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return s;
}

std::string fmt_pm(const Aggregate& a, const char* spec) {
  char buf[64];
  std::string f = std::string(spec) + "+-" + spec;
  std::snprintf(buf, sizeof(buf), f.c_str(), a.mean, a.stddev);
  return buf;
}

void write_metrics_row(std::ostream& out, const TrialRecord& r) {
  out << to_string(r.benchmark) << ',' << r.trial << ',' << to_string(r.planner) << ','
      << (r.ok ? "ok" : "failed: " + sanitize(r.error)) << ',' << r.metrics.num_reconfigurations
      << ',' << csv::format_double(r.metrics.mean_joint_velocity) << ','
      << csv::format_double(r.metrics.max_position_error) << ','
      << csv::format_double(r.metrics.max_rotation_error) << ',' << r.violations << ','
      << r.waypoints << ',' << csv::format_double(r.path_length) << ','
      << csv::format_double(r.total_rotation) << '\n';
}

struct GroupKey {
  BenchmarkKind benchmark;
  PlannerKind planner;
  bool operator<(const GroupKey& o) const {
    return std::pair(static_cast<int>(benchmark), static_cast<int>(planner)) <
           std::pair(static_cast<int>(o.benchmark), static_cast<int>(o.planner));
  }
};

struct GroupValues {
  std::vector<double> reconfig, velocity, pos_err, rot_err, waypoints, length, rotation;
  int failed = 0;
};

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const KinematicChain chain = load_chain_file(config.chain);
  const WorkspaceBox box = config.box.value_or(default_task_box(chain));
  std::filesystem::create_directories(config.output_dir);

  PlannerOptions options;
  options.m = config.m;
  options.ik.tolerances = config.tolerances;
  options.cluster = config.cluster;
  options.baseline.k_multiplier = config.k_multiplier;

  ExperimentReport report;
  std::ofstream timing;
  if (config.record_timing) {
    timing = open_out(config.output_dir / "timing.csv");
    timing << "benchmark,trial,planner,computation_time\n";
  }

  for (BenchmarkKind bench : config.benchmarks) {
    for (int trial = 0; trial < config.trials; ++trial) {
      const std::uint64_t trial_seed = derive_seed(
          config.seed, {static_cast<std::uint64_t>(bench), static_cast<std::uint64_t>(trial)});
      char dirname[32];
      std::snprintf(dirname, sizeof(dirname), "trial_%02d", trial);
      const auto trial_dir = config.output_dir / to_string(bench) / dirname;
      std::filesystem::create_directories(trial_dir);

      std::optional<ReferenceTrajectory> traj;
      std::string gen_error;
      try {
        Rng rng(derive_seed(trial_seed, {0}));
        ReachabilityOptions reach;
        reach.tolerances = config.tolerances;
        traj = generate_benchmark(bench, chain, box, rng, config.discretize, reach);
        write_trajectory_csv(*traj, trial_dir / "trajectory.csv");
      } catch (const std::exception& e) {
        gen_error = std::string("trajectory generation: ") + e.what();
      }

      for (PlannerKind planner : config.planners) {
        TrialRecord rec;
        rec.benchmark = bench;
        rec.trial = trial;
        rec.planner = planner;
        if (!traj) {
          rec.error = gen_error;
          report.records.push_back(rec);
          continue;
        }
        rec.waypoints = traj->size();
        rec.path_length = traj->path_length();
        rec.total_rotation = traj->total_rotation();
        try {
          // One seed for every planner of a trial: paired comparisons.
          const std::uint64_t planner_seed = derive_seed(trial_seed, {1});
          const auto start = std::chrono::steady_clock::now();
          const JointMotion motion = run_planner(planner, chain, *traj, options, planner_seed);
          const double elapsed =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          rec.metrics = evaluate(motion, *traj, chain, config.include_boundaries);
          rec.metrics.computation_time = elapsed;
          rec.violations = validate_motion(motion, *traj, chain, config.tolerances).size();
          rec.ok = true;
          write_motion_csv(motion, trial_dir / (to_string(planner) + ".csv"));
          if (timing.is_open()) {
            timing << to_string(bench) << ',' << trial << ',' << to_string(planner) << ','
                   << csv::format_double(elapsed) << '\n';
          }
        } catch (const std::exception& e) {
          rec.error = e.what();
        }
        report.records.push_back(rec);
      }
    }
  }

  std::ofstream metrics = open_out(config.output_dir / "metrics.csv");
  metrics << kMetricsHeader << '\n';
  for (const auto& r : report.records) write_metrics_row(metrics, r);
  metrics.close();
  write_reconfiguration_long_csv(config.output_dir / "metrics.csv",
                                 config.output_dir / "reconfigurations.csv");

  std::map<GroupKey, GroupValues> groups;
  for (const auto& r : report.records) {
    GroupValues& g = groups[GroupKey{r.benchmark, r.planner}];
    if (!r.ok) {
      ++g.failed;
      continue;
    }
    g.reconfig.push_back(static_cast<double>(r.metrics.num_reconfigurations));
    g.velocity.push_back(r.metrics.mean_joint_velocity);
    g.pos_err.push_back(r.metrics.max_position_error);
    g.rot_err.push_back(r.metrics.max_rotation_error);
    g.waypoints.push_back(static_cast<double>(r.waypoints));
    g.length.push_back(r.path_length);
    g.rotation.push_back(r.total_rotation);
  }

  std::ofstream agg = open_out(config.output_dir / "aggregates.csv");
  agg << "benchmark,planner,trials_ok,trials_failed";
  for (const char* name : {"num_reconfigurations", "mean_joint_velocity", "max_position_error",
                           "max_rotation_error", "waypoints", "path_length", "total_rotation"}) {
    agg << ',' << name << "_mean," << name << "_std";
  }
  agg << '\n';

  std::ofstream summary = open_out(config.output_dir / "summary.txt");
  char line[512];
  std::snprintf(line, sizeof(line), "%-8s %-11s %-14s %-14s %-18s %-18s %-16s %-12s %-14s\n",
                "Bench", "Method", "Reconfig", "JointVel", "MaxPosErr(m)", "MaxRotErr(rad)",
                "Waypoints", "Len(m)", "Rot(rad)");
  summary << "chain: " << chain.name() << "  m: " << config.m << "  trials: " << config.trials
          << "  seed: " << config.seed << '\n'
          << line;
  for (const auto& [key, g] : groups) {
    const Aggregate a_rc = aggregate(g.reconfig), a_v = aggregate(g.velocity),
                    a_p = aggregate(g.pos_err), a_r = aggregate(g.rot_err),
                    a_w = aggregate(g.waypoints), a_l = aggregate(g.length),
                    a_t = aggregate(g.rotation);
    agg << to_string(key.benchmark) << ',' << to_string(key.planner) << ',' << g.reconfig.size()
        << ',' << g.failed;
    for (const Aggregate& a : {a_rc, a_v, a_p, a_r, a_w, a_l, a_t}) {
      agg << ',' << csv::format_double(a.mean) << ',' << csv::format_double(a.stddev);
    }
    agg << '\n';
    std::snprintf(line, sizeof(line), "%-8s %-11s %-14s %-14s %-18s %-18s %-16s %-12s %-14s%s\n",
                  to_string(key.benchmark).c_str(), to_string(key.planner).c_str(),
                  fmt_pm(a_rc, "%.2f").c_str(), fmt_pm(a_v, "%.2f").c_str(),
                  fmt_pm(a_p, "%.1e").c_str(), fmt_pm(a_r, "%.1e").c_str(),
                  fmt_pm(a_w, "%.1f").c_str(), fmt_pm(a_l, "%.2f").c_str(),
                  fmt_pm(a_t, "%.2f").c_str(),
                  g.failed > 0 ? ("  (" + std::to_string(g.failed) + " failed)").c_str() : "");
    summary << line;
  }
  return report;
}

void write_reconfiguration_long_csv(const std::filesystem::path& metrics_csv,
                                    const std::filesystem::path& out_path) {
  std::ifstream in(metrics_csv);
  if (!in) throw ParseError("cannot open metrics file " + metrics_csv.string());
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader) {
    throw ParseError(metrics_csv.string() + ": unexpected metrics header");
  }
  std::ofstream out = open_out(out_path);
  out << "trajectory,benchmark,trial,planner,num_reconfigurations\n";
  std::map<std::pair<std::string, std::string>, int> ids;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv::split_line(line);
    if (f.size() < 5) throw ParseError(metrics_csv.string() + ": short metrics row");
    if (f[3] != "ok") continue;
    const auto key = std::pair(f[0], f[1]);
    auto it = ids.find(key);
    if (it == ids.end()) it = ids.emplace(key, static_cast<int>(ids.size())).first;
    out << it->second << ',' << f[0] << ',' << f[1] << ',' << f[2] << ',' << f[4] << '\n';
  }
}

}  // namespace iklink
