#include "iklink/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "iklink/csv.hpp"
#include "iklink/errors.hpp"

namespace iklink {

namespace {

constexpr int kEstimateChords = 1000;
constexpr char kHeader[] = "t,x,y,z,qw,qx,qy,qz";

}  // namespace

ReferenceTrajectory::ReferenceTrajectory(std::vector<Waypoint> waypoints)
    : waypoints_(std::move(waypoints)) {
  if (waypoints_.empty()) throw ValidationError("trajectory must contain at least one waypoint");
  for (std::size_t i = 0; i < waypoints_.size(); ++i) {
    if (!std::isfinite(waypoints_[i].time)) {
      throw ValidationError("waypoint " + std::to_string(i) + ": timestamp is not finite");
    }
    if (i > 0 && !(waypoints_[i].time > waypoints_[i - 1].time)) {
      throw ValidationError("waypoint " + std::to_string(i) +
                            ": timestamps must be strictly increasing");
    }
  }
}

std::vector<Pose> ReferenceTrajectory::poses() const {
  std::vector<Pose> out;
  out.reserve(waypoints_.size());
  for (const auto& w : waypoints_) out.push_back(w.pose);
  return out;
}

std::vector<double> ReferenceTrajectory::timestamps() const {
  std::vector<double> out;
  out.reserve(waypoints_.size());
  for (const auto& w : waypoints_) out.push_back(w.time);
  return out;
}

double ReferenceTrajectory::path_length() const {
  double sum = 0.0;
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    sum += (waypoints_[i].pose.translation() - waypoints_[i - 1].pose.translation()).norm();
  }
  return sum;
}

double ReferenceTrajectory::total_rotation() const {
  double sum = 0.0;
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    sum += geodesic_angle(waypoints_[i - 1].pose.orientation(), waypoints_[i].pose.orientation());
  }
  return sum;
}

std::size_t waypoint_count(double length, double rotation, const DiscretizeOptions& options) {
  if (length <= 0.0 && rotation <= 0.0) return 1;
  const double wanted =
      std::max(length * options.density_per_meter, rotation * options.density_per_radian);
  // Guard against chord sums that land a hair above an integer.
  const double n = std::ceil(wanted - 1e-9);
  return std::max<std::size_t>(2, static_cast<std::size_t>(n));
}

ReferenceTrajectory discretize(const PoseCurve& curve, const DiscretizeOptions& options) {
  if (!(options.density_per_meter > 0.0) || !(options.density_per_radian > 0.0)) {
    throw ValidationError("waypoint densities must be positive");
  }
  if (!(options.dt > 0.0)) throw ValidationError("dt must be positive");

  double length = 0.0;
  double rotation = 0.0;
  {
    Pose prev = curve(0.0);
    for (int i = 1; i <= kEstimateChords; ++i) {
      const Pose cur = curve(static_cast<double>(i) / kEstimateChords);
      const PoseError e = pose_error(prev, cur);
      length += e.position_error;
      rotation += e.rotation_error;
      prev = cur;
    }
  }
  const std::size_t count = waypoint_count(length, rotation, options);
  if (count == 1) return ReferenceTrajectory({Waypoint{0.0, curve(0.0)}});

  // Arc-length table in the combined measure, fine enough to invert.
  const double meters_per_radian = options.density_per_radian / options.density_per_meter;
  const std::size_t samples = std::max<std::size_t>(kEstimateChords, 16 * count);
  std::vector<double> us(samples + 1);
  std::vector<double> measure(samples + 1, 0.0);
  Pose prev = curve(0.0);
  for (std::size_t j = 1; j <= samples; ++j) {
    us[j] = static_cast<double>(j) / static_cast<double>(samples);
    const Pose cur = curve(us[j]);
    const PoseError e = pose_error(prev, cur);
    measure[j] = measure[j - 1] + e.position_error + meters_per_radian * e.rotation_error;
    prev = cur;
  }
  const double total = measure.back();

  std::vector<Waypoint> waypoints;
  waypoints.reserve(count);
  std::size_t j = 0;
  for (std::size_t i = 0; i < count; ++i) {
    double u;
    if (i == 0) {
      u = 0.0;
    } else if (i + 1 == count) {
      u = 1.0;
    } else {
      const double s = total * static_cast<double>(i) / static_cast<double>(count - 1);
      while (j + 1 < samples && measure[j + 1] < s) ++j;
      const double span = measure[j + 1] - measure[j];
      const double frac = span > 0.0 ? (s - measure[j]) / span : 0.0;
      u = us[j] + std::clamp(frac, 0.0, 1.0) * (us[j + 1] - us[j]);
    }
    waypoints.push_back(Waypoint{static_cast<double>(i) * options.dt, curve(u)});
  }
  return ReferenceTrajectory(std::move(waypoints));
}

void write_trajectory_csv(const ReferenceTrajectory& traj, std::ostream& out) {
  out << kHeader << '\n';
  for (const auto& w : traj.waypoints()) {
    const auto& t = w.pose.translation();
    const auto& q = w.pose.orientation();
    out << csv::format_double(w.time);
    for (double v : {t.x(), t.y(), t.z(), q.w(), q.x(), q.y(), q.z()}) {
      out << ',' << csv::format_double(v);
    }
    out << '\n';
  }
}

void write_trajectory_csv(const ReferenceTrajectory& traj, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write trajectory file " + path.string());
  write_trajectory_csv(traj, out);
  if (!out) throw ParseError("failed writing trajectory file " + path.string());
}

ReferenceTrajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("trajectory file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) {
    throw ParseError(std::string("trajectory header must be '") + kHeader + "'");
  }
  std::vector<Waypoint> waypoints;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = csv::split_line(line);
    const std::string ctx = "trajectory line " + std::to_string(lineno);
    if (fields.size() != 8) throw ParseError(ctx + ": expected 8 fields");
    double v[8];
    for (int k = 0; k < 8; ++k) v[k] = csv::parse_double(fields[k], ctx);
    const Eigen::Quaterniond q(v[4], v[5], v[6], v[7]);
    if (std::abs(q.norm() - 1.0) > 1e-6) throw ParseError(ctx + ": quaternion is not unit-length");
    waypoints.push_back(Waypoint{v[0], Pose(Eigen::Vector3d(v[1], v[2], v[3]), q)});
  }
  try {
    return ReferenceTrajectory(std::move(waypoints));
  } catch (const ValidationError& e) {
    throw ParseError(std::string("trajectory file: ") + e.what());
  }
}

ReferenceTrajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open trajectory file " + path.string());
  return read_trajectory_csv(in);
}

}  // namespace iklink
