#include "iklink/motion.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <string>

#include "iklink/csv.hpp"
#include "iklink/errors.hpp"

namespace iklink {

bool JointMotion::is_boundary(std::size_t x) const {
  return std::binary_search(boundaries.begin(), boundaries.end(), x);
}

void write_motion_csv(const JointMotion& motion, std::ostream& out) {
  const int k = motion.samples.empty() ? 0 : static_cast<int>(motion.samples.front().q.size());
  out << "t,reconfig";
  for (int j = 0; j < k; ++j) out << ",q" << j;
  out << '\n';
  for (std::size_t i = 0; i < motion.samples.size(); ++i) {
    const auto& s = motion.samples[i];
    out << csv::format_double(s.time) << ',' << (motion.is_boundary(i) ? 1 : 0);
    for (int j = 0; j < s.q.size(); ++j) out << ',' << csv::format_double(s.q[j]);
    out << '\n';
  }
}

void write_motion_csv(const JointMotion& motion, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write motion file " + path.string());
  write_motion_csv(motion, out);
  if (!out) throw ParseError("failed writing motion file " + path.string());
}

JointMotion read_motion_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("motion file is empty");
  const auto header = csv::split_line(line);
  if (header.size() < 3 || header[0] != "t" || header[1] != "reconfig") {
    throw ParseError("motion header must be 't,reconfig,q0..q{k-1}'");
  }
  const std::size_t k = header.size() - 2;
  for (std::size_t j = 0; j < k; ++j) {
    if (header[j + 2] != "q" + std::to_string(j)) {
      throw ParseError("motion header column " + std::to_string(j + 2) + " must be q" +
                       std::to_string(j));
    }
  }
  JointMotion motion;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = csv::split_line(line);
    const std::string ctx = "motion line " + std::to_string(lineno);
    if (fields.size() != k + 2) throw ParseError(ctx + ": expected " + std::to_string(k + 2) + " fields");
    MotionSample s;
    s.time = csv::parse_double(fields[0], ctx);
    if (fields[1] != "0" && fields[1] != "1") throw ParseError(ctx + ": reconfig must be 0 or 1");
    if (fields[1] == "1") {
      if (motion.samples.empty()) throw ParseError(ctx + ": first sample cannot start a new segment");
      motion.boundaries.push_back(motion.samples.size());
    }
    s.q.resize(static_cast<Eigen::Index>(k));
    for (std::size_t j = 0; j < k; ++j) s.q[static_cast<Eigen::Index>(j)] = csv::parse_double(fields[j + 2], ctx);
    motion.samples.push_back(std::move(s));
  }
  return motion;
}

JointMotion read_motion_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open motion file " + path.string());
  return read_motion_csv(in);
}

}  // namespace iklink
