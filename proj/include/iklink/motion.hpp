#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "iklink/robot.hpp"

namespace iklink {

struct MotionSample {
  double time = 0.0;  // s
  JointConfig q;
};

/// Joint trajectory split into continuous segments. A boundary at index x
/// means a reconfiguration happens between samples x-1 and x.
struct JointMotion {
  std::vector<MotionSample> samples;
  std::vector<std::size_t> boundaries;  // ascending, each in [1, size)

  std::size_t size() const { return samples.size(); }
  std::size_t reconfiguration_count() const { return boundaries.size(); }
  bool is_boundary(std::size_t x) const;
};

/// CSV with header `t,reconfig,q0..q{k-1}`; reconfig is 1 on the first sample
/// of each new segment.
void write_motion_csv(const JointMotion& motion, std::ostream& out);
void write_motion_csv(const JointMotion& motion, const std::filesystem::path& path);
JointMotion read_motion_csv(std::istream& in);
JointMotion read_motion_csv(const std::filesystem::path& path);

}  // namespace iklink
