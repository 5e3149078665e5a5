#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace iklink {

/// Mixes a master seed with stream coordinates into an independent stream seed
/// (splitmix64 finalizer chain). Used so that every solver slot, tracker and
/// trial owns its own reproducible random stream.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> stream);

/// Seeded 64-bit generator with a portable uniform mapping (identical output on
/// every standard library, unlike std::uniform_real_distribution).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi]; returns lo when the range is empty.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace iklink
