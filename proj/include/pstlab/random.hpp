#pragma once

#include <cstdint>

namespace pstlab {

/// Counter-based generator: the stream for item `index` under `seed` is a
/// pure function of (seed, index, draw count), so work can be split across
/// threads in any order and still reproduce the same draws.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index) : key_(mix(seed ^ mix(index + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform integer in [lo, hi] (inclusive). Rejection-free modulo bias is
  /// negligible for the tiny ranges used here.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace pstlab
