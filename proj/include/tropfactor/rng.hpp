#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace tropfactor {

/// Deterministic splitmix64 generator.  Distributions are mapped by hand so
/// that identical seeds give identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [lo, hi] inclusive.
  long long uniform_int(long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(next_u64() % span);
  }

  /// Uniform over the closed unit disk (uniform in area).
  std::complex<double> unit_disk() {
    const double r = std::sqrt(uniform01());
    const double a = 2.0 * std::numbers::pi * uniform01();
    return {r * std::cos(a), r * std::sin(a)};
  }

  std::complex<double> unit_circle() {
    const double a = 2.0 * std::numbers::pi * uniform01();
    return {std::cos(a), std::sin(a)};
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream from a base seed and a tag.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  Rng r(seed ^ (0x632BE59BD9B4E019ULL + tag * 0x9E3779B97F4A7C15ULL));
  return r.next_u64();
}

}  // namespace tropfactor
