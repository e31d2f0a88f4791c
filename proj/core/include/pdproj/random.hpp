#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace pdproj {

/// Seeded generator used for every random draw in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are not (their algorithms are
/// implementation-defined), so the conversions to doubles, integers and
/// normals are done here by hand. Same seed, same numbers, any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal via Box-Muller (no cached second value).
  double normal();
  std::complex<double> complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Sub-seed for trial `index` of a run seeded with `seed`. Trials seeded this
/// way give identical results whether run sequentially or concurrently.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace pdproj
