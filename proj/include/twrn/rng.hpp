#pragma once

#include <cmath>
#include <cstdint>

namespace twrn {

/// Counter-based random stream (SplitMix64 sequence over a mixed key).
/// A stream is fully determined by (seed, stream index), so replications can
/// run in parallel with independent, reproducible streams and no sequential
/// coupling between them.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix(seed + kGolden) ^
               mix(stream * 0xda942042e4dd58b5ull + 0x8bb84b93962eacc9ull)) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  /// Uniform draw in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Exponential variate with the given mean (inverse-CDF method).
  double next_exponential(double mean) { return -mean * std::log1p(-next_unit()); }

  /// Deterministic per-replication seed derived from a master seed.
  static std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    return mix(master ^ mix(index + kGolden));
  }

private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace twrn
