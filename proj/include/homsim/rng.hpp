#pragma once

// SplitMix64 (Steele, Lea & Flood). Chosen for ensemble sampling because the
// k-th output is a pure function of (seed, k): the stream can be cut at any
// point and evaluated out of order without changing a single draw, which is
// what makes partitioned ensembles reproducible. Output is identical across
// platforms, unlike the std <random> distributions.

#include <cstdint>

namespace homsim {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  // uniform double in [0, 1), 53 random bits
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // independent child stream
  SplitMix64 split() { return SplitMix64(next() ^ 0x3C79AC492BA7B653ULL); }

  // counter form: equals the (index+1)-th next() of a generator seeded with
  // `seed`
  static std::uint64_t at(std::uint64_t seed, std::uint64_t index) {
    return mix(seed + (index + 1) * kGamma);
  }

  static double unit_at(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(at(seed, index) >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace homsim
