#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace mmon {

/// SplitMix64 step; used to expand a 64-bit seed into engine state.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ engine (satisfies UniformRandomBitGenerator).  Small,
/// fast, and trivially seedable into independent streams.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(std::uint64_t seed) {
    for (auto& word : s_) word = splitmix64_next(seed);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_;
};

/// Independent stream for a given (seed, stream index) pair: the combined
/// value is run through SplitMix64 inside the engine constructor, so
/// nearby indices still yield decorrelated state.
inline Xoshiro256pp make_stream(std::uint64_t seed, std::uint64_t stream) {
  return Xoshiro256pp(seed + stream * 0xD1B54A32D192ED03ULL);
}

/// Uniform variate in (0,1): 53 random bits centered in the cell.
template <class Engine>
double uniform01(Engine& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Exponential(rate) variate via inversion; strictly positive.
template <class Engine>
double exponential(Engine& eng, double rate) {
  return -std::log(uniform01(eng)) / rate;
}

}  // namespace mmon
