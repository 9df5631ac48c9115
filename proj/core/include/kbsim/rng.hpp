#pragma once

#include <array>
#include <cstdint>

namespace kbsim {

// splitmix64 (Steele, Lea, Vigna). Used for seeding and seed derivation so
// that a single 64-bit seed expands into well-mixed state.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

// xoshiro256++ (Blackman and Vigna). Fixed algorithm, fixed seeding
// procedure: every run is reproducible from its 64-bit seed alone, on any
// platform. Not cryptographic.
class Xoshiro256pp {
public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  std::uint64_t next() {
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

  // Uniform double in [0, 1), 53 mantissa bits, one generator call.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), unbiased via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = -bound % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_;
};

// Stable seed for sub-stream `stream` of run seed `base`. Streams in use:
// 0 = environment rewards, 1 = policy randomness, 2+j = per-arm reward tapes.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  SplitMix64 sm(base ^ (0xA3EC647659359ACDULL * (stream + 1)));
  return sm.next();
}

}  // namespace kbsim
