#ifndef KINEX_RNG_HPP
#define KINEX_RNG_HPP

#include <array>
#include <cstdint>
#include <stdexcept>

namespace kinex {

// Every stochastic choice in the simulator goes through RngStream, a
// xoshiro256** generator seeded via SplitMix64. State updates are pure
// 64-bit integer arithmetic, so a given (seed, stream_id) yields the same
// sequence on every platform. Streams are separated with the generator's
// jump function (equivalent to 2^128 steps), applied stream_id times, so
// parallel runs never share a subsequence.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : stream_id_(stream_id) {
    // SplitMix64 expansion of the master seed into the 256-bit state.
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9E3779B97F4A7C15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      word = z ^ (z >> 31);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
      state_[0] = 1;  // the all-zero state is a fixed point
    }
    for (std::uint64_t i = 0; i < stream_id; ++i) {
      jump();
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi); degenerate ranges (lo == hi) return lo.
  double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

  // Unbiased integer in [0, n) by rejecting the top 2^64 mod n raw values.
  std::uint64_t uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  std::uint64_t stream_id() const { return stream_id_; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  void jump() {
    static constexpr std::array<std::uint64_t, 4> kJump = {
        0x180EC6D33CFD0ABAULL, 0xD5A61266F0C9392CULL,
        0xA9582618E03FC9AAULL, 0x39ABDC4529B1661CULL};
    std::array<std::uint64_t, 4> acc = {0, 0, 0, 0};
    for (const std::uint64_t mask : kJump) {
      for (int bit = 0; bit < 64; ++bit) {
        if (mask & (1ULL << bit)) {
          acc[0] ^= state_[0];
          acc[1] ^= state_[1];
          acc[2] ^= state_[2];
          acc[3] ^= state_[3];
        }
        next_u64();
      }
    }
    state_ = acc;
  }

  std::array<std::uint64_t, 4> state_;
  std::uint64_t stream_id_;
};

}  // namespace kinex

#endif  // KINEX_RNG_HPP
