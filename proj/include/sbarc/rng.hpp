#pragma once

#include <cstdint>

namespace sbarc {

/// xoshiro256** seeded through splitmix64. Named and recorded in experiment
/// reports so runs are reproducible bit for bit.
class Rng {
public:
  static constexpr const char* kName = "xoshiro256**/splitmix64";

  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    auto splitmix = [&x]() {
      x += 0x9e3779b97f4a7c15ull;
      uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      return z ^ (z >> 31);
    };
    for (auto& w : s_) w = splitmix();
  }

  uint64_t next() {
    auto rotl = [](uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform integer in [0, bound).
  uint64_t below(uint64_t bound) { return next() % bound; }

  int range(int lo, int hi) {  // inclusive bounds
    return lo + int(below(uint64_t(hi - lo + 1)));
  }

private:
  uint64_t s_[4];
};

}  // namespace sbarc
