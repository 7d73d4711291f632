#pragma once

#include <cstdint>
#include <vector>

namespace lifthull {

// splitmix64 (Steele/Lea/Flood mixing constants): state advances by the
// golden-ratio increment, output is the finalizer mix. Chosen because the
// whole algorithm fits in a dozen lines and cross-implementations can match
// streams exactly from the written constants.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : x_(seed) {}

  uint64_t next() {
    uint64_t z = (x_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection; n = 0 is a contract violation.
  uint64_t bounded(uint64_t n) {
    uint64_t limit = ~uint64_t(0) - ~uint64_t(0) % n;
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  // Stream for instance #idx of a run seeded with `seed`: reseed with the
  // mix of (seed xor golden*(idx+1)). Documented so external tools can
  // reproduce any row of a sweep independently.
  static SplitMix64 stream(uint64_t seed, uint64_t idx) {
    SplitMix64 s(seed ^ (0x9E3779B97F4A7C15ULL * (idx + 1)));
    s.next();
    return s;
  }

 private:
  uint64_t x_;
};

template <typename T>
void shuffle_in_place(std::vector<T>& v, SplitMix64& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = size_t(rng.bounded(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace lifthull
