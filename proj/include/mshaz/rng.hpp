#pragma once

#include <cstdint>

namespace mshaz {

/// SplitMix64 stream. Used everywhere instead of <random> engines so that
/// sample sequences are identical across platforms and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }

 private:
  uint64_t state_;
};

/// Counter-based stream for sample `index` under `seed`: each sample draws
/// from its own generator, so results do not depend on evaluation order or
/// thread scheduling.
inline SplitMix64 sample_stream(uint64_t seed, uint64_t index) {
  uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (index + 0x632BE59BD9B4E019ULL));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return SplitMix64(z ^ (z >> 31));
}

}  // namespace mshaz
