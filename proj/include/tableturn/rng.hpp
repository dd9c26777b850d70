#pragma once

#include <cstdint>

namespace tableturn {

// splitmix64 (Steele, Lea, Flood 2014). Chosen over <random> engines because
// the whole output path is pinned: seeded streams are bit-identical on every
// platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53 bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

// Index-keyed substream seed, so per-item draws do not depend on how many
// other items were drawn before them.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 r(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
  return r.next();
}

}  // namespace tableturn
