#pragma once

// Small deterministic generator (splitmix64) used wherever reproducible
// streams matter: same seed, same bytes, on every platform.

#include <cstdint>

namespace rexp {

class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }  // [0,1)
  double uniform_pm() { return 2.0 * uniform() - 1.0; }                       // [-1,1)
  bool coin(double p) { return uniform() < p; }

 private:
  std::uint64_t s_;
};

}  // namespace rexp
