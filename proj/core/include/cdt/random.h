#ifndef CDT_RANDOM_H_
#define CDT_RANDOM_H_

#include <cstdint>
#include <random>

namespace cdt {

// Mixes a base seed with stream identifiers (splitmix64 finalizer), so that
// independent tasks draw from decorrelated, reproducible streams.
inline uint64_t DeriveSeed(uint64_t seed, uint64_t a, uint64_t b = 0) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// std::uniform_real_distribution is implementation-defined; this one is not,
// which keeps seeded output byte-identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  double Uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cdt

#endif  // CDT_RANDOM_H_
