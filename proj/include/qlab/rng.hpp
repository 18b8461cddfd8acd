#ifndef QLAB_RNG_HPP
#define QLAB_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace qlab {

/// All randomness in qlab flows through this type. The engine is
/// std::mt19937_64, whose output sequence is fixed by the C++ standard; the
/// reductions below are written out by hand because the standard
/// distributions are implementation-defined. Sampled runs therefore replay
/// bit-for-bit across compilers and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n). Rejection sampling, no modulo bias. n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed from a base seed and a label
/// (FNV-1a over the label, folded through splitmix64).
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace qlab

#endif  // QLAB_RNG_HPP
