#pragma once
// Deterministic, splittable random streams. Each stream derives its state
// from a master seed, a label, and an index, so (run, algorithm) cells can
// execute in any order and still reproduce bit-identical draws. Uniform and
// normal variates are generated from raw 64-bit outputs (no std::
// distributions), keeping sequences portable across standard libraries.

#include <cmath>
#include <cstdint>
#include <string_view>

namespace logb {

inline std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

class RngStream {
 public:
  RngStream(std::uint64_t master, std::string_view label, std::uint64_t index = 0)
      : state_(master ^ fnv1a64(label)) {
    state_ ^= 0x6a09e667f3bcc909ull + index * 0x3c6ef372fe94f82bull;
    for (int i = 0; i < 4; ++i) splitmix64(state_);  // decorrelate nearby seeds
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller; pairs are cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Exactly one uniform per draw.
  int bernoulli(double p) { return uniform01() < p ? 1 : 0; }

  int uniform_int(int n) {  // in [0, n)
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace logb
