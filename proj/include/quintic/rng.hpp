// Seeded random streams. Every random choice in the toolkit flows through
// one of these so that a (seed, label) pair pins the whole computation.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace quintic {

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Independent stream for a named purpose under the same user seed.
  static Rng stream(std::uint64_t seed, std::string_view label, std::uint64_t salt = 0) {
    return Rng(mix64(seed ^ fnv1a64(label)) ^ mix64(salt + 0x5851f42d4c957f2dull));
  }

  std::uint64_t u64() { return gen_(); }

  // Uniform in [0,1). 53 bits, implementation independent.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; kept local instead of std::normal_distribution so the stream
  // does not depend on the standard library's transform.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::complex<double> unit_complex() {
    const double a = 6.283185307179586476925286766559 * uniform();
    return {std::cos(a), std::sin(a)};
  }

  std::complex<double> normal_complex() { return {normal(), normal()}; }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace quintic
