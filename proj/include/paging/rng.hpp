#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace paging {

// SplitMix64 finalizer; used to derive well-mixed engine seeds and
// independent stream seeds from a single user seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Portable random stream, algorithm "mt19937_64/splitmix64-seed/v1":
//   engine    std::mt19937_64 (output sequence fixed by ISO C++)
//   seeding   engine seed = splitmix64(seed ^ splitmix64(stream))
//   uniform   top 53 bits of one engine draw, scaled to [0, 1)
//   normal    Box-Muller, both variates used, cosine branch first
//   exponent. inversion, -log1p(-u) / rate
// std::*_distribution is deliberately not used: its output is
// implementation-defined and would break cross-platform seed portability.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(splitmix64(seed ^ splitmix64(stream))) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace paging
