#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace hullscope {

/// splitmix64 step; used to derive independent per-task seeds from a root seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t task_seed(std::uint64_t root, std::uint64_t task) {
  return splitmix64(root ^ splitmix64(task + 1));
}

/// Deterministic generator. Draws are defined bit-for-bit here instead of
/// through std::uniform_real_distribution, whose algorithm is unspecified.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform point in the disk |z| < radius.
  std::complex<double> in_disk(double radius = 1.0) {
    const double r = radius * std::sqrt(uniform());
    const double t = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

  /// Standard normal via Box-Muller.
  double normal() {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * uniform());
  }

  std::complex<double> complex_normal() { return {normal(), normal()}; }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hullscope
