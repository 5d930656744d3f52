#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace bpl {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Thrown when an enumeration would exceed the configured cap (CLI exit code 3).
struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

struct dimension_error : std::invalid_argument {
  explicit dimension_error(const std::string& what) : std::invalid_argument(what) {}
};

// Conjugate exponent; 1' = inf, inf' = 1.
inline double conjugate(double p) {
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

// Deterministic RNG. mt19937_64 has a pinned sequence; we avoid std distributions
// because their output is implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  // distinct stream per (seed, stream) pair
  Rng(std::uint64_t seed, std::uint64_t stream) : g_(seed * 0x9E3779B97F4A7C15ull + stream + 1) {}

  double u01() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * u01(); }
  std::uint64_t next() { return g_(); }
  int index(int n) { return static_cast<int>(g_() % static_cast<std::uint64_t>(n)); }
  double normal() {
    double u = u01(), v = u01();
    while (u <= 1e-300) u = u01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925287 * v);
  }

private:
  std::mt19937_64 g_;
};

}  // namespace bpl
