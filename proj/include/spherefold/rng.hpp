#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace spherefold {

// Deterministic sampling helpers on top of mt19937_64. The transforms are
// written out explicitly so that streams are reproducible independent of the
// standard library's distribution implementations.

inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

// Area-uniform point on the unit sphere.
inline Eigen::Vector3d sample_unit_vector(std::mt19937_64& gen) {
  const double z = 2.0 * uniform01(gen) - 1.0;
  const double phi = 2.0 * std::numbers::pi * uniform01(gen);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

}  // namespace spherefold
