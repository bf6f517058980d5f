#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spherefold/chain.hpp"
#include "spherefold/geom.hpp"
#include "spherefold/measure.hpp"
#include "spherefold/tolerances.hpp"

namespace spherefold {

// Region between the two circles at distance width/2 from the median great
// circle. A certified belt contains no chain vertex and meets at most the
// one recorded edge.
struct Belt {
  GreatCircle median;
  double width = 0.0;
  std::optional<int> crossing_edge;  // 1-based; absent when the belt avoids the chain
};

struct BeltCertification {
  bool ok = true;
  std::vector<std::string> violations;
};

// Exhaustive vertex-vs-belt and edge-vs-belt re-check in closed form. For a
// short arc the minimum |<x, pole>| over the arc is attained at an endpoint
// unless the endpoint signs differ, so no sampling is needed.
BeltCertification certify_belt(const SphericalChain& chain, const Belt& belt);

struct SeparationResult {
  int edge_index = 0;  // 1-based; 0 = the median crosses nothing
  Belt belt;
  UnitVector pole_witness;  // inscribed-circle center of the dual nice region
  // Vertex index ranges of the two parts split at e_k (empty when edge_index
  // is 0): left = p[0 : k-1], right = p[k : n].
  std::pair<int, int> left_range{0, 0};
  std::pair<int, int> right_range{0, 0};
  double width_bound = 0.0;  // (2*pi - alpha)/(n+2)
};

// Connected dual region of the nice class k: the poles q whose dual circle
// crosses only e_k (or nothing, for k = 0), on the side of seed_pole. Each
// chain vertex contributes one bounding circle, its own dual.
ConvexSphericalPolygon dual_nice_region(const SphericalChain& chain, int k,
                                        const UnitVector& seed_pole);

// Locates the separating edge and a certified belt of width at least
// (2*pi - alpha)/(n+2) - eps_belt. Classes are tried in decreasing order of
// estimated measure; each candidate belt is the maximal inscribed circle of
// the class's dual region, mapped back through duality, then re-certified
// geometrically. Deterministic for fixed seed.
SeparationResult find_separation(const SphericalChain& chain, const Tolerances& tol = {},
                                 long samples = 4096, std::uint64_t seed = 0x5eedULL);

}  // namespace spherefold
