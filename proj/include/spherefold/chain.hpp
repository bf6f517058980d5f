#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spherefold/geom.hpp"
#include "spherefold/tolerances.hpp"

namespace spherefold {

enum class LengthClass { Short, Medium, Long };

// short < pi <= medium < 2*pi <= long
LengthClass length_class(double total_length);

// Intrinsic data of an open chain of geodesic arcs: the edge lengths alone.
// Every length lies strictly in (0, pi); totals of 2*pi or more are rejected
// because such chains may not be reconfigurable.
class IntrinsicChain {
 public:
  explicit IntrinsicChain(std::vector<double> arc_lengths);

  int edge_count() const { return static_cast<int>(lengths_.size()); }
  const std::vector<double>& arc_lengths() const { return lengths_; }
  double total_length() const { return total_; }
  LengthClass length_class() const { return spherefold::length_class(total_); }

 private:
  std::vector<double> lengths_;
  double total_ = 0.0;
};

// A placed configuration: vertices p_0..p_n on the unit sphere joined by
// short arcs. Edge k (1-based, matching e_k = (p_{k-1}, p_k)) has length
// arc_lengths()[k-1]. Construction validates edge lengths but not
// embeddability; use self_intersects for that.
class SphericalChain {
 public:
  static SphericalChain from_vertices(std::vector<UnitVector> vertices);
  static SphericalChain from_vertices(std::vector<UnitVector> vertices,
                                      const IntrinsicChain& intrinsic, double tol = 1e-9);

  int edge_count() const { return intrinsic_.edge_count(); }
  const std::vector<UnitVector>& vertices() const { return vertices_; }
  const IntrinsicChain& intrinsic() const { return intrinsic_; }
  double total_length() const { return intrinsic_.total_length(); }
  Arc edge(int k) const;  // k in 1..n

 private:
  SphericalChain(std::vector<UnitVector> vertices, IntrinsicChain intrinsic)
      : vertices_(std::move(vertices)), intrinsic_(std::move(intrinsic)) {}
  std::vector<UnitVector> vertices_;
  IntrinsicChain intrinsic_;
};

// Interior angles beta_1..beta_{n-1} in [0, pi]; beta_i = pi on a locally
// straight vertex, 0 when the next edge doubles back. delta is their sum,
// maximal at (n-1)*pi exactly for flat chains.
struct ProgressMeasure {
  std::vector<double> betas;
  std::vector<bool> degenerate;  // doubled-back vertices (beta ~ 0)
  double delta = 0.0;

  double max_delta(int n) const;  // (n-1)*pi
  double deficit() const;         // sum of (pi - beta_i)
};

ProgressMeasure betas(const SphericalChain& chain);

enum class ChainClass { Flat, Hemispherical, SphereSpanning };

struct Classification {
  ChainClass value = ChainClass::SphereSpanning;
  double margin = 0.0;  // best-hemisphere margin of the vertex set
  std::optional<UnitVector> witness;
};

// Flat when every interior angle is within eps_flat of pi. Hemispherical
// when some open hemisphere contains all vertices with margin > eps_hemi
// (short arcs inherit containment from their endpoints).
Classification classify(const SphericalChain& chain, const Tolerances& tol = {});

struct SelfIntersection {
  int edge_a = 0;  // 1-based
  int edge_b = 0;
  UnitVector point;
};

// First offending pair, if any. Nonadjacent closed edges may not touch at
// all; adjacent edges may share only their common vertex.
std::optional<SelfIntersection> find_self_intersection(const SphericalChain& chain);
bool self_intersects(const SphericalChain& chain);

// Sector angles of the rigid panels around a boundary fold vertex map
// directly to arc lengths of an open chain. Interior fold vertices form
// closed chains and are rejected; sectors of pi or more must be subdivided
// by an extra flat crease first.
IntrinsicChain origami_to_chain(const std::vector<double>& sector_angles,
                                bool vertex_on_boundary);

// Rejection-sampled random embedding of the given intrinsic chain;
// deterministic per seed. Throws after 1e5 failed attempts.
SphericalChain random_configuration(const IntrinsicChain& intrinsic, std::uint64_t seed);

// Random valid chain: edge lengths drawn and rescaled to the requested
// total (each strictly inside (0, pi)), then embedded.
SphericalChain random_chain(int n, double total, std::uint64_t seed);

}  // namespace spherefold
