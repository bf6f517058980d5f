#include "spherefold/chain.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spherefold/rng.hpp"

namespace spherefold {

namespace {
constexpr double kPi = std::numbers::pi;
}

LengthClass length_class(double total_length) {
  if (total_length < kPi) return LengthClass::Short;
  if (total_length < 2.0 * kPi) return LengthClass::Medium;
  return LengthClass::Long;
}

IntrinsicChain::IntrinsicChain(std::vector<double> arc_lengths)
    : lengths_(std::move(arc_lengths)) {
  if (lengths_.empty()) {
    throw DomainError("chain needs at least one edge");
  }
  total_ = 0.0;
  for (size_t i = 0; i < lengths_.size(); ++i) {
    const double a = lengths_[i];
    if (!(a > 0.0) || a >= kPi - 1e-12) {
      std::ostringstream msg;
      msg << "arc length " << i + 1 << " = " << a << " must lie strictly in (0, pi)";
      throw DomainError(msg.str());
    }
    total_ += a;
  }
  if (total_ >= 2.0 * kPi) {
    throw DomainError("total length >= 2*pi: such chains may not be reconfigurable");
  }
}

SphericalChain SphericalChain::from_vertices(std::vector<UnitVector> vertices) {
  if (vertices.size() < 2) {
    throw DomainError("chain needs at least two vertices");
  }
  std::vector<double> lengths;
  lengths.reserve(vertices.size() - 1);
  for (size_t i = 1; i < vertices.size(); ++i) {
    lengths.push_back(spherical_distance(vertices[i - 1], vertices[i]));
  }
  IntrinsicChain intrinsic(std::move(lengths));
  return SphericalChain(std::move(vertices), std::move(intrinsic));
}

SphericalChain SphericalChain::from_vertices(std::vector<UnitVector> vertices,
                                             const IntrinsicChain& intrinsic, double tol) {
  if (static_cast<int>(vertices.size()) != intrinsic.edge_count() + 1) {
    throw DomainError("vertex count does not match the intrinsic edge count");
  }
  for (int k = 1; k <= intrinsic.edge_count(); ++k) {
    const double d = spherical_distance(vertices[k - 1], vertices[k]);
    const double want = intrinsic.arc_lengths()[k - 1];
    if (std::abs(d - want) > tol) {
      std::ostringstream msg;
      msg << "edge " << k << " has length " << d << ", expected " << want;
      throw DomainError(msg.str());
    }
  }
  return SphericalChain(std::move(vertices), intrinsic);
}

Arc SphericalChain::edge(int k) const {
  if (k < 1 || k > edge_count()) {
    throw DomainError("edge index out of range");
  }
  return Arc(vertices_[k - 1], vertices_[k]);
}

double ProgressMeasure::max_delta(int n) const { return (n - 1) * kPi; }

double ProgressMeasure::deficit() const {
  double d = 0.0;
  for (double b : betas) d += kPi - b;
  return d;
}

ProgressMeasure betas(const SphericalChain& chain) {
  const auto& p = chain.vertices();
  ProgressMeasure out;
  const int n = chain.edge_count();
  out.betas.reserve(std::max(0, n - 1));
  out.degenerate.reserve(std::max(0, n - 1));
  for (int i = 1; i < n; ++i) {
    // Tangents at p_i pointing back along e_i and forward along e_{i+1}.
    const Vec3 back = (p[i - 1].vec() - p[i - 1].dot(p[i]) * p[i].vec()).normalized();
    const Vec3 fwd = (p[i + 1].vec() - p[i + 1].dot(p[i]) * p[i].vec()).normalized();
    const double beta = std::atan2(back.cross(fwd).norm(), back.dot(fwd));
    out.betas.push_back(beta);
    out.degenerate.push_back(beta <= 1e-9);
    out.delta += beta;
  }
  return out;
}

Classification classify(const SphericalChain& chain, const Tolerances& tol) {
  Classification out;
  const ProgressMeasure pm = betas(chain);
  bool flat = true;
  for (double b : pm.betas) {
    if (std::abs(kPi - b) > tol.eps_flat) {
      flat = false;
      break;
    }
  }
  UnitVector witness;
  out.margin = hemisphere_margin(chain.vertices(), &witness);
  if (flat) {
    out.value = ChainClass::Flat;
    if (out.margin > 1e-13) out.witness = witness;
    return out;
  }
  if (out.margin > tol.eps_hemi) {
    out.value = ChainClass::Hemispherical;
    out.witness = witness;
  } else {
    out.value = ChainClass::SphereSpanning;
  }
  return out;
}

std::optional<SelfIntersection> find_self_intersection(const SphericalChain& chain) {
  const int n = chain.edge_count();
  for (int i = 1; i <= n; ++i) {
    const Arc ei = chain.edge(i);
    for (int j = i + 1; j <= n; ++j) {
      const Arc ej = chain.edge(j);
      const ArcContact contact = arcs_intersect(ei, ej);
      if (j == i + 1) {
        // Adjacent edges legitimately share the vertex; only an overlap
        // beyond it counts.
        if (contact.kind == ArcContact::Kind::CollinearOverlap) {
          return SelfIntersection{i, j, *contact.point};
        }
      } else if (contact.touching()) {
        return SelfIntersection{i, j, contact.point ? *contact.point : chain.vertices()[i]};
      }
    }
  }
  return std::nullopt;
}

bool self_intersects(const SphericalChain& chain) {
  return find_self_intersection(chain).has_value();
}

IntrinsicChain origami_to_chain(const std::vector<double>& sector_angles,
                                bool vertex_on_boundary) {
  if (!vertex_on_boundary) {
    throw DomainError(
        "interior fold vertex forms a closed chain, which is out of scope here; "
        "only boundary vertices (open chains) are supported");
  }
  for (size_t i = 0; i < sector_angles.size(); ++i) {
    if (sector_angles[i] >= kPi - 1e-12) {
      std::ostringstream msg;
      msg << "sector " << i + 1 << " spans " << sector_angles[i]
          << " >= pi; subdivide it with an extra flat crease first";
      throw DomainError(msg.str());
    }
  }
  return IntrinsicChain(sector_angles);
}

SphericalChain random_configuration(const IntrinsicChain& intrinsic, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const int n = intrinsic.edge_count();
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<UnitVector> verts;
    verts.reserve(n + 1);
    verts.push_back(UnitVector::normalized(sample_unit_vector(gen)));
    bool ok = true;
    for (int k = 0; k < n; ++k) {
      const UnitVector& prev = verts.back();
      // Random tangent direction at the current endpoint.
      Vec3 t = sample_unit_vector(gen);
      t -= t.dot(prev.vec()) * prev.vec();
      if (t.norm() < 1e-9) {
        ok = false;
        break;
      }
      t.normalize();
      const double a = intrinsic.arc_lengths()[k];
      verts.push_back(
          UnitVector::normalized(prev.vec() * std::cos(a) + t * std::sin(a)));
    }
    if (!ok) continue;
    SphericalChain chain = SphericalChain::from_vertices(std::move(verts), intrinsic, 1e-9);
    if (!self_intersects(chain)) {
      return chain;
    }
  }
  std::ostringstream msg;
  msg << "failed to sample a non-self-intersecting configuration after " << kMaxAttempts
      << " attempts (n=" << n << ", total=" << intrinsic.total_length() << ", seed=" << seed
      << ")";
  throw DomainError(msg.str());
}

SphericalChain random_chain(int n, double total, std::uint64_t seed) {
  if (n < 2) {
    throw DomainError("random_chain requires n >= 2");
  }
  if (!(total > 0.0) || total >= 2.0 * kPi) {
    throw DomainError("random_chain requires total length in (0, 2*pi)");
  }
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> lengths(n);
    double sum = 0.0;
    for (double& l : lengths) {
      l = uniform(gen, 0.2, 1.0);
      sum += l;
    }
    bool ok = true;
    for (double& l : lengths) {
      l *= total / sum;
      if (l >= kPi - 1e-6) ok = false;
    }
    if (!ok) continue;
    return random_configuration(IntrinsicChain(lengths), gen());
  }
  throw DomainError("random_chain: could not draw admissible edge lengths");
}

}  // namespace spherefold
