#include "spherefold/separation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace spherefold {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

BeltCertification certify_belt(const SphericalChain& chain, const Belt& belt) {
  BeltCertification cert;
  const UnitVector& q = belt.median.pole();
  const double half_sin = std::sin(0.5 * belt.width);
  const auto& p = chain.vertices();

  for (size_t j = 0; j < p.size(); ++j) {
    if (std::abs(p[j].dot(q)) < half_sin - 1e-9) {
      std::ostringstream msg;
      msg << "vertex " << j << " lies strictly inside the belt";
      cert.violations.push_back(msg.str());
    }
  }
  for (int k = 1; k <= chain.edge_count(); ++k) {
    const double da = p[k - 1].dot(q);
    const double db = p[k].dot(q);
    const bool crossing = (da > 0.0) != (db > 0.0);
    const bool is_designated = belt.crossing_edge && *belt.crossing_edge == k;
    if (crossing && !is_designated) {
      std::ostringstream msg;
      msg << "edge " << k << " crosses the median";
      cert.violations.push_back(msg.str());
    }
    if (!crossing && !is_designated &&
        std::min(std::abs(da), std::abs(db)) < half_sin - 1e-9) {
      std::ostringstream msg;
      msg << "edge " << k << " enters the belt";
      cert.violations.push_back(msg.str());
    }
    if (!crossing && is_designated) {
      std::ostringstream msg;
      msg << "designated edge " << k << " does not cross the median";
      cert.violations.push_back(msg.str());
    }
  }
  cert.ok = cert.violations.empty();
  return cert;
}

ConvexSphericalPolygon dual_nice_region(const SphericalChain& chain, int k,
                                        const UnitVector& seed_pole) {
  const auto& p = chain.vertices();
  const int n = chain.edge_count();
  if (k < 0 || k > n) {
    throw DomainError("nice class index out of range");
  }
  std::vector<int> signs(p.size());
  for (size_t j = 0; j < p.size(); ++j) {
    const double d = seed_pole.dot(p[j]);
    if (std::abs(d) < eps_geom) {
      throw DomainError("seed pole is degenerate: its circle passes through a chain vertex");
    }
    signs[j] = d > 0.0 ? 1 : -1;
  }
  int flips = 0;
  int flip_edge = 0;
  for (size_t j = 1; j < p.size(); ++j) {
    if (signs[j] != signs[j - 1]) {
      ++flips;
      flip_edge = static_cast<int>(j);
    }
  }
  if ((k == 0 && flips != 0) || (k > 0 && (flips != 1 || flip_edge != k))) {
    std::ostringstream msg;
    msg << "seed pole is not in nice class N_" << k;
    throw DomainError(msg.str());
  }

  std::vector<UnitVector> inward;
  inward.reserve(p.size());
  for (size_t j = 0; j < p.size(); ++j) {
    inward.push_back(signs[j] > 0 ? p[j] : p[j].antipode());
  }
  auto region = ConvexSphericalPolygon::from_halfspaces(inward);
  if (!region) {
    throw InternalError("dual nice region containing a valid seed came out empty");
  }
  return *region;
}

SeparationResult find_separation(const SphericalChain& chain, const Tolerances& tol,
                                 long samples, std::uint64_t seed) {
  const int n = chain.edge_count();
  const double alpha = chain.total_length();
  if (alpha >= kTwoPi) {
    throw DomainError("separation requires total length < 2*pi");
  }
  const double bound = (kTwoPi - alpha) / (n + 2);

  const CrossingClassReport report = estimate_class_measures(chain, samples, seed);
  std::vector<int> order(n + 1);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return report.mu[a] > report.mu[b];
  });

  std::string last_failure = "no nice class produced a certifiable belt";
  for (int k : order) {
    if (!report.witness_pole[k]) continue;
    ConvexSphericalPolygon region = dual_nice_region(chain, k, *report.witness_pole[k]);
    InscribedCircle circle;
    try {
      circle = max_inscribed_circle(region);
    } catch (const DomainError&) {
      continue;
    }
    if (circle.diameter + tol.eps_belt < bound) {
      continue;
    }
    Belt belt{dual(circle.center), circle.diameter,
              k > 0 ? std::optional<int>(k) : std::nullopt};
    const BeltCertification cert = certify_belt(chain, belt);
    if (!cert.ok) {
      last_failure = "class N_" + std::to_string(k) + ": " + cert.violations.front();
      continue;
    }
    SeparationResult result;
    result.edge_index = k;
    result.belt = belt;
    result.pole_witness = circle.center;
    result.width_bound = bound;
    if (k > 0) {
      result.left_range = {0, k - 1};
      result.right_range = {k, n};
    }
    return result;
  }

  std::ostringstream msg;
  msg << "separation failed on a chain with n=" << n << ", alpha=" << alpha
      << " (width bound " << bound << "): " << last_failure
      << "; a separating great circle must exist, so this signals numerical breakdown";
  throw InternalError(msg.str());
}

}  // namespace spherefold
