// Independent test oracles. Everything here deliberately avoids the library
// code paths it is used to check: distances come from dense sampling plus
// local refinement, areas and measures from Monte Carlo counting, and the
// hemisphere test from a direction grid.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "spherefold/chain.hpp"
#include "spherefold/geom.hpp"
#include "spherefold/rng.hpp"

namespace spherefold::oracle {

inline constexpr double kPi = std::numbers::pi;

// Distance from a point to a closed short arc, in closed form.
inline double point_to_arc_distance(const UnitVector& x, const Arc& e) {
  const double to_endpoints =
      std::min(spherical_distance(x, e.a()), spherical_distance(x, e.b()));
  const Vec3 in_plane = x.vec() - x.dot(e.normal()) * e.normal().vec();
  if (in_plane.norm() < 1e-12) return to_endpoints;  // x at the circle's pole
  const UnitVector foot = UnitVector::normalized(in_plane);
  if (!e.contains(foot, 1e-12)) return to_endpoints;
  return std::min(to_endpoints, std::abs(std::asin(std::clamp(x.dot(e.normal()), -1.0, 1.0))));
}

// Minimum distance between two arcs: dense scan along e1 (10^4 samples)
// followed by ternary refinement around the best bracket.
inline double arc_pair_distance(const Arc& e1, const Arc& e2, int samples = 10000) {
  double best = 1e300;
  double best_s = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double s = e1.length() * i / samples;
    const double d = point_to_arc_distance(e1.point_at(s), e2);
    if (d < best) {
      best = d;
      best_s = s;
    }
  }
  double lo = std::max(0.0, best_s - e1.length() / samples);
  double hi = std::min(e1.length(), best_s + e1.length() / samples);
  for (int it = 0; it < 60; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (point_to_arc_distance(e1.point_at(m1), e2) <
        point_to_arc_distance(e1.point_at(m2), e2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  best = std::min(best, point_to_arc_distance(e1.point_at(0.5 * (lo + hi)), e2));
  return best;
}

inline bool arcs_touch(const Arc& e1, const Arc& e2, double tol = 1e-6) {
  return arc_pair_distance(e1, e2) <= tol;
}

struct McEstimate {
  double value = 0.0;
  double sigma = 0.0;
};

// Monte Carlo area of a spherical region given by a membership predicate.
template <typename Inside>
McEstimate mc_area(Inside&& inside, long samples, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  long hits = 0;
  for (long s = 0; s < samples; ++s) {
    if (inside(UnitVector::normalized(sample_unit_vector(gen)))) ++hits;
  }
  const double f = static_cast<double>(hits) / samples;
  return {4.0 * kPi * f, 4.0 * kPi * std::sqrt(std::max(0.0, f * (1.0 - f) / samples))};
}

// Measure of the great circles crossing one arc, by direct pole counting
// (kept separate from the library's class-measure estimator).
inline McEstimate mc_arc_crossing_measure(const Arc& e, long samples, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  long hits = 0;
  for (long s = 0; s < samples; ++s) {
    const Vec3 q = sample_unit_vector(gen);
    if ((q.dot(e.a().vec()) > 0.0) != (q.dot(e.b().vec()) > 0.0)) ++hits;
  }
  const double f = static_cast<double>(hits) / samples;
  return {2.0 * kPi * f, 2.0 * kPi * std::sqrt(std::max(0.0, f * (1.0 - f) / samples))};
}

// Grid approximation of max_w min_i <w, p_i>; independent of the convex
// solver. Accurate to a few times the grid spacing.
inline double grid_hemisphere_margin(const std::vector<UnitVector>& points, int grid = 20000) {
  double best = -1.0;
  for (int i = 0; i < grid; ++i) {
    // Fibonacci sphere directions.
    const double z = 1.0 - 2.0 * (i + 0.5) / grid;
    const double phi = i * 2.39996322972865332;  // golden angle
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Vec3 w(r * std::cos(phi), r * std::sin(phi), z);
    double worst = 1.0;
    for (const auto& p : points) worst = std::min(worst, w.dot(p.vec()));
    best = std::max(best, worst);
  }
  return best;
}

// One-parameter family of the 2-edge pinned subchain: the free vertex
// rotates about the fixed middle vertex; the bend angle changes exactly by
// the rotation angle.
inline Vec3 two_edge_closed_form(const Vec3& middle, const Vec3& free_initial, double angle) {
  return Eigen::AngleAxisd(angle, middle.normalized()) * free_initial;
}

// Random convex spherical polygon: vertices on a small circle in convex
// position, randomly oriented.
inline ConvexSphericalPolygon random_convex_polygon(std::mt19937_64& gen) {
  const UnitVector center = UnitVector::normalized(sample_unit_vector(gen));
  const double radius = uniform(gen, 0.2, 1.2);
  const int m = 3 + static_cast<int>(uniform01(gen) * 5.0);
  std::vector<double> angles;
  for (int i = 0; i < m; ++i) angles.push_back(uniform(gen, 0.0, 2.0 * kPi));
  std::sort(angles.begin(), angles.end());
  for (int i = 0; i < m; ++i) {  // enforce a minimal gap
    const double next = angles[(i + 1) % m] + (i + 1 == m ? 2.0 * kPi : 0.0);
    if (next - angles[i] < 0.05) {
      return random_convex_polygon(gen);
    }
  }
  Vec3 ref = std::abs(center.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  const Vec3 t1 = (ref - center.dot(UnitVector::normalized(ref)) * center.vec()).normalized();
  const Vec3 t2 = center.vec().cross(t1);
  std::vector<UnitVector> verts;
  for (double a : angles) {
    const Vec3 dir = std::cos(a) * t1 + std::sin(a) * t2;
    verts.push_back(UnitVector::normalized(std::cos(radius) * center.vec() +
                                           std::sin(radius) * dir));
  }
  return ConvexSphericalPolygon::from_vertices(std::move(verts));
}

inline Arc random_arc(std::mt19937_64& gen, double min_len = 0.05, double max_len = 2.8) {
  while (true) {
    const UnitVector a = UnitVector::normalized(sample_unit_vector(gen));
    Vec3 t = sample_unit_vector(gen);
    t -= t.dot(a.vec()) * a.vec();
    if (t.norm() < 1e-6) continue;
    t.normalize();
    const double len = uniform(gen, min_len, max_len);
    return Arc(a, UnitVector::normalized(std::cos(len) * a.vec() + std::sin(len) * t));
  }
}

}  // namespace spherefold::oracle
