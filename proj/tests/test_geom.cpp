#include "spherefold/geom.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "spherefold/rng.hpp"

using namespace spherefold;

namespace {
constexpr double kPi = std::numbers::pi;

UnitVector uv(double x, double y, double z) { return UnitVector::normalized({x, y, z}); }

UnitVector lonlat(double lon, double lat) {
  return uv(std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat));
}
}  // namespace

TEST_CASE("spherical distance basics") {
  CHECK(spherical_distance(uv(1, 0, 0), uv(0, 1, 0)) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(spherical_distance(uv(1, 0, 0), uv(1, 0, 0)) == doctest::Approx(0.0));
  CHECK(spherical_distance(uv(1, 0, 0), uv(-1, 0, 0)) == doctest::Approx(kPi));
  // symmetry and triangle inequality on random triples
  std::mt19937_64 gen(7);
  for (int i = 0; i < 200; ++i) {
    const UnitVector a = UnitVector::normalized(sample_unit_vector(gen));
    const UnitVector b = UnitVector::normalized(sample_unit_vector(gen));
    const UnitVector c = UnitVector::normalized(sample_unit_vector(gen));
    CHECK(spherical_distance(a, b) == doctest::Approx(spherical_distance(b, a)).epsilon(1e-14));
    CHECK(spherical_distance(a, c) <= spherical_distance(a, b) + spherical_distance(b, c) + 1e-12);
  }
}

TEST_CASE("duality maps the equator to the north pole and is an involution") {
  const GreatCircle equator = GreatCircle::through(uv(1, 0, 0), uv(0, 1, 0));
  CHECK(dual(equator).z() == doctest::Approx(1.0).epsilon(1e-15));

  const GreatCircle through_xz = GreatCircle::through(uv(1, 0, 0), uv(0, 0, 1));
  CHECK(std::abs(dual(through_xz).y()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dual(through_xz).y() > 0.0);  // canonical representative

  std::mt19937_64 gen(11);
  for (int i = 0; i < 1000; ++i) {
    const GreatCircle c = dual(UnitVector::normalized(sample_unit_vector(gen)));
    const GreatCircle back = dual(dual(c));
    CHECK((back.pole().vec() - c.pole().vec()).norm() < 1e-12);
  }
}

TEST_CASE("circle crossing an arc") {
  const Arc equatorial(lonlat(0, 0), lonlat(kPi / 2, 0));
  const GreatCircle meridian45 = GreatCircle::through(uv(0, 0, 1), lonlat(kPi / 4, 0));
  CHECK(circle_crosses_arc(meridian45, equatorial).crosses);
  CHECK_FALSE(circle_crosses_arc(meridian45, equatorial).degenerate);

  const Arc northern(lonlat(0.3, 0.4), lonlat(1.1, 0.7));
  const GreatCircle equator = GreatCircle::through(uv(1, 0, 0), uv(0, 1, 0));
  CHECK_FALSE(circle_crosses_arc(equator, northern).crosses);

  const GreatCircle through_endpoint = GreatCircle::through(uv(0, 0, 1), lonlat(0, 0));
  CHECK(circle_crosses_arc(through_endpoint, equatorial).degenerate);
}

TEST_CASE("arc intersection: crossing, disjoint, overlap") {
  const Arc equatorial(lonlat(0, 0), lonlat(kPi / 2, 0));
  const Arc meridian(lonlat(kPi / 4, -kPi / 4), lonlat(kPi / 4, kPi / 4));
  const ArcContact crossing = arcs_intersect(equatorial, meridian);
  CHECK(crossing.kind == ArcContact::Kind::Proper);
  REQUIRE(crossing.point.has_value());
  CHECK(spherical_distance(*crossing.point, lonlat(kPi / 4, 0)) < 1e-9);

  const Arc far_north(lonlat(2.0, 1.0), lonlat(2.5, 1.2));
  CHECK(arcs_intersect(equatorial, far_north).kind == ArcContact::Kind::None);

  // collinear overlap, confirmed against the dense sampling oracle
  const Arc shifted(lonlat(kPi / 4, 0), lonlat(3 * kPi / 4, 0));
  const ArcContact overlap = arcs_intersect(equatorial, shifted);
  CHECK(overlap.kind == ArcContact::Kind::CollinearOverlap);
  CHECK(oracle::arcs_touch(equatorial, shifted));

  // sharing exactly one endpoint
  const Arc continuation(lonlat(kPi / 2, 0), lonlat(kPi / 2, 0.9));
  CHECK(arcs_intersect(equatorial, continuation).kind == ArcContact::Kind::SharedEndpoint);

  // collinear but disjoint spans
  const Arc gap(lonlat(kPi / 2 + 0.2, 0), lonlat(kPi / 2 + 0.9, 0));
  CHECK(arcs_intersect(equatorial, gap).kind == ArcContact::Kind::None);
}

TEST_CASE("arc intersection agrees with the dense sampling oracle") {
  std::mt19937_64 gen(21);
  int touching_seen = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Arc e1 = oracle::random_arc(gen);
    Arc e2 = oracle::random_arc(gen);
    if (trial % 3 == 0) {
      // force an intersection through a shared interior point
      const UnitVector x = UnitVector::normalized(sample_unit_vector(gen));
      auto through = [&](double len) {
        Vec3 t = sample_unit_vector(gen);
        t -= t.dot(x.vec()) * x.vec();
        t.normalize();
        const UnitVector a = UnitVector::normalized(std::cos(len) * x.vec() - std::sin(len) * t);
        const UnitVector b = UnitVector::normalized(std::cos(len) * x.vec() + std::sin(len) * t);
        return Arc(a, b);
      };
      e1 = through(uniform(gen, 0.2, 1.2));
      e2 = through(uniform(gen, 0.2, 1.2));
    }
    const bool lib = arcs_intersect(e1, e2).touching();
    const bool sampled = oracle::arcs_touch(e1, e2);
    CHECK(lib == sampled);
    if (lib) ++touching_seen;
  }
  CHECK(touching_seen > 200);  // the forced cases must actually exercise contact
}

TEST_CASE("lune area is twice the span") {
  CHECK(lune_area(kPi / 2) == doctest::Approx(kPi));
  CHECK(lune_area(0.3) == doctest::Approx(0.6));
  CHECK_THROWS_AS(lune_area(0.0), DomainError);
  CHECK_THROWS_AS(lune_area(kPi), DomainError);  // half sphere: documented limit, rejected

  const Arc e(lonlat(0, 0), lonlat(0.8, 0));
  const Lune dual_lune = Lune::dual_of_arc(e);
  CHECK(dual_lune.span() == doctest::Approx(0.8));
  CHECK(dual_lune.area() == doctest::Approx(1.6));
  // Monte Carlo cross-check of the dual lune's membership area (both copies).
  const auto mc = oracle::mc_area(
      [&](const UnitVector& q) { return dual_lune.contains_pole(q); }, 200000, 5);
  CHECK(std::abs(mc.value - 2.0 * dual_lune.area()) <= 3.0 * mc.sigma);
}

TEST_CASE("crossing a circle and landing in the dual lune coincide") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const Arc e = oracle::random_arc(gen);
    const UnitVector pole = UnitVector::normalized(sample_unit_vector(gen));
    const CrossingTest test = circle_crosses_arc(GreatCircle::from_pole(pole), e);
    if (test.degenerate) continue;
    CHECK(test.crosses == Lune::dual_of_arc(e).contains_pole(pole));
  }
}

TEST_CASE("polygon area by excess matches Monte Carlo") {
  // octant: area pi/2 exactly
  const auto octant =
      ConvexSphericalPolygon::from_vertices({uv(1, 0, 0), uv(0, 1, 0), uv(0, 0, 1)});
  CHECK(octant.area() == doctest::Approx(kPi / 2).epsilon(1e-12));

  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto poly = oracle::random_convex_polygon(gen);
    const auto mc = oracle::mc_area(
        [&](const UnitVector& q) { return poly.contains(q); }, 100000, 1000 + trial);
    CHECK(std::abs(poly.area() - mc.value) <= 3.0 * mc.sigma + 1e-6);
  }
}

TEST_CASE("maximal inscribed circle") {
  // A lune of span w admits exactly a circle of diameter w.
  const double w = 0.9;
  const UnitVector u1 = uv(0, 0, 1);
  const UnitVector u2 = uv(std::sin(w), 0, -std::cos(w));  // angle pi - w to u1
  const auto lune_region = ConvexSphericalPolygon::from_halfspaces({u1, u2});
  REQUIRE(lune_region.has_value());
  CHECK(lune_region->area() == doctest::Approx(2.0 * w).epsilon(1e-9));
  const InscribedCircle in_lune = max_inscribed_circle(*lune_region);
  CHECK(in_lune.diameter == doctest::Approx(w).epsilon(1e-9));

  // Regular quadrilateral around the north pole: center at the pole.
  std::vector<UnitVector> quad;
  for (int i = 0; i < 4; ++i) {
    const double a = i * kPi / 2;
    quad.push_back(uv(std::sin(0.6) * std::cos(a), std::sin(0.6) * std::sin(a), std::cos(0.6)));
  }
  const InscribedCircle in_quad = max_inscribed_circle(ConvexSphericalPolygon::from_vertices(quad));
  CHECK(spherical_distance(in_quad.center, uv(0, 0, 1)) < 1e-9);

  CHECK_THROWS_AS(
      (void)ConvexSphericalPolygon::from_vertices({uv(1, 0, 0), uv(0, 1, 0)}), DomainError);
}

TEST_CASE("inscribed circle dominates polygon area on random instances") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto poly = oracle::random_convex_polygon(gen);
    const InscribedCircle circle = max_inscribed_circle(poly);
    const auto mc = oracle::mc_area(
        [&](const UnitVector& q) { return poly.contains(q); }, 20000, 7000 + trial);
    CHECK(mc.value <= 2.0 * circle.diameter + 3.0 * mc.sigma);
    CHECK(poly.area() <= 2.0 * circle.diameter + 1e-9);
  }
}

TEST_CASE("halfspace intersection recovers vertices and poles") {
  // The octant as an intersection of three hemispheres.
  const auto region =
      ConvexSphericalPolygon::from_halfspaces({uv(1, 0, 0), uv(0, 1, 0), uv(0, 0, 1)});
  REQUIRE(region.has_value());
  CHECK(region->vertices().size() == 3);
  CHECK(region->area() == doctest::Approx(kPi / 2).epsilon(1e-9));

  // Empty region: opposite constraints.
  CHECK_FALSE(
      ConvexSphericalPolygon::from_halfspaces({uv(0, 0, 1), uv(0, 0, -1)}).has_value());
}
