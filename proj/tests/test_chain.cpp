#include "spherefold/chain.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"

using namespace spherefold;

namespace {
constexpr double kPi = std::numbers::pi;

UnitVector uv(double x, double y, double z) { return UnitVector::normalized({x, y, z}); }

UnitVector lonlat(double lon, double lat) {
  return uv(std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat));
}

SphericalChain equatorial_chain(std::initializer_list<double> longitudes) {
  std::vector<UnitVector> verts;
  for (double lon : longitudes) verts.push_back(lonlat(lon, 0));
  return SphericalChain::from_vertices(std::move(verts));
}
}  // namespace

TEST_CASE("origami sectors map to arc lengths") {
  const IntrinsicChain medium = origami_to_chain({kPi / 2, kPi / 2, kPi / 2}, true);
  CHECK(medium.edge_count() == 3);
  CHECK(medium.total_length() == doctest::Approx(1.5 * kPi));
  CHECK(medium.length_class() == LengthClass::Medium);

  const IntrinsicChain short_chain = origami_to_chain({kPi / 4, kPi / 4}, true);
  CHECK(short_chain.total_length() == doctest::Approx(kPi / 2));
  CHECK(short_chain.length_class() == LengthClass::Short);

  CHECK_THROWS_WITH_AS(origami_to_chain({kPi / 2, kPi / 2, kPi / 2, kPi / 2}, true),
                       doctest::Contains("may not be reconfigurable"), DomainError);
  CHECK_THROWS_WITH_AS(origami_to_chain({kPi / 2, kPi / 2}, false),
                       doctest::Contains("closed chain"), DomainError);
  CHECK_THROWS_WITH_AS(origami_to_chain({3.3, 0.5}, true), doctest::Contains("subdivide"),
                       DomainError);
}

TEST_CASE("interior angles of a flat chain are all pi") {
  const SphericalChain chain = equatorial_chain({0.0, 0.7, 1.5, 2.2, 3.0});
  const ProgressMeasure pm = betas(chain);
  REQUIRE(pm.betas.size() == 3);
  for (double b : pm.betas) CHECK(b == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(pm.delta == doctest::Approx(pm.max_delta(chain.edge_count())).epsilon(1e-12));
}

TEST_CASE("right angle chain has beta = pi/2") {
  const SphericalChain chain = SphericalChain::from_vertices(
      {uv(0, -1, 0), uv(1, 0, 0), uv(0, 0, 1)});
  const ProgressMeasure pm = betas(chain);
  REQUIRE(pm.betas.size() == 1);
  CHECK(pm.betas[0] == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK_FALSE(pm.degenerate[0]);
}

TEST_CASE("doubled-back vertex is degenerate and self-intersecting") {
  const SphericalChain chain = equatorial_chain({0.0, 1.0, 0.4});
  const ProgressMeasure pm = betas(chain);
  REQUIRE(pm.betas.size() == 1);
  CHECK(pm.betas[0] == doctest::Approx(0.0));
  CHECK(pm.degenerate[0]);
  CHECK(self_intersects(chain));
}

TEST_CASE("classification: hemispherical, flat, and sphere-spanning") {
  const SphericalChain northern = SphericalChain::from_vertices(
      {lonlat(0.0, 0.5), lonlat(0.9, 0.8), lonlat(1.8, 0.45), lonlat(2.5, 0.9)});
  const Classification c1 = classify(northern);
  CHECK(c1.value == ChainClass::Hemispherical);
  REQUIRE(c1.witness.has_value());
  for (const auto& v : northern.vertices()) {
    CHECK(c1.witness->dot(v) >= c1.margin - 1e-9);
  }
  // independent direction-grid oracle agrees on the margin scale
  CHECK(std::abs(oracle::grid_hemisphere_margin(northern.vertices()) - c1.margin) < 2e-2);

  // Three quarter-arcs along the equator: no open hemisphere contains the
  // vertex set (the origin lies in its convex hull), and the configuration
  // is stretched along a great circle, which takes precedence.
  const SphericalChain three_quarters = SphericalChain::from_vertices(
      {uv(1, 0, 0), uv(0, 1, 0), uv(-1, 0, 0), uv(0, -1, 0)});
  const Classification c2 = classify(three_quarters);
  CHECK(c2.margin <= 1e-9);
  CHECK(oracle::grid_hemisphere_margin(three_quarters.vertices()) < 2e-2);
  CHECK(c2.value == ChainClass::Flat);

  // Bending the middle vertex off the equator makes it genuinely spanning.
  const SphericalChain bent = SphericalChain::from_vertices(
      {uv(1, 0, 0), uv(0, 1, 0), lonlat(kPi - 0.4, 0.25), lonlat(kPi + 1.2, 0.5)});
  const Classification c3 = classify(bent);
  if (c3.value != ChainClass::Flat) {
    CHECK((c3.value == ChainClass::SphereSpanning) == (c3.margin <= 1e-9));
  }

  const SphericalChain flat = equatorial_chain({0.0, 0.9, 1.7, 2.6});
  CHECK(classify(flat).value == ChainClass::Flat);
}

TEST_CASE("self intersection detection") {
  const SphericalChain flat = equatorial_chain({0.0, 0.8, 1.6, 2.4});
  CHECK_FALSE(self_intersects(flat));

  // e3 crosses e1 away from any shared vertex; confirmed by dense sampling.
  const SphericalChain crossing = SphericalChain::from_vertices(
      {lonlat(-0.7, 0.0), lonlat(0.7, 0.0), lonlat(0.7, 0.9), lonlat(0.0, -0.9)});
  const auto hit = find_self_intersection(crossing);
  REQUIRE(hit.has_value());
  CHECK(hit->edge_a == 1);
  CHECK(hit->edge_b == 3);
  CHECK(oracle::arcs_touch(crossing.edge(1), crossing.edge(3)));

  // adjacent edges share p_1 only: fine
  const SphericalChain corner = SphericalChain::from_vertices(
      {uv(0, -1, 0), uv(1, 0, 0), uv(0, 0, 1)});
  CHECK_FALSE(self_intersects(corner));
}

TEST_CASE("random chains are valid, reproducible, and length-preserving") {
  const SphericalChain a = random_chain(3, 1.5 * kPi, 1);
  CHECK(a.edge_count() == 3);
  CHECK(a.total_length() == doctest::Approx(1.5 * kPi));
  CHECK_FALSE(self_intersects(a));
  CHECK(a.intrinsic().length_class() == LengthClass::Medium);

  const SphericalChain b = random_chain(2, kPi / 2, 7);
  CHECK(b.intrinsic().length_class() == LengthClass::Short);
  CHECK_FALSE(self_intersects(b));

  const SphericalChain c = random_chain(5, 1.9 * kPi, 3);
  CHECK_FALSE(self_intersects(c));
  CHECK(classify(c).value != ChainClass::Flat);

  const SphericalChain c2 = random_chain(5, 1.9 * kPi, 3);
  for (size_t i = 0; i < c.vertices().size(); ++i) {
    CHECK(c.vertices()[i].vec() == c2.vertices()[i].vec());  // bit-identical per seed
  }

  for (int seed = 0; seed < 100; ++seed) {
    const SphericalChain r = random_chain(2 + seed % 5, 0.4 + 0.005 * seed, 1000 + seed);
    for (int k = 1; k <= r.edge_count(); ++k) {
      const double d = spherical_distance(r.vertices()[k - 1], r.vertices()[k]);
      CHECK(std::abs(d - r.intrinsic().arc_lengths()[k - 1]) <= 1e-9);
    }
  }
}

TEST_CASE("short chains are always hemispherical") {
  for (int seed = 0; seed < 1000; ++seed) {
    const int n = 2 + seed % 5;
    const double total = 0.3 + (seed % 97) * (kPi - 0.4) / 97.0;
    const SphericalChain chain = random_chain(n, total, 5000 + seed);
    const Classification cls = classify(chain);
    CHECK(cls.value != ChainClass::SphereSpanning);
    CHECK(cls.margin > 1e-9);
  }
}

TEST_CASE("flat classification implies maximal delta") {
  for (int k = 3; k < 8; ++k) {
    std::vector<UnitVector> verts;
    for (int i = 0; i <= k; ++i) verts.push_back(lonlat(i * 0.6, 0));
    const SphericalChain chain = SphericalChain::from_vertices(std::move(verts));
    REQUIRE(classify(chain).value == ChainClass::Flat);
    const ProgressMeasure pm = betas(chain);
    CHECK(std::abs(pm.delta - pm.max_delta(k)) <= k * 1e-7);
  }
}
