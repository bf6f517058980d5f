#include "spherefold/min_norm.hpp"

#include <doctest.h>

#include <random>

#include "spherefold/rng.hpp"

using namespace spherefold;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("single point is its own nearest point") {
  const auto r = min_norm_point({vec({3.0, 4.0, 0.0})});
  CHECK(r.norm == doctest::Approx(5.0));
  CHECK((r.point - vec({3.0, 4.0, 0.0})).norm() < 1e-12);
}

TEST_CASE("segment projection matches the analytic solution") {
  // Projection of the origin onto the segment (1,1)-(−1,1) is (0,1).
  const auto r = min_norm_point({vec({1.0, 1.0}), vec({-1.0, 1.0})});
  CHECK(r.norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.point(0) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(r.point(1) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("origin inside the hull yields zero") {
  const auto r = min_norm_point(
      {vec({1.0, 0.0}), vec({-1.0, 0.1}), vec({-1.0, -0.1}), vec({0.2, 0.9})});
  CHECK(r.norm < 1e-10);
}

TEST_CASE("optimality condition holds on random point sets") {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = trial % 2 == 0 ? 3 : 8;
    const int m = 2 + static_cast<int>(uniform01(gen) * 20.0);
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd p(dim);
      for (int d = 0; d < dim; ++d) p(d) = uniform(gen, -1.0, 1.0);
      // shift half the sets away from the origin so both regimes appear
      if (trial % 3 == 0) p(0) += 1.5;
      pts.push_back(p);
    }
    const auto r = min_norm_point(pts);
    const double nn = r.point.squaredNorm();
    for (const auto& p : pts) {
      CHECK(p.dot(r.point) >= nn - 1e-9);  // projection optimality
    }
    // No sampled convex combination may beat the reported optimum.
    for (int probe = 0; probe < 20; ++probe) {
      Eigen::VectorXd combo = Eigen::VectorXd::Zero(dim);
      double total = 0.0;
      for (const auto& p : pts) {
        const double w = uniform01(gen);
        combo += w * p;
        total += w;
      }
      CHECK(combo.norm() / total >= r.norm - 1e-9);
    }
  }
}
