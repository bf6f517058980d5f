#pragma once

#include <Eigen/Core>
#include <vector>

namespace spherefold {

struct MinNormResult {
  Eigen::VectorXd point;  // nearest point to the origin in conv(points)
  double norm = 0.0;
};

// Nearest point to the origin in the convex hull of a finite point set
// (Wolfe's method). By minimax duality this also solves
//
//   maximize_{|z| <= 1}  min_i <a_i, z>
//
// whose optimum equals `norm` and, when positive, is attained at
// point / norm. That one program is the workhorse behind the hemisphere
// feasibility test, the spherical Chebyshev center and the maximin
// expansive velocity solve.
MinNormResult min_norm_point(const std::vector<Eigen::VectorXd>& points);

}  // namespace spherefold
