#include "spherefold/min_norm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "spherefold/errors.hpp"

namespace spherefold {

namespace {

// Minimum-norm point of the affine hull of the selected points:
// minimize |A mu| subject to sum(mu) = 1. Solved through the bordered
// Gram system; a least-squares solve covers affinely dependent sets.
Eigen::VectorXd affine_weights(const std::vector<Eigen::VectorXd>& pts,
                               const std::vector<int>& support) {
  const int s = static_cast<int>(support.size());
  Eigen::MatrixXd sys(s + 1, s + 1);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      sys(i, j) = pts[support[i]].dot(pts[support[j]]);
    }
    sys(i, s) = 1.0;
    sys(s, i) = 1.0;
  }
  sys(s, s) = 0.0;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
  rhs(s) = 1.0;
  Eigen::VectorXd sol = sys.completeOrthogonalDecomposition().solve(rhs);
  return sol.head(s);
}

}  // namespace

MinNormResult min_norm_point(const std::vector<Eigen::VectorXd>& points) {
  if (points.empty()) {
    throw DomainError("min_norm_point: empty point set");
  }
  const int m = static_cast<int>(points.size());
  const Eigen::Index dim = points[0].size();
  double scale = 0.0;
  for (const auto& p : points) {
    if (p.size() != dim) {
      throw DomainError("min_norm_point: inconsistent dimensions");
    }
    scale = std::max(scale, p.squaredNorm());
  }
  const double opt_tol = 1e-14 * std::max(1.0, scale);
  const double weight_tol = 1e-12;

  int start = 0;
  for (int i = 1; i < m; ++i) {
    if (points[i].squaredNorm() < points[start].squaredNorm()) start = i;
  }
  std::vector<int> support = {start};
  std::vector<double> lambda = {1.0};

  Eigen::VectorXd x = points[start];
  const int max_major = 16 * m + 64;
  for (int major = 0; major < max_major; ++major) {
    // Linear minimization oracle.
    int best = 0;
    double best_dot = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double d = x.dot(points[i]);
      if (d < best_dot) {
        best_dot = d;
        best = i;
      }
    }
    if (best_dot >= x.squaredNorm() - opt_tol) break;
    if (std::find(support.begin(), support.end(), best) != support.end()) {
      break;  // numerically stalled; x already near-optimal
    }
    support.push_back(best);
    lambda.push_back(0.0);

    // Minor cycle: pull the affine optimum back into the simplex.
    for (int minor = 0; minor < 2 * m + 16; ++minor) {
      Eigen::VectorXd mu = affine_weights(points, support);
      double mu_min = mu.minCoeff();
      if (mu_min >= -weight_tol) {
        for (size_t i = 0; i < support.size(); ++i) {
          lambda[i] = std::max(mu(static_cast<int>(i)), 0.0);
        }
        break;
      }
      double theta = 1.0;
      for (size_t i = 0; i < support.size(); ++i) {
        const double mi = mu(static_cast<int>(i));
        if (mi < lambda[i]) {
          theta = std::min(theta, lambda[i] / (lambda[i] - mi));
        }
      }
      std::vector<int> next_support;
      std::vector<double> next_lambda;
      for (size_t i = 0; i < support.size(); ++i) {
        const double li = (1.0 - theta) * lambda[i] + theta * mu(static_cast<int>(i));
        if (li > weight_tol) {
          next_support.push_back(support[i]);
          next_lambda.push_back(li);
        }
      }
      if (next_support.empty()) {  // keep the single best weight
        size_t arg = 0;
        for (size_t i = 1; i < support.size(); ++i) {
          if (lambda[i] > lambda[arg]) arg = i;
        }
        next_support = {support[arg]};
        next_lambda = {1.0};
      }
      support = std::move(next_support);
      lambda = std::move(next_lambda);
    }

    double total = 0.0;
    for (double l : lambda) total += l;
    x = Eigen::VectorXd::Zero(dim);
    for (size_t i = 0; i < support.size(); ++i) {
      x += (lambda[i] / total) * points[support[i]];
    }
  }

  MinNormResult result;
  result.point = x;
  result.norm = x.norm();
  return result;
}

}  // namespace spherefold
