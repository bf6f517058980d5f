#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spherefold/chain.hpp"
#include "spherefold/geom.hpp"

namespace spherefold {

struct CrossingCount {
  int count = 0;
  // 0 when no edge is crossed, k when only e_k is crossed, absent for >= 2.
  std::optional<int> nice_class;
  // Circle passes within eps_geom of a chain vertex; callers resample.
  bool degenerate = false;
};

CrossingCount crossing_count(const GreatCircle& c, const SphericalChain& chain);

// Monte Carlo estimates of the Lebesgue measure of the crossing classes
// N_0..N_n over the space of great circles (total measure 2*pi). Poles are
// sampled area-uniformly over the whole sphere; the antipodal identification
// is absorbed by the 2*pi normalization.
struct CrossingClassReport {
  std::vector<double> mu;         // index i -> estimate of mu(N_i)
  std::vector<double> std_error;  // per-class sampling standard error
  std::vector<long> hits;
  std::vector<std::optional<UnitVector>> witness_pole;  // one sampled pole per class
  long samples = 0;
  long degenerate_resamples = 0;
  double mean_crossings = 0.0;  // sample mean of #(c intersect chain)

  double total_nice_measure() const;
};

CrossingClassReport estimate_class_measures(const SphericalChain& chain, long samples,
                                            std::uint64_t seed);

struct InequalityCheck {
  bool holds = false;
  double margin = 0.0;     // lhs - 2*(2*pi - alpha)
  double std_error = 0.0;  // standard error of the lhs estimate
};

// sum_{i>=1} mu(N_i) + 2*mu(N_0) >= 2*(2*pi - alpha), within 3 sigma.
InequalityCheck verify_measure_inequality(const CrossingClassReport& report, double alpha);

struct LargestClass {
  int index = 0;
  double mu = 0.0;
  double std_error = 0.0;
};

// Argmax class (ties to the lowest index). Throws InternalError when the
// estimate falls more than 3 sigma below the guaranteed (4*pi - 2*alpha)/(n+2).
LargestClass largest_class(const CrossingClassReport& report, int n, double alpha);

}  // namespace spherefold
