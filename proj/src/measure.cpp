#include "spherefold/measure.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spherefold/rng.hpp"

namespace spherefold {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

CrossingCount crossing_count(const GreatCircle& c, const SphericalChain& chain) {
  CrossingCount out;
  const auto& p = chain.vertices();
  int last_flip = 0;
  bool prev_side = false;
  for (size_t i = 0; i < p.size(); ++i) {
    const double d = c.pole().dot(p[i]);
    if (std::abs(d) < eps_geom) {
      out.degenerate = true;
    }
    const bool side = d > 0.0;
    if (i > 0 && side != prev_side) {
      ++out.count;
      last_flip = static_cast<int>(i);  // edge e_i spans p_{i-1} -> p_i
    }
    prev_side = side;
  }
  if (out.count == 0) {
    out.nice_class = 0;
  } else if (out.count == 1) {
    out.nice_class = last_flip;
  }
  return out;
}

double CrossingClassReport::total_nice_measure() const {
  double t = 0.0;
  for (double m : mu) t += m;
  return t;
}

CrossingClassReport estimate_class_measures(const SphericalChain& chain, long samples,
                                            std::uint64_t seed) {
  if (samples < 1000) {
    throw DomainError("estimate_class_measures requires at least 1000 samples");
  }
  const int n = chain.edge_count();
  CrossingClassReport report;
  report.samples = samples;
  report.hits.assign(n + 1, 0);
  report.witness_pole.assign(n + 1, std::nullopt);

  std::mt19937_64 gen(seed);
  long total_crossings = 0;
  for (long s = 0; s < samples; ++s) {
    UnitVector pole = UnitVector::normalized(sample_unit_vector(gen));
    CrossingCount cc = crossing_count(GreatCircle::from_pole(pole), chain);
    // Circles through a vertex form a lower-dimensional set; resample.
    int guard = 0;
    while (cc.degenerate && guard++ < 64) {
      ++report.degenerate_resamples;
      pole = UnitVector::normalized(sample_unit_vector(gen));
      cc = crossing_count(GreatCircle::from_pole(pole), chain);
    }
    total_crossings += cc.count;
    if (cc.nice_class) {
      const int k = *cc.nice_class;
      ++report.hits[k];
      if (!report.witness_pole[k]) report.witness_pole[k] = pole;
    }
  }

  report.mu.resize(n + 1);
  report.std_error.resize(n + 1);
  const double m = static_cast<double>(samples);
  for (int k = 0; k <= n; ++k) {
    const double f = report.hits[k] / m;
    report.mu[k] = kTwoPi * f;
    report.std_error[k] = kTwoPi * std::sqrt(std::max(0.0, f * (1.0 - f) / m));
  }
  report.mean_crossings = total_crossings / m;
  return report;
}

InequalityCheck verify_measure_inequality(const CrossingClassReport& report, double alpha) {
  InequalityCheck out;
  const double m = static_cast<double>(report.samples);
  double lhs = 0.0;
  double first_moment = 0.0;   // E[c_i] over the multinomial outcome
  double second_moment = 0.0;  // E[c_i^2]
  for (size_t k = 0; k < report.mu.size(); ++k) {
    const double coeff = (k == 0) ? 2.0 : 1.0;
    const double f = report.hits[k] / m;
    lhs += coeff * report.mu[k];
    first_moment += coeff * f;
    second_moment += coeff * coeff * f;
  }
  out.margin = lhs - 2.0 * (kTwoPi - alpha);
  out.std_error =
      kTwoPi * std::sqrt(std::max(0.0, (second_moment - first_moment * first_moment) / m));
  out.holds = out.margin >= -3.0 * out.std_error;
  return out;
}

LargestClass largest_class(const CrossingClassReport& report, int n, double alpha) {
  LargestClass out;
  for (size_t k = 1; k < report.mu.size(); ++k) {
    if (report.mu[k] > report.mu[out.index]) {
      out.index = static_cast<int>(k);
    }
  }
  out.mu = report.mu[out.index];
  out.std_error = report.std_error[out.index];
  const double threshold = (4.0 * kPi - 2.0 * alpha) / (n + 2);
  if (out.mu < threshold - 3.0 * out.std_error) {
    std::ostringstream msg;
    msg << "largest nice class N_" << out.index << " measures " << out.mu
        << ", below the guaranteed " << threshold << " (3 sigma = " << 3.0 * out.std_error
        << "); this indicates a geometry bug";
    throw InternalError(msg.str());
  }
  return out;
}

}  // namespace spherefold
