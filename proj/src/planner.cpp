#include "spherefold/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace spherefold {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Flatness deficits of the two parts split at e_k. The bendable angles of
// the left part are beta_1..beta_{k-1}, of the right part beta_k..beta_{n-1}
// (the junction angles belong to the side that can move them).
std::pair<double, double> side_deficits(const ProgressMeasure& pm, int k) {
  double left = 0.0, right = 0.0;
  for (size_t i = 0; i < pm.betas.size(); ++i) {
    const int beta_index = static_cast<int>(i) + 1;
    if (beta_index <= k - 1) {
      left += kPi - pm.betas[i];
    } else {
      right += kPi - pm.betas[i];
    }
  }
  return {left, right};
}

struct SidePlan {
  PinnedSubchain sub;
  // chain vertex index for subchain vertex j >= 1 (index 0 is the clip point)
  std::vector<int> chain_index;
};

SidePlan build_side(const SphericalChain& chain, const SeparationResult& sep,
                    MovingSide side) {
  const int k = sep.edge_index;
  const int n = chain.edge_count();
  const auto& p = chain.vertices();
  const Arc ek = chain.edge(k);
  const auto clip = arc_circle_intersection(ek, sep.belt.median);
  if (!clip) {
    throw InternalError("separating edge does not meet its own median circle");
  }

  SidePlan plan;
  plan.sub.whole_chain = false;
  plan.sub.points.push_back(clip->vec());
  plan.chain_index.push_back(-1);
  if (side == MovingSide::Right) {
    plan.sub.arc_lengths.push_back(spherical_distance(*clip, p[k]));
    for (int j = k; j <= n; ++j) {
      plan.sub.points.push_back(p[j].vec());
      plan.chain_index.push_back(j);
      if (j > k) plan.sub.arc_lengths.push_back(chain.intrinsic().arc_lengths()[j - 1]);
    }
  } else {
    plan.sub.arc_lengths.push_back(spherical_distance(*clip, p[k - 1]));
    for (int j = k - 1; j >= 0; --j) {
      plan.sub.points.push_back(p[j].vec());
      plan.chain_index.push_back(j);
      if (j > 0) plan.sub.arc_lengths.push_back(chain.intrinsic().arc_lengths()[j - 1]);
    }
  }
  const UnitVector& pole = sep.belt.median.pole();
  const double side_sign = plan.sub.points[1].dot(pole.vec());
  plan.sub.boundary_pole = side_sign >= 0.0 ? pole : pole.antipode();
  return plan;
}

SphericalChain apply_side_points(const SphericalChain& chain, const SidePlan& plan,
                                 const std::vector<Vec3>& points) {
  std::vector<UnitVector> verts = chain.vertices();
  for (size_t j = 1; j < points.size(); ++j) {
    verts[plan.chain_index[j]] = UnitVector::normalized(points[j]);
  }
  return SphericalChain::from_vertices(std::move(verts), chain.intrinsic(), 1e-8);
}

}  // namespace

long phase_bound(int n, double alpha) {
  if (n < 2) {
    throw DomainError("phase bound requires n >= 2");
  }
  if (!(alpha > 0.0) || alpha >= kTwoPi) {
    throw DomainError("phase bound requires total length in (0, 2*pi)");
  }
  return static_cast<long>(std::ceil(kTwoPi * alpha * (n + 2) * (n - 1) / (kTwoPi - alpha)));
}

MovingSide choose_moving_side(const SeparationResult& sep, const SphericalChain& chain) {
  const auto [left, right] = side_deficits(betas(chain), sep.edge_index);
  return right > left + 1e-12 ? MovingSide::Right : MovingSide::Left;
}

Trajectory flatten(const SphericalChain& input, const Tolerances& tol) {
  if (const auto hit = find_self_intersection(input)) {
    std::ostringstream msg;
    msg << "input chain self-intersects (edges " << hit->edge_a << " and " << hit->edge_b
        << ")";
    throw DomainError(msg.str());
  }

  Trajectory traj{{}, {}, input.intrinsic()};
  traj.snapshots.push_back({0.0, input});
  const int n = input.edge_count();
  const double alpha = input.total_length();
  const long bound = n >= 2 ? phase_bound(n, alpha) : 0;

  while (true) {
    const SphericalChain& chain = traj.snapshots.back().chain;
    const Classification cls = classify(chain, tol);
    if (cls.value == ChainClass::Flat) break;
    if (static_cast<long>(traj.phases.size()) >= bound) {
      std::ostringstream msg;
      msg << "phase count reached the bound " << bound << " without flattening (n=" << n
          << ", alpha=" << alpha << ")";
      throw InternalError(msg.str());
    }

    PhaseRecord record;
    record.t_begin = traj.snapshots.back().time;
    const ProgressMeasure before = betas(chain);

    PhaseIntegration outcome;
    SidePlan plan;
    if (cls.value == ChainClass::Hemispherical) {
      record.kind = PhaseKind::WholeHemisphere;
      record.side = MovingSide::Whole;
      PinnedSubchain whole;
      for (const auto& v : chain.vertices()) whole.points.push_back(v.vec());
      whole.arc_lengths = chain.intrinsic().arc_lengths();
      whole.boundary_pole = *cls.witness;
      whole.whole_chain = true;
      record.deficit_left = 0.0;
      record.deficit_right = before.deficit();
      outcome = integrate_phase(whole, tol);
      for (size_t s = 1; s < outcome.steps.size(); ++s) {
        std::vector<UnitVector> verts;
        verts.reserve(outcome.steps[s].points.size());
        for (const auto& v : outcome.steps[s].points) verts.push_back(UnitVector::normalized(v));
        traj.snapshots.push_back(
            {record.t_begin + outcome.steps[s].t,
             SphericalChain::from_vertices(std::move(verts), chain.intrinsic(), 1e-8)});
      }
      if (outcome.displaced_vertex >= 0) {
        record.displaced_vertex = outcome.displaced_vertex;
      }
    } else {
      const SeparationResult sep = find_separation(chain, tol);
      if (sep.edge_index == 0) {
        throw InternalError(
            "separation produced a chain-avoiding belt for a non-hemispherical chain");
      }
      record.kind = PhaseKind::SubchainExpansion;
      record.belt = sep.belt;
      record.separating_edge = sep.edge_index;
      const auto [dl, dr] = side_deficits(before, sep.edge_index);
      record.deficit_left = dl;
      record.deficit_right = dr;
      record.side = choose_moving_side(sep, chain);
      plan = build_side(chain, sep, record.side);
      outcome = integrate_phase(plan.sub, tol);
      for (size_t s = 1; s < outcome.steps.size(); ++s) {
        traj.snapshots.push_back({record.t_begin + outcome.steps[s].t,
                                  apply_side_points(chain, plan, outcome.steps[s].points)});
      }
      if (outcome.displaced_vertex >= 1) {
        record.displaced_vertex = plan.chain_index[outcome.displaced_vertex];
      }
    }

    record.event = outcome.event;
    record.displacement = outcome.displacement;
    record.t_end = traj.snapshots.back().time;
    record.delta_gain = betas(traj.snapshots.back().chain).delta - before.delta;
    traj.phases.push_back(record);
  }
  return traj;
}

TrajectoryReport verify_trajectory(const Trajectory& traj, const Tolerances& tol) {
  TrajectoryReport report;
  const auto complain = [&](bool& flag, const std::string& msg) {
    flag = false;
    report.issues.push_back(msg);
  };
  if (traj.snapshots.empty()) {
    complain(report.final_flat, "trajectory has no snapshots");
    return report;
  }
  const int n = traj.intrinsic.edge_count();
  const double alpha = traj.intrinsic.total_length();

  for (size_t s = 0; s < traj.snapshots.size(); ++s) {
    const auto& chain = traj.snapshots[s].chain;
    for (int k = 1; k <= n; ++k) {
      const double d = spherical_distance(chain.vertices()[k - 1], chain.vertices()[k]);
      if (std::abs(d - traj.intrinsic.arc_lengths()[k - 1]) > 1e-7) {
        complain(report.lengths_ok, "edge " + std::to_string(k) + " length drifted at snapshot " +
                                        std::to_string(s));
      }
    }
    if (const auto hit = find_self_intersection(chain)) {
      complain(report.collision_free,
               "snapshot " + std::to_string(s) + " self-intersects (edges " +
                   std::to_string(hit->edge_a) + ", " + std::to_string(hit->edge_b) + ")");
    }
  }

  for (size_t s = 1; s < traj.snapshots.size(); ++s) {
    const ProgressMeasure prev = betas(traj.snapshots[s - 1].chain);
    const ProgressMeasure cur = betas(traj.snapshots[s].chain);
    if (cur.delta < prev.delta - tol.beta_slack) {
      complain(report.delta_monotone, "delta decreased at snapshot " + std::to_string(s));
    }
    for (size_t i = 0; i < cur.betas.size(); ++i) {
      if (cur.betas[i] < prev.betas[i] - tol.beta_slack) {
        complain(report.betas_monotone, "beta_" + std::to_string(i + 1) +
                                            " decreased at snapshot " + std::to_string(s));
      }
    }
    // Spot-check collision freeness between widely spaced snapshots.
    if (traj.snapshots[s].time - traj.snapshots[s - 1].time > 1e-2) {
      const auto& a = traj.snapshots[s - 1].chain.vertices();
      const auto& b = traj.snapshots[s].chain.vertices();
      std::vector<UnitVector> mid;
      mid.reserve(a.size());
      for (size_t j = 0; j < a.size(); ++j) {
        mid.push_back(UnitVector::normalized(a[j].vec() + b[j].vec()));
      }
      try {
        if (self_intersects(SphericalChain::from_vertices(std::move(mid)))) {
          complain(report.collision_free,
                   "interpolated state before snapshot " + std::to_string(s) + " self-intersects");
        }
      } catch (const DomainError&) {
        // midpoint degenerate (antipodal flip); the endpoints were checked
      }
    }
  }

  const SphericalChain& final_chain = traj.snapshots.back().chain;
  const ProgressMeasure final_pm = betas(final_chain);
  if (classify(final_chain, tol).value != ChainClass::Flat) {
    complain(report.final_flat, "final snapshot is not flat");
  }
  if (n >= 2 && std::abs(final_pm.delta - (n - 1) * kPi) > 1e-6 * n) {
    complain(report.final_flat, "final delta differs from (n-1)*pi beyond 1e-6*n");
  }
  if (n >= 2 && static_cast<long>(traj.phases.size()) > phase_bound(n, alpha)) {
    complain(report.phase_count_ok, "phase count exceeds the bound");
  }
  if (alpha > kPi && alpha < kTwoPi) {
    const double gap =
        spherical_distance(final_chain.vertices().front(), final_chain.vertices().back());
    if (std::abs(gap - (kTwoPi - alpha)) > 1e-6) {
      complain(report.endpoint_ok, "final endpoint distance differs from 2*pi - alpha");
    }
  }
  for (size_t i = 0; i < traj.phases.size(); ++i) {
    const PhaseRecord& ph = traj.phases[i];
    if (ph.delta_gain < -tol.beta_slack) {
      complain(report.delta_monotone, "phase " + std::to_string(i) + " lost progress");
    }
    if (ph.kind == PhaseKind::SubchainExpansion && ph.event == PhaseEvent::HitsMedianEquator &&
        ph.belt) {
      if (ph.displacement < 0.5 * ph.belt->width - 1e-6) {
        complain(report.phase_progress_ok,
                 "phase " + std::to_string(i) + " displaced less than half the belt width");
      }
      if (ph.delta_gain < ph.belt->width / (2.0 * alpha) - 1e-6) {
        complain(report.phase_progress_ok,
                 "phase " + std::to_string(i) + " gained less than w/(2*alpha)");
      }
    }
  }
  return report;
}

}  // namespace spherefold
