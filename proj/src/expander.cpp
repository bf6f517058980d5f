#include "spherefold/expander.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "spherefold/min_norm.hpp"

namespace spherefold {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

struct VelocitySolve {
  double rate = 0.0;
  std::vector<Vec3> velocity;  // per vertex, zeros on pinned
};

// Bend i (at vertex i) counts as straight once its deficit drops below the
// merge gap; the incident edges then move as one rigid compound bar. Without
// this coarsening the strictly expansive program degenerates: a straight
// vertex sits at the maximum of its nonadjacent pair distance, so no
// direction can expand that pair strictly.
std::vector<bool> merged_bends(const std::vector<Vec3>& q, const std::vector<double>& lengths,
                               double merge_gap) {
  const auto bends = bend_angles(q);
  std::vector<bool> merged(q.size(), false);
  for (size_t i = 1; i + 1 < q.size(); ++i) {
    merged[i] = (kPi - bends[i - 1]) <= merge_gap &&
                lengths[i - 1] + lengths[i] < kPi - 1e-9;
  }
  return merged;
}

// Maximin expansive direction. Variables are the tangent velocities of the
// moving vertices; equalities (tangency, fixed edge lengths, rigidity of
// straight runs) are eliminated through an orthonormal nullspace basis,
// after which
//   max_{|z|<=1} min_pairs <a_p, z>
// is solved by the min-norm-point dual. Pairs whose span lies inside one
// straight run are frozen by the rigidity rows and drop out of the strict
// set.
VelocitySolve solve_velocity(const std::vector<Vec3>& q, const std::vector<double>& lengths,
                             double merge_gap) {
  const int count = static_cast<int>(q.size());
  VelocitySolve out;
  out.velocity.assign(count, Vec3::Zero());
  const int moving = count - 2;
  if (moving <= 0) return out;

  const auto block = [](int vertex) { return 3 * (vertex - 2); };
  const std::vector<bool> merged = merged_bends(q, lengths, merge_gap);

  std::vector<Eigen::VectorXd> eq_rows;
  const auto add_pair_row = [&](int i, int j) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(3 * moving);
    if (i >= 2) row.segment<3>(block(i)) = q[j];
    if (j >= 2) row.segment<3>(block(j)) = q[i];
    if (!row.isZero(0.0)) eq_rows.push_back(std::move(row));
  };
  for (int j = 2; j < count; ++j) {
    Eigen::VectorXd tangency = Eigen::VectorXd::Zero(3 * moving);
    tangency.segment<3>(block(j)) = q[j];
    eq_rows.push_back(std::move(tangency));
    add_pair_row(j - 1, j);  // bar
  }
  for (int i = 1; i + 1 < count; ++i) {
    if (!merged[i]) continue;
    add_pair_row(i - 1, i + 1);  // rigid triple
    if (i >= 2) {
      // kill the second-order wiggle of the interior vertex
      const Vec3 along = (q[i + 1] - q[i + 1].dot(q[i]) * q[i]).normalized();
      Eigen::VectorXd row = Eigen::VectorXd::Zero(3 * moving);
      row.segment<3>(block(i)) = q[i].cross(along);
      eq_rows.push_back(std::move(row));
    }
  }

  Eigen::MatrixXd eq(eq_rows.size(), 3 * moving);
  for (size_t r = 0; r < eq_rows.size(); ++r) eq.row(static_cast<Eigen::Index>(r)) = eq_rows[r];

  Eigen::FullPivLU<Eigen::MatrixXd> lu(eq);
  lu.setThreshold(1e-10);
  const Eigen::MatrixXd kernel = lu.kernel();
  if (kernel.cols() == 0 || (kernel.cols() == 1 && kernel.norm() < 1e-12)) {
    return out;  // fully constrained
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(kernel);
  const Eigen::MatrixXd basis =
      qr.householderQ() * Eigen::MatrixXd::Identity(3 * moving, kernel.cols());

  std::vector<Eigen::VectorXd> projected;
  for (int i = 0; i + 2 < count; ++i) {
    for (int j = i + 2; j < count; ++j) {
      bool frozen = true;
      for (int k = i + 1; k < j; ++k) {
        if (!merged[k]) {
          frozen = false;
          break;
        }
      }
      if (frozen) continue;  // pair inside a rigid straight run
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(3 * moving);
      if (i >= 2) grad.segment<3>(block(i)) = q[j];
      if (j >= 2) grad.segment<3>(block(j)) = q[i];
      if (grad.isZero(0.0)) continue;
      projected.push_back(-basis.transpose() * grad);
    }
  }
  if (projected.empty()) return out;

  const MinNormResult mn = min_norm_point(projected);
  out.rate = mn.norm;
  if (mn.norm > 1e-13) {
    const Eigen::VectorXd v = basis * (mn.point / mn.norm);
    for (int j = 2; j < count; ++j) {
      out.velocity[j] = v.segment<3>(block(j));
    }
  }
  return out;
}

// Renormalize and restore the edge lengths exactly by walking outward from
// the pinned edge; each vertex is re-placed at its intrinsic distance from
// the (already corrected) predecessor, keeping its current direction.
bool project_to_constraints(std::vector<Vec3>& q, const std::vector<double>& lengths) {
  for (auto& v : q) {
    const double n = v.norm();
    if (n < 1e-9) return false;
    v /= n;
  }
  for (size_t j = 2; j < q.size(); ++j) {
    Vec3 dir = q[j] - q[j].dot(q[j - 1]) * q[j - 1];
    const double n = dir.norm();
    if (n < 1e-12) return false;
    dir /= n;
    const double a = lengths[j - 1];
    q[j] = std::cos(a) * q[j - 1] + std::sin(a) * dir;
  }
  return true;
}

double max_edge_residual(const std::vector<Vec3>& q, const std::vector<double>& lengths) {
  double worst = 0.0;
  for (size_t j = 1; j < q.size(); ++j) {
    worst = std::max(worst, std::abs(angle_between(q[j - 1], q[j]) - lengths[j - 1]));
  }
  return worst;
}

// Event value: positive strictly inside the phase region, zero at the event.
double event_value(const PinnedSubchain& sub, const std::vector<Vec3>& q,
                   const Tolerances& tol, int* arg_vertex = nullptr) {
  if (sub.whole_chain) {
    std::vector<UnitVector> pts;
    pts.reserve(q.size());
    for (const auto& v : q) pts.push_back(UnitVector::normalized(v));
    return hemisphere_margin(pts) - tol.eps_hemi;
  }
  double worst = kPi;
  for (size_t j = 2; j < q.size(); ++j) {
    const double d = std::asin(clamp_unit(q[j].dot(sub.boundary_pole.vec())));
    if (d < worst) {
      worst = d;
      if (arg_vertex) *arg_vertex = static_cast<int>(j);
    }
  }
  return worst;
}

double min_bend_regression(const std::vector<Vec3>& before, const std::vector<Vec3>& after) {
  const auto b0 = bend_angles(before);
  const auto b1 = bend_angles(after);
  double worst = 0.0;
  for (size_t i = 0; i < b0.size(); ++i) {
    worst = std::min(worst, b1[i] - b0[i]);
  }
  return worst;
}

std::optional<std::vector<Vec3>> try_snap_straight(const PinnedSubchain& sub,
                                                   const std::vector<Vec3>& q) {
  const Vec3 axis_raw = q[0].cross(q[1]);
  if (axis_raw.norm() < 1e-12) return std::nullopt;
  const UnitVector axis = UnitVector::normalized(axis_raw);
  std::vector<Vec3> straight(q.size());
  straight[0] = q[0];
  double cum = 0.0;
  const UnitVector origin = UnitVector::normalized(q[0]);
  for (size_t j = 1; j < q.size(); ++j) {
    cum += sub.arc_lengths[j - 1];
    straight[j] = rotate(origin, axis, cum).vec();
  }
  if (!sub.whole_chain) {
    for (const auto& v : straight) {
      if (std::asin(clamp_unit(v.dot(sub.boundary_pole.vec()))) < -0.5 * eps_geom) {
        return std::nullopt;  // the straight configuration leaves the hemisphere
      }
    }
  }
  for (size_t i = 0; i + 2 < q.size(); ++i) {
    for (size_t j = i + 2; j < q.size(); ++j) {
      if (angle_between(straight[i], straight[j]) < angle_between(q[i], q[j]) - 1e-9) {
        return std::nullopt;  // snapping would contract a pair
      }
    }
  }
  return straight;
}

}  // namespace

std::vector<double> bend_angles(const std::vector<Vec3>& points) {
  std::vector<double> out;
  if (points.size() < 3) return out;
  out.reserve(points.size() - 2);
  for (size_t i = 1; i + 1 < points.size(); ++i) {
    const Vec3 back = (points[i - 1] - points[i - 1].dot(points[i]) * points[i]).normalized();
    const Vec3 fwd = (points[i + 1] - points[i + 1].dot(points[i]) * points[i]).normalized();
    out.push_back(std::atan2(back.cross(fwd).norm(), back.dot(fwd)));
  }
  return out;
}

double max_bend_deficit(const std::vector<Vec3>& points) {
  double worst = 0.0;
  for (double b : bend_angles(points)) {
    worst = std::max(worst, kPi - b);
  }
  return worst;
}

ExpansiveVelocity expansive_velocity(const PinnedSubchain& sub, const Tolerances& tol) {
  const VelocitySolve sol = solve_velocity(sub.points, sub.arc_lengths, tol.snap_deficit);
  ExpansiveVelocity out;
  out.rate = sol.rate;
  out.velocity = sol.velocity;
  if (sol.rate <= tol.eps_straight) {
    if (max_bend_deficit(sub.points) <= tol.eps_flat) {
      out.straightened = true;
      out.velocity.assign(sub.points.size(), Vec3::Zero());
      return out;
    }
    std::ostringstream msg;
    msg << "no strictly expansive direction (rate " << sol.rate << ") on a subchain with "
        << "bend deficit " << max_bend_deficit(sub.points)
        << "; expansive motion must exist for a pinned non-straight open chain";
    throw InternalError(msg.str());
  }
  return out;
}

PhaseIntegration integrate_phase(const PinnedSubchain& sub, const Tolerances& tol) {
  PhaseIntegration out;
  std::vector<Vec3> state = sub.points;
  if (!project_to_constraints(state, sub.arc_lengths) ||
      max_edge_residual(state, sub.arc_lengths) > tol.projection_tol) {
    throw DomainError("pinned subchain does not satisfy its intrinsic lengths");
  }
  const std::vector<Vec3> initial = state;
  out.steps.push_back({0.0, state});

  const auto finish = [&](PhaseEvent event, int forced_vertex) {
    out.event = event;
    const auto& last = out.steps.back().points;
    if (forced_vertex >= 0) {
      out.displaced_vertex = forced_vertex;
      out.displacement = angle_between(initial[forced_vertex], last[forced_vertex]);
    } else {
      for (size_t j = 2; j < last.size(); ++j) {
        const double d = angle_between(initial[j], last[j]);
        if (d > out.displacement) {
          out.displacement = d;
          out.displaced_vertex = static_cast<int>(j);
        }
      }
    }
    return out;
  };

  const auto attempt_step = [&](const std::vector<Vec3>& from, const ExpansiveVelocity& vel,
                                double h) -> std::optional<std::vector<Vec3>> {
    std::vector<Vec3> mid = from;
    for (size_t j = 0; j < mid.size(); ++j) mid[j] += 0.5 * h * vel.velocity[j];
    if (!project_to_constraints(mid, sub.arc_lengths)) return std::nullopt;
    const VelocitySolve mid_sol = solve_velocity(mid, sub.arc_lengths, tol.snap_deficit);
    const std::vector<Vec3>& dir = mid_sol.rate > tol.eps_straight ? mid_sol.velocity
                                                                   : vel.velocity;
    std::vector<Vec3> next = from;
    for (size_t j = 0; j < next.size(); ++j) next[j] += h * dir[j];
    if (!project_to_constraints(next, sub.arc_lengths)) return std::nullopt;
    if (max_edge_residual(next, sub.arc_lengths) > tol.projection_tol) return std::nullopt;
    return next;
  };

  double t = 0.0;
  double h = tol.step_initial;
  constexpr long kMaxSteps = 2000000;
  for (long iter = 0; iter < kMaxSteps; ++iter) {
    if (max_bend_deficit(state) <= tol.snap_deficit) {
      if (auto snapped = try_snap_straight(sub, state)) {
        double moved = 0.0;
        for (size_t j = 0; j < state.size(); ++j) {
          moved = std::max(moved, angle_between(state[j], (*snapped)[j]));
        }
        out.steps.push_back({t + std::max(moved, 1e-12), *snapped});
        return finish(PhaseEvent::Straightened, -1);
      }
    }

    PinnedSubchain cur = sub;
    cur.points = state;
    ExpansiveVelocity vel;
    try {
      vel = expansive_velocity(cur, tol);
    } catch (const InternalError&) {
      // One last attempt to complete the phase exactly before giving up.
      if (auto snapped = try_snap_straight(sub, state)) {
        out.steps.push_back({t + 1e-12, *snapped});
        return finish(PhaseEvent::Straightened, -1);
      }
      throw;
    }
    if (vel.straightened) {
      return finish(PhaseEvent::Straightened, -1);
    }

    const double g_old = event_value(sub, state, tol);
    // A step may not carry a bend through the straight position: the signed
    // volume det(q_{i-1}, q_i, q_{i+1}) changes sign exactly there.
    const auto crosses_fold = [&](const std::vector<Vec3>& before,
                                  const std::vector<Vec3>& after) {
      const auto bends = bend_angles(before);
      for (size_t i = 1; i + 1 < before.size(); ++i) {
        if (kPi - bends[i - 1] <= tol.snap_deficit) continue;  // already merged
        const double f_old = before[i - 1].cross(before[i]).dot(before[i + 1]);
        const double f_new = after[i - 1].cross(after[i]).dot(after[i + 1]);
        if ((f_old > 0.0) != (f_new > 0.0) && std::abs(f_new) > 1e-12) return true;
      }
      return false;
    };
    std::optional<std::vector<Vec3>> trial;
    while (true) {
      trial = attempt_step(state, vel, h);
      if (trial && min_bend_regression(state, *trial) >= -1e-9 &&
          !crosses_fold(state, *trial)) {
        break;
      }
      h *= 0.5;
      if (h < tol.step_min) {
        std::ostringstream msg;
        msg << "integration step underflow at t=" << t << " (rate " << vel.rate
            << ", deficit " << max_bend_deficit(state) << ")";
        throw InternalError(msg.str());
      }
    }

    int event_vertex = -1;
    const double g_new = event_value(sub, *trial, tol, &event_vertex);
    if (g_new <= 0.0 && g_old > 0.0) {
      // Locate the crossing by bisection on the step size.
      double lo = 0.0, hi = h;
      std::vector<Vec3> at_event = *trial;
      double g_hi = g_new;
      for (int it = 0; it < 200 && g_hi < -0.5 * eps_geom; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto probe = attempt_step(state, vel, mid);
        if (!probe) break;
        const double g_mid = event_value(sub, *probe, tol);
        if (g_mid > 0.0) {
          lo = mid;
        } else {
          hi = mid;
          at_event = *probe;
          g_hi = g_mid;
        }
      }
      int vertex = -1;
      event_value(sub, at_event, tol, &vertex);
      out.steps.push_back({t + hi, at_event});
      return finish(sub.whole_chain ? PhaseEvent::LeavesHemisphere
                                    : PhaseEvent::HitsMedianEquator,
                    sub.whole_chain ? -1 : vertex);
    }

    t += h;
    state = *trial;
    out.steps.push_back({t, state});
    h = std::min(2.0 * h, tol.step_initial);
  }
  throw InternalError("integrate_phase exceeded the step budget");
}

TraceCheck check_expansive_trace(const PinnedSubchain& sub,
                                 const std::vector<TimedPoints>& segment,
                                 const Tolerances& tol) {
  TraceCheck out;
  const auto complain = [&](const std::string& msg) {
    out.ok = false;
    out.issues.push_back(msg);
  };
  if (segment.size() < 2) return out;

  for (size_t s = 0; s < segment.size(); ++s) {
    const auto& q = segment[s].points;
    const double res = max_edge_residual(q, sub.arc_lengths);
    if (res > 10.0 * tol.projection_tol) {
      complain("edge length residual " + std::to_string(res) + " at step " +
               std::to_string(s));
    }
    if (!sub.whole_chain) {
      for (size_t j = 0; j < q.size(); ++j) {
        if (std::asin(clamp_unit(q[j].dot(sub.boundary_pole.vec()))) < -eps_geom) {
          complain("vertex " + std::to_string(j) + " left the hemisphere at step " +
                   std::to_string(s));
        }
      }
    }
    // nonadjacent subchain arcs must stay apart; edge e spans q_{e-1} -> q_e
    const int edges = static_cast<int>(q.size()) - 1;
    for (int e = 1; e <= edges; ++e) {
      for (int f = e + 2; f <= edges; ++f) {
        const Arc a(UnitVector::normalized(q[e - 1]), UnitVector::normalized(q[e]));
        const Arc b(UnitVector::normalized(q[f - 1]), UnitVector::normalized(q[f]));
        if (arcs_intersect(a, b).touching()) {
          complain("self contact between edges " + std::to_string(e) + " and " +
                   std::to_string(f) + " at step " + std::to_string(s));
        }
      }
    }
    if (s == 0) continue;
    const auto& prev = segment[s - 1].points;
    for (size_t i = 0; i + 2 < q.size(); ++i) {
      for (size_t j = i + 2; j < q.size(); ++j) {
        if (angle_between(q[i], q[j]) < angle_between(prev[i], prev[j]) - tol.beta_slack) {
          complain("pair (" + std::to_string(i) + "," + std::to_string(j) +
                   ") contracted at step " + std::to_string(s));
        }
      }
    }
    const auto b0 = bend_angles(prev);
    const auto b1 = bend_angles(q);
    for (size_t i = 0; i < b1.size(); ++i) {
      if (b1[i] < b0[i] - tol.beta_slack) {
        complain("bend angle " + std::to_string(i + 1) + " decreased at step " +
                 std::to_string(s));
      }
    }
  }
  return out;
}

}  // namespace spherefold
