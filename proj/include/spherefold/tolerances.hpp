#pragma once

namespace spherefold {

// Numeric thresholds shared across the library. Integration thresholds are
// chosen so that accumulated error stays well below every certification
// tolerance checked downstream.
struct Tolerances {
  double eps_flat = 1e-7;      // per-angle flatness threshold (radians)
  double eps_hemi = 1e-9;      // hemisphere-margin threshold
  double eps_belt = 1e-6;      // slack on the certified belt width
  double eps_straight = 1e-8;  // maximin rate below which no strict expansion exists
  double eps_event = 1e-9;     // event location tolerance
  double step_initial = 1e-2;  // integrator step, radians of motion per unit time
  double step_min = 1e-8;
  double projection_tol = 1e-9;  // max edge-length residual after a step
  double beta_slack = 1e-7;      // allowed per-step angle regression in diagnostics
  double snap_deficit = 1e-6;    // per-angle deficit below which exact straightening is attempted

  static Tolerances defaults() { return {}; }

  // Tightened integrator settings for high-accuracy runs.
  static Tolerances strict() {
    Tolerances t;
    t.step_initial = 1e-3;
    t.projection_tol = 1e-10;
    t.eps_event = 1e-10;
    t.snap_deficit = 1e-7;
    return t;
  }
};

// Fixed epsilon for sign and degeneracy predicates in the geometry kernel.
// Not profile dependent: predicates must agree across the whole pipeline.
inline constexpr double eps_geom = 1e-10;

}  // namespace spherefold
