#pragma once

#include <string>
#include <vector>

#include "spherefold/geom.hpp"
#include "spherefold/tolerances.hpp"

namespace spherefold {

// A chain fragment confined to one closed hemisphere, oriented so that the
// pinned edge is the first one (vertices 0 and 1 are held fixed). For a
// subchain phase the pinned edge is the clipped part of the separating edge
// and the boundary is the belt median; a whole-chain phase pins the chain's
// first edge and tracks the moving best-fit hemisphere instead.
struct PinnedSubchain {
  std::vector<Vec3> points;         // unit vectors q_0..q_{m}
  std::vector<double> arc_lengths;  // one per edge
  UnitVector boundary_pole;         // oriented: the subchain side has nonnegative dot
  bool whole_chain = false;
};

// Interior angles at q_1..q_{m-1}.
std::vector<double> bend_angles(const std::vector<Vec3>& points);
double max_bend_deficit(const std::vector<Vec3>& points);

struct ExpansiveVelocity {
  bool straightened = false;  // no strict expansion exists and all angles are flat
  double rate = 0.0;          // optimal uniform slack of -d/dt <q_i, q_j>
  std::vector<Vec3> velocity;  // tangent velocity per vertex; zero on pinned ones
};

// Per-step velocity: maximize t subject to tangency, fixed edge lengths,
// zero pinned velocities, -d/dt <q_i, q_j> >= t for every nonadjacent pair
// and |v| <= 1. Solved exactly through the min-norm-point dual on the
// nullspace of the equality constraints. Throws InternalError if no strict
// expansion exists on a subchain that is not straight.
ExpansiveVelocity expansive_velocity(const PinnedSubchain& sub, const Tolerances& tol = {});

enum class PhaseEvent { Straightened, HitsMedianEquator, LeavesHemisphere };

struct TimedPoints {
  double t = 0.0;
  std::vector<Vec3> points;
};

struct PhaseIntegration {
  PhaseEvent event = PhaseEvent::Straightened;
  std::vector<TimedPoints> steps;  // includes the initial state at t = 0
  int displaced_vertex = -1;       // subchain vertex index
  double displacement = 0.0;       // its total displacement over the phase
};

// Explicit midpoint stepping with per-step velocity re-solve; after each
// step the vertices are renormalized and the edge lengths restored by a
// cascade from the pinned edge. Events (a moving vertex reaching the median,
// or the hemisphere margin dropping to eps_hemi) are located by bisection on
// the step size. A subchain within snap_deficit of straight is completed to
// the exact straight configuration when that is itself expansive and stays
// in the hemisphere.
PhaseIntegration integrate_phase(const PinnedSubchain& sub, const Tolerances& tol = {});

struct TraceCheck {
  bool ok = true;
  std::vector<std::string> issues;
};

// Re-verifies a stored phase segment: edge lengths, monotone nonadjacent
// distances and bend angles (within beta_slack), hemisphere confinement and
// absence of self-contact between nonadjacent subchain arcs.
TraceCheck check_expansive_trace(const PinnedSubchain& sub,
                                 const std::vector<TimedPoints>& segment,
                                 const Tolerances& tol = {});

}  // namespace spherefold
