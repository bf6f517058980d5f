#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spherefold/chain.hpp"
#include "spherefold/expander.hpp"
#include "spherefold/separation.hpp"
#include "spherefold/tolerances.hpp"

namespace spherefold {

enum class PhaseKind { WholeHemisphere, SubchainExpansion };
enum class MovingSide { Left, Right, Whole };

struct PhaseRecord {
  PhaseKind kind = PhaseKind::WholeHemisphere;
  MovingSide side = MovingSide::Whole;
  std::optional<Belt> belt;
  int separating_edge = 0;  // 1-based; 0 for whole-hemisphere phases
  PhaseEvent event = PhaseEvent::Straightened;
  double delta_gain = 0.0;      // delta(after) - delta(before)
  int displaced_vertex = -1;    // chain vertex index
  double displacement = 0.0;
  double deficit_left = 0.0;    // flatness deficits of the two sides at phase start
  double deficit_right = 0.0;
  double t_begin = 0.0;
  double t_end = 0.0;
};

struct Snapshot {
  double time = 0.0;
  SphericalChain chain;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;  // every accepted integrator step
  std::vector<PhaseRecord> phases;
  IntrinsicChain intrinsic;

  int phase_count() const { return static_cast<int>(phases.size()); }
};

// ceil(2*pi*alpha*(n+2)*(n-1) / (2*pi - alpha)); the hard cap on phases.
long phase_bound(int n, double alpha);

// The side whose flatness deficit is larger moves; ties go to the side
// containing p_0.
MovingSide choose_moving_side(const SeparationResult& sep, const SphericalChain& chain);

// Unfolds the chain onto a great circle. Flat input yields an empty (single
// snapshot, zero phase) trajectory. Hemispherical configurations expand as a
// whole with the first edge pinned until straight or until they press
// against every containing hemisphere; otherwise the chain is split by a
// certified belt and one side expands in its hemisphere until straight or
// until a vertex reaches the median. Repeats until flat.
Trajectory flatten(const SphericalChain& chain, const Tolerances& tol = {});

struct TrajectoryReport {
  bool lengths_ok = true;
  bool collision_free = true;
  bool delta_monotone = true;
  bool betas_monotone = true;
  bool final_flat = true;
  bool phase_count_ok = true;
  bool endpoint_ok = true;
  bool phase_progress_ok = true;
  std::vector<std::string> issues;

  bool ok() const {
    return lengths_ok && collision_free && delta_monotone && betas_monotone && final_flat &&
           phase_count_ok && endpoint_ok && phase_progress_ok;
  }
};

// Re-checks every snapshot: edge lengths against the intrinsic chain,
// self-intersection (with interpolated midpoints when snapshots are more
// than 1e-2 time units apart), per-step monotonicity of every interior angle
// and of delta, flatness of the final state, the phase-count cap, the
// endpoint gap 2*pi - alpha for medium chains and the per-phase progress
// delta >= w/(2*alpha) for phases ending on the median.
TrajectoryReport verify_trajectory(const Trajectory& traj, const Tolerances& tol = {});

}  // namespace spherefold
