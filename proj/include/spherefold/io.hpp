#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spherefold/chain.hpp"
#include "spherefold/planner.hpp"

namespace spherefold {

// On-disk chain description. Either the origami form (panel sector angles
// around a boundary fold vertex) or the chain form (explicit vertices, with
// optional redundant arc lengths for validation). Angles are radians unless
// the document says degrees.
struct ChainDocument {
  enum class Kind { Origami, Chain };
  int schema_version = 1;
  Kind kind = Kind::Chain;
  bool degrees = false;
  std::vector<double> sector_angles;
  bool vertex_on_boundary = true;
  std::vector<std::array<double, 3>> vertices;
  std::vector<double> arc_lengths;  // optional in the chain form
  std::optional<std::uint64_t> seed;
};

ChainDocument parse_chain_document(const std::string& text);
std::string serialize(const ChainDocument& doc);

ChainDocument document_from_chain(const SphericalChain& chain,
                                  std::optional<std::uint64_t> seed = std::nullopt);

IntrinsicChain intrinsic_of(const ChainDocument& doc);

// Origami documents carry no configuration; they are embedded by seeded
// rejection sampling (document seed, else the fallback).
SphericalChain realize(const ChainDocument& doc, std::uint64_t fallback_seed = 0);

struct TrajectoryDocument {
  int schema_version = 1;
  ChainDocument instance;
  std::vector<double> arc_lengths;
  struct SnapshotRow {
    double time = 0.0;
    std::vector<std::array<double, 3>> vertices;
  };
  std::vector<SnapshotRow> snapshots;
  struct PhaseRow {
    std::string kind;
    std::string side;
    std::string event;
    int separating_edge = 0;
    double belt_width = 0.0;
    std::array<double, 3> belt_pole{0, 0, 1};
    double delta_gain = 0.0;
    int displaced_vertex = -1;
    double displacement = 0.0;
    double deficit_left = 0.0;
    double deficit_right = 0.0;
    double t_begin = 0.0;
    double t_end = 0.0;
  };
  std::vector<PhaseRow> phases;
  struct VerificationRow {
    bool ok = false;
    std::vector<std::string> issues;
  } verification;
};

TrajectoryDocument make_trajectory_document(const ChainDocument& instance,
                                            const Trajectory& traj,
                                            const TrajectoryReport& report,
                                            int snapshot_stride = 1);
std::string serialize(const TrajectoryDocument& doc);
TrajectoryDocument parse_trajectory_document(const std::string& text);

// Rebuilds an in-memory trajectory for re-verification.
Trajectory to_trajectory(const TrajectoryDocument& doc);

// (time, vertex_index, x, y, z) rows, one block per snapshot.
std::string trajectory_csv(const TrajectoryDocument& doc);

}  // namespace spherefold
