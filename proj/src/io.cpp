#include "spherefold/io.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace spherefold {

namespace {

using nlohmann::json;

constexpr double kDegree = std::numbers::pi / 180.0;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw DomainError(path + ": " + why);
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw DomainError("document is not valid JSON");
  }
  return j;
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::vector<double> require_number_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(require_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::array<double, 3> require_triple(const json& j, const std::string& path) {
  const auto v = require_number_array(j, path);
  if (v.size() != 3) fail(path, "expected exactly three coordinates");
  return {v[0], v[1], v[2]};
}

json triple_to_json(const std::array<double, 3>& v) { return json::array({v[0], v[1], v[2]}); }

std::string phase_kind_name(PhaseKind k) {
  return k == PhaseKind::WholeHemisphere ? "whole_hemisphere" : "subchain_expansion";
}

std::string side_name(MovingSide s) {
  switch (s) {
    case MovingSide::Left:
      return "left";
    case MovingSide::Right:
      return "right";
    default:
      return "whole";
  }
}

std::string event_name(PhaseEvent e) {
  switch (e) {
    case PhaseEvent::Straightened:
      return "straightened";
    case PhaseEvent::HitsMedianEquator:
      return "hits_median_equator";
    default:
      return "leaves_hemisphere";
  }
}

}  // namespace

ChainDocument parse_chain_document(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) fail("$", "expected a JSON object");
  ChainDocument doc;
  if (!j.contains("schema_version")) fail("schema_version", "missing");
  doc.schema_version = j["schema_version"].get<int>();
  if (doc.schema_version != 1) fail("schema_version", "unsupported version");

  if (!j.contains("kind") || !j["kind"].is_string()) fail("kind", "expected \"origami\" or \"chain\"");
  const std::string kind = j["kind"].get<std::string>();
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail("seed", "expected a nonnegative integer");
    doc.seed = j["seed"].get<std::uint64_t>();
  }

  if (kind == "origami") {
    doc.kind = ChainDocument::Kind::Origami;
    if (j.contains("angle_unit")) {
      const std::string unit = j["angle_unit"].get<std::string>();
      if (unit == "degrees") {
        doc.degrees = true;
      } else if (unit != "radians") {
        fail("angle_unit", "expected \"radians\" or \"degrees\"");
      }
    }
    if (!j.contains("sector_angles")) fail("sector_angles", "missing");
    doc.sector_angles = require_number_array(j["sector_angles"], "sector_angles");
    if (!j.contains("vertex_on_boundary") || !j["vertex_on_boundary"].is_boolean()) {
      fail("vertex_on_boundary", "missing boolean");
    }
    doc.vertex_on_boundary = j["vertex_on_boundary"].get<bool>();
  } else if (kind == "chain") {
    doc.kind = ChainDocument::Kind::Chain;
    if (!j.contains("vertices") || !j["vertices"].is_array()) fail("vertices", "missing array");
    for (size_t i = 0; i < j["vertices"].size(); ++i) {
      doc.vertices.push_back(
          require_triple(j["vertices"][i], "vertices[" + std::to_string(i) + "]"));
    }
    if (doc.vertices.size() < 2) fail("vertices", "need at least two vertices");
    if (j.contains("arc_lengths")) {
      doc.arc_lengths = require_number_array(j["arc_lengths"], "arc_lengths");
      if (doc.arc_lengths.size() + 1 != doc.vertices.size()) {
        fail("arc_lengths", "expected one length per edge (" +
                                std::to_string(doc.vertices.size() - 1) + " edges)");
      }
    }
  } else {
    fail("kind", "expected \"origami\" or \"chain\"");
  }
  return doc;
}

std::string serialize(const ChainDocument& doc) {
  json j;
  j["schema_version"] = doc.schema_version;
  if (doc.kind == ChainDocument::Kind::Origami) {
    j["kind"] = "origami";
    j["angle_unit"] = doc.degrees ? "degrees" : "radians";
    j["sector_angles"] = doc.sector_angles;
    j["vertex_on_boundary"] = doc.vertex_on_boundary;
  } else {
    j["kind"] = "chain";
    json verts = json::array();
    for (const auto& v : doc.vertices) verts.push_back(triple_to_json(v));
    j["vertices"] = std::move(verts);
    if (!doc.arc_lengths.empty()) j["arc_lengths"] = doc.arc_lengths;
  }
  if (doc.seed) j["seed"] = *doc.seed;
  return j.dump(2) + "\n";
}

ChainDocument document_from_chain(const SphericalChain& chain,
                                  std::optional<std::uint64_t> seed) {
  ChainDocument doc;
  doc.kind = ChainDocument::Kind::Chain;
  for (const auto& v : chain.vertices()) {
    doc.vertices.push_back({v.x(), v.y(), v.z()});
  }
  doc.arc_lengths = chain.intrinsic().arc_lengths();
  doc.seed = seed;
  return doc;
}

IntrinsicChain intrinsic_of(const ChainDocument& doc) {
  if (doc.kind == ChainDocument::Kind::Origami) {
    std::vector<double> sectors = doc.sector_angles;
    if (doc.degrees) {
      for (double& s : sectors) s *= kDegree;
    }
    return origami_to_chain(sectors, doc.vertex_on_boundary);
  }
  if (!doc.arc_lengths.empty()) return IntrinsicChain(doc.arc_lengths);
  std::vector<UnitVector> verts;
  for (const auto& v : doc.vertices) verts.push_back(UnitVector::normalized({v[0], v[1], v[2]}));
  return SphericalChain::from_vertices(std::move(verts)).intrinsic();
}

SphericalChain realize(const ChainDocument& doc, std::uint64_t fallback_seed) {
  if (doc.kind == ChainDocument::Kind::Origami) {
    return random_configuration(intrinsic_of(doc), doc.seed.value_or(fallback_seed));
  }
  std::vector<UnitVector> verts;
  for (size_t i = 0; i < doc.vertices.size(); ++i) {
    const auto& v = doc.vertices[i];
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (std::abs(norm - 1.0) > 1e-9) {
      fail("vertices[" + std::to_string(i) + "]", "not a unit vector");
    }
    verts.push_back(UnitVector::normalized({v[0], v[1], v[2]}));
  }
  if (!doc.arc_lengths.empty()) {
    return SphericalChain::from_vertices(std::move(verts), IntrinsicChain(doc.arc_lengths),
                                         1e-9);
  }
  return SphericalChain::from_vertices(std::move(verts));
}

TrajectoryDocument make_trajectory_document(const ChainDocument& instance,
                                            const Trajectory& traj,
                                            const TrajectoryReport& report,
                                            int snapshot_stride) {
  if (snapshot_stride < 1) {
    throw DomainError("snapshot stride must be at least 1");
  }
  TrajectoryDocument doc;
  doc.instance = instance;
  doc.arc_lengths = traj.intrinsic.arc_lengths();
  const size_t count = traj.snapshots.size();
  for (size_t s = 0; s < count; ++s) {
    if (s % snapshot_stride != 0 && s + 1 != count) continue;  // always keep the final state
    TrajectoryDocument::SnapshotRow row;
    row.time = traj.snapshots[s].time;
    for (const auto& v : traj.snapshots[s].chain.vertices()) {
      row.vertices.push_back({v.x(), v.y(), v.z()});
    }
    doc.snapshots.push_back(std::move(row));
  }
  for (const auto& ph : traj.phases) {
    TrajectoryDocument::PhaseRow row;
    row.kind = phase_kind_name(ph.kind);
    row.side = side_name(ph.side);
    row.event = event_name(ph.event);
    row.separating_edge = ph.separating_edge;
    if (ph.belt) {
      row.belt_width = ph.belt->width;
      const auto& pole = ph.belt->median.pole();
      row.belt_pole = {pole.x(), pole.y(), pole.z()};
    }
    row.delta_gain = ph.delta_gain;
    row.displaced_vertex = ph.displaced_vertex;
    row.displacement = ph.displacement;
    row.deficit_left = ph.deficit_left;
    row.deficit_right = ph.deficit_right;
    row.t_begin = ph.t_begin;
    row.t_end = ph.t_end;
    doc.phases.push_back(std::move(row));
  }
  doc.verification.ok = report.ok();
  doc.verification.issues = report.issues;
  return doc;
}

std::string serialize(const TrajectoryDocument& doc) {
  json j;
  j["schema_version"] = doc.schema_version;
  j["instance"] = json::parse(serialize(doc.instance));
  j["arc_lengths"] = doc.arc_lengths;
  json snaps = json::array();
  for (const auto& row : doc.snapshots) {
    json verts = json::array();
    for (const auto& v : row.vertices) verts.push_back(triple_to_json(v));
    snaps.push_back(json{{"time", row.time}, {"vertices", std::move(verts)}});
  }
  j["snapshots"] = std::move(snaps);
  json phases = json::array();
  for (const auto& row : doc.phases) {
    phases.push_back(json{{"kind", row.kind},
                          {"side", row.side},
                          {"event", row.event},
                          {"separating_edge", row.separating_edge},
                          {"belt_width", row.belt_width},
                          {"belt_pole", triple_to_json(row.belt_pole)},
                          {"delta_gain", row.delta_gain},
                          {"displaced_vertex", row.displaced_vertex},
                          {"displacement", row.displacement},
                          {"deficit_left", row.deficit_left},
                          {"deficit_right", row.deficit_right},
                          {"t_begin", row.t_begin},
                          {"t_end", row.t_end}});
  }
  j["phases"] = std::move(phases);
  j["verification"] = json{{"ok", doc.verification.ok}, {"issues", doc.verification.issues}};
  return j.dump(2) + "\n";
}

TrajectoryDocument parse_trajectory_document(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) fail("$", "expected a JSON object");
  TrajectoryDocument doc;
  if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1) {
    fail("schema_version", "missing or unsupported");
  }
  if (!j.contains("instance")) fail("instance", "missing");
  doc.instance = parse_chain_document(j["instance"].dump());
  if (!j.contains("arc_lengths")) fail("arc_lengths", "missing");
  doc.arc_lengths = require_number_array(j["arc_lengths"], "arc_lengths");
  if (!j.contains("snapshots") || !j["snapshots"].is_array()) fail("snapshots", "missing array");
  for (size_t s = 0; s < j["snapshots"].size(); ++s) {
    const std::string path = "snapshots[" + std::to_string(s) + "]";
    const json& row = j["snapshots"][s];
    if (!row.is_object() || !row.contains("time") || !row.contains("vertices")) {
      fail(path, "expected {time, vertices}");
    }
    TrajectoryDocument::SnapshotRow out;
    out.time = require_number(row["time"], path + ".time");
    for (size_t v = 0; v < row["vertices"].size(); ++v) {
      out.vertices.push_back(
          require_triple(row["vertices"][v], path + ".vertices[" + std::to_string(v) + "]"));
    }
    doc.snapshots.push_back(std::move(out));
  }
  if (j.contains("phases")) {
    for (size_t i = 0; i < j["phases"].size(); ++i) {
      const json& row = j["phases"][i];
      TrajectoryDocument::PhaseRow out;
      out.kind = row.value("kind", "subchain_expansion");
      out.side = row.value("side", "whole");
      out.event = row.value("event", "straightened");
      out.separating_edge = row.value("separating_edge", 0);
      out.belt_width = row.value("belt_width", 0.0);
      if (row.contains("belt_pole")) {
        out.belt_pole = require_triple(row["belt_pole"], "phases.belt_pole");
      }
      out.delta_gain = row.value("delta_gain", 0.0);
      out.displaced_vertex = row.value("displaced_vertex", -1);
      out.displacement = row.value("displacement", 0.0);
      out.deficit_left = row.value("deficit_left", 0.0);
      out.deficit_right = row.value("deficit_right", 0.0);
      out.t_begin = row.value("t_begin", 0.0);
      out.t_end = row.value("t_end", 0.0);
      doc.phases.push_back(std::move(out));
    }
  }
  if (j.contains("verification")) {
    doc.verification.ok = j["verification"].value("ok", false);
  }
  return doc;
}

Trajectory to_trajectory(const TrajectoryDocument& doc) {
  Trajectory traj{{}, {}, IntrinsicChain(doc.arc_lengths)};
  for (const auto& row : doc.snapshots) {
    std::vector<UnitVector> verts;
    verts.reserve(row.vertices.size());
    for (const auto& v : row.vertices) {
      verts.push_back(UnitVector::normalized({v[0], v[1], v[2]}));
    }
    traj.snapshots.push_back({row.time, SphericalChain::from_vertices(std::move(verts))});
  }
  for (const auto& row : doc.phases) {
    PhaseRecord record;
    record.kind = row.kind == "whole_hemisphere" ? PhaseKind::WholeHemisphere
                                                 : PhaseKind::SubchainExpansion;
    record.side = row.side == "left" ? MovingSide::Left
                                     : (row.side == "right" ? MovingSide::Right : MovingSide::Whole);
    record.event = row.event == "hits_median_equator"
                       ? PhaseEvent::HitsMedianEquator
                       : (row.event == "leaves_hemisphere" ? PhaseEvent::LeavesHemisphere
                                                           : PhaseEvent::Straightened);
    record.separating_edge = row.separating_edge;
    if (row.belt_width > 0.0 || row.separating_edge > 0) {
      Belt belt{dual(UnitVector::normalized(
                   {row.belt_pole[0], row.belt_pole[1], row.belt_pole[2]})),
                row.belt_width,
                row.separating_edge > 0 ? std::optional<int>(row.separating_edge)
                                        : std::nullopt};
      record.belt = belt;
    }
    record.delta_gain = row.delta_gain;
    record.displaced_vertex = row.displaced_vertex;
    record.displacement = row.displacement;
    record.deficit_left = row.deficit_left;
    record.deficit_right = row.deficit_right;
    record.t_begin = row.t_begin;
    record.t_end = row.t_end;
    traj.phases.push_back(record);
  }
  return traj;
}

std::string trajectory_csv(const TrajectoryDocument& doc) {
  std::ostringstream out;
  out.precision(17);
  out << "time,vertex_index,x,y,z\n";
  for (const auto& row : doc.snapshots) {
    for (size_t v = 0; v < row.vertices.size(); ++v) {
      out << row.time << ',' << v << ',' << row.vertices[v][0] << ',' << row.vertices[v][1]
          << ',' << row.vertices[v][2] << '\n';
    }
  }
  return out.str();
}

}  // namespace spherefold
