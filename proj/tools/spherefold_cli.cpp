// Command line front end: validate/classify/separate/measure/flatten/verify/
// random over the chain and trajectory document formats.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spherefold/io.hpp"
#include "spherefold/measure.hpp"
#include "spherefold/planner.hpp"
#include "spherefold/separation.hpp"

namespace {

using nlohmann::json;
using namespace spherefold;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitInternal = 2;
constexpr int kExitUsage = 64;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DomainError("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DomainError("cannot write " + path);
  }
  out << content;
}

struct Options {
  std::string in_path;
  std::string out_path;
  std::uint64_t seed = 0;
  long samples = 100000;
  int n = 4;
  double total = 1.5 * std::numbers::pi;
  int snapshot_stride = 1;
  std::string format = "json";
  std::string profile = "default";

  Tolerances tolerances() const {
    return profile == "strict" ? Tolerances::strict() : Tolerances::defaults();
  }
};

int run_validate(const Options& opt) {
  const ChainDocument doc = parse_chain_document(read_file(opt.in_path));
  const IntrinsicChain intrinsic = intrinsic_of(doc);
  if (doc.kind == ChainDocument::Kind::Chain) {
    const SphericalChain chain = realize(doc, opt.seed);
    if (const auto hit = find_self_intersection(chain)) {
      std::ostringstream msg;
      msg << "chain self-intersects (edges " << hit->edge_a << " and " << hit->edge_b << ")";
      throw DomainError(msg.str());
    }
  }
  std::cout << "valid: n=" << intrinsic.edge_count() << " total=" << intrinsic.total_length()
            << "\n";
  return kExitOk;
}

int run_classify(const Options& opt) {
  const SphericalChain chain = realize(parse_chain_document(read_file(opt.in_path)), opt.seed);
  const Classification cls = classify(chain, opt.tolerances());
  json out;
  out["class"] = cls.value == ChainClass::Flat
                     ? "flat"
                     : (cls.value == ChainClass::Hemispherical ? "hemispherical"
                                                               : "sphere_spanning");
  out["margin"] = cls.margin;
  if (cls.witness) {
    out["witness"] = {cls.witness->x(), cls.witness->y(), cls.witness->z()};
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_separate(const Options& opt) {
  const SphericalChain chain = realize(parse_chain_document(read_file(opt.in_path)), opt.seed);
  const SeparationResult sep = find_separation(chain, opt.tolerances(), 4096, opt.seed ^ 0x5eed);
  json out;
  out["edge_index"] = sep.edge_index;
  out["belt"] = {{"width", sep.belt.width},
                 {"median_pole",
                  {sep.belt.median.pole().x(), sep.belt.median.pole().y(),
                   sep.belt.median.pole().z()}}};
  out["width_bound"] = sep.width_bound;
  out["pole_witness"] = {sep.pole_witness.x(), sep.pole_witness.y(), sep.pole_witness.z()};
  if (sep.edge_index > 0) {
    out["left_range"] = {sep.left_range.first, sep.left_range.second};
    out["right_range"] = {sep.right_range.first, sep.right_range.second};
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_measure(const Options& opt) {
  const SphericalChain chain = realize(parse_chain_document(read_file(opt.in_path)), opt.seed);
  const CrossingClassReport report = estimate_class_measures(chain, opt.samples, opt.seed);
  const InequalityCheck check = verify_measure_inequality(report, chain.total_length());
  if (opt.format == "csv") {
    std::cout << "class,mu,std_error,hits\n";
    std::cout.precision(17);
    for (size_t k = 0; k < report.mu.size(); ++k) {
      std::cout << k << ',' << report.mu[k] << ',' << report.std_error[k] << ','
                << report.hits[k] << "\n";
    }
  } else {
    json out;
    out["samples"] = report.samples;
    out["mu"] = report.mu;
    out["std_error"] = report.std_error;
    out["degenerate_resamples"] = report.degenerate_resamples;
    out["mean_crossings"] = report.mean_crossings;
    out["lower_bound_margin"] = check.margin;
    out["lower_bound_holds"] = check.holds;
    std::cout << out.dump(2) << "\n";
  }
  return kExitOk;
}

int run_flatten(const Options& opt) {
  const ChainDocument doc = parse_chain_document(read_file(opt.in_path));
  const SphericalChain chain = realize(doc, opt.seed);
  const Tolerances tol = opt.tolerances();
  const Trajectory traj = flatten(chain, tol);
  const TrajectoryReport report = verify_trajectory(traj, tol);
  const TrajectoryDocument out =
      make_trajectory_document(doc, traj, report, opt.snapshot_stride);
  if (!opt.out_path.empty()) {
    write_file(opt.out_path, serialize(out));
  }
  if (opt.format == "csv") {
    std::cout << trajectory_csv(out);
  } else {
    json summary;
    summary["phases"] = traj.phase_count();
    summary["snapshots"] = traj.snapshots.size();
    summary["verification_ok"] = report.ok();
    summary["issues"] = report.issues;
    std::cout << summary.dump(2) << "\n";
  }
  if (!report.ok()) {
    throw InternalError("flatten produced a trajectory that fails verification");
  }
  return kExitOk;
}

int run_verify(const Options& opt) {
  const TrajectoryDocument doc = parse_trajectory_document(read_file(opt.in_path));
  Trajectory traj = to_trajectory(doc);
  const TrajectoryReport report = verify_trajectory(traj, opt.tolerances());
  json out;
  out["ok"] = report.ok();
  out["issues"] = report.issues;
  std::cout << out.dump(2) << "\n";
  return report.ok() ? kExitOk : kExitDomain;
}

int run_random(const Options& opt) {
  const SphericalChain chain = random_chain(opt.n, opt.total, opt.seed);
  const ChainDocument doc = document_from_chain(chain, opt.seed);
  const std::string text = serialize(doc);
  if (!opt.out_path.empty()) {
    write_file(opt.out_path, text);
  } else {
    std::cout << text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spherefold: flatten single-vertex rigid origami as spherical chain unfolding"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--seed", opt.seed, "global random seed");
  app.add_option("--tolerance-profile", opt.profile, "default|strict")
      ->check(CLI::IsMember({"default", "strict"}));
  app.add_option("--format", opt.format, "json|csv for tabular outputs")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* validate = app.add_subcommand("validate", "parse and invariant-check a chain document");
  validate->add_option("--in", opt.in_path, "chain document")->required();

  auto* classify_cmd = app.add_subcommand("classify", "flat / hemispherical / sphere-spanning");
  classify_cmd->add_option("--in", opt.in_path, "chain document")->required();

  auto* separate = app.add_subcommand("separate", "find the separating edge and belt");
  separate->add_option("--in", opt.in_path, "chain document")->required();

  auto* measure = app.add_subcommand("measure", "estimate crossing-class measures");
  measure->add_option("--in", opt.in_path, "chain document")->required();
  measure->add_option("--samples", opt.samples, "Monte Carlo samples (>= 1000)");

  auto* flatten_cmd = app.add_subcommand("flatten", "compute a verified unfolding trajectory");
  flatten_cmd->add_option("--in", opt.in_path, "chain document")->required();
  flatten_cmd->add_option("--out", opt.out_path, "trajectory document to write");
  flatten_cmd->add_option("--snapshot-stride", opt.snapshot_stride,
                          "keep every k-th snapshot in the output document");

  auto* verify = app.add_subcommand("verify", "re-check a trajectory document");
  verify->add_option("--in", opt.in_path, "trajectory document")->required();

  auto* random = app.add_subcommand("random", "emit a random chain document");
  random->add_option("--n", opt.n, "edge count (>= 2)");
  random->add_option("--total", opt.total, "total length in (0, 2*pi)");
  random->add_option("--out", opt.out_path, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return run_validate(opt);
    if (classify_cmd->parsed()) return run_classify(opt);
    if (separate->parsed()) return run_separate(opt);
    if (measure->parsed()) return run_measure(opt);
    if (flatten_cmd->parsed()) return run_flatten(opt);
    if (verify->parsed()) return run_verify(opt);
    if (random->parsed()) return run_random(opt);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
