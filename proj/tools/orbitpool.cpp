// orbitpool: batch front-end for orbit extraction, pooling, hashing,
// evaluation and distance reports.
//
//   orbitpool extract|pool|hash|eval|distance --config <path>
//             [--force] [--jobs N] [--sequence <grammar>] [--metric map|recall4x4]
//
// Exit status: 0 success, 1 partial failure (or missing upstream stage),
// 2 configuration error.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "orbitpool/error.hpp"
#include "orbitpool/pipeline/commands.hpp"
#include "orbitpool/pipeline/config.hpp"
#include "orbitpool/simd/kernels.hpp"

namespace {

namespace op = orbitpool::pipeline;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct Args {
  std::string config;
  bool force = false;
  std::size_t jobs = 1;
  bool debug_images = false;
  std::string sequence;
  std::string metric;
};

int run(const std::string& command, const Args& args, const CLI::App& sub) {
  op::RunConfig cfg;
  try {
    cfg = op::load_config(args.config);
    if (sub.count("--sequence") > 0) cfg.sequence = args.sequence;
    if (sub.count("--metric") > 0) cfg.metric = op::parse_metric(args.metric);
    op::apply_environment(cfg);
    cfg.validate();
  } catch (const orbitpool::ConfigError& e) {
    std::cerr << "orbitpool: config error: " << e.what() << "\n";
    return kExitConfig;
  }

  const op::CommandOptions options{args.force, args.jobs, args.debug_images};
  op::StageReport report;
  try {
    if (command == "extract") report = op::cmd_extract(cfg, options);
    else if (command == "pool") report = op::cmd_pool(cfg, options);
    else if (command == "hash") report = op::cmd_hash(cfg, options);
    else if (command == "eval") report = op::cmd_eval(cfg, options);
    else report = op::cmd_distance(cfg, options);
  } catch (const orbitpool::ConfigError& e) {
    std::cerr << "orbitpool " << command << ": config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "orbitpool " << command << ": " << e.what() << "\n";
    return kExitFailure;
  }

  for (const std::string& f : report.failures) std::cerr << "orbitpool " << command << ": " << f << "\n";
  std::cout << command << ": " << report.written << " done, " << report.skipped << " skipped, "
            << report.failures.size() << " failed";
  if (!report.output.empty()) std::cout << " -> " << report.output.string();
  std::cout << "\n";
  return report.ok() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbit moment pooling: invariant image descriptors, hashes and retrieval evaluation"};
  app.require_subcommand(1);
  bool show_backend = false;
  app.add_flag("--simd-backend", show_backend, "Print the selected SIMD backend on stderr");

  Args args;
  const std::pair<const char*, const char*> commands[] = {
      {"extract", "Generate orbits and write one feature file per image"},
      {"pool", "Pool feature orbits into descriptors"},
      {"hash", "Binarize pooled descriptors into a hash index"},
      {"eval", "Rank the database for every query and score it"},
      {"distance", "Write pairwise descriptor distances for several sequences"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", args.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_flag("--force", args.force, "Recompute outputs that already exist");
    sub->add_option("--jobs", args.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--sequence", args.sequence, "Pooling sequence, e.g. A:scale,S:trans,M:rot");
    sub->add_option("--metric", args.metric, "map or recall4x4")->check(CLI::IsMember({"map", "recall4x4"}));
    if (std::string(name) == "extract") {
      sub->add_flag("--debug-images", args.debug_images, "Also write the orbit images as PNG");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (show_backend) {
    std::cerr << "simd backend: " << orbitpool::simd::backend_name(orbitpool::simd::active().backend) << "\n";
  }
  for (const CLI::App* sub : app.get_subcommands()) return run(sub->get_name(), args, *sub);
  return kExitConfig;
}
