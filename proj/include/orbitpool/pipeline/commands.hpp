#pragma once
// Pipeline stages. Each reads the previous stage's files under
// RunConfig::output_dir and writes its own:
//
//   features/<id>.fot            extract (toy extractor only)
//   orbit_images/<id>_r<r>_s<s>.png   extract --debug-images
//   descriptors/<slug>.dsc       pool
//   hash/<slug>.bhi, .bth        hash
//   eval/<slug>[.hamming].<metric>.json   eval
//   distance/report.csv          distance
//   logs/<stage>.jsonl           one JSON line per image (or query) per run
//   config/<stage>.json          resolved configuration of the last run
//
// <slug> is PoolingSequence::slug() of the configured sequence.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "orbitpool/pipeline/config.hpp"

namespace orbitpool::pipeline {

struct CommandOptions {
  bool force = false;
  std::size_t jobs = 1;
  bool debug_images = false;
};

struct StageReport {
  std::string stage;
  std::size_t written = 0;
  std::size_t skipped = 0;
  std::vector<std::string> failures;  // "<id>: <message>"
  std::filesystem::path output;       // main artifact, when there is one

  bool ok() const noexcept { return failures.empty(); }
};

std::filesystem::path feature_dir(const RunConfig& cfg);
std::filesystem::path feature_path(const RunConfig& cfg, const std::string& image_id);
std::filesystem::path descriptor_path(const RunConfig& cfg);
std::filesystem::path hash_index_path(const RunConfig& cfg);
std::filesystem::path threshold_path(const RunConfig& cfg);
std::filesystem::path eval_path(const RunConfig& cfg);
std::filesystem::path distance_report_path(const RunConfig& cfg);

/// One FOT1 file per manifest image. Existing files are kept unless
/// options.force. With a file extractor nothing is computed; every image is
/// checked to have a readable feature file. Unreadable images are recorded
/// in the report and the run carries on.
StageReport cmd_extract(const RunConfig& cfg, const CommandOptions& options = {});

/// Applies the configured sequence to every feature file. Throws
/// MissingArtifact("extract") if a feature file does not exist.
StageReport cmd_pool(const RunConfig& cfg, const CommandOptions& options = {});

/// L2-normalizes the pooled descriptors, fits thresholds on the database
/// images and binarizes every image. Throws MissingArtifact("pool").
StageReport cmd_hash(const RunConfig& cfg, const CommandOptions& options = {});

/// Ranks the database for every query and scores the configured metric.
/// Reads the hash index when cfg.hash, otherwise the descriptor file; the
/// distance follows the file type. Throws MissingArtifact naming the stage.
StageReport cmd_eval(const RunConfig& cfg, const CommandOptions& options = {});

/// Distance report over the configured pairs, or over every (query,
/// relevant) pair of the manifest when none are configured.
StageReport cmd_distance(const RunConfig& cfg, const CommandOptions& options = {});

}  // namespace orbitpool::pipeline
