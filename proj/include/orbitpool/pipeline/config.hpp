#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orbitpool/extract/toy_extractor.hpp"
#include "orbitpool/orbit/orbit.hpp"

namespace orbitpool::pipeline {

/// Features produced elsewhere (e.g. by the network exporter): one FOT1
/// file per image, named <id>.fot, in this directory.
struct FileFeatures {
  std::filesystem::path directory;
};

enum class Metric { map, recall4x4 };

std::string_view to_string(Metric metric) noexcept;
Metric parse_metric(std::string_view text);

/// Everything one pipeline run needs. Loaded from a single JSON file:
///
///   {
///     "manifest": "manifest.json",
///     "output_dir": "out",
///     "orbit": {"rotation_enabled": true, "rotation_steps": 36,
///               "rotation_step_degrees": 10, "scale_enabled": true,
///               "scale_steps": 10, "scale_min_fraction": 0.5,
///               "pad_rgb": [124, 117, 104], "target_size": [224, 224]},
///     "extractor": {"toy": {"seed": 1, "n_stages": 3, "channels_out": 64,
///                           "kernel_size": 3, "out_spatial": 7}}
///                  or {"file": "features/"},
///     "sequence": "A:scale,S:trans,M:rot",
///     "hash": false,
///     "metric": "map",
///     "distance": {"sequences": ["", "A:scale"], "pairs": [["a", "b"]]}
///   }
///
/// Every key is optional except "manifest" and "output_dir". Relative paths
/// resolve against the config file's directory.
struct RunConfig {
  OrbitSpec orbit;
  std::variant<ToyExtractorConfig, FileFeatures> extractor = ToyExtractorConfig{};
  std::string sequence;
  bool hash = false;
  Metric metric = Metric::map;
  std::filesystem::path manifest;
  std::filesystem::path output_dir;
  std::vector<std::string> distance_sequences = {"", "A:scale", "A:scale,A:trans",
                                                 "A:scale,A:trans,A:rot"};
  std::vector<std::pair<std::string, std::string>> distance_pairs;

  /// Throws ConfigError.
  void validate() const;
};

RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Resolved configuration as JSON (absolute paths, every default spelled out).
std::string config_to_json(const RunConfig& cfg);

/// ORBITPOOL_SEED, when set, replaces the toy extractor seed.
void apply_environment(RunConfig& cfg);

}  // namespace orbitpool::pipeline
