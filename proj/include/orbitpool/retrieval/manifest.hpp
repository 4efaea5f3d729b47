#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace orbitpool {

enum class Role { query, database, both };

/// STANDARD: a query never retrieves itself. UKB: every image is a query,
/// the self-match stays in the ranking and counts among the 4 relevants.
enum class Protocol { standard, ukb };

std::string_view to_string(Role role) noexcept;
std::string_view to_string(Protocol protocol) noexcept;

struct ManifestImage {
  std::string id;
  std::string path;
  Role role = Role::database;

  bool is_query() const noexcept { return role != Role::database; }
  bool is_database() const noexcept { return role != Role::query; }
};

struct GroundTruth {
  std::set<std::string> relevant;
  std::set<std::string> junk;
};

/// Images, their roles and per-query relevance judgements.
///
/// JSON form:
///   {"protocol": "standard"|"ukb",
///    "images": [{"id": ..., "path": ..., "role": "query"|"database"|"both"}],
///    "ground_truth": {"<qid>": {"relevant": [...], "junk": [...]}}}
struct DatasetManifest {
  Protocol protocol = Protocol::standard;
  std::vector<ManifestImage> images;
  std::map<std::string, GroundTruth> ground_truth;
  /// Relative image paths resolve against this directory.
  std::filesystem::path base_dir;

  /// Throws ConfigError describing the first violated rule: unique,
  /// file-name-safe ids; ground truth exactly for query images; judged ids
  /// are database images; relevant and junk disjoint and relevant nonempty;
  /// UKB queries have exactly 4 relevants including themselves; STANDARD
  /// queries do not list themselves as relevant.
  void validate() const;

  const ManifestImage* find(std::string_view id) const;
  std::vector<std::string> query_ids() const;
  std::vector<std::string> database_ids() const;
  std::filesystem::path image_path(const ManifestImage& img) const;
};

/// Parses and validates. Throws ConfigError.
DatasetManifest parse_manifest(std::string_view json_text, std::filesystem::path base_dir = {});
DatasetManifest load_manifest(const std::filesystem::path& path);
std::string manifest_to_json(const DatasetManifest& manifest);

}  // namespace orbitpool
