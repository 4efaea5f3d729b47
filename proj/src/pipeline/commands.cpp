#include "orbitpool/pipeline/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "orbitpool/error.hpp"
#include "orbitpool/extract/feature_file.hpp"
#include "orbitpool/extract/feature_map.hpp"
#include "orbitpool/extract/toy_extractor.hpp"
#include "orbitpool/file_util.hpp"
#include "orbitpool/hashing/hash_file.hpp"
#include "orbitpool/hashing/hashing.hpp"
#include "orbitpool/orbit/image_io.hpp"
#include "orbitpool/orbit/orbit.hpp"
#include "orbitpool/pooling/descriptor_file.hpp"
#include "orbitpool/pooling/pooling.hpp"
#include "orbitpool/retrieval/distance_report.hpp"
#include "orbitpool/retrieval/manifest.hpp"
#include "orbitpool/retrieval/metrics.hpp"
#include "orbitpool/retrieval/ranking.hpp"

namespace orbitpool::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slug(const RunConfig& cfg) { return PoolingSequence::parse(cfg.sequence).slug(); }

// Runs fn(i) for i in [0, n) on up to `jobs` threads. fn must not throw.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

enum class Status { ok, skipped, failed };

struct ItemResult {
  std::string id;
  Status status = Status::ok;
  std::string error;
  double seconds = 0.0;
};

class Stage {
 public:
  Stage(const RunConfig& cfg, std::string name) : cfg_(cfg) { report_.stage = std::move(name); }

  // Runs work(i) for every item and records the outcome; an exception marks
  // the item as failed. work returns false when the item was skipped.
  void run(const std::vector<std::string>& ids, std::size_t jobs,
           const std::function<bool(std::size_t)>& work) {
    const std::size_t first = items_.size();
    items_.resize(first + ids.size());
    parallel_for(ids.size(), jobs, [&](std::size_t i) {
      ItemResult& r = items_[first + i];
      r.id = ids[i];
      const auto t0 = std::chrono::steady_clock::now();
      try {
        r.status = work(i) ? Status::ok : Status::skipped;
      } catch (const std::exception& e) {
        r.status = Status::failed;
        r.error = e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    });
  }

  StageReport finish(fs::path output = {}) {
    std::string log;
    for (const ItemResult& r : items_) {
      json line = {{"stage", report_.stage}, {"id", r.id}, {"seconds", r.seconds}};
      switch (r.status) {
        case Status::ok: line["status"] = "ok"; ++report_.written; break;
        case Status::skipped: line["status"] = "skipped"; ++report_.skipped; break;
        case Status::failed:
          line["status"] = "failed";
          line["error"] = r.error;
          report_.failures.push_back(r.id + ": " + r.error);
          break;
      }
      log += line.dump() + "\n";
    }
    write_file_atomic(cfg_.output_dir / "logs" / (report_.stage + ".jsonl"), log);
    write_file_atomic(cfg_.output_dir / "config" / (report_.stage + ".json"), config_to_json(cfg_));
    report_.output = std::move(output);
    return std::move(report_);
  }

 private:
  const RunConfig& cfg_;
  StageReport report_;
  std::vector<ItemResult> items_;
};

std::vector<std::string> all_ids(const DatasetManifest& m) {
  std::vector<std::string> ids;
  ids.reserve(m.images.size());
  for (const ManifestImage& img : m.images) ids.push_back(img.id);
  return ids;
}

void require(const fs::path& path, const std::string& stage) {
  if (!fs::exists(path)) throw MissingArtifact(stage, path.string());
}

std::vector<NamedDescriptor> read_pooled(const RunConfig& cfg) {
  const fs::path path = descriptor_path(cfg);
  require(path, "pool");
  return read_descriptor_file(path);
}

std::vector<PoolingSequence> parse_all(const std::vector<std::string>& texts) {
  std::vector<PoolingSequence> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(PoolingSequence::parse(t));
  return out;
}

}  // namespace

fs::path feature_dir(const RunConfig& cfg) {
  if (const auto* file = std::get_if<FileFeatures>(&cfg.extractor)) return file->directory;
  return cfg.output_dir / "features";
}

fs::path feature_path(const RunConfig& cfg, const std::string& image_id) {
  return feature_dir(cfg) / (image_id + ".fot");
}

fs::path descriptor_path(const RunConfig& cfg) {
  return cfg.output_dir / "descriptors" / (slug(cfg) + ".dsc");
}

fs::path hash_index_path(const RunConfig& cfg) { return cfg.output_dir / "hash" / (slug(cfg) + ".bhi"); }

fs::path threshold_path(const RunConfig& cfg) { return cfg.output_dir / "hash" / (slug(cfg) + ".bth"); }

fs::path eval_path(const RunConfig& cfg) {
  const std::string name =
      slug(cfg) + (cfg.hash ? ".hamming." : ".") + std::string(to_string(cfg.metric)) + ".json";
  return cfg.output_dir / "eval" / name;
}

fs::path distance_report_path(const RunConfig& cfg) { return cfg.output_dir / "distance" / "report.csv"; }

StageReport cmd_extract(const RunConfig& cfg, const CommandOptions& options) {
  cfg.validate();
  const DatasetManifest manifest = load_manifest(cfg.manifest);
  const std::vector<std::string> ids = all_ids(manifest);
  Stage stage(cfg, "extract");

  const auto* toy = std::get_if<ToyExtractorConfig>(&cfg.extractor);
  if (toy == nullptr) {
    // Features come from elsewhere; only confirm they are there and decode.
    stage.run(ids, options.jobs, [&](std::size_t i) {
      const fs::path path = feature_path(cfg, ids[i]);
      if (!fs::exists(path)) throw MissingArtifact("extract", path.string());
      read_feature_file(path);
      return false;
    });
    return stage.finish(feature_dir(cfg));
  }

  const ToyExtractor extractor(*toy);
  const OrbitSpec& spec = cfg.orbit;
  const AxisPresence presence{spec.rotation_enabled, spec.scale_enabled};
  stage.run(ids, options.jobs, [&](std::size_t i) {
    const ManifestImage& entry = manifest.images[i];
    const fs::path out = feature_path(cfg, entry.id);
    if (!options.force && fs::exists(out)) return false;
    const ImageRGB img = read_image(manifest.image_path(entry));
    const std::vector<ImageRGB> orbit = generate_orbit_images(img, spec);
    std::vector<FeatureMap> maps;
    maps.reserve(orbit.size());
    for (const ImageRGB& o : orbit) maps.push_back(extractor.extract(o));
    write_feature_file(assemble_orbit_tensor(maps, spec.n_rot(), spec.n_scale(), presence), out);
    if (options.debug_images) {
      for (std::size_t r = 0; r < spec.n_rot(); ++r) {
        for (std::size_t s = 0; s < spec.n_scale(); ++s) {
          const std::string name =
              entry.id + "_r" + std::to_string(r) + "_s" + std::to_string(s) + ".png";
          write_png(orbit[r * spec.n_scale() + s], cfg.output_dir / "orbit_images" / name);
        }
      }
    }
    return true;
  });
  return stage.finish(feature_dir(cfg));
}

StageReport cmd_pool(const RunConfig& cfg, const CommandOptions& options) {
  cfg.validate();
  const DatasetManifest manifest = load_manifest(cfg.manifest);
  const std::vector<std::string> ids = all_ids(manifest);
  for (const std::string& id : ids) require(feature_path(cfg, id), "extract");

  const PoolingSequence seq = PoolingSequence::parse(cfg.sequence);
  std::vector<std::optional<Descriptor>> pooled(ids.size());
  Stage stage(cfg, "pool");
  stage.run(ids, options.jobs, [&](std::size_t i) {
    pooled[i] = apply_sequence(read_feature_file(feature_path(cfg, ids[i])), seq);
    return true;
  });

  std::vector<NamedDescriptor> entries;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (pooled[i]) entries.push_back({ids[i], std::move(*pooled[i])});
  }
  if (!entries.empty()) write_descriptor_file(entries, descriptor_path(cfg));
  return stage.finish(descriptor_path(cfg));
}

StageReport cmd_hash(const RunConfig& cfg, const CommandOptions& options) {
  cfg.validate();
  const DatasetManifest manifest = load_manifest(cfg.manifest);
  const std::vector<NamedDescriptor> pooled = read_pooled(cfg);
  std::unordered_map<std::string, const Descriptor*> by_id;
  for (const NamedDescriptor& nd : pooled) by_id.emplace(nd.id, &nd.descriptor);

  std::vector<std::string> ids = all_ids(manifest);
  std::vector<Descriptor> normalized(ids.size());
  std::vector<Descriptor> database;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto it = by_id.find(ids[i]);
    if (it == by_id.end()) {
      throw MissingArtifact("pool", descriptor_path(cfg).string() + " has no entry for \"" + ids[i] + "\"");
    }
    normalized[i] = l2_normalize(*it->second);
    if (manifest.images[i].is_database()) database.push_back(normalized[i]);
  }
  const ThresholdVector thresholds = fit_thresholds(database, descriptor_path(cfg).filename().string());

  HashIndex index;
  index.n_bits = thresholds.dims();
  std::vector<std::optional<BinaryHash>> hashes(ids.size());
  Stage stage(cfg, "hash");
  stage.run(ids, options.jobs, [&](std::size_t i) {
    hashes[i] = binarize(normalized[i], thresholds);
    return true;
  });
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (hashes[i]) index.entries.push_back({ids[i], std::move(*hashes[i])});
  }
  write_thresholds(thresholds, threshold_path(cfg));
  write_hash_index(index, hash_index_path(cfg));
  return stage.finish(hash_index_path(cfg));
}

StageReport cmd_eval(const RunConfig& cfg, const CommandOptions& options) {
  cfg.validate();
  const DatasetManifest manifest = load_manifest(cfg.manifest);
  if (cfg.metric == Metric::recall4x4 && manifest.protocol != Protocol::ukb) {
    throw ConfigError("metric recall4x4 needs a ukb manifest, got \"" +
                      std::string(to_string(manifest.protocol)) + "\"");
  }
  const fs::path input = cfg.hash ? hash_index_path(cfg) : descriptor_path(cfg);
  require(input, cfg.hash ? "hash" : "pool");

  // The file's magic, not the config flag, decides the distance.
  std::map<std::string, RankQuery> queries_by_id;
  SearchIndex index;
  std::string distance;
  if (is_hash_index_file(input)) {
    distance = "hamming";
    HashIndex all = read_hash_index(input);
    HashIndex db{all.n_bits, {}};
    for (HashEntry& e : all.entries) {
      const ManifestImage* img = manifest.find(e.id);
      if (img == nullptr) continue;
      if (img->is_query()) queries_by_id.emplace(e.id, e.hash);
      if (img->is_database()) db.entries.push_back(std::move(e));
    }
    index = std::move(db);
  } else if (is_descriptor_file(input)) {
    distance = "euclidean";
    std::vector<NamedDescriptor> db;
    for (NamedDescriptor& nd : read_descriptor_file(input)) {
      const ManifestImage* img = manifest.find(nd.id);
      if (img == nullptr) continue;
      if (img->is_query()) queries_by_id.emplace(nd.id, nd.descriptor);
      if (img->is_database()) db.push_back({std::move(nd.id), l2_normalize(nd.descriptor)});
    }
    index = std::move(db);
  } else {
    throw FormatError(FormatErrc::bad_magic, input.string() + " is neither a descriptor file nor a hash index");
  }

  const std::vector<std::string> query_ids = manifest.query_ids();
  for (const std::string& q : query_ids) {
    if (!queries_by_id.contains(q)) {
      throw MissingArtifact(cfg.hash ? "hash" : "pool", input.string() + " has no entry for query \"" + q + "\"");
    }
  }

  std::vector<RankedList> lists(query_ids.size());
  Stage stage(cfg, "eval");
  stage.run(query_ids, options.jobs, [&](std::size_t i) {
    const std::string& q = query_ids[i];
    RankRules rules{manifest.protocol, manifest.ground_truth.at(q).junk};
    lists[i] = rank(q, queries_by_id.at(q), index, rules);
    return true;
  });

  MetricResult result;
  std::size_t n_database = 0;
  if (const auto* v = std::get_if<std::vector<NamedDescriptor>>(&index)) n_database = v->size();
  else n_database = std::get<HashIndex>(index).entries.size();
  bool ranked_all = true;
  for (const RankedList& l : lists) ranked_all = ranked_all && !l.query_id.empty();
  if (ranked_all) {
    result = cfg.metric == Metric::map ? evaluate_map(lists, manifest) : evaluate_recall4(lists, manifest);
    json out;
    out["metric"] = std::string(to_string(cfg.metric));
    out["value"] = result.value;
    out["per_query"] = json::object();
    for (const auto& [q, v] : result.per_query) out["per_query"][q] = v;
    out["config"] = {{"distance", distance},
                     {"normalization", distance == "euclidean" ? "l2" : "none"},
                     {"sequence", PoolingSequence::parse(cfg.sequence).str()},
                     {"protocol", std::string(to_string(manifest.protocol))},
                     {"ap_variant", "non-interpolated, junk removed before ranking"},
                     {"input", input.filename().string()},
                     {"n_queries", query_ids.size()},
                     {"n_database", n_database}};
    write_file_atomic(eval_path(cfg), out.dump(2) + "\n");
  }
  return stage.finish(eval_path(cfg));
}

StageReport cmd_distance(const RunConfig& cfg, const CommandOptions& options) {
  cfg.validate();
  const DatasetManifest manifest = load_manifest(cfg.manifest);
  std::vector<std::pair<std::string, std::string>> pairs = cfg.distance_pairs;
  if (pairs.empty()) {
    for (const auto& [q, gt] : manifest.ground_truth) {
      for (const std::string& r : gt.relevant) {
        if (r != q) pairs.emplace_back(q, r);
      }
    }
  }
  for (const auto& [a, b] : pairs) {
    for (const std::string& id : {a, b}) {
      if (manifest.find(id) == nullptr) throw ConfigError("distance pair names unknown image \"" + id + "\"");
      require(feature_path(cfg, id), "extract");
    }
  }

  const std::vector<PoolingSequence> sequences = parse_all(cfg.distance_sequences);
  std::vector<std::string> pair_ids;
  pair_ids.reserve(pairs.size());
  for (const auto& [a, b] : pairs) pair_ids.push_back(a + "~" + b);
  std::vector<std::vector<DistanceRow>> rows(pairs.size());
  Stage stage(cfg, "distance");
  stage.run(pair_ids, options.jobs, [&](std::size_t i) {
    rows[i] = pairwise_distance_report(pair_ids[i], read_feature_file(feature_path(cfg, pairs[i].first)),
                                       read_feature_file(feature_path(cfg, pairs[i].second)), sequences);
    return true;
  });
  std::vector<DistanceRow> flat;
  for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  write_file_atomic(distance_report_path(cfg), distance_report_csv(flat));
  return stage.finish(distance_report_path(cfg));
}

}  // namespace orbitpool::pipeline
