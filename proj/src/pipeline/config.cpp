#include "orbitpool/pipeline/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "orbitpool/error.hpp"
#include "orbitpool/pooling/sequence.hpp"

namespace orbitpool::pipeline {

using nlohmann::json;

std::string_view to_string(Metric metric) noexcept {
  return metric == Metric::map ? "map" : "recall4x4";
}

Metric parse_metric(std::string_view text) {
  if (text == "map") return Metric::map;
  if (text == "recall4x4") return Metric::recall4x4;
  throw ConfigError("unknown metric \"" + std::string(text) + "\" (expected map or recall4x4)");
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

OrbitSpec parse_orbit(const json& j) {
  OrbitSpec o;
  o.rotation_enabled = j.value("rotation_enabled", o.rotation_enabled);
  o.rotation_steps = j.value("rotation_steps", o.rotation_steps);
  o.rotation_step_degrees = j.value("rotation_step_degrees", o.rotation_step_degrees);
  o.scale_enabled = j.value("scale_enabled", o.scale_enabled);
  o.scale_steps = j.value("scale_steps", o.scale_steps);
  o.scale_min_fraction = j.value("scale_min_fraction", o.scale_min_fraction);
  if (j.contains("pad_rgb")) {
    const auto& pad = j.at("pad_rgb");
    if (!pad.is_array() || pad.size() != 3) throw ConfigError("orbit.pad_rgb must have 3 entries");
    for (std::size_t c = 0; c < 3; ++c) {
      const int v = pad.at(c).get<int>();
      if (v < 0 || v > 255) throw ConfigError("orbit.pad_rgb entries must lie in [0, 255]");
      o.pad_rgb[c] = static_cast<std::uint8_t>(v);
    }
  }
  if (j.contains("target_size")) {
    const auto& size = j.at("target_size");
    if (!size.is_array() || size.size() != 2) throw ConfigError("orbit.target_size must be [height, width]");
    o.target_height = size.at(0).get<std::size_t>();
    o.target_width = size.at(1).get<std::size_t>();
  }
  return o;
}

ToyExtractorConfig parse_toy(const json& j) {
  ToyExtractorConfig t;
  t.seed = j.value("seed", t.seed);
  t.n_stages = j.value("n_stages", t.n_stages);
  t.channels_out = j.value("channels_out", t.channels_out);
  t.kernel_size = j.value("kernel_size", t.kernel_size);
  t.out_spatial = j.value("out_spatial", t.out_spatial);
  return t;
}

}  // namespace

void RunConfig::validate() const {
  orbit.validate();
  if (const auto* toy = std::get_if<ToyExtractorConfig>(&extractor)) {
    toy->validate();
    if (orbit.target_height < toy->min_side() || orbit.target_width < toy->min_side()) {
      throw ConfigError("orbit target size is below the toy extractor minimum of " +
                        std::to_string(toy->min_side()));
    }
  } else if (std::get<FileFeatures>(extractor).directory.empty()) {
    throw ConfigError("extractor.file must name a directory");
  }
  PoolingSequence::parse(sequence);
  for (const std::string& s : distance_sequences) PoolingSequence::parse(s);
  if (manifest.empty()) throw ConfigError("config: \"manifest\" is required");
  if (output_dir.empty()) throw ConfigError("config: \"output_dir\" is required");
}

RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (j.contains("manifest")) cfg.manifest = resolve(base_dir, j.at("manifest").get<std::string>());
    if (j.contains("output_dir")) cfg.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());
    if (j.contains("orbit")) cfg.orbit = parse_orbit(j.at("orbit"));
    if (j.contains("extractor")) {
      const auto& e = j.at("extractor");
      if (e.contains("toy") && e.contains("file")) {
        throw ConfigError("extractor: choose either \"toy\" or \"file\"");
      }
      if (e.contains("file")) {
        cfg.extractor = FileFeatures{resolve(base_dir, e.at("file").get<std::string>())};
      } else {
        cfg.extractor = parse_toy(e.value("toy", json::object()));
      }
    }
    cfg.sequence = j.value("sequence", cfg.sequence);
    cfg.hash = j.value("hash", cfg.hash);
    cfg.metric = parse_metric(j.value("metric", std::string("map")));
    if (j.contains("distance")) {
      const auto& d = j.at("distance");
      if (d.contains("sequences")) cfg.distance_sequences = d.at("sequences").get<std::vector<std::string>>();
      if (d.contains("pairs")) {
        for (const auto& p : d.at("pairs")) {
          if (!p.is_array() || p.size() != 2) throw ConfigError("distance.pairs entries must be [a, b]");
          cfg.distance_pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
        }
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

std::string config_to_json(const RunConfig& cfg) {
  json j;
  j["manifest"] = std::filesystem::absolute(cfg.manifest).lexically_normal().string();
  j["output_dir"] = std::filesystem::absolute(cfg.output_dir).lexically_normal().string();
  const OrbitSpec& o = cfg.orbit;
  j["orbit"] = {{"rotation_enabled", o.rotation_enabled},
                {"rotation_steps", o.rotation_steps},
                {"rotation_step_degrees", o.rotation_step_degrees},
                {"scale_enabled", o.scale_enabled},
                {"scale_steps", o.scale_steps},
                {"scale_min_fraction", o.scale_min_fraction},
                {"pad_rgb", {o.pad_rgb[0], o.pad_rgb[1], o.pad_rgb[2]}},
                {"target_size", {o.target_height, o.target_width}}};
  if (const auto* toy = std::get_if<ToyExtractorConfig>(&cfg.extractor)) {
    j["extractor"]["toy"] = {{"seed", toy->seed},
                             {"n_stages", toy->n_stages},
                             {"channels_out", toy->channels_out},
                             {"kernel_size", toy->kernel_size},
                             {"out_spatial", toy->out_spatial}};
  } else {
    j["extractor"]["file"] =
        std::filesystem::absolute(std::get<FileFeatures>(cfg.extractor).directory).lexically_normal().string();
  }
  j["sequence"] = cfg.sequence;
  j["hash"] = cfg.hash;
  j["metric"] = std::string(to_string(cfg.metric));
  j["distance"]["sequences"] = cfg.distance_sequences;
  j["distance"]["pairs"] = json::array();
  for (const auto& [a, b] : cfg.distance_pairs) j["distance"]["pairs"].push_back({a, b});
  return j.dump(2) + "\n";
}

void apply_environment(RunConfig& cfg) {
  const char* seed = std::getenv("ORBITPOOL_SEED");
  if (seed == nullptr || *seed == '\0') return;
  auto* toy = std::get_if<ToyExtractorConfig>(&cfg.extractor);
  if (toy == nullptr) return;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(seed, &end, 0);
  if (end == seed || *end != '\0') {
    throw ConfigError("ORBITPOOL_SEED is not an integer: \"" + std::string(seed) + "\"");
  }
  toy->seed = v;
}

}  // namespace orbitpool::pipeline
