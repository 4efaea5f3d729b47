#include "orbitpool/retrieval/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "orbitpool/error.hpp"

namespace orbitpool {

using nlohmann::json;

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::query: return "query";
    case Role::database: return "database";
    case Role::both: return "both";
  }
  return "?";
}

std::string_view to_string(Protocol protocol) noexcept {
  return protocol == Protocol::ukb ? "ukb" : "standard";
}

namespace {

bool safe_id(std::string_view id) {
  if (id.empty() || id == "." || id == "..") return false;
  return id.find_first_of(std::string_view("/\\\0", 3)) == std::string_view::npos;
}

Role parse_role(const std::string& s) {
  if (s == "query") return Role::query;
  if (s == "database") return Role::database;
  if (s == "both") return Role::both;
  throw ConfigError("manifest: unknown role \"" + s + "\"");
}

std::set<std::string> id_set(const json& j, const char* key) {
  std::set<std::string> out;
  if (!j.contains(key)) return out;
  for (const auto& v : j.at(key)) out.insert(v.get<std::string>());
  return out;
}

}  // namespace

void DatasetManifest::validate() const {
  std::unordered_map<std::string_view, const ManifestImage*> by_id;
  for (const ManifestImage& img : images) {
    if (!safe_id(img.id)) throw ConfigError("manifest: id \"" + img.id + "\" is not file-name safe");
    if (!by_id.emplace(img.id, &img).second) {
      throw ConfigError("manifest: duplicate id \"" + img.id + "\"");
    }
  }
  const auto lookup = [&by_id](std::string_view id) -> const ManifestImage* {
    auto it = by_id.find(id);
    return it == by_id.end() ? nullptr : it->second;
  };
  for (const ManifestImage& img : images) {
    if (img.is_query() && !ground_truth.contains(img.id)) {
      throw ConfigError("manifest: query \"" + img.id + "\" has no ground truth");
    }
  }
  for (const auto& [qid, gt] : ground_truth) {
    const ManifestImage* q = lookup(qid);
    if (q == nullptr || !q->is_query()) {
      throw ConfigError("manifest: ground truth key \"" + qid + "\" is not a query image");
    }
    if (gt.relevant.empty()) throw ConfigError("manifest: query \"" + qid + "\" has no relevant ids");
    for (const auto* set : {&gt.relevant, &gt.junk}) {
      for (const std::string& id : *set) {
        const ManifestImage* img = lookup(id);
        if (img == nullptr || !img->is_database()) {
          throw ConfigError("manifest: query \"" + qid + "\" judges \"" + id +
                            "\", which is not a database image");
        }
      }
    }
    for (const std::string& id : gt.junk) {
      if (gt.relevant.contains(id)) {
        throw ConfigError("manifest: query \"" + qid + "\" lists \"" + id + "\" as relevant and junk");
      }
    }
    if (protocol == Protocol::ukb) {
      if (gt.relevant.size() != 4 || !gt.relevant.contains(qid)) {
        throw ConfigError("manifest: ukb query \"" + qid +
                          "\" must have exactly 4 relevant ids including itself");
      }
    } else if (gt.relevant.contains(qid)) {
      throw ConfigError("manifest: standard protocol excludes the query itself, but \"" + qid +
                        "\" lists itself as relevant");
    }
  }
}

const ManifestImage* DatasetManifest::find(std::string_view id) const {
  auto it = std::find_if(images.begin(), images.end(),
                         [id](const ManifestImage& img) { return img.id == id; });
  return it == images.end() ? nullptr : &*it;
}

std::vector<std::string> DatasetManifest::query_ids() const {
  std::vector<std::string> out;
  for (const ManifestImage& img : images) {
    if (img.is_query()) out.push_back(img.id);
  }
  return out;
}

std::vector<std::string> DatasetManifest::database_ids() const {
  std::vector<std::string> out;
  for (const ManifestImage& img : images) {
    if (img.is_database()) out.push_back(img.id);
  }
  return out;
}

std::filesystem::path DatasetManifest::image_path(const ManifestImage& img) const {
  const std::filesystem::path p(img.path);
  return p.is_absolute() ? p : base_dir / p;
}

DatasetManifest parse_manifest(std::string_view json_text, std::filesystem::path base_dir) {
  DatasetManifest m;
  m.base_dir = std::move(base_dir);
  try {
    const json j = json::parse(json_text);
    const std::string protocol = j.value("protocol", std::string("standard"));
    if (protocol == "standard") {
      m.protocol = Protocol::standard;
    } else if (protocol == "ukb") {
      m.protocol = Protocol::ukb;
    } else {
      throw ConfigError("manifest: unknown protocol \"" + protocol + "\"");
    }
    for (const auto& item : j.at("images")) {
      m.images.push_back({item.at("id").get<std::string>(), item.value("path", std::string()),
                          parse_role(item.value("role", std::string("database")))});
    }
    if (j.contains("ground_truth")) {
      for (const auto& [qid, gt] : j.at("ground_truth").items()) {
        m.ground_truth[qid] = GroundTruth{id_set(gt, "relevant"), id_set(gt, "junk")};
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  m.validate();
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_manifest(buffer.str(), path.parent_path());
}

std::string manifest_to_json(const DatasetManifest& manifest) {
  json j;
  j["protocol"] = std::string(to_string(manifest.protocol));
  j["images"] = json::array();
  for (const ManifestImage& img : manifest.images) {
    j["images"].push_back({{"id", img.id}, {"path", img.path}, {"role", std::string(to_string(img.role))}});
  }
  j["ground_truth"] = json::object();
  for (const auto& [qid, gt] : manifest.ground_truth) {
    j["ground_truth"][qid] = {{"relevant", gt.relevant}, {"junk", gt.junk}};
  }
  return j.dump(2);
}

}  // namespace orbitpool
