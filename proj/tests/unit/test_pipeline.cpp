#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>
#include <sys/wait.h>

#include "orbitpool/error.hpp"
#include "orbitpool/extract/feature_file.hpp"
#include "orbitpool/file_util.hpp"
#include "orbitpool/hashing/hash_file.hpp"
#include "orbitpool/orbit/image_io.hpp"
#include "orbitpool/pipeline/commands.hpp"
#include "orbitpool/pipeline/config.hpp"
#include "orbitpool/pooling/descriptor_file.hpp"
#include "test_support.hpp"

namespace orbitpool {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using pipeline::CommandOptions;
using pipeline::RunConfig;
using testing::Rng;

std::string slurp(const fs::path& p) {
  const auto b = read_file_bytes(p);
  return {b.begin(), b.end()};
}

void write_text(const fs::path& p, const std::string& text) { write_file_atomic(p, std::string_view(text)); }

// ---- config ----------------------------------------------------------------

TEST(Config, DefaultsAndRelativePaths) {
  const RunConfig c = pipeline::parse_config(R"({"manifest": "m.json", "output_dir": "out"})", "/base");
  EXPECT_EQ(c.manifest, fs::path("/base/m.json"));
  EXPECT_EQ(c.output_dir, fs::path("/base/out"));
  EXPECT_EQ(c.orbit.rotation_steps, 36u);
  EXPECT_EQ(c.orbit.scale_steps, 10u);
  EXPECT_EQ(c.orbit.pad_rgb, (Rgb{124, 117, 104}));
  EXPECT_EQ(c.orbit.target_height, 224u);
  ASSERT_TRUE(std::holds_alternative<ToyExtractorConfig>(c.extractor));
  EXPECT_EQ(std::get<ToyExtractorConfig>(c.extractor).channels_out, 64u);
  EXPECT_EQ(c.sequence, "");
  EXPECT_FALSE(c.hash);
  EXPECT_EQ(c.metric, pipeline::Metric::map);
  EXPECT_EQ(c.distance_sequences.size(), 4u);
}

TEST(Config, FullDocument) {
  const RunConfig c = pipeline::parse_config(R"({
    "manifest": "/m.json", "output_dir": "/o",
    "orbit": {"rotation_enabled": false, "scale_steps": 4, "scale_min_fraction": 0.6,
              "pad_rgb": [1, 2, 3], "target_size": [32, 48]},
    "extractor": {"file": "feats"},
    "sequence": "A:scale, S:trans",
    "hash": true, "metric": "recall4x4",
    "distance": {"sequences": ["M:scale"], "pairs": [["a", "b"]]}
  })", "/cfg");
  EXPECT_FALSE(c.orbit.rotation_enabled);
  EXPECT_EQ(c.orbit.scale_steps, 4u);
  EXPECT_EQ(c.orbit.pad_rgb, (Rgb{1, 2, 3}));
  EXPECT_EQ(c.orbit.target_width, 48u);
  EXPECT_EQ(std::get<pipeline::FileFeatures>(c.extractor).directory, fs::path("/cfg/feats"));
  EXPECT_TRUE(c.hash);
  EXPECT_EQ(c.metric, pipeline::Metric::recall4x4);
  EXPECT_EQ(c.distance_pairs.size(), 1u);
}

TEST(Config, ResolvedJsonReparses) {
  const RunConfig c = pipeline::parse_config(
      R"({"manifest": "/m.json", "output_dir": "/o", "extractor": {"toy": {"seed": 99, "channels_out": 4}},
          "orbit": {"target_size": [56, 56]}, "sequence": "M:rot"})");
  const std::string text = pipeline::config_to_json(c);
  const RunConfig back = pipeline::parse_config(text);
  EXPECT_EQ(pipeline::config_to_json(back), text);
  EXPECT_EQ(std::get<ToyExtractorConfig>(back.extractor).seed, 99u);
}

TEST(Config, Rejects) {
  const std::vector<std::string> bad = {
      R"({"output_dir": "o"})",
      R"({"manifest": "m"})",
      R"({"manifest": "m", "output_dir": "o", "metric": "ndcg"})",
      R"({"manifest": "m", "output_dir": "o", "sequence": "A:rot,A:rot"})",
      R"({"manifest": "m", "output_dir": "o", "extractor": {"toy": {}, "file": "x"}})",
      R"({"manifest": "m", "output_dir": "o", "orbit": {"rotation_steps": 10}})",
      R"({"manifest": "m", "output_dir": "o", "orbit": {"pad_rgb": [1, 2]}})",
      R"({"manifest": "m", "output_dir": "o", "orbit": {"target_size": [16, 16]}})",
      R"({"manifest": "m", "output_dir": "o", "distance": {"sequences": ["Q:rot"]}})",
      R"({"manifest": 5, "output_dir": "o"})",
      R"([1, 2])",
      R"({broken)",
  };
  for (const std::string& text : bad) EXPECT_THROW(pipeline::parse_config(text), ConfigError) << text;
}

TEST(Config, SeedFromEnvironment) {
  RunConfig c = pipeline::parse_config(R"({"manifest": "m", "output_dir": "o"})");
  ::setenv("ORBITPOOL_SEED", "1234", 1);
  pipeline::apply_environment(c);
  EXPECT_EQ(std::get<ToyExtractorConfig>(c.extractor).seed, 1234u);
  ::setenv("ORBITPOOL_SEED", "12x", 1);
  EXPECT_THROW(pipeline::apply_environment(c), ConfigError);
  ::unsetenv("ORBITPOOL_SEED");
}

// ---- commands --------------------------------------------------------------

// Three database images and their quarter-turned copies as queries.
class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Rng rng(91);
    json images = json::array(), gt = json::object();
    for (int i = 0; i < 3; ++i) {
      const ImageRGB base = testing::smooth_image(rng, 40, 40);
      write_png(base, dir_ / ("img/b" + std::to_string(i) + ".png"));
      write_png(rotate_quarter_turns(base, 1), dir_ / ("img/q" + std::to_string(i) + ".png"));
      images.push_back({{"id", "b" + std::to_string(i)}, {"path", "img/b" + std::to_string(i) + ".png"}, {"role", "database"}});
      images.push_back({{"id", "q" + std::to_string(i)}, {"path", "img/q" + std::to_string(i) + ".png"}, {"role", "query"}});
      gt["q" + std::to_string(i)] = {{"relevant", {"b" + std::to_string(i)}}};
    }
    write_text(dir_ / "manifest.json", json{{"protocol", "standard"}, {"images", images}, {"ground_truth", gt}}.dump());
  }

  RunConfig config(const std::string& out = "out", const std::string& extra = "") const {
    const std::string text = R"({"manifest": "manifest.json", "output_dir": ")" + out + R"(",
      "orbit": {"target_size": [56, 56], "scale_steps": 3},
      "extractor": {"toy": {"channels_out": 6}},
      "sequence": "A:scale,S:trans,M:rot")" + extra + "}";
    write_text(dir_ / "cfg.json", text);
    return pipeline::load_config(dir_ / "cfg.json");
  }

  testing::TempDir dir_;
};

TEST_F(PipelineTest, ExtractWritesOneOrbitFilePerImage) {
  const RunConfig cfg = config();
  const auto report = pipeline::cmd_extract(cfg);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.written, 6u);
  for (const char* id : {"b0", "b1", "b2", "q0", "q1", "q2"}) {
    const FeatureOrbitTensor t = read_feature_file(pipeline::feature_path(cfg, id));
    EXPECT_EQ(t.shape(), (TensorShape{36, 3, 6, 7, 7}));
    EXPECT_TRUE(t.presence().rotation);
  }
  // One JSON line per image and the resolved config next to the outputs.
  std::istringstream log(slurp(cfg.output_dir / "logs/extract.jsonl"));
  std::string line;
  std::size_t lines = 0;
  while (std::getline(log, line)) {
    const json j = json::parse(line);
    EXPECT_EQ(j.at("stage"), "extract");
    EXPECT_EQ(j.at("status"), "ok");
    ++lines;
  }
  EXPECT_EQ(lines, 6u);
  EXPECT_EQ(pipeline::parse_config(slurp(cfg.output_dir / "config/extract.json")).sequence, cfg.sequence);
}

TEST_F(PipelineTest, RotationDisabledDropsAxis) {
  const RunConfig cfg = config("out", R"(, "orbit": {"rotation_enabled": false, "target_size": [56, 56]})");
  ASSERT_TRUE(pipeline::cmd_extract(cfg).ok());
  const FeatureOrbitTensor t = read_feature_file(pipeline::feature_path(cfg, "b0"));
  EXPECT_EQ(t.shape(), (TensorShape{1, 10, 6, 7, 7}));
  EXPECT_FALSE(t.presence().rotation);
}

TEST_F(PipelineTest, ExtractIsIdempotentUnlessForced) {
  const RunConfig cfg = config();
  ASSERT_TRUE(pipeline::cmd_extract(cfg).ok());
  const auto stamp = fs::last_write_time(pipeline::feature_path(cfg, "q1"));
  const auto again = pipeline::cmd_extract(cfg);
  EXPECT_EQ(again.written, 0u);
  EXPECT_EQ(again.skipped, 6u);
  EXPECT_EQ(fs::last_write_time(pipeline::feature_path(cfg, "q1")), stamp);
  CommandOptions force;
  force.force = true;
  EXPECT_EQ(pipeline::cmd_extract(cfg, force).written, 6u);
}

TEST_F(PipelineTest, UnreadableImageIsRecordedAndRunContinues) {
  write_text(dir_ / "img/b1.png", "garbage");
  const RunConfig cfg = config();
  const auto report = pipeline::cmd_extract(cfg);
  EXPECT_FALSE(report.ok());
  ASSERT_EQ(report.failures.size(), 1u);
  EXPECT_EQ(report.failures[0].rfind("b1: ", 0), 0u);
  EXPECT_EQ(report.written, 5u);
  EXPECT_FALSE(fs::exists(pipeline::feature_path(cfg, "b1")));
  EXPECT_NE(slurp(cfg.output_dir / "logs/extract.jsonl").find("\"failed\""), std::string::npos);
}

TEST_F(PipelineTest, DebugImagesAreNamedByOrbitIndex) {
  const RunConfig cfg = config();
  CommandOptions opt;
  opt.debug_images = true;
  ASSERT_TRUE(pipeline::cmd_extract(cfg, opt).ok());
  const fs::path p = cfg.output_dir / "orbit_images/q2_r35_s2.png";
  ASSERT_TRUE(fs::exists(p));
  EXPECT_EQ(read_image(p).height(), 56u);
}

TEST_F(PipelineTest, EndToEndRetrievesRotatedQueries) {
  const RunConfig cfg = config();
  ASSERT_TRUE(pipeline::cmd_extract(cfg).ok());
  ASSERT_TRUE(pipeline::cmd_pool(cfg).ok());
  const auto pooled = read_descriptor_file(pipeline::descriptor_path(cfg));
  ASSERT_EQ(pooled.size(), 6u);
  EXPECT_EQ(pooled[0].descriptor.dims(), 6u);
  EXPECT_EQ(pooled[0].descriptor.sequence_tag, "A:scale,S:trans,M:rot|flatten=r,s,c,h,w");

  ASSERT_TRUE(pipeline::cmd_eval(cfg).ok());
  const json eval = json::parse(slurp(pipeline::eval_path(cfg)));
  EXPECT_EQ(eval.at("metric"), "map");
  EXPECT_EQ(eval.at("value").get<double>(), 1.0);
  EXPECT_EQ(eval.at("config").at("distance"), "euclidean");
  EXPECT_EQ(eval.at("per_query").size(), 3u);

  RunConfig hashed = cfg;
  hashed.hash = true;
  ASSERT_TRUE(pipeline::cmd_hash(hashed).ok());
  EXPECT_EQ(read_hash_index(pipeline::hash_index_path(hashed)).entries.size(), 6u);
  EXPECT_EQ(read_thresholds(pipeline::threshold_path(hashed)).dims(), 6u);
  ASSERT_TRUE(pipeline::cmd_eval(hashed).ok());
  const json heval = json::parse(slurp(pipeline::eval_path(hashed)));
  EXPECT_EQ(heval.at("config").at("distance"), "hamming");
}

TEST_F(PipelineTest, DistanceReportOverGroundTruthPairs) {
  const RunConfig cfg = config();
  ASSERT_TRUE(pipeline::cmd_extract(cfg).ok());
  ASSERT_TRUE(pipeline::cmd_distance(cfg).ok());
  std::istringstream csv(slurp(pipeline::distance_report_path(cfg)));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "pair_id,sequence,distance");
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    if (line.find("A:scale,A:trans,A:rot") != std::string::npos) {
      EXPECT_LE(std::stod(line.substr(line.rfind(',') + 1)), 1e-4) << line;
    }
  }
  EXPECT_EQ(rows, 3u * 4u);
}

TEST_F(PipelineTest, MissingUpstreamNamesStage) {
  const RunConfig cfg = config();
  const auto stage_of = [](auto&& fn) {
    try {
      fn();
    } catch (const MissingArtifact& e) {
      return e.stage();
    }
    return std::string("none");
  };
  EXPECT_EQ(stage_of([&] { pipeline::cmd_pool(cfg); }), "extract");
  EXPECT_EQ(stage_of([&] { pipeline::cmd_distance(cfg); }), "extract");
  EXPECT_EQ(stage_of([&] { pipeline::cmd_hash(cfg); }), "pool");
  EXPECT_EQ(stage_of([&] { pipeline::cmd_eval(cfg); }), "pool");
  RunConfig hashed = cfg;
  hashed.hash = true;
  EXPECT_EQ(stage_of([&] { pipeline::cmd_eval(hashed); }), "hash");
}

TEST_F(PipelineTest, RunsAreByteIdenticalAndIndependentOfJobs) {
  CommandOptions one, three;
  three.jobs = 3;
  std::vector<std::string> artifacts[2];
  for (int run = 0; run < 2; ++run) {
    RunConfig cfg = config("out" + std::to_string(run));
    cfg.hash = true;
    const CommandOptions& opt = run == 0 ? one : three;
    ASSERT_TRUE(pipeline::cmd_extract(cfg, opt).ok());
    ASSERT_TRUE(pipeline::cmd_pool(cfg, opt).ok());
    ASSERT_TRUE(pipeline::cmd_hash(cfg, opt).ok());
    ASSERT_TRUE(pipeline::cmd_eval(cfg, opt).ok());
    for (const fs::path& p : {pipeline::feature_path(cfg, "q0"), pipeline::descriptor_path(cfg),
                              pipeline::hash_index_path(cfg), pipeline::threshold_path(cfg), pipeline::eval_path(cfg)}) {
      artifacts[run].push_back(slurp(p));
    }
  }
  ASSERT_EQ(artifacts[0].size(), artifacts[1].size());
  for (std::size_t i = 0; i < artifacts[0].size(); ++i) EXPECT_EQ(artifacts[0][i], artifacts[1][i]) << i;
}

// Pool5-shaped orbits supplied as files.
TEST(PipelineFiles, FileFeaturesPoolTo512Dims) {
  Rng rng(92);
  testing::TempDir dir;
  json images = json::array(), gt = json::object();
  std::map<std::string, FeatureOrbitTensor> tensors;
  for (const std::string id : {"a", "b"}) {
    const FeatureOrbitTensor t = testing::random_tensor(rng, {1, 1, 512, 7, 7});
    write_feature_file(t, dir / ("feats/" + id + ".fot"));
    write_feature_file(t, dir / ("feats/q" + id + ".fot"));  // query equals its match
    images.push_back({{"id", id}, {"path", id + ".png"}, {"role", "database"}});
    images.push_back({{"id", "q" + id}, {"path", "q" + id + ".png"}, {"role", "query"}});
    gt["q" + id] = {{"relevant", {id}}};
  }
  write_text(dir / "m.json", json{{"protocol", "standard"}, {"images", images}, {"ground_truth", gt}}.dump());
  write_text(dir / "c.json", R"({"manifest": "m.json", "output_dir": "out", "extractor": {"file": "feats"},
                                 "sequence": "A:trans"})");
  const RunConfig cfg = pipeline::load_config(dir / "c.json");
  const auto checked = pipeline::cmd_extract(cfg);
  EXPECT_TRUE(checked.ok());
  EXPECT_EQ(checked.skipped, 4u);
  ASSERT_TRUE(pipeline::cmd_pool(cfg).ok());
  EXPECT_EQ(read_descriptor_file(pipeline::descriptor_path(cfg))[0].descriptor.dims(), 512u);
  ASSERT_TRUE(pipeline::cmd_eval(cfg).ok());
  EXPECT_EQ(json::parse(slurp(pipeline::eval_path(cfg))).at("value").get<double>(), 1.0);

  RunConfig rot = cfg;
  rot.sequence = "M:rot";
  const auto r = pipeline::cmd_pool(rot);
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.failures[0].find("not generated"), std::string::npos);
}

// ---- CLI -------------------------------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ORBITPOOL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(PipelineTest, CliExitCodes) {
  config();
  const std::string cfg = "--config " + (dir_ / "cfg.json").string();
  EXPECT_EQ(run_cli("pool " + cfg), 1);  // nothing extracted yet
  EXPECT_EQ(run_cli("extract " + cfg + " --jobs 2"), 0);
  EXPECT_EQ(run_cli("pool " + cfg), 0);
  EXPECT_EQ(run_cli("eval " + cfg), 0);
  EXPECT_EQ(run_cli("hash " + cfg), 0);
  EXPECT_EQ(run_cli("distance " + cfg), 0);
  EXPECT_EQ(run_cli("pool " + cfg + " --sequence M:rot"), 0);
  EXPECT_EQ(run_cli("pool " + cfg + " --sequence 'Q:rot'"), 2);
  EXPECT_EQ(run_cli("eval " + cfg + " --metric recall4x4"), 2);
  EXPECT_EQ(run_cli("eval " + cfg + " --metric ndcg"), 2);
  EXPECT_EQ(run_cli("frobnicate " + cfg), 2);
  EXPECT_EQ(run_cli("extract --config " + (dir_ / "missing.json").string()), 2);
  write_text(dir_ / "broken.json", "{");
  EXPECT_EQ(run_cli("extract --config " + (dir_ / "broken.json").string()), 2);

  write_text(dir_ / "img/q0.png", "garbage");
  EXPECT_EQ(run_cli("extract " + cfg + " --force"), 1);
}

TEST_F(PipelineTest, CliSeedOverride) {
  config();
  const std::string cfg = "--config " + (dir_ / "cfg.json").string();
  ASSERT_EQ(run_cli("extract " + cfg), 0);
  const std::string before = slurp(dir_ / "out/features/b0.fot");
  ASSERT_EQ(run_cli("extract " + cfg + " --force"), 0);
  EXPECT_EQ(slurp(dir_ / "out/features/b0.fot"), before);
  ::setenv("ORBITPOOL_SEED", "777", 1);
  const int code = run_cli("extract " + cfg + " --force");
  ::unsetenv("ORBITPOOL_SEED");
  ASSERT_EQ(code, 0);
  EXPECT_NE(slurp(dir_ / "out/features/b0.fot"), before);
}

}  // namespace
}  // namespace orbitpool
