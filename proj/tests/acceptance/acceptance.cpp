// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "orbitpool/core/binary_hash.hpp"
#include "orbitpool/core/descriptor.hpp"
#include "orbitpool/extract/feature_file.hpp"
#include "orbitpool/extract/feature_map.hpp"
#include "orbitpool/extract/toy_extractor.hpp"
#include "orbitpool/hashing/hash_file.hpp"
#include "orbitpool/hashing/hashing.hpp"
#include "orbitpool/orbit/image.hpp"
#include "orbitpool/orbit/orbit.hpp"
#include "orbitpool/pooling/descriptor_file.hpp"
#include "orbitpool/pooling/pooling.hpp"
#include "orbitpool/pooling/sequence.hpp"
#include "orbitpool/retrieval/manifest.hpp"
#include "orbitpool/retrieval/metrics.hpp"
#include "orbitpool/retrieval/ranking.hpp"
#include "test_support.hpp"

using namespace orbitpool;
using orbitpool::testing::Rng;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && out_.ok) {
      out_.ok = false;
      out_.detail = what;
    }
  }
  void note(const std::string& text) {
    if (out_.ok) out_.detail = text;
  }
  Outcome result() const { return out_; }

 private:
  Outcome out_;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

bool rel_close(double got, double ref, double tol) {
  if (ref == 0.0) return got == 0.0;
  return std::abs(got - ref) <= tol * std::abs(ref);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FeatureOrbitTensor constant_tensor(TensorShape shape, AxisPresence presence) {
  return FeatureOrbitTensor(shape, std::vector<float>(shape.size(), 0.25f), presence);
}

// ---------------------------------------------------------------------------

Outcome dims_contract() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto dims = [](TensorShape shape, AxisPresence presence, const char* seq) {
    return apply_sequence(constant_tensor(shape, presence), PoolingSequence::parse(seq)).dims();
  };
  const TensorShape single{1, 1, 512, 7, 7};
  const TensorShape rot{36, 1, 512, 7, 7};
  const TensorShape scale{1, 10, 512, 7, 7};
  const TensorShape full{36, 10, 512, 7, 7};
  c.expect(dims(single, {}, "") == 25088, "raw flatten");
  c.expect(dims(single, {}, "A:trans") == 512, "A:trans");
  c.expect(dims(rot, {true, false}, "A:rot") == 25088, "A:rot");
  c.expect(dims(scale, {false, true}, "A:scale") == 25088, "A:scale");
  for (const char* seq : {"A:scale,S:trans,M:rot", "M:rot,A:scale,A:trans", "A:trans,S:rot,M:scale",
                          "S:scale,M:rot,A:trans"}) {
    c.expect(dims(full, {true, true}, seq) == 512, std::string("all axes: ") + seq);
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 1.0, "runtime " + fmt(secs) + " s");
  c.note("25088/512/25088/25088/512; " + fmt(secs) + " s");
  return c.result();
}

// Reference statistics in long double, written independently of the library.
long double ref_moment(const std::vector<float>& x, Moment m) {
  const long double n = static_cast<long double>(x.size());
  switch (m) {
    case Moment::average: {
      long double s = 0;
      for (float v : x) s += v;
      return s / n;
    }
    case Moment::max: {
      long double best = -std::numeric_limits<long double>::infinity();
      for (float v : x) best = std::max(best, static_cast<long double>(v));
      return best;
    }
    case Moment::std_dev: {
      long double s = 0;
      for (float v : x) s += v;
      const long double mean = s / n;
      long double q = 0;
      for (float v : x) q += (v - mean) * (v - mean);
      return std::sqrt(q / n);
    }
  }
  return 0;
}

// Puts the fiber along `axis` of an otherwise trivial tensor.
FeatureOrbitTensor fiber_tensor(const std::vector<float>& x, Axis axis) {
  switch (axis) {
    case Axis::rotation: return FeatureOrbitTensor({x.size(), 1, 1, 1, 1}, x, {true, false});
    case Axis::scale: return FeatureOrbitTensor({1, x.size(), 1, 1, 1}, x, {false, true});
    case Axis::translation: return FeatureOrbitTensor({1, 1, 1, 1, x.size()}, x, {false, false});
  }
  throw std::logic_error("axis");
}

Outcome moment_oracle() {
  Check c;
  Rng rng(1001);
  const Axis axes[] = {Axis::rotation, Axis::scale, Axis::translation};
  const Moment moments[] = {Moment::average, Moment::max, Moment::std_dev};
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = orbitpool::testing::uniform_index(rng, 2, 400);
    const bool mixed_sign = i % 4 == 0;
    std::vector<float> x(n);
    for (float& v : x) v = static_cast<float>(orbitpool::testing::uniform(rng, mixed_sign ? -50.0 : 0.0, 50.0));
    const Axis axis = axes[i % 3];
    for (const Moment m : moments) {
      const double ref = static_cast<double>(ref_moment(x, m));
      const double lib_float = pool_axis(fiber_tensor(x, axis), axis, m).data()[0];
      const std::vector<double> xd(x.begin(), x.end());
      const double lib_double = moment_reduce(xd, m);
      if (ref != 0.0) worst = std::max({worst, std::abs(lib_float - ref) / std::abs(ref),
                                        std::abs(lib_double - ref) / std::abs(ref)});
      c.expect(rel_close(lib_float, ref, 1e-6),
               std::string("tensor path ") + moment_token(m) + " fiber " + std::to_string(i) + ": " +
                   fmt(lib_float) + " vs " + fmt(ref));
      c.expect(rel_close(lib_double, ref, 1e-6),
               std::string("moment_reduce ") + moment_token(m) + " fiber " + std::to_string(i));
    }
  }
  // Constant fibers, including values with no exact binary form.
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = orbitpool::testing::uniform_index(rng, 1, 500);
    const float v = i % 2 ? 0.1f * static_cast<float>(i) : static_cast<float>(orbitpool::testing::uniform(rng, -1e4, 1e4));
    const std::vector<float> x(n, v);
    for (const Axis axis : axes) {
      c.expect(pool_axis(fiber_tensor(x, axis), axis, Moment::std_dev).data()[0] == 0.0f,
               "constant fiber STD not exactly 0 (tensor path)");
    }
    c.expect(moment_reduce(std::vector<double>(n, v), Moment::std_dev) == 0.0,
             "constant fiber STD not exactly 0 (moment_reduce)");
  }
  c.note("1000 fibers, max rel err " + fmt(worst) + "; constant STD exactly 0");
  return c.result();
}

Outcome average_commutativity() {
  Check c;
  Rng rng(2002);
  const std::pair<Axis, Axis> pairs[] = {{Axis::rotation, Axis::scale},
                                         {Axis::rotation, Axis::translation},
                                         {Axis::scale, Axis::translation}};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    // Post-rectification activations are nonnegative; mixed signs would let
    // cancellation dominate a relative comparison of float32 results.
    const TensorShape shape{4, 3, 8, 5, 5};
    const FeatureOrbitTensor t(shape, orbitpool::testing::random_floats(rng, shape.size(), 0.0, 1.0), {true, true});
    for (const auto& [a, b] : pairs) {
      const Descriptor ab = apply_sequence(t, PoolingSequence({{Moment::average, a}, {Moment::average, b}}));
      const Descriptor ba = apply_sequence(t, PoolingSequence({{Moment::average, b}, {Moment::average, a}}));
      c.expect(ab.dims() == ba.dims(), "dims differ between orders");
      if (ab.dims() != ba.dims()) break;
      for (std::size_t k = 0; k < ab.dims(); ++k) {
        const double x = ab.values[k], y = ba.values[k];
        if (y != 0.0) worst = std::max(worst, std::abs(x - y) / std::abs(y));
        c.expect(rel_close(x, y, 1e-6), "tensor " + std::to_string(i) + " dim " + std::to_string(k) + ": " +
                                            fmt(x) + " vs " + fmt(y));
      }
    }
  }
  c.note("100 tensors x 3 axis pairs, max rel diff " + fmt(worst));
  return c.result();
}

Outcome non_commutativity_witness() {
  Check c;
  // Fiber [[0,1],[1,0]] over (rotation, scale).
  const FeatureOrbitTensor t({2, 2, 1, 1, 1}, {0.0f, 1.0f, 1.0f, 0.0f}, {true, true});
  const float avg_then_max = apply_sequence(t, PoolingSequence::parse("A:rot,M:scale")).values.at(0);
  const float max_then_avg = apply_sequence(t, PoolingSequence::parse("M:rot,A:scale")).values.at(0);
  c.expect(avg_then_max == 0.5f, "avg-then-max = " + fmt(avg_then_max));
  c.expect(max_then_avg == 1.0f, "max-then-avg = " + fmt(max_then_avg));
  c.note("avg-then-max " + fmt(avg_then_max) + ", max-then-avg " + fmt(max_then_avg));
  return c.result();
}

// Toy configuration shared by the end-to-end checks.
ToyExtractorConfig acceptance_toy() {
  ToyExtractorConfig cfg;
  cfg.seed = 7;
  cfg.n_stages = 3;
  cfg.channels_out = 16;
  cfg.kernel_size = 3;
  cfg.out_spatial = 7;
  return cfg;
}

OrbitSpec acceptance_orbit(bool scale) {
  OrbitSpec spec;
  spec.rotation_enabled = true;
  spec.rotation_steps = 36;
  spec.rotation_step_degrees = 10.0;
  spec.scale_enabled = scale;
  spec.target_height = spec.target_width = 56;
  return spec;
}

FeatureOrbitTensor orbit_tensor(const ImageRGB& img, const OrbitSpec& spec, const ToyExtractor& ex) {
  const std::vector<ImageRGB> images = generate_orbit_images(img, spec);
  std::vector<FeatureMap> maps;
  maps.reserve(images.size());
  for (const ImageRGB& im : images) maps.push_back(ex.extract(im));
  return assemble_orbit_tensor(maps, spec.n_rot(), spec.n_scale(), {spec.rotation_enabled, spec.scale_enabled});
}

// Square scene: a textured background with a few coloured discs and boxes,
// so that images are distinguishable but share global statistics.
ImageRGB scene_image(Rng& rng, std::size_t side) {
  ImageRGB img = orbitpool::testing::smooth_image(rng, side, side);
  const std::size_t shapes = orbitpool::testing::uniform_index(rng, 3, 6);
  for (std::size_t k = 0; k < shapes; ++k) {
    const double cx = orbitpool::testing::uniform(rng, 0.15, 0.85) * side;
    const double cy = orbitpool::testing::uniform(rng, 0.15, 0.85) * side;
    const double r = orbitpool::testing::uniform(rng, 0.06, 0.18) * side;
    const bool disc = orbitpool::testing::uniform(rng, 0, 1) < 0.5;
    Rgb colour;
    for (auto& ch : colour) ch = static_cast<std::uint8_t>(orbitpool::testing::uniform_index(rng, 0, 255));
    for (std::size_t y = 0; y < side; ++y) {
      for (std::size_t x = 0; x < side; ++x) {
        const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
        const bool inside = disc ? dx * dx + dy * dy <= r * r : std::abs(dx) <= r && std::abs(dy) <= 0.6 * r;
        if (inside) {
          for (std::size_t ch = 0; ch < 3; ++ch) img.at(y, x, ch) = colour[ch];
        }
      }
    }
  }
  return img;
}

Outcome rotation_invariance() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const ToyExtractor ex(acceptance_toy());
  Rng rng(3003);
  const ImageRGB x = scene_image(rng, 64);
  const ImageRGB xr = rotate_with_padding(x, 90.0, OrbitSpec{}.pad_rgb);
  // Unrelated images give the thresholds something to separate.
  std::vector<ImageRGB> others;
  for (int i = 0; i < 6; ++i) others.push_back(scene_image(rng, 64));

  struct Case {
    const char* sequence;
    bool scale;
  };
  std::string summary;
  for (const Case& cs : {Case{"M:rot", false}, Case{"A:scale,S:trans,M:rot", true}}) {
    const OrbitSpec spec = acceptance_orbit(cs.scale);
    const PoolingSequence seq = PoolingSequence::parse(cs.sequence);
    const Descriptor a = l2_normalize(apply_sequence(orbit_tensor(x, spec, ex), seq));
    const Descriptor b = l2_normalize(apply_sequence(orbit_tensor(xr, spec, ex), seq));
    const double dist = euclidean_distance(a, b);
    std::vector<Descriptor> db = {a, b};
    for (const ImageRGB& o : others) db.push_back(l2_normalize(apply_sequence(orbit_tensor(o, spec, ex), seq)));
    const ThresholdVector th = fit_thresholds(db);
    const std::size_t ham = hamming_distance(binarize(a, th), binarize(b, th));
    c.expect(a.normalized && b.normalized, std::string(cs.sequence) + ": zero descriptor");
    c.expect(dist <= 1e-4, std::string(cs.sequence) + ": distance " + fmt(dist));
    c.expect(ham == 0, std::string(cs.sequence) + ": hamming " + std::to_string(ham));
    summary += std::string(cs.sequence) + " d=" + fmt(dist) + " ham=" + std::to_string(ham) + "; ";
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 30.0, "runtime " + fmt(secs) + " s");
  c.note(summary + fmt(secs) + " s");
  return c.result();
}

DatasetManifest rotation_benchmark_manifest(std::size_t n_base) {
  DatasetManifest m;
  m.protocol = Protocol::standard;
  for (std::size_t i = 0; i < n_base; ++i) {
    const std::string id = "b" + std::to_string(i);
    m.images.push_back({id, id + ".png", Role::database});
  }
  for (std::size_t i = 0; i < n_base; ++i) {
    for (int q = 1; q <= 3; ++q) {
      const std::string id = "b" + std::to_string(i) + "_r" + std::to_string(90 * q);
      m.images.push_back({id, id + ".png", Role::query});
      m.ground_truth[id].relevant = {"b" + std::to_string(i)};
    }
  }
  m.validate();
  return m;
}

double benchmark_map(const std::vector<FeatureOrbitTensor>& base, const std::vector<FeatureOrbitTensor>& queries,
                     const DatasetManifest& m, const PoolingSequence& seq) {
  std::vector<NamedDescriptor> index;
  const std::vector<std::string> db_ids = m.database_ids();
  for (std::size_t i = 0; i < base.size(); ++i) index.push_back({db_ids[i], l2_normalize(apply_sequence(base[i], seq))});
  const SearchIndex search = index;
  const std::vector<std::string> q_ids = m.query_ids();
  std::vector<RankedList> lists;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    lists.push_back(rank(q_ids[i], apply_sequence(queries[i], seq), search, {m.protocol, {}}));
  }
  return mean_average_precision(lists, m);
}

Outcome retrieval_improvement() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  constexpr std::size_t kBase = 50;
  const ToyExtractor ex(acceptance_toy());
  const OrbitSpec spec = acceptance_orbit(true);
  const DatasetManifest m = rotation_benchmark_manifest(kBase);
  Rng rng(4004);
  std::vector<FeatureOrbitTensor> base, queries;
  for (std::size_t i = 0; i < kBase; ++i) {
    const ImageRGB img = scene_image(rng, 64);
    base.push_back(orbit_tensor(img, spec, ex));
    for (int q = 1; q <= 3; ++q) queries.push_back(orbit_tensor(rotate_with_padding(img, 90.0 * q, spec.pad_rgb), spec, ex));
  }
  const double raw = benchmark_map(base, queries, m, PoolingSequence{});
  const double rot = benchmark_map(base, queries, m, PoolingSequence::parse("M:rot"));
  const double full = benchmark_map(base, queries, m, PoolingSequence::parse("A:scale,S:trans,M:rot"));
  c.expect(rot > raw, "mAP(M:rot) " + fmt(rot) + " not above mAP(raw) " + fmt(raw));
  c.expect(full >= rot - 0.02, "mAP(full) " + fmt(full) + " below mAP(M:rot) - 0.02 = " + fmt(rot - 0.02));
  const double secs = seconds_since(t0);
  c.expect(secs < 300.0, "runtime " + fmt(secs) + " s");
  c.note("mAP raw " + fmt(raw) + ", M:rot " + fmt(rot) + ", A:scale,S:trans,M:rot " + fmt(full) + "; " + fmt(secs) +
         " s");
  return c.result();
}

// AP by enumerating every cut-off k: sum of precision@k times the recall gained at k.
double brute_force_ap(const std::vector<std::string>& ranking, const std::set<std::string>& relevant) {
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t k = 1; k <= ranking.size(); ++k) {
    std::size_t hits = 0;
    for (std::size_t j = 0; j < k; ++j) hits += relevant.count(ranking[j]);
    const double precision = static_cast<double>(hits) / static_cast<double>(k);
    const double recall = static_cast<double>(hits) / static_cast<double>(relevant.size());
    ap += precision * (recall - prev_recall);
    prev_recall = recall;
  }
  return ap;
}

Outcome map_oracle() {
  Check c;
  Rng rng(5005);
  double worst = 0.0;
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t n_items = orbitpool::testing::uniform_index(rng, 1, 20);
    const std::size_t n_queries = orbitpool::testing::uniform_index(rng, 1, 4);
    DatasetManifest m;
    std::vector<std::string> items;
    for (std::size_t i = 0; i < n_items; ++i) {
      items.push_back("d" + std::to_string(i));
      m.images.push_back({items.back(), items.back() + ".png", Role::database});
    }
    std::vector<RankedList> lists;
    double expected = 0.0;
    for (std::size_t q = 0; q < n_queries; ++q) {
      const std::string qid = "q" + std::to_string(q);
      m.images.push_back({qid, qid + ".png", Role::query});
      std::vector<std::string> order = items;
      std::shuffle(order.begin(), order.end(), rng);
      const std::size_t n_rel = orbitpool::testing::uniform_index(rng, 1, std::min<std::size_t>(5, n_items));
      std::vector<std::string> pick = items;
      std::shuffle(pick.begin(), pick.end(), rng);
      const std::set<std::string> relevant(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n_rel));
      m.ground_truth[qid].relevant = relevant;
      RankedList list{qid, {}};
      for (std::size_t k = 0; k < order.size(); ++k) list.entries.push_back({order[k], static_cast<double>(k)});
      lists.push_back(list);
      expected += brute_force_ap(order, relevant);
    }
    m.validate();
    expected /= static_cast<double>(n_queries);
    const double got = mean_average_precision(lists, m);
    worst = std::max(worst, std::abs(got - expected));
    c.expect(std::abs(got - expected) <= 1e-9,
             "instance " + std::to_string(inst) + ": " + fmt(got) + " vs " + fmt(expected));
  }
  // Fixed regression case: [A, X, B] with relevant {A, B} is 5/6.
  const RankedList fixed{"q", {{"A", 0.1}, {"X", 0.2}, {"B", 0.3}}};
  const double ap = average_precision(fixed, {"A", "B"});
  c.expect(std::abs(ap - 5.0 / 6.0) <= 1e-12, "[A,X,B]/{A,B} = " + fmt(ap));
  c.note("200 instances, max abs diff " + fmt(worst) + "; [A,X,B] -> " + fmt(ap));
  return c.result();
}

Outcome ukb_bound() {
  Check c;
  constexpr std::size_t kGroups = 6;
  DatasetManifest m;
  m.protocol = Protocol::ukb;
  std::vector<NamedDescriptor> index;
  for (std::size_t g = 0; g < kGroups; ++g) {
    std::set<std::string> group;
    for (std::size_t k = 0; k < 4; ++k) group.insert("g" + std::to_string(g) + "_" + std::to_string(k));
    for (const std::string& id : group) {
      m.images.push_back({id, id + ".jpg", Role::both});
      m.ground_truth[id].relevant = group;
      // Group members sit near a shared one-hot direction.
      std::vector<float> v(kGroups + 4, 0.0f);
      v[g] = 1.0f;
      v[kGroups + static_cast<std::size_t>(id.back() - '0')] = 0.05f;
      index.push_back({id, Descriptor{v, "synthetic", false}});
    }
  }
  m.validate();
  const SearchIndex search = index;
  std::vector<RankedList> lists;
  for (const NamedDescriptor& q : index) {
    lists.push_back(rank(q.id, q.descriptor, search, {m.protocol, {}}));
    c.expect(!lists.back().entries.empty() && lists.back().entries.front().id == q.id,
             "self-match not at rank 1 for " + q.id);
  }
  const double score = recall4_times4(lists, m);
  c.expect(score == 4.0, "score " + fmt(score));
  c.note(std::to_string(lists.size()) + " queries, 4xRecall@4 = " + fmt(score) + ", self at rank 1");
  return c.result();
}

bool same_bits(std::span<const float> a, std::span<const float> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(float)) == 0;
}

Outcome format_round_trips() {
  Check c;
  Rng rng(6006);
  orbitpool::testing::TempDir dir;
  const float specials[] = {-0.0f, std::numeric_limits<float>::denorm_min(), std::numeric_limits<float>::min(),
                            std::numeric_limits<float>::max(), std::numeric_limits<float>::lowest()};
  for (int i = 0; i < 100; ++i) {
    const TensorShape shape{orbitpool::testing::uniform_index(rng, 1, 12), orbitpool::testing::uniform_index(rng, 1, 6),
                            orbitpool::testing::uniform_index(rng, 1, 9), orbitpool::testing::uniform_index(rng, 1, 8),
                            orbitpool::testing::uniform_index(rng, 1, 8)};
    std::vector<float> data = orbitpool::testing::random_floats(rng, shape.size(), -1e3, 1e3);
    data[orbitpool::testing::uniform_index(rng, 0, data.size() - 1)] = specials[i % 5];
    const AxisPresence presence{shape.n_rot > 1 || i % 3 == 0, shape.n_scale > 1 || i % 5 == 0};
    const FeatureOrbitTensor t(shape, data, presence);
    const auto path = dir.path() / ("t" + std::to_string(i) + ".fot");
    write_feature_file(t, path);
    const FeatureOrbitTensor back = read_feature_file(path);
    c.expect(back.shape() == t.shape() && back.presence() == t.presence() && back.consumed() == t.consumed(),
             "FOT1 header mismatch on instance " + std::to_string(i));
    c.expect(same_bits(back.data(), t.data()), "FOT1 data mismatch on instance " + std::to_string(i));
    c.expect(encode_feature_file(back) == encode_feature_file(t), "FOT1 re-encode differs on instance " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    HashIndex index;
    index.n_bits = orbitpool::testing::uniform_index(rng, 1, 700);
    const std::size_t n = orbitpool::testing::uniform_index(rng, 0, 30);
    for (std::size_t e = 0; e < n; ++e) {
      BinaryHash h(index.n_bits);
      for (std::size_t b = 0; b < index.n_bits; ++b) h.set_bit(b, rng() & 1u);
      index.entries.push_back({"img_" + std::to_string(i) + "_" + std::to_string(e), h});
    }
    const auto path = dir.path() / ("h" + std::to_string(i) + ".bhi");
    write_hash_index(index, path);
    const HashIndex back = read_hash_index(path);
    c.expect(back == index, "BHI1 mismatch on instance " + std::to_string(i));
    c.expect(encode_hash_index(back) == encode_hash_index(index), "BHI1 re-encode differs on instance " + std::to_string(i));
  }
  c.note("100 FOT1 + 100 BHI1 instances bit-identical");
  return c.result();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"dimensionality_contract", dims_contract},
      {"moment_correctness", moment_oracle},
      {"average_average_commutativity", average_commutativity},
      {"non_commutativity_witness", non_commutativity_witness},
      {"rotation_invariance_end_to_end", rotation_invariance},
      {"retrieval_improvement", retrieval_improvement},
      {"map_oracle_equivalence", map_oracle},
      {"ukb_metric_bound", ukb_bound},
      {"format_round_trips", format_round_trips},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.ok) ++failures;
    std::printf("%s %s (%.2f s): %s\n", out.ok ? "PASS" : "FAIL", name, seconds_since(t0), out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
