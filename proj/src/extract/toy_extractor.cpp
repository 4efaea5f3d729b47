#include "orbitpool/extract/toy_extractor.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "orbitpool/error.hpp"
#include "orbitpool/simd/kernels.hpp"

namespace orbitpool {

namespace {

// Uniform double in [0, 1) from the top 53 bits; portable across standard
// libraries, unlike std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<float> pad_planes(const std::vector<float>& in, std::size_t ch, std::size_t h,
                              std::size_t w, std::size_t pad) {
  const std::size_t ph = h + 2 * pad;
  const std::size_t pw = w + 2 * pad;
  std::vector<float> out(ch * ph * pw, 0.0f);
  for (std::size_t c = 0; c < ch; ++c) {
    for (std::size_t y = 0; y < h; ++y) {
      std::copy_n(in.data() + (c * h + y) * w, w, out.data() + (c * ph + y + pad) * pw + pad);
    }
  }
  return out;
}

// ReLU and 2x2 max-pool (floor); max commutes with the rectifier.
std::vector<float> relu_pool2(const std::vector<float>& in, std::size_t ch, std::size_t h,
                              std::size_t w) {
  const std::size_t oh = h / 2;
  const std::size_t ow = w / 2;
  std::vector<float> out(ch * oh * ow);
  for (std::size_t c = 0; c < ch; ++c) {
    const float* plane = in.data() + c * h * w;
    for (std::size_t y = 0; y < oh; ++y) {
      for (std::size_t x = 0; x < ow; ++x) {
        const float* p = plane + (2 * y) * w + 2 * x;
        float m = std::max(std::max(p[0], p[1]), std::max(p[w], p[w + 1]));
        out[(c * oh + y) * ow + x] = m > 0.0f ? m : 0.0f;
      }
    }
  }
  return out;
}

}  // namespace

void ToyExtractorConfig::validate() const {
  if (n_stages == 0 || n_stages > 16) throw ConfigError("toy extractor: n_stages must be in [1, 16]");
  if (channels_out == 0) throw ConfigError("toy extractor: channels_out must be >= 1");
  if (kernel_size == 0 || kernel_size % 2 == 0) {
    throw ConfigError("toy extractor: kernel_size must be odd");
  }
  if (out_spatial == 0) throw ConfigError("toy extractor: out_spatial must be >= 1");
}

ToyExtractor::ToyExtractor(const ToyExtractorConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  std::mt19937_64 rng(cfg_.seed);
  const std::size_t k = cfg_.kernel_size;
  std::size_t in_ch = 3;
  for (std::size_t s = 0; s < cfg_.n_stages; ++s) {
    Stage stage{in_ch, cfg_.channels_out, {}};
    const double bound = 1.0 / std::sqrt(static_cast<double>(in_ch * k * k));
    stage.weights.resize(stage.out_ch * in_ch * k * k);
    for (float& w : stage.weights) {
      w = static_cast<float>((2.0 * unit_uniform(rng) - 1.0) * bound);
    }
    stages_.push_back(std::move(stage));
    in_ch = cfg_.channels_out;
  }
}

FeatureMap ToyExtractor::extract(const ImageRGB& img) const {
  const std::size_t min_side = cfg_.min_side();
  if (img.height() < min_side || img.width() < min_side) {
    throw InvalidArgument("toy extractor: image is " + std::to_string(img.height()) + "x" +
                          std::to_string(img.width()) + ", minimum size is " +
                          std::to_string(min_side) + "x" + std::to_string(min_side));
  }
  const auto& kernels = simd::active();
  const std::size_t k = cfg_.kernel_size;
  std::size_t h = img.height();
  std::size_t w = img.width();

  std::vector<float> act(3 * h * w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      for (std::size_t c = 0; c < 3; ++c) {
        act[(c * h + y) * w + x] = static_cast<float>(img.at(y, x, c)) / 255.0f;
      }
    }
  }

  std::size_t ch = 3;
  for (const Stage& stage : stages_) {
    const std::vector<float> padded = pad_planes(act, ch, h, w, k / 2);
    std::vector<float> conv(stage.out_ch * h * w);
    kernels.conv2d_same(padded.data(), stage.in_ch, h, w, k, stage.weights.data(), stage.out_ch,
                        conv.data());
    act = relu_pool2(conv, stage.out_ch, h, w);
    ch = stage.out_ch;
    h /= 2;
    w /= 2;
  }

  // Adaptive max-pool: bin i spans [floor(i*n/o), ceil((i+1)*n/o)).
  const std::size_t o = cfg_.out_spatial;
  FeatureMap out{ch, o, o, std::vector<float>(ch * o * o)};
  for (std::size_t c = 0; c < ch; ++c) {
    for (std::size_t by = 0; by < o; ++by) {
      const std::size_t y0 = by * h / o;
      const std::size_t y1 = ((by + 1) * h + o - 1) / o;
      for (std::size_t bx = 0; bx < o; ++bx) {
        const std::size_t x0 = bx * w / o;
        const std::size_t x1 = ((bx + 1) * w + o - 1) / o;
        float m = act[(c * h + y0) * w + x0];
        for (std::size_t y = y0; y < y1; ++y) {
          for (std::size_t x = x0; x < x1; ++x) m = std::max(m, act[(c * h + y) * w + x]);
        }
        out.data[(c * o + by) * o + bx] = m;
      }
    }
  }
  return out;
}

FeatureMap toy_extract(const ImageRGB& img, const ToyExtractorConfig& cfg) {
  return ToyExtractor(cfg).extract(img);
}

}  // namespace orbitpool
