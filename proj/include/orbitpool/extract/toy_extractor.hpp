#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "orbitpool/extract/feature_map.hpp"
#include "orbitpool/orbit/image.hpp"

namespace orbitpool {

struct ToyExtractorConfig {
  std::uint64_t seed = 0x5eed;
  std::size_t n_stages = 3;
  std::size_t channels_out = 64;
  std::size_t kernel_size = 3;
  std::size_t out_spatial = 7;

  /// Smallest accepted image side: out_spatial * 2^n_stages.
  std::size_t min_side() const noexcept { return out_spatial << n_stages; }
  void validate() const;
};

/// Deterministic stand-in for a pretrained convolutional network. Each stage
/// is a seeded random "same" convolution (no bias), ReLU and 2x2 max-pool;
/// an adaptive max-pool then brings the map to out_spatial x out_spatial.
/// Filters are uniform in +-1/sqrt(fan_in) and drawn once at construction.
class ToyExtractor {
 public:
  explicit ToyExtractor(const ToyExtractorConfig& cfg);

  const ToyExtractorConfig& config() const noexcept { return cfg_; }

  /// Throws InvalidArgument if a side is below config().min_side().
  FeatureMap extract(const ImageRGB& img) const;

 private:
  struct Stage {
    std::size_t in_ch;
    std::size_t out_ch;
    std::vector<float> weights;  // out_ch x in_ch x k x k
  };

  ToyExtractorConfig cfg_;
  std::vector<Stage> stages_;
};

FeatureMap toy_extract(const ImageRGB& img, const ToyExtractorConfig& cfg);

}  // namespace orbitpool
