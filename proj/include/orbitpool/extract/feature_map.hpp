#pragma once

#include <cstddef>
#include <vector>

#include "orbitpool/core/tensor.hpp"

namespace orbitpool {

/// channels x height x width float32 activations of one orbit element.
struct FeatureMap {
  std::size_t channels = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<float> data;

  std::size_t size() const noexcept { return channels * height * width; }
  float at(std::size_t c, std::size_t h, std::size_t w) const {
    return data[(c * height + h) * width + w];
  }
};

/// Stacks n_rot * n_scale maps (rotation-major, as produced by
/// generate_orbit_images) into an orbit tensor. Presence flags default to
/// "axis generated iff extent > 1". Throws on count or shape mismatch.
FeatureOrbitTensor assemble_orbit_tensor(const std::vector<FeatureMap>& maps, std::size_t n_rot,
                                         std::size_t n_scale);
FeatureOrbitTensor assemble_orbit_tensor(const std::vector<FeatureMap>& maps, std::size_t n_rot,
                                         std::size_t n_scale, AxisPresence presence);

}  // namespace orbitpool
