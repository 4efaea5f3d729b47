#pragma once

#include <cstddef>
#include <vector>

#include "orbitpool/orbit/image.hpp"

namespace orbitpool {

/// Sampling of the rotation and scale groups applied in image space.
struct OrbitSpec {
  bool rotation_enabled = true;
  std::size_t rotation_steps = 36;
  double rotation_step_degrees = 10.0;
  bool scale_enabled = true;
  std::size_t scale_steps = 10;
  /// Side-length fraction of the smallest centre crop.
  double scale_min_fraction = 0.5;
  /// ImageNet channel means, rounded.
  Rgb pad_rgb = {124, 117, 104};
  std::size_t target_height = 224;
  std::size_t target_width = 224;

  /// Throws ConfigError when the invariants do not hold.
  void validate() const;

  std::size_t n_rot() const noexcept { return rotation_enabled ? rotation_steps : 1; }
  std::size_t n_scale() const noexcept { return scale_enabled ? scale_steps : 1; }
};

/// Side fraction of crop k: min_fraction^(k/(steps-1)); 1 when steps == 1.
double scale_fraction(std::size_t k, const OrbitSpec& spec);

/// Centred crop k (side fraction scale_fraction(k)) resized to the target size.
ImageRGB center_crop_geometric(const ImageRGB& img, std::size_t k, const OrbitSpec& spec);

/// n_rot * n_scale images, rotation-major: element (r, s) is the input
/// rotated by r * step (with padding) and then centre-cropped at scale s.
/// A disabled group contributes the identity only.
std::vector<ImageRGB> generate_orbit_images(const ImageRGB& img, const OrbitSpec& spec);

}  // namespace orbitpool
