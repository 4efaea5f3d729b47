#include "orbitpool/orbit/orbit.hpp"

#include <cmath>
#include <string>

#include "orbitpool/error.hpp"

namespace orbitpool {

void OrbitSpec::validate() const {
  if (rotation_enabled) {
    if (rotation_steps == 0) throw ConfigError("orbit: rotation_steps must be >= 1");
    const double span = static_cast<double>(rotation_steps) * rotation_step_degrees;
    if (std::abs(span - 360.0) > 1e-9) {
      throw ConfigError("orbit: rotation_steps * rotation_step_degrees must equal 360, got " +
                        std::to_string(span));
    }
  }
  if (scale_steps == 0) throw ConfigError("orbit: scale_steps must be >= 1");
  if (!(scale_min_fraction > 0.0 && scale_min_fraction <= 1.0)) {
    throw ConfigError("orbit: scale_min_fraction must lie in (0, 1]");
  }
  if (target_height < ImageRGB::kMinSide || target_width < ImageRGB::kMinSide) {
    throw ConfigError("orbit: target size must be at least " + std::to_string(ImageRGB::kMinSide));
  }
}

double scale_fraction(std::size_t k, const OrbitSpec& spec) {
  if (k >= spec.scale_steps) {
    throw InvalidArgument("scale_fraction: k = " + std::to_string(k) + " outside [0, " +
                          std::to_string(spec.scale_steps) + ")");
  }
  if (spec.scale_steps == 1 || k == 0) return 1.0;
  if (k + 1 == spec.scale_steps) return spec.scale_min_fraction;
  const double t = static_cast<double>(k) / static_cast<double>(spec.scale_steps - 1);
  return std::pow(spec.scale_min_fraction, t);
}

ImageRGB center_crop_geometric(const ImageRGB& img, std::size_t k, const OrbitSpec& spec) {
  const double s = scale_fraction(k, spec);
  const double w = static_cast<double>(img.width());
  const double h = static_cast<double>(img.height());
  const double box_w = s * w;
  const double box_h = s * h;
  return crop_resize(img, (w - box_w) / 2.0, (h - box_h) / 2.0, box_w, box_h, spec.target_height,
                     spec.target_width);
}

std::vector<ImageRGB> generate_orbit_images(const ImageRGB& img, const OrbitSpec& spec) {
  spec.validate();
  // A disabled scale group is a single full-image "crop".
  OrbitSpec crops = spec;
  if (!spec.scale_enabled) crops.scale_steps = 1;

  std::vector<ImageRGB> out;
  out.reserve(spec.n_rot() * spec.n_scale());
  for (std::size_t r = 0; r < spec.n_rot(); ++r) {
    const double angle = static_cast<double>(r) * spec.rotation_step_degrees;
    const ImageRGB rotated =
        spec.rotation_enabled ? rotate_with_padding(img, angle, spec.pad_rgb) : img;
    for (std::size_t s = 0; s < spec.n_scale(); ++s) {
      out.push_back(center_crop_geometric(rotated, s, crops));
    }
  }
  return out;
}

}  // namespace orbitpool
