#pragma once

#include <filesystem>

#include "orbitpool/orbit/image.hpp"

namespace orbitpool {

/// Decodes a PNG or JPEG file (detected from its signature) to 8-bit RGB.
/// Grey, palette, 16-bit and alpha inputs are converted; alpha is dropped.
ImageRGB read_image(const std::filesystem::path& path);

void write_png(const ImageRGB& img, const std::filesystem::path& path);

}  // namespace orbitpool
