#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace orbitpool {

using Rgb = std::array<std::uint8_t, 3>;

/// 8-bit RGB image, row-major, channels interleaved. Both sides are at
/// least kMinSide pixels.
class ImageRGB {
 public:
  static constexpr std::size_t kMinSide = 8;

  ImageRGB(std::size_t height, std::size_t width, Rgb fill = {0, 0, 0});
  ImageRGB(std::size_t height, std::size_t width, std::vector<std::uint8_t> pixels);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }

  std::uint8_t at(std::size_t y, std::size_t x, std::size_t c) const noexcept {
    return pixels_[(y * width_ + x) * 3 + c];
  }
  std::uint8_t& at(std::size_t y, std::size_t x, std::size_t c) noexcept {
    return pixels_[(y * width_ + x) * 3 + c];
  }

  friend bool operator==(const ImageRGB&, const ImageRGB&) = default;

 private:
  std::size_t height_;
  std::size_t width_;
  std::vector<std::uint8_t> pixels_;
};

/// Rotation about the image centre. The output keeps the input size; pixels
/// whose source falls outside the input take pad. Multiples of 90 degrees on
/// square images (and of 180 degrees on any image) are exact index
/// permutations; the residual angle is resampled bilinearly.
ImageRGB rotate_with_padding(const ImageRGB& img, double angle_degrees, Rgb pad);

/// Exact quarter turns (count mod 4) of a square image.
ImageRGB rotate_quarter_turns(const ImageRGB& img, int count);

/// Bilinear resample of the axis-aligned box [x0, x0+box_w) x [y0, y0+box_h)
/// (continuous pixel coordinates) to out_h x out_w, pixel-centre aligned.
ImageRGB crop_resize(const ImageRGB& img, double x0, double y0, double box_w, double box_h,
                     std::size_t out_h, std::size_t out_w);

ImageRGB resize(const ImageRGB& img, std::size_t out_h, std::size_t out_w);

}  // namespace orbitpool
