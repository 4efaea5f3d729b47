#include "orbitpool/orbit/image.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "orbitpool/error.hpp"

namespace orbitpool {

namespace {

void check_side(std::size_t height, std::size_t width) {
  if (height < ImageRGB::kMinSide || width < ImageRGB::kMinSide) {
    throw InvalidArgument("ImageRGB: sides must be >= " + std::to_string(ImageRGB::kMinSide) +
                          ", got " + std::to_string(height) + "x" + std::to_string(width));
  }
}

std::uint8_t to_u8(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

// Bilinear sample at (sx, sy), which must lie inside [0, w-1] x [0, h-1].
void sample(const ImageRGB& img, double sx, double sy, std::uint8_t* out) {
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  auto x0 = static_cast<std::size_t>(std::floor(sx));
  auto y0 = static_cast<std::size_t>(std::floor(sy));
  x0 = std::min(x0, w - 2);
  y0 = std::min(y0, h - 2);
  const double fx = sx - static_cast<double>(x0);
  const double fy = sy - static_cast<double>(y0);
  for (std::size_t c = 0; c < 3; ++c) {
    const double p00 = img.at(y0, x0, c);
    const double p10 = img.at(y0, x0 + 1, c);
    const double p01 = img.at(y0 + 1, x0, c);
    const double p11 = img.at(y0 + 1, x0 + 1, c);
    const double top = (1.0 - fx) * p00 + fx * p10;
    const double bottom = (1.0 - fx) * p01 + fx * p11;
    out[c] = to_u8((1.0 - fy) * top + fy * bottom);
  }
}

ImageRGB rotate_half_turn(const ImageRGB& img) {
  const std::size_t h = img.height();
  const std::size_t w = img.width();
  ImageRGB out(h, w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      for (std::size_t c = 0; c < 3; ++c) out.at(y, x, c) = img.at(h - 1 - y, w - 1 - x, c);
    }
  }
  return out;
}

ImageRGB rotate_bilinear(const ImageRGB& img, double angle_degrees, Rgb pad) {
  const std::size_t h = img.height();
  const std::size_t w = img.width();
  const double theta = angle_degrees * std::numbers::pi / 180.0;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double cx = (static_cast<double>(w) - 1.0) / 2.0;
  const double cy = (static_cast<double>(h) - 1.0) / 2.0;
  const double max_x = static_cast<double>(w) - 1.0;
  const double max_y = static_cast<double>(h) - 1.0;
  constexpr double eps = 1e-9;

  ImageRGB out(h, w, pad);
  for (std::size_t y = 0; y < h; ++y) {
    const double dy = static_cast<double>(y) - cy;
    for (std::size_t x = 0; x < w; ++x) {
      const double dx = static_cast<double>(x) - cx;
      double sx = cx + cs * dx + sn * dy;
      double sy = cy - sn * dx + cs * dy;
      if (sx < -eps || sy < -eps || sx > max_x + eps || sy > max_y + eps) continue;
      sx = std::clamp(sx, 0.0, max_x);
      sy = std::clamp(sy, 0.0, max_y);
      sample(img, sx, sy, &out.at(y, x, 0));
    }
  }
  return out;
}

}  // namespace

ImageRGB::ImageRGB(std::size_t height, std::size_t width, Rgb fill)
    : height_(height), width_(width) {
  check_side(height, width);
  pixels_.resize(height * width * 3);
  for (std::size_t i = 0; i < height * width; ++i) {
    pixels_[3 * i] = fill[0];
    pixels_[3 * i + 1] = fill[1];
    pixels_[3 * i + 2] = fill[2];
  }
}

ImageRGB::ImageRGB(std::size_t height, std::size_t width, std::vector<std::uint8_t> pixels)
    : height_(height), width_(width), pixels_(std::move(pixels)) {
  check_side(height, width);
  if (pixels_.size() != height * width * 3) {
    throw DimensionMismatch("ImageRGB: pixel buffer vs height*width*3", pixels_.size(),
                            height * width * 3);
  }
}

ImageRGB rotate_quarter_turns(const ImageRGB& img, int count) {
  const int q = ((count % 4) + 4) % 4;
  if (q == 0) return img;
  if (q == 2) return rotate_half_turn(img);
  if (img.height() != img.width()) {
    throw InvalidArgument("rotate_quarter_turns: odd quarter turns need a square image");
  }
  const std::size_t n = img.width();
  ImageRGB out(n, n);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      // Same source mapping as the bilinear path at +90 / +270 degrees.
      const std::size_t sy = (q == 1) ? n - 1 - x : x;
      const std::size_t sx = (q == 1) ? y : n - 1 - y;
      for (std::size_t c = 0; c < 3; ++c) out.at(y, x, c) = img.at(sy, sx, c);
    }
  }
  return out;
}

ImageRGB rotate_with_padding(const ImageRGB& img, double angle_degrees, Rgb pad) {
  double a = std::fmod(angle_degrees, 360.0);
  if (a < 0.0) a += 360.0;
  if (a >= 360.0) a = 0.0;

  const bool square = img.height() == img.width();
  const double quantum = square ? 90.0 : 180.0;
  const int turns = static_cast<int>(std::floor(a / quantum));
  const double residual = a - quantum * turns;

  ImageRGB base = square ? rotate_quarter_turns(img, turns)
                         : (turns == 1 ? rotate_half_turn(img) : img);
  if (residual == 0.0) return base;
  return rotate_bilinear(base, residual, pad);
}

ImageRGB crop_resize(const ImageRGB& img, double x0, double y0, double box_w, double box_h,
                     std::size_t out_h, std::size_t out_w) {
  if (!(box_w > 0.0) || !(box_h > 0.0)) throw InvalidArgument("crop_resize: empty box");
  const double max_x = static_cast<double>(img.width()) - 1.0;
  const double max_y = static_cast<double>(img.height()) - 1.0;
  const double step_x = box_w / static_cast<double>(out_w);
  const double step_y = box_h / static_cast<double>(out_h);
  ImageRGB out(out_h, out_w);
  for (std::size_t v = 0; v < out_h; ++v) {
    const double sy = std::clamp(y0 + (static_cast<double>(v) + 0.5) * step_y - 0.5, 0.0, max_y);
    for (std::size_t u = 0; u < out_w; ++u) {
      const double sx = std::clamp(x0 + (static_cast<double>(u) + 0.5) * step_x - 0.5, 0.0, max_x);
      sample(img, sx, sy, &out.at(v, u, 0));
    }
  }
  return out;
}

ImageRGB resize(const ImageRGB& img, std::size_t out_h, std::size_t out_w) {
  if (out_h == img.height() && out_w == img.width()) return img;
  return crop_resize(img, 0.0, 0.0, static_cast<double>(img.width()),
                     static_cast<double>(img.height()), out_h, out_w);
}

}  // namespace orbitpool
