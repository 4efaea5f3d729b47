#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace orbitpool {

/// Orbit axes a feature tensor can be pooled over. Translation stands for
/// the flattened height x width grid of the feature map.
enum class Axis { rotation, scale, translation };

std::string_view axis_token(Axis axis) noexcept;

/// Extents of a (rotation, scale, channel, row, column) feature stack.
struct TensorShape {
  std::size_t n_rot = 1;
  std::size_t n_scale = 1;
  std::size_t channels = 1;
  std::size_t height = 1;
  std::size_t width = 1;

  std::size_t size() const noexcept { return n_rot * n_scale * channels * height * width; }
  std::size_t spatial() const noexcept { return height * width; }

  friend bool operator==(const TensorShape&, const TensorShape&) = default;
};

/// Which orbit axes were produced by orbit generation. An axis that was not
/// generated has extent 1 and holds the identity element only.
struct AxisPresence {
  bool rotation = false;
  bool scale = false;

  friend bool operator==(const AxisPresence&, const AxisPresence&) = default;
};

/// Axes already collapsed by pooling.
struct ConsumedAxes {
  bool rotation = false;
  bool scale = false;
  bool translation = false;

  bool has(Axis axis) const noexcept;
  void set(Axis axis) noexcept;

  friend bool operator==(const ConsumedAxes&, const ConsumedAxes&) = default;
};

/// Dense float32 stack of feature maps over an image orbit, stored in
/// (r, s, c, h, w) order with w fastest. Immutable after construction;
/// every value is finite.
class FeatureOrbitTensor {
 public:
  FeatureOrbitTensor(TensorShape shape, std::vector<float> data, AxisPresence presence = {},
                     ConsumedAxes consumed = {});

  const TensorShape& shape() const noexcept { return shape_; }
  const AxisPresence& presence() const noexcept { return presence_; }
  const ConsumedAxes& consumed() const noexcept { return consumed_; }
  std::span<const float> data() const noexcept { return data_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::size_t offset(std::size_t r, std::size_t s, std::size_t c, std::size_t h,
                     std::size_t w) const noexcept {
    return (((r * shape_.n_scale + s) * shape_.channels + c) * shape_.height + h) * shape_.width + w;
  }
  float at(std::size_t r, std::size_t s, std::size_t c, std::size_t h, std::size_t w) const {
    return data_[offset(r, s, c, h, w)];
  }

  /// Feature map (c, h, w) for one orbit element.
  std::span<const float> element(std::size_t r, std::size_t s) const;

  std::vector<float> release() && { return std::move(data_); }

 private:
  TensorShape shape_;
  AxisPresence presence_;
  ConsumedAxes consumed_;
  std::vector<float> data_;
};

}  // namespace orbitpool
