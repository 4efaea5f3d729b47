#include "orbitpool/core/tensor.hpp"

#include <cmath>
#include <string>

#include "orbitpool/error.hpp"

namespace orbitpool {

std::string_view axis_token(Axis axis) noexcept {
  switch (axis) {
    case Axis::rotation: return "rot";
    case Axis::scale: return "scale";
    case Axis::translation: return "trans";
  }
  return "?";
}

bool ConsumedAxes::has(Axis axis) const noexcept {
  switch (axis) {
    case Axis::rotation: return rotation;
    case Axis::scale: return scale;
    case Axis::translation: return translation;
  }
  return false;
}

void ConsumedAxes::set(Axis axis) noexcept {
  switch (axis) {
    case Axis::rotation: rotation = true; break;
    case Axis::scale: scale = true; break;
    case Axis::translation: translation = true; break;
  }
}

FeatureOrbitTensor::FeatureOrbitTensor(TensorShape shape, std::vector<float> data,
                                       AxisPresence presence, ConsumedAxes consumed)
    : shape_(shape), presence_(presence), consumed_(consumed), data_(std::move(data)) {
  if (shape_.n_rot == 0 || shape_.n_scale == 0 || shape_.channels == 0 || shape_.height == 0 ||
      shape_.width == 0) {
    throw InvalidArgument("FeatureOrbitTensor: every axis must have extent >= 1");
  }
  if (!presence_.rotation && shape_.n_rot != 1) {
    throw InvalidArgument("FeatureOrbitTensor: rotation axis not generated but n_rot = " +
                          std::to_string(shape_.n_rot));
  }
  if (!presence_.scale && shape_.n_scale != 1) {
    throw InvalidArgument("FeatureOrbitTensor: scale axis not generated but n_scale = " +
                          std::to_string(shape_.n_scale));
  }
  if (data_.size() != shape_.size()) {
    throw DimensionMismatch("FeatureOrbitTensor: element count vs shape", data_.size(),
                            shape_.size());
  }
  for (float v : data_) {
    if (!std::isfinite(v)) throw InvalidArgument("FeatureOrbitTensor: non-finite value");
  }
}

std::span<const float> FeatureOrbitTensor::element(std::size_t r, std::size_t s) const {
  if (r >= shape_.n_rot || s >= shape_.n_scale) {
    throw InvalidArgument("FeatureOrbitTensor::element: index out of range");
  }
  const std::size_t n = shape_.channels * shape_.spatial();
  return std::span<const float>(data_).subspan((r * shape_.n_scale + s) * n, n);
}

}  // namespace orbitpool
