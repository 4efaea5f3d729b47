#include "orbitpool/pooling/pooling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orbitpool/error.hpp"
#include "orbitpool/simd/kernels.hpp"

namespace orbitpool {

double moment_reduce(std::span<const double> samples, Moment moment) {
  if (samples.empty()) throw InvalidArgument("moment_reduce: empty sample set");
  const double n = static_cast<double>(samples.size());
  switch (moment) {
    case Moment::average: {
      double sum = 0.0;
      for (double v : samples) sum += v;
      return sum / n;
    }
    case Moment::max:
      return *std::max_element(samples.begin(), samples.end());
    case Moment::std_dev: {
      const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
      if (*lo == *hi) return 0.0;
      double sum = 0.0;
      for (double v : samples) sum += v;
      const double mean = sum / n;
      double sq = 0.0;
      for (double v : samples) sq += (v - mean) * (v - mean);
      return std::sqrt(std::max(sq / n, 0.0));
    }
  }
  return 0.0;
}

FeatureOrbitTensor pool_axis(const FeatureOrbitTensor& t, Axis axis, Moment moment) {
  if (t.consumed().has(axis)) {
    throw InvalidArgument("pool_axis: axis \"" + std::string(axis_token(axis)) +
                          "\" already pooled");
  }
  const TensorShape& s = t.shape();
  TensorShape out_shape = s;
  std::size_t outer = 0;
  std::size_t n = 0;
  std::size_t inner = 0;
  switch (axis) {
    case Axis::rotation:
      outer = 1;
      n = s.n_rot;
      inner = s.n_scale * s.channels * s.spatial();
      out_shape.n_rot = 1;
      break;
    case Axis::scale:
      outer = s.n_rot;
      n = s.n_scale;
      inner = s.channels * s.spatial();
      out_shape.n_scale = 1;
      break;
    case Axis::translation:
      outer = s.n_rot * s.n_scale * s.channels;
      n = s.spatial();
      inner = 1;
      out_shape.height = 1;
      out_shape.width = 1;
      break;
  }
  std::vector<float> out(out_shape.size());
  simd::active().reduce_fibers(t.data().data(), outer, n, inner, moment, out.data());
  ConsumedAxes consumed = t.consumed();
  consumed.set(axis);
  return FeatureOrbitTensor(out_shape, std::move(out), t.presence(), consumed);
}

std::string descriptor_tag(const PoolingSequence& seq) {
  return (seq.empty() ? std::string("raw") : seq.str()) + "|flatten=r,s,c,h,w";
}

Descriptor apply_sequence(const FeatureOrbitTensor& t, const PoolingSequence& seq) {
  for (const PoolingStep& step : seq.steps()) {
    const bool generated = step.axis == Axis::rotation ? t.presence().rotation
                           : step.axis == Axis::scale  ? t.presence().scale
                                                       : true;
    if (!generated) {
      throw InvalidArgument("apply_sequence: axis not generated: \"" +
                            std::string(axis_token(step.axis)) +
                            "\" was disabled during orbit generation");
    }
  }
  if (seq.empty()) {
    return Descriptor{std::vector<float>(t.data().begin(), t.data().end()), descriptor_tag(seq),
                      false};
  }
  FeatureOrbitTensor current = pool_axis(t, seq.steps().front().axis, seq.steps().front().moment);
  for (std::size_t i = 1; i < seq.steps().size(); ++i) {
    current = pool_axis(current, seq.steps()[i].axis, seq.steps()[i].moment);
  }
  return Descriptor{std::move(current).release(), descriptor_tag(seq), false};
}

}  // namespace orbitpool
