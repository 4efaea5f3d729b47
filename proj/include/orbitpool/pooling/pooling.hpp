#pragma once

#include <span>

#include "orbitpool/core/descriptor.hpp"
#include "orbitpool/core/tensor.hpp"
#include "orbitpool/pooling/moment.hpp"
#include "orbitpool/pooling/sequence.hpp"

namespace orbitpool {

/// Mean, maximum or population standard deviation of a nonempty sample,
/// uniformly weighted. The deviation is sqrt(E[(f - E f)^2]), which equals
/// sqrt(E[f^2] - E[f]^2) and is exactly 0 for a constant sample.
double moment_reduce(std::span<const double> samples, Moment moment);

/// Collapses one orbit axis to extent 1 (translation collapses height and
/// width together). Throws InvalidArgument if the axis was already pooled.
FeatureOrbitTensor pool_axis(const FeatureOrbitTensor& t, Axis axis, Moment moment);

/// Applies the steps in order, then flattens the surviving axes in
/// (r, s, c, h, w) order. Throws InvalidArgument("axis not generated ...")
/// when a step names a rotation or scale axis the orbit does not have.
Descriptor apply_sequence(const FeatureOrbitTensor& t, const PoolingSequence& seq);

/// Tag stored with descriptors: "<sequence or raw>|flatten=r,s,c,h,w".
std::string descriptor_tag(const PoolingSequence& seq);

}  // namespace orbitpool
