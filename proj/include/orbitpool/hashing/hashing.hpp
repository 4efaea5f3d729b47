#pragma once

#include <span>
#include <string>
#include <vector>

#include "orbitpool/core/binary_hash.hpp"
#include "orbitpool/core/descriptor.hpp"

namespace orbitpool {

/// Per-dimension binarization thresholds.
struct ThresholdVector {
  std::vector<float> thresholds;
  /// Identifies the descriptor set the thresholds were fitted on.
  std::string source;

  std::size_t dims() const noexcept { return thresholds.size(); }
};

/// threshold_i = mean of dimension i over the database descriptors,
/// summed in double in list order. Throws on an empty list or mixed dims.
ThresholdVector fit_thresholds(std::span<const Descriptor> database, std::string source = {});

/// bit_i = d_i > t_i (ties give 0). Throws DimensionMismatch.
BinaryHash binarize(const Descriptor& d, const ThresholdVector& t);

}  // namespace orbitpool
