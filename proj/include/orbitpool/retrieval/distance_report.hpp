#pragma once

#include <span>
#include <string>
#include <vector>

#include "orbitpool/core/tensor.hpp"
#include "orbitpool/pooling/sequence.hpp"

namespace orbitpool {

struct DistanceRow {
  std::string pair_id;
  std::string sequence;  // grammar text, "raw" for the empty sequence
  double distance;
};

/// For every sequence, the Euclidean distance between the L2-normalized
/// descriptors of the two orbits.
std::vector<DistanceRow> pairwise_distance_report(const std::string& pair_id,
                                                  const FeatureOrbitTensor& a,
                                                  const FeatureOrbitTensor& b,
                                                  std::span<const PoolingSequence> sequences);

/// CSV with header `pair_id,sequence,distance`; fields containing commas or
/// quotes are double-quoted.
std::string distance_report_csv(std::span<const DistanceRow> rows);

}  // namespace orbitpool
