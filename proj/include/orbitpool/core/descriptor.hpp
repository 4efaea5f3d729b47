#pragma once

#include <string>
#include <vector>

namespace orbitpool {

/// Global image descriptor: a flat float vector plus a tag recording the
/// pooling sequence and flattening order that produced it.
struct Descriptor {
  std::vector<float> values;
  std::string sequence_tag;
  bool normalized = false;

  std::size_t dims() const noexcept { return values.size(); }
};

/// Unit-norm copy of d. A zero vector is returned unchanged with
/// normalized = false so degenerate descriptors do not abort a batch.
Descriptor l2_normalize(const Descriptor& d);

/// ||a - b||_2, accumulated in double. Throws DimensionMismatch.
double euclidean_distance(const Descriptor& a, const Descriptor& b);

}  // namespace orbitpool
