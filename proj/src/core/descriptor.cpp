#include "orbitpool/core/descriptor.hpp"

#include <cmath>

#include "orbitpool/error.hpp"
#include "orbitpool/simd/kernels.hpp"

namespace orbitpool {

Descriptor l2_normalize(const Descriptor& d) {
  if (d.dims() == 0) throw InvalidArgument("l2_normalize: empty descriptor");
  const double norm = std::sqrt(simd::active().squared_norm(d.values.data(), d.dims()));
  Descriptor out = d;
  if (norm == 0.0) {
    out.normalized = false;
    return out;
  }
  for (float& v : out.values) v = static_cast<float>(static_cast<double>(v) / norm);
  out.normalized = true;
  return out;
}

double euclidean_distance(const Descriptor& a, const Descriptor& b) {
  if (a.dims() != b.dims()) throw DimensionMismatch("euclidean_distance", a.dims(), b.dims());
  return std::sqrt(simd::active().squared_distance(a.values.data(), b.values.data(), a.dims()));
}

}  // namespace orbitpool
