#include "orbitpool/hashing/hashing.hpp"

#include "orbitpool/error.hpp"
#include "orbitpool/simd/kernels.hpp"

namespace orbitpool {

ThresholdVector fit_thresholds(std::span<const Descriptor> database, std::string source) {
  if (database.empty()) throw InvalidArgument("fit_thresholds: empty database");
  const std::size_t dims = database.front().dims();
  const auto& k = simd::active();
  std::vector<double> sums(dims, 0.0);
  for (const Descriptor& d : database) {
    if (d.dims() != dims) throw DimensionMismatch("fit_thresholds: mixed dims", d.dims(), dims);
    k.accumulate_rows(sums.data(), d.values.data(), dims);
  }
  ThresholdVector t{std::vector<float>(dims), std::move(source)};
  const double n = static_cast<double>(database.size());
  for (std::size_t i = 0; i < dims; ++i) t.thresholds[i] = static_cast<float>(sums[i] / n);
  return t;
}

BinaryHash binarize(const Descriptor& d, const ThresholdVector& t) {
  if (d.dims() != t.dims()) throw DimensionMismatch("binarize", d.dims(), t.dims());
  BinaryHash h(d.dims());
  simd::active().threshold_bits(d.values.data(), t.thresholds.data(), d.dims(), h.mutable_words());
  return h;
}

}  // namespace orbitpool
