#pragma once

// Per-backend kernel entry points. Only the dispatcher and the backend
// translation units include this header.

#include "orbitpool/simd/kernels.hpp"

#define ORBITPOOL_DECLARE_KERNELS                                                                \
  void reduce_fibers(const float* src, std::size_t outer, std::size_t n, std::size_t inner,     \
                     Moment moment, float* dst);                                                 \
  double squared_distance(const float* a, const float* b, std::size_t n);                       \
  double squared_norm(const float* a, std::size_t n);                                           \
  std::uint64_t xor_popcount(const std::uint8_t* a, const std::uint8_t* b, std::size_t n_words); \
  void threshold_bits(const float* values, const float* thresholds, std::size_t n,              \
                      std::uint8_t* out);                                                        \
  void accumulate_rows(double* acc, const float* row, std::size_t n);                           \
  void conv2d_same(const float* padded, std::size_t in_ch, std::size_t height,                  \
                   std::size_t width, std::size_t k, const float* weights, std::size_t out_ch,  \
                   float* out);

namespace orbitpool::simd {
namespace scalar {
ORBITPOOL_DECLARE_KERNELS
/// Moment over n samples p[0], p[stride], ... with the reference semantics
/// every backend must reproduce bit for bit.
float reduce_fiber(const float* p, std::size_t stride, std::size_t n, Moment moment);
}
namespace avx2 {
ORBITPOOL_DECLARE_KERNELS
}
namespace neon {
ORBITPOOL_DECLARE_KERNELS
}
}  // namespace orbitpool::simd

#undef ORBITPOOL_DECLARE_KERNELS
