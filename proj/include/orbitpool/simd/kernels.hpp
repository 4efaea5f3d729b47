#pragma once

// Data-parallel inner loops of the library. Every kernel has a scalar
// reference implementation; vector backends (AVX2 on x86-64, NEON on
// AArch64) are compiled in separate translation units and selected once at
// runtime from CPU feature bits.
//
// Equivalence contract with the scalar reference:
//   reduce_fibers, threshold_bits, accumulate_rows, conv2d_same, xor_popcount
//     bit-identical (vectorized across independent outputs; each output keeps
//     the scalar summation order and no FMA contraction is used)
//   squared_distance, squared_norm
//     equal within floating-point reassociation (lane-parallel partial sums)

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "orbitpool/pooling/moment.hpp"

namespace orbitpool::simd {

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend backend) noexcept;

struct Kernels {
  Backend backend;

  /// dst[o*inner + i] = moment over k < n of src[(o*n + k)*inner + i].
  /// Sums accumulate in double, left to right over k. STD is the population
  /// standard deviation computed in centered two-pass form.
  void (*reduce_fibers)(const float* src, std::size_t outer, std::size_t n, std::size_t inner,
                        Moment moment, float* dst);

  /// Sum of squared differences, accumulated in double.
  double (*squared_distance)(const float* a, const float* b, std::size_t n);
  double (*squared_norm)(const float* a, std::size_t n);

  /// popcount(a XOR b) over n_words 64-bit words (8 bytes each).
  std::uint64_t (*xor_popcount)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n_words);

  /// Writes ceil(n/8) bytes: bit i = values[i] > thresholds[i], little-endian
  /// within each byte; pad bits of the last byte are zero.
  void (*threshold_bits)(const float* values, const float* thresholds, std::size_t n,
                         std::uint8_t* out);

  /// acc[i] += row[i] in double.
  void (*accumulate_rows)(double* acc, const float* row, std::size_t n);

  /// Stride-1 "valid" correlation over a pre-padded input.
  /// padded: in_ch x (height+k-1) x (width+k-1); weights: out_ch x in_ch x k x k;
  /// out: out_ch x height x width. Per output the taps are summed in
  /// (in_ch, ky, kx) order starting from 0.
  void (*conv2d_same)(const float* padded, std::size_t in_ch, std::size_t height,
                      std::size_t width, std::size_t k, const float* weights, std::size_t out_ch,
                      float* out);
};

const Kernels& scalar_kernels() noexcept;

/// Backends compiled into this binary and supported by the running CPU,
/// scalar first.
std::span<const Kernels* const> available_backends() noexcept;

/// Kernels used by the library. Picks the widest supported backend; the
/// environment variable ORBITPOOL_SIMD=scalar|avx2|neon forces a choice
/// (ignored if that backend is unavailable).
const Kernels& active() noexcept;

}  // namespace orbitpool::simd
