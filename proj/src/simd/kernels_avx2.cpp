// AVX2 kernels. Compiled with -mavx2 -mpopcnt; only reached after the
// dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <bit>
#include <cstring>
#include <limits>

#include "kernels_impl.hpp"

namespace orbitpool::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Four independent fibers reduced side by side. load(k) yields the k-th
// sample of each fiber. Lane arithmetic mirrors scalar::reduce_fiber.
template <class Load>
inline __m128 reduce4(Load load, std::size_t n, Moment moment) {
  const __m256d count = _mm256_set1_pd(static_cast<double>(n));
  switch (moment) {
    case Moment::average: {
      __m256d sum = _mm256_setzero_pd();
      for (std::size_t k = 0; k < n; ++k) sum = _mm256_add_pd(sum, _mm256_cvtps_pd(load(k)));
      return _mm256_cvtpd_ps(_mm256_div_pd(sum, count));
    }
    case Moment::max: {
      __m128 m = load(0);
      for (std::size_t k = 1; k < n; ++k) m = _mm_max_ps(m, load(k));
      return m;
    }
    case Moment::std_dev: {
      __m256d sum = _mm256_setzero_pd();
      for (std::size_t k = 0; k < n; ++k) sum = _mm256_add_pd(sum, _mm256_cvtps_pd(load(k)));
      const __m256d mean = _mm256_div_pd(sum, count);
      __m256d sq = _mm256_setzero_pd();
      for (std::size_t k = 0; k < n; ++k) {
        const __m256d d = _mm256_sub_pd(_mm256_cvtps_pd(load(k)), mean);
        sq = _mm256_add_pd(sq, _mm256_mul_pd(d, d));
      }
      const __m256d var = _mm256_max_pd(_mm256_div_pd(sq, count), _mm256_setzero_pd());
      return _mm256_cvtpd_ps(_mm256_sqrt_pd(var));
    }
  }
  return _mm_setzero_ps();
}

// Lane mask selecting the first `count` of 8 floats.
inline __m256i tail_mask(std::size_t count) {
  alignas(32) static const std::int32_t table[16] = {-1, -1, -1, -1, -1, -1, -1, -1,
                                                     0,  0,  0,  0,  0,  0,  0,  0};
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(table + 8 - count));
}

}  // namespace

void reduce_fibers(const float* src, std::size_t outer, std::size_t n, std::size_t inner,
                   Moment moment, float* dst) {
  if (n == 0) return;
  if (inner >= 4) {
    for (std::size_t o = 0; o < outer; ++o) {
      const float* base = src + o * n * inner;
      std::size_t i = 0;
      for (; i + 4 <= inner; i += 4) {
        const __m128 r = reduce4([&](std::size_t k) { return _mm_loadu_ps(base + k * inner + i); },
                                 n, moment);
        _mm_storeu_ps(dst + o * inner + i, r);
      }
      for (; i < inner; ++i) dst[o * inner + i] = scalar::reduce_fiber(base + i, inner, n, moment);
    }
    return;
  }

  // Short inner extent (translation pooling has inner == 1): gather across
  // four neighbouring outer blocks instead.
  const std::size_t block = n * inner;
  if (3 * block > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    scalar::reduce_fibers(src, outer, n, inner, moment, dst);
    return;
  }
  const int b = static_cast<int>(block);
  const __m128i vindex = _mm_setr_epi32(0, b, 2 * b, 3 * b);
  for (std::size_t i = 0; i < inner; ++i) {
    std::size_t o = 0;
    for (; o + 4 <= outer; o += 4) {
      const float* base = src + o * block + i;
      const __m128 r = reduce4(
          [&](std::size_t k) { return _mm_i32gather_ps(base + k * inner, vindex, 4); }, n, moment);
      alignas(16) float lanes[4];
      _mm_store_ps(lanes, r);
      for (std::size_t j = 0; j < 4; ++j) dst[(o + j) * inner + i] = lanes[j];
    }
    for (; o < outer; ++o) {
      dst[o * inner + i] = scalar::reduce_fiber(src + o * block + i, inner, n, moment);
    }
  }
}

double squared_distance(const float* a, const float* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 va = _mm256_loadu_ps(a + i);
    const __m256 vb = _mm256_loadu_ps(b + i);
    const __m256d d0 = _mm256_sub_pd(_mm256_cvtps_pd(_mm256_castps256_ps128(va)),
                                     _mm256_cvtps_pd(_mm256_castps256_ps128(vb)));
    const __m256d d1 = _mm256_sub_pd(_mm256_cvtps_pd(_mm256_extractf128_ps(va, 1)),
                                     _mm256_cvtps_pd(_mm256_extractf128_ps(vb, 1)));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return sum;
}

double squared_norm(const float* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 va = _mm256_loadu_ps(a + i);
    const __m256d v0 = _mm256_cvtps_pd(_mm256_castps256_ps128(va));
    const __m256d v1 = _mm256_cvtps_pd(_mm256_extractf128_ps(va, 1));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(v0, v0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(v1, v1));
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double v = a[i];
    sum += v * v;
  }
  return sum;
}

std::uint64_t xor_popcount(const std::uint8_t* a, const std::uint8_t* b, std::size_t n_words) {
  // Nibble lookup popcount, bytes summed into 64-bit lanes with SAD.
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t w = 0;
  for (; w + 4 <= n_words; w += 4) {
    const __m256i x = _mm256_xor_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + 8 * w)),
                                       _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + 8 * w)));
    const __m256i lo = _mm256_and_si256(x, low);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(x, 4), low);
    const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t count = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; w < n_words; ++w) {
    std::uint64_t x;
    std::uint64_t y;
    std::memcpy(&x, a + 8 * w, 8);
    std::memcpy(&y, b + 8 * w, 8);
    count += static_cast<std::uint64_t>(_mm_popcnt_u64(x ^ y));
  }
  return count;
}

void threshold_bits(const float* values, const float* thresholds, std::size_t n,
                    std::uint8_t* out) {
  std::size_t j = 0;
  for (; 8 * j + 8 <= n; ++j) {
    const __m256 gt = _mm256_cmp_ps(_mm256_loadu_ps(values + 8 * j),
                                    _mm256_loadu_ps(thresholds + 8 * j), _CMP_GT_OQ);
    out[j] = static_cast<std::uint8_t>(_mm256_movemask_ps(gt));
  }
  if (8 * j < n) {
    std::uint8_t byte = 0;
    for (std::size_t i = 8 * j; i < n; ++i) {
      if (values[i] > thresholds[i]) byte |= static_cast<std::uint8_t>(1u << (i - 8 * j));
    }
    out[j] = byte;
  }
}

void accumulate_rows(double* acc, const float* row, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i),
                                            _mm256_cvtps_pd(_mm_loadu_ps(row + i))));
  }
  for (; i < n; ++i) acc[i] += static_cast<double>(row[i]);
}

void conv2d_same(const float* padded, std::size_t in_ch, std::size_t height, std::size_t width,
                 std::size_t k, const float* weights, std::size_t out_ch, float* out) {
  const std::size_t pw = width + k - 1;
  const std::size_t plane = (height + k - 1) * pw;
  const std::size_t rem = width % 8;
  const __m256i mask = tail_mask(rem);
  for (std::size_t oc = 0; oc < out_ch; ++oc) {
    const float* wo = weights + oc * in_ch * k * k;
    for (std::size_t y = 0; y < height; ++y) {
      float* row = out + (oc * height + y) * width;
      std::size_t x = 0;
      for (; x + 8 <= width; x += 8) {
        __m256 acc = _mm256_setzero_ps();
        for (std::size_t ic = 0; ic < in_ch; ++ic) {
          const float* in = padded + ic * plane + y * pw + x;
          const float* wk = wo + ic * k * k;
          for (std::size_t ky = 0; ky < k; ++ky) {
            for (std::size_t kx = 0; kx < k; ++kx) {
              const __m256 v = _mm256_loadu_ps(in + ky * pw + kx);
              acc = _mm256_add_ps(acc, _mm256_mul_ps(_mm256_set1_ps(wk[ky * k + kx]), v));
            }
          }
        }
        _mm256_storeu_ps(row + x, acc);
      }
      if (rem != 0) {
        __m256 acc = _mm256_setzero_ps();
        for (std::size_t ic = 0; ic < in_ch; ++ic) {
          const float* in = padded + ic * plane + y * pw + x;
          const float* wk = wo + ic * k * k;
          for (std::size_t ky = 0; ky < k; ++ky) {
            for (std::size_t kx = 0; kx < k; ++kx) {
              const __m256 v = _mm256_maskload_ps(in + ky * pw + kx, mask);
              acc = _mm256_add_ps(acc, _mm256_mul_ps(_mm256_set1_ps(wk[ky * k + kx]), v));
            }
          }
        }
        _mm256_maskstore_ps(row + x, mask, acc);
      }
    }
  }
}

}  // namespace orbitpool::simd::avx2
