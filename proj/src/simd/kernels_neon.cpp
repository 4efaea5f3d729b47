// NEON kernels for AArch64, where Advanced SIMD is architecturally required.

#include <arm_neon.h>

#include <cstring>

#include "kernels_impl.hpp"

namespace orbitpool::simd::neon {

namespace {

// Two float64x2 halves of four fibers. load(k) yields the k-th sample of
// each fiber; arithmetic mirrors scalar::reduce_fiber lane by lane.
template <class Load>
inline float32x4_t reduce4(Load load, std::size_t n, Moment moment) {
  const float64x2_t count = vdupq_n_f64(static_cast<double>(n));
  switch (moment) {
    case Moment::average: {
      float64x2_t lo = vdupq_n_f64(0.0);
      float64x2_t hi = vdupq_n_f64(0.0);
      for (std::size_t k = 0; k < n; ++k) {
        const float32x4_t v = load(k);
        lo = vaddq_f64(lo, vcvt_f64_f32(vget_low_f32(v)));
        hi = vaddq_f64(hi, vcvt_high_f64_f32(v));
      }
      return vcombine_f32(vcvt_f32_f64(vdivq_f64(lo, count)), vcvt_f32_f64(vdivq_f64(hi, count)));
    }
    case Moment::max: {
      float32x4_t m = load(0);
      for (std::size_t k = 1; k < n; ++k) {
        const float32x4_t v = load(k);
        m = vbslq_f32(vcgtq_f32(m, v), m, v);
      }
      return m;
    }
    case Moment::std_dev: {
      float64x2_t lo = vdupq_n_f64(0.0);
      float64x2_t hi = vdupq_n_f64(0.0);
      for (std::size_t k = 0; k < n; ++k) {
        const float32x4_t v = load(k);
        lo = vaddq_f64(lo, vcvt_f64_f32(vget_low_f32(v)));
        hi = vaddq_f64(hi, vcvt_high_f64_f32(v));
      }
      const float64x2_t mean_lo = vdivq_f64(lo, count);
      const float64x2_t mean_hi = vdivq_f64(hi, count);
      float64x2_t sq_lo = vdupq_n_f64(0.0);
      float64x2_t sq_hi = vdupq_n_f64(0.0);
      for (std::size_t k = 0; k < n; ++k) {
        const float32x4_t v = load(k);
        const float64x2_t d_lo = vsubq_f64(vcvt_f64_f32(vget_low_f32(v)), mean_lo);
        const float64x2_t d_hi = vsubq_f64(vcvt_high_f64_f32(v), mean_hi);
        sq_lo = vaddq_f64(sq_lo, vmulq_f64(d_lo, d_lo));
        sq_hi = vaddq_f64(sq_hi, vmulq_f64(d_hi, d_hi));
      }
      const float64x2_t zero = vdupq_n_f64(0.0);
      float64x2_t var_lo = vdivq_f64(sq_lo, count);
      float64x2_t var_hi = vdivq_f64(sq_hi, count);
      var_lo = vbslq_f64(vcgtq_f64(var_lo, zero), var_lo, zero);
      var_hi = vbslq_f64(vcgtq_f64(var_hi, zero), var_hi, zero);
      return vcombine_f32(vcvt_f32_f64(vsqrtq_f64(var_lo)), vcvt_f32_f64(vsqrtq_f64(var_hi)));
    }
  }
  return vdupq_n_f32(0.0f);
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
        const float32x4_t r =
            reduce4([&](std::size_t k) { return vld1q_f32(base + k * inner + i); }, n, moment);
        vst1q_f32(dst + o * inner + i, r);
      }
      for (; i < inner; ++i) dst[o * inner + i] = scalar::reduce_fiber(base + i, inner, n, moment);
    }
    return;
  }

  const std::size_t block = n * inner;
  for (std::size_t i = 0; i < inner; ++i) {
    std::size_t o = 0;
    for (; o + 4 <= outer; o += 4) {
      const float* base = src + o * block + i;
      const float32x4_t r = reduce4(
          [&](std::size_t k) {
            const float* p = base + k * inner;
            const float lanes[4] = {p[0], p[block], p[2 * block], p[3 * block]};
            return vld1q_f32(lanes);
          },
          n, moment);
      float lanes[4];
      vst1q_f32(lanes, r);
      for (std::size_t j = 0; j < 4; ++j) dst[(o + j) * inner + i] = lanes[j];
    }
    for (; o < outer; ++o) {
      dst[o * inner + i] = scalar::reduce_fiber(src + o * block + i, inner, n, moment);
    }
  }
}

double squared_distance(const float* a, const float* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t va = vld1q_f32(a + i);
    const float32x4_t vb = vld1q_f32(b + i);
    const float64x2_t d0 = vsubq_f64(vcvt_f64_f32(vget_low_f32(va)), vcvt_f64_f32(vget_low_f32(vb)));
    const float64x2_t d1 = vsubq_f64(vcvt_high_f64_f32(va), vcvt_high_f64_f32(vb));
    acc0 = vaddq_f64(acc0, vmulq_f64(d0, d0));
    acc1 = vaddq_f64(acc1, vmulq_f64(d1, d1));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return sum;
}

double squared_norm(const float* a, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t va = vld1q_f32(a + i);
    const float64x2_t v0 = vcvt_f64_f32(vget_low_f32(va));
    const float64x2_t v1 = vcvt_high_f64_f32(va);
    acc0 = vaddq_f64(acc0, vmulq_f64(v0, v0));
    acc1 = vaddq_f64(acc1, vmulq_f64(v1, v1));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) {
    const double v = a[i];
    sum += v * v;
  }
  return sum;
}

std::uint64_t xor_popcount(const std::uint8_t* a, const std::uint8_t* b, std::size_t n_words) {
  std::uint64_t count = 0;
  std::size_t w = 0;
  for (; w + 2 <= n_words; w += 2) {
    const uint8x16_t x = veorq_u8(vld1q_u8(a + 8 * w), vld1q_u8(b + 8 * w));
    count += vaddvq_u8(vcntq_u8(x));
  }
  for (; w < n_words; ++w) {
    const uint8x8_t x = veor_u8(vld1_u8(a + 8 * w), vld1_u8(b + 8 * w));
    count += vaddv_u8(vcnt_u8(x));
  }
  return count;
}

void threshold_bits(const float* values, const float* thresholds, std::size_t n,
                    std::uint8_t* out) {
  static const std::uint32_t weights_lo[4] = {1u, 2u, 4u, 8u};
  static const std::uint32_t weights_hi[4] = {16u, 32u, 64u, 128u};
  const uint32x4_t wlo = vld1q_u32(weights_lo);
  const uint32x4_t whi = vld1q_u32(weights_hi);
  std::size_t j = 0;
  for (; 8 * j + 8 <= n; ++j) {
    const uint32x4_t g0 = vcgtq_f32(vld1q_f32(values + 8 * j), vld1q_f32(thresholds + 8 * j));
    const uint32x4_t g1 =
        vcgtq_f32(vld1q_f32(values + 8 * j + 4), vld1q_f32(thresholds + 8 * j + 4));
    out[j] = static_cast<std::uint8_t>(vaddvq_u32(vandq_u32(g0, wlo)) + vaddvq_u32(vandq_u32(g1, whi)));
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
    const float32x4_t v = vld1q_f32(row + i);
    vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vcvt_f64_f32(vget_low_f32(v))));
    vst1q_f64(acc + i + 2, vaddq_f64(vld1q_f64(acc + i + 2), vcvt_high_f64_f32(v)));
  }
  for (; i < n; ++i) acc[i] += static_cast<double>(row[i]);
}

void conv2d_same(const float* padded, std::size_t in_ch, std::size_t height, std::size_t width,
                 std::size_t k, const float* weights, std::size_t out_ch, float* out) {
  const std::size_t pw = width + k - 1;
  const std::size_t plane = (height + k - 1) * pw;
  for (std::size_t oc = 0; oc < out_ch; ++oc) {
    const float* wo = weights + oc * in_ch * k * k;
    for (std::size_t y = 0; y < height; ++y) {
      float* row = out + (oc * height + y) * width;
      std::size_t x = 0;
      for (; x + 4 <= width; x += 4) {
        float32x4_t acc = vdupq_n_f32(0.0f);
        for (std::size_t ic = 0; ic < in_ch; ++ic) {
          const float* in = padded + ic * plane + y * pw + x;
          const float* wk = wo + ic * k * k;
          for (std::size_t ky = 0; ky < k; ++ky) {
            for (std::size_t kx = 0; kx < k; ++kx) {
              // vmulq + vaddq, not vfmaq: rounding must match the scalar path.
              acc = vaddq_f32(acc, vmulq_n_f32(vld1q_f32(in + ky * pw + kx), wk[ky * k + kx]));
            }
          }
        }
        vst1q_f32(row + x, acc);
      }
      for (; x < width; ++x) {
        float acc = 0.0f;
        for (std::size_t ic = 0; ic < in_ch; ++ic) {
          const float* in = padded + ic * plane + y * pw + x;
          const float* wk = wo + ic * k * k;
          for (std::size_t ky = 0; ky < k; ++ky) {
            for (std::size_t kx = 0; kx < k; ++kx) {
              const float prod = wk[ky * k + kx] * in[ky * pw + kx];
              acc = acc + prod;
            }
          }
        }
        row[x] = acc;
      }
    }
  }
}

}  // namespace orbitpool::simd::neon
