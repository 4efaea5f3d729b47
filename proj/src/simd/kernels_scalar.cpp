#include <bit>
#include <cmath>
#include <cstring>

#include "kernels_impl.hpp"

namespace orbitpool::simd::scalar {

float reduce_fiber(const float* p, std::size_t stride, std::size_t n, Moment moment) {
  switch (moment) {
    case Moment::average: {
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += static_cast<double>(p[k * stride]);
      return static_cast<float>(sum / static_cast<double>(n));
    }
    case Moment::max: {
      float m = p[0];
      for (std::size_t k = 1; k < n; ++k) {
        const float v = p[k * stride];
        m = (m > v) ? m : v;
      }
      return m;
    }
    case Moment::std_dev: {
      const double count = static_cast<double>(n);
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += static_cast<double>(p[k * stride]);
      const double mean = sum / count;
      double sq = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double d = static_cast<double>(p[k * stride]) - mean;
        sq += d * d;
      }
      const double var = sq / count;
      return static_cast<float>(std::sqrt(var > 0.0 ? var : 0.0));
    }
  }
  return 0.0f;
}

void reduce_fibers(const float* src, std::size_t outer, std::size_t n, std::size_t inner,
                   Moment moment, float* dst) {
  for (std::size_t o = 0; o < outer; ++o) {
    const float* base = src + o * n * inner;
    for (std::size_t i = 0; i < inner; ++i) {
      dst[o * inner + i] = reduce_fiber(base + i, inner, n, moment);
    }
  }
}

double squared_distance(const float* a, const float* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return sum;
}

double squared_norm(const float* a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = a[i];
    sum += v * v;
  }
  return sum;
}

std::uint64_t xor_popcount(const std::uint8_t* a, const std::uint8_t* b, std::size_t n_words) {
  std::uint64_t count = 0;
  for (std::size_t w = 0; w < n_words; ++w) {
    std::uint64_t x;
    std::uint64_t y;
    std::memcpy(&x, a + 8 * w, 8);
    std::memcpy(&y, b + 8 * w, 8);
    count += static_cast<std::uint64_t>(std::popcount(x ^ y));
  }
  return count;
}

void threshold_bits(const float* values, const float* thresholds, std::size_t n,
                    std::uint8_t* out) {
  const std::size_t n_bytes = (n + 7) / 8;
  for (std::size_t j = 0; j < n_bytes; ++j) {
    std::uint8_t byte = 0;
    for (std::size_t bit = 0; bit < 8; ++bit) {
      const std::size_t i = 8 * j + bit;
      if (i < n && values[i] > thresholds[i]) byte |= static_cast<std::uint8_t>(1u << bit);
    }
    out[j] = byte;
  }
}

void accumulate_rows(double* acc, const float* row, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += static_cast<double>(row[i]);
}

void conv2d_same(const float* padded, std::size_t in_ch, std::size_t height, std::size_t width,
                 std::size_t k, const float* weights, std::size_t out_ch, float* out) {
  const std::size_t pw = width + k - 1;
  const std::size_t plane = (height + k - 1) * pw;
  for (std::size_t oc = 0; oc < out_ch; ++oc) {
    const float* wo = weights + oc * in_ch * k * k;
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t x = 0; x < width; ++x) {
        float acc = 0.0f;
        for (std::size_t ic = 0; ic < in_ch; ++ic) {
          const float* in = padded + ic * plane;
          const float* wk = wo + ic * k * k;
          for (std::size_t ky = 0; ky < k; ++ky) {
            for (std::size_t kx = 0; kx < k; ++kx) {
              const float prod = wk[ky * k + kx] * in[(y + ky) * pw + x + kx];
              acc = acc + prod;
            }
          }
        }
        out[(oc * height + y) * width + x] = acc;
      }
    }
  }
}

}  // namespace orbitpool::simd::scalar
