#include <cstdlib>
#include <string_view>
#include <vector>

#include "kernels_impl.hpp"

namespace orbitpool::simd {

std::string_view backend_name(Backend backend) noexcept {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

namespace {

#define ORBITPOOL_KERNEL_TABLE(ns, tag)                                                      \
  Kernels {                                                                                  \
    tag, &ns::reduce_fibers, &ns::squared_distance, &ns::squared_norm, &ns::xor_popcount,    \
        &ns::threshold_bits, &ns::accumulate_rows, &ns::conv2d_same                          \
  }

const Kernels kScalar = ORBITPOOL_KERNEL_TABLE(scalar, Backend::scalar);
#if defined(ORBITPOOL_HAVE_AVX2)
const Kernels kAvx2 = ORBITPOOL_KERNEL_TABLE(avx2, Backend::avx2);
#endif
#if defined(ORBITPOOL_HAVE_NEON)
const Kernels kNeon = ORBITPOOL_KERNEL_TABLE(neon, Backend::neon);
#endif

#undef ORBITPOOL_KERNEL_TABLE

std::vector<const Kernels*> detect() {
  std::vector<const Kernels*> found{&kScalar};
#if defined(ORBITPOOL_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt")) found.push_back(&kAvx2);
#endif
#if defined(ORBITPOOL_HAVE_NEON)
  found.push_back(&kNeon);
#endif
  return found;
}

const std::vector<const Kernels*>& backends() {
  static const std::vector<const Kernels*> list = detect();
  return list;
}

const Kernels& choose() {
  const auto& list = backends();
  if (const char* forced = std::getenv("ORBITPOOL_SIMD")) {
    for (const Kernels* k : list) {
      if (backend_name(k->backend) == forced) return *k;
    }
  }
  return *list.back();
}

}  // namespace

const Kernels& scalar_kernels() noexcept { return kScalar; }

std::span<const Kernels* const> available_backends() noexcept { return backends(); }

const Kernels& active() noexcept {
  static const Kernels& chosen = choose();
  return chosen;
}

}  // namespace orbitpool::simd
