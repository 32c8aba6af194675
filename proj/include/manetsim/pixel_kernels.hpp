#pragma once

#include <cstddef>
#include <cstdint>

namespace manetsim {

// Plane-wide reductions used by the video pipeline, provided as scalar
// reference kernels plus SIMD variants selected at runtime. All kernels are
// exact integer arithmetic, so every variant must return identical results;
// the test suite enforces scalar/SIMD equivalence.

// sum p[i]
uint64_t sum_u8_scalar(const uint8_t* p, size_t n);
// sum |a[i] - b[i]|
uint64_t sad_u8_scalar(const uint8_t* a, const uint8_t* b, size_t n);
// sum (a[i] - b[i])^2
uint64_t ssd_u8_scalar(const uint8_t* a, const uint8_t* b, size_t n);
// sum |scale*p[i] - bias|, exact in 64-bit for scale*255 and bias < 2^31.
// With scale = n and bias = sum(p) this yields n^2 * meanAbsDev(p) exactly.
uint64_t scaled_absdev_u8_scalar(const uint8_t* p, size_t n, uint32_t scale, uint32_t bias);

struct PixelKernels {
  uint64_t (*sum_u8)(const uint8_t*, size_t);
  uint64_t (*sad_u8)(const uint8_t*, const uint8_t*, size_t);
  uint64_t (*ssd_u8)(const uint8_t*, const uint8_t*, size_t);
  uint64_t (*scaled_absdev_u8)(const uint8_t*, size_t, uint32_t, uint32_t);
  const char* name;
};

const PixelKernels& pixel_kernels_scalar();

// AVX2 variants; null when the build target or the running CPU lacks AVX2.
const PixelKernels* pixel_kernels_avx2();

// Best variant for this machine, chosen once. Set MANETSIM_NO_SIMD=1 in the
// environment to force the scalar path.
const PixelKernels& pixel_kernels();

}  // namespace manetsim
