#include "manetsim/pixel_kernels.hpp"

// AVX2 variants of the plane reductions. This translation unit is compiled
// with -mavx2; the dispatcher only hands these out after a cpuid check.

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace manetsim {
namespace {

uint64_t hsum_epi64(__m256i v) {
  __m128i lo = _mm256_castsi256_si128(v);
  __m128i hi = _mm256_extracti128_si256(v, 1);
  __m128i s = _mm_add_epi64(lo, hi);
  return uint64_t(_mm_cvtsi128_si64(s)) + uint64_t(_mm_extract_epi64(s, 1));
}

uint64_t sum_u8_avx2(const uint8_t* p, size_t n) {
  __m256i acc = _mm256_setzero_si256();
  const __m256i zero = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(v, zero));
  }
  uint64_t s = hsum_epi64(acc);
  for (; i < n; ++i) s += p[i];
  return s;
}

uint64_t sad_u8_avx2(const uint8_t* a, const uint8_t* b, size_t n) {
  __m256i acc = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(va, vb));
  }
  uint64_t s = hsum_epi64(acc);
  for (; i < n; ++i) {
    int d = int(a[i]) - int(b[i]);
    s += uint64_t(d < 0 ? -d : d);
  }
  return s;
}

uint64_t ssd_u8_avx2(const uint8_t* a, const uint8_t* b, size_t n) {
  // |a-b| per byte, widen to 16-bit, square-accumulate with madd. The epi32
  // accumulator is folded to epi64 every 4096 iterations (131072 pixels),
  // well inside its overflow bound of 2*255^2 per lane per iteration.
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc64 = _mm256_setzero_si256();
  __m256i acc32 = _mm256_setzero_si256();
  size_t i = 0;
  size_t block = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i ad = _mm256_or_si256(_mm256_subs_epu8(va, vb), _mm256_subs_epu8(vb, va));
    __m256i lo = _mm256_unpacklo_epi8(ad, zero);
    __m256i hi = _mm256_unpackhi_epi8(ad, zero);
    acc32 = _mm256_add_epi32(acc32, _mm256_madd_epi16(lo, lo));
    acc32 = _mm256_add_epi32(acc32, _mm256_madd_epi16(hi, hi));
    if (++block == 4096) {
      acc64 = _mm256_add_epi64(acc64, _mm256_unpacklo_epi32(acc32, zero));
      acc64 = _mm256_add_epi64(acc64, _mm256_unpackhi_epi32(acc32, zero));
      acc32 = _mm256_setzero_si256();
      block = 0;
    }
  }
  acc64 = _mm256_add_epi64(acc64, _mm256_unpacklo_epi32(acc32, zero));
  acc64 = _mm256_add_epi64(acc64, _mm256_unpackhi_epi32(acc32, zero));
  uint64_t s = hsum_epi64(acc64);
  for (; i < n; ++i) {
    int d = int(a[i]) - int(b[i]);
    s += uint64_t(d * d);
  }
  return s;
}

uint64_t scaled_absdev_u8_avx2(const uint8_t* p, size_t n, uint32_t scale, uint32_t bias) {
  const __m256i vscale = _mm256_set1_epi32(int(scale));
  const __m256i vbias = _mm256_set1_epi32(int(bias));
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m128i bytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(p + i));
    __m256i px = _mm256_cvtepu8_epi32(bytes);
    __m256i d = _mm256_abs_epi32(_mm256_sub_epi32(_mm256_mullo_epi32(px, vscale), vbias));
    acc = _mm256_add_epi64(acc, _mm256_unpacklo_epi32(d, zero));
    acc = _mm256_add_epi64(acc, _mm256_unpackhi_epi32(d, zero));
  }
  uint64_t s = hsum_epi64(acc);
  for (; i < n; ++i) {
    int64_t d = int64_t(scale) * p[i] - int64_t(bias);
    s += uint64_t(d < 0 ? -d : d);
  }
  return s;
}

}  // namespace

const PixelKernels* pixel_kernels_avx2() {
  static const PixelKernels k{sum_u8_avx2, sad_u8_avx2, ssd_u8_avx2,
                              scaled_absdev_u8_avx2, "avx2"};
  static const bool available = __builtin_cpu_supports("avx2");
  return available ? &k : nullptr;
}

}  // namespace manetsim

#else  // non-x86: scalar fallback only

namespace manetsim {
const PixelKernels* pixel_kernels_avx2() { return nullptr; }
}  // namespace manetsim

#endif
