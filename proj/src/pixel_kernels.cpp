#include "manetsim/pixel_kernels.hpp"

#include <cstdlib>

namespace manetsim {

uint64_t sum_u8_scalar(const uint8_t* p, size_t n) {
  uint64_t s = 0;
  for (size_t i = 0; i < n; ++i) s += p[i];
  return s;
}

uint64_t sad_u8_scalar(const uint8_t* a, const uint8_t* b, size_t n) {
  uint64_t s = 0;
  for (size_t i = 0; i < n; ++i) {
    int d = int(a[i]) - int(b[i]);
    s += uint64_t(d < 0 ? -d : d);
  }
  return s;
}

uint64_t ssd_u8_scalar(const uint8_t* a, const uint8_t* b, size_t n) {
  uint64_t s = 0;
  for (size_t i = 0; i < n; ++i) {
    int d = int(a[i]) - int(b[i]);
    s += uint64_t(d * d);
  }
  return s;
}

uint64_t scaled_absdev_u8_scalar(const uint8_t* p, size_t n, uint32_t scale, uint32_t bias) {
  uint64_t s = 0;
  for (size_t i = 0; i < n; ++i) {
    int64_t d = int64_t(scale) * p[i] - int64_t(bias);
    s += uint64_t(d < 0 ? -d : d);
  }
  return s;
}

const PixelKernels& pixel_kernels_scalar() {
  static const PixelKernels k{sum_u8_scalar, sad_u8_scalar, ssd_u8_scalar,
                              scaled_absdev_u8_scalar, "scalar"};
  return k;
}

const PixelKernels& pixel_kernels() {
  static const PixelKernels& chosen = []() -> const PixelKernels& {
    if (const char* e = std::getenv("MANETSIM_NO_SIMD"); e && e[0] == '1') {
      return pixel_kernels_scalar();
    }
    if (const PixelKernels* avx2 = pixel_kernels_avx2()) return *avx2;
    return pixel_kernels_scalar();
  }();
  return chosen;
}

}  // namespace manetsim
