#pragma once

#include <cstdint>
#include <string_view>

namespace manetsim {

// SplitMix64 stream. The algorithm is fixed so that a given seed yields the
// same draw sequence on every platform and compiler.
class RngStream {
 public:
  explicit RngStream(uint64_t seed = 0) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Modulo reduction; bias is negligible for n << 2^64.
  uint32_t uniform_int(uint32_t n) {
    return n == 0 ? 0u : static_cast<uint32_t>(next_u64() % n);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  uint64_t state_;
};

// FNV-1a over a label string, folded into the base seed. Each subsystem draws
// from its own derived stream so adding draws in one subsystem does not
// perturb another.
inline uint64_t mix_seed(uint64_t base, std::string_view label, uint64_t index = 0) {
  uint64_t h = 0xCBF29CE484222325ull;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  RngStream s(base ^ h ^ (index * 0x9E3779B97F4A7C15ull));
  return s.next_u64();
}

inline RngStream derived_stream(uint64_t base, std::string_view label, uint64_t index = 0) {
  return RngStream(mix_seed(base, label, index));
}

}  // namespace manetsim
