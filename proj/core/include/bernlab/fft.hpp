#pragma once

#include <vector>

#include "bernlab/common.hpp"

namespace bernlab {

/// In-place radix-2 FFT; size must be a power of two. inverse=true applies
/// the conjugate transform and divides by the size.
void fft_inplace(std::vector<Complex>& a, bool inverse = false);

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace bernlab
