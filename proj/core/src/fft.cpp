#include "bernlab/fft.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace bernlab {

namespace {

// Twiddle factors e^{-2 pi i j / n}, j < n/2, cached per size.
const std::vector<Complex>& twiddles(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<std::vector<Complex>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<std::vector<Complex>>(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
      double t = -kTwoPi * static_cast<double>(j) / static_cast<double>(n);
      (*slot)[j] = Complex(std::cos(t), std::sin(t));
    }
  }
  return *slot;
}

}  // namespace

void fft_inplace(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  if (!is_pow2(n)) throw ParameterError("fft size must be a power of two");

  const int bits = std::countr_zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = 0;
    for (int b = 0; b < bits; ++b) j |= ((i >> b) & 1u) << (bits - 1 - b);
    if (i < j) std::swap(a[i], a[j]);
  }

  const auto& w = twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        Complex tw = w[k * stride];
        if (inverse) tw = std::conj(tw);
        Complex u = a[start + k];
        Complex v = a[start + k + len / 2] * tw;
        a[start + k] = u + v;
        a[start + k + len / 2] = u - v;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= inv;
  }
}

}  // namespace bernlab
