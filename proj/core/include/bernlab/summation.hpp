#pragma once

#include <cstddef>
#include <span>

namespace bernlab {

// Pairwise (cascade) summation with a fixed recursion pattern. Used for
// every quadrature reduction so that results do not depend on thread
// count or accumulation chunking.
inline double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n <= 32) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace bernlab
