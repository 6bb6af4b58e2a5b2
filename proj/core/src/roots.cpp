#include "bernlab/roots.hpp"

#include <algorithm>
#include <cmath>

#include "bernlab/analytic_function.hpp"

namespace bernlab {

namespace {

int trimmed_degree(const std::vector<Complex>& coeffs) {
  int d = static_cast<int>(coeffs.size()) - 1;
  while (d > 0 && std::abs(coeffs[d]) == 0.0) --d;
  return d;
}

}  // namespace

std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs, int max_sweeps,
                                  double tol) {
  const int d = trimmed_degree(coeffs);
  if (d < 1 || std::abs(coeffs[d]) == 0.0)
    throw ParameterError("root finding needs a nonconstant polynomial");
  if (d > 64) throw ParameterError("root oracle limited to degree 64");

  std::vector<Complex> c(coeffs.begin(), coeffs.begin() + d + 1);
  const Complex lead = c[d];
  for (auto& a : c) a /= lead;

  double bound = 0.0;
  for (int k = 0; k < d; ++k) bound = std::max(bound, std::abs(c[k]));
  const double r0 = std::min(1.0 + bound, 4.0 + 0.25 * bound);

  std::vector<Complex> z(d);
  for (int i = 0; i < d; ++i) {
    double t = kTwoPi * (static_cast<double>(i) / d) + 0.376;
    z[i] = (0.5 * r0 + 0.1 * i / d) * Complex(std::cos(t), std::sin(t));
  }

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double worst = 0.0;
    for (int i = 0; i < d; ++i) {
      Complex p = c[d], dp = 0.0;
      for (int k = d - 1; k >= 0; --k) {
        dp = dp * z[i] + p;
        p = p * z[i] + c[k];
      }
      if (std::abs(p) == 0.0) continue;
      if (std::abs(dp) == 0.0) {
        z[i] += 1e-6 * (1.0 + std::abs(z[i]));
        worst = 1.0;
        continue;
      }
      Complex newton = p / dp;
      Complex repel = 0.0;
      for (int j = 0; j < d; ++j)
        if (j != i) repel += 1.0 / (z[i] - z[j]);
      Complex denom = 1.0 - newton * repel;
      Complex step = (std::abs(denom) < 1e-14) ? newton : newton / denom;
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    if (worst <= tol) return z;
  }
  throw NumericalError("aberth iteration did not converge");
}

int count_roots_in_disk(const Polynomial& p, Complex w, double rho) {
  std::vector<Complex> c = p.coeffs();
  if (c.empty()) c.push_back(0.0);
  c[0] -= w;
  if (trimmed_degree(c) == 0) return 0;  // constant, nonzero handled by caller
  auto roots = aberth_roots(c);
  int count = 0;
  for (const auto& r : roots)
    if (std::abs(r) < rho) ++count;
  return count;
}

}  // namespace bernlab
