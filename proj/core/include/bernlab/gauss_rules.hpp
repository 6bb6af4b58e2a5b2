#pragma once

#include <vector>

#include "bernlab/common.hpp"

namespace bernlab {

struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// n-point Gauss-Legendre rule on [a, b].
QuadRule gauss_legendre(int n, double a, double b);

/// n-point Gauss-Jacobi rule on [a, b] for the weight (b-x)^alpha (x-a)^beta;
/// the weight is absorbed into w, nodes stay inside (a, b).
QuadRule gauss_jacobi(int n, double a, double b, double alpha, double beta);

}  // namespace bernlab
