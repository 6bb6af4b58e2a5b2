#pragma once

#include <vector>

#include "bernlab/common.hpp"

namespace bernlab {

class Polynomial;

// Aberth-Ehrlich simultaneous root iteration. Intended as an independent
// cross-check (valence oracle, denominator validation); limited to degree 64.
std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs,
                                  int max_sweeps = 200, double tol = 1e-12);

/// Number of solutions of p(z) = w with |z| < rho, counted with multiplicity,
/// obtained by locating all roots of p - w.
int count_roots_in_disk(const Polynomial& p, Complex w, double rho);

}  // namespace bernlab
