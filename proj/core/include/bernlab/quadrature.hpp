#pragma once

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <functional>
#include <memory>
#include <vector>

#include "bernlab/common.hpp"

namespace bernlab {

using Integrand = std::function<double(Complex)>;
using ComplexMap = std::function<Complex(Complex)>;

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Equispaced angles t_j = 2 pi j / count on the circle of given radius.
/// The trapezoid rule on this grid integrates e^{ikt} exactly for |k| < count.
struct CircleGrid {
  int count = 4096;
  double radius = 1.0;
};

/// Geometric radial refinement: breakpoints 1 - 2^-j, j = 0..depth, plus a
/// terminal panel [1 - 2^-depth, 1] which treats the boundary weight by a
/// Gauss-Jacobi rule.
struct RadialPanels {
  int depth = 40;
  int gauss = 16;
  bool jacobi_terminal = true;
};

/// Angular counts per radial node. With taper off every circle gets `target`
/// angles; with taper on, circles at distance d from the boundary get about
/// per_scale/d angles (rounded up to a power of two, clamped to
/// [floor_count, target]), which is what boundary-peaked integrands need.
struct AngularPolicy {
  int target = 4096;
  bool taper = false;
  double per_scale = 32.0;
  int floor_count = 1024;
};

AngularPolicy default_angular(long long degree);

struct RadialNode {
  double r = 0.0;
  double one_minus_r = 1.0;
  double weight = 0.0;
  int angular = 0;
};

/// Nodes and weights for int_{r0}^{r1} g(r) (1-r^2)^gamma r dr; a panel cut
/// by r0/r1 is split at the cut, and the Jacobi treatment of the weight is
/// kept whenever the band touches r = 1.
std::vector<RadialNode> radial_nodes_area(const RadialPanels& panels, double gamma,
                                          double r0, double r1);

/// Nodes and weights for the plain int_{r0}^{r1} g(r) dr on the same panels.
std::vector<RadialNode> radial_nodes_plain(const RadialPanels& panels, double r0, double r1);

/// Cached unit-circle samples e^{2 pi i j / count}.
std::shared_ptr<const std::vector<Complex>> unit_circle(int count);

// Quadrature for int h(z) (1-|z|^2)^gamma dA over the disk or a band of it.
// Every integrate call runs the grid twice -- (depth, M) and (depth+4, 2M) --
// and reports |difference| as the error estimate, never swallowing it.
class DiskQuadrature {
 public:
  DiskQuadrature(RadialPanels panels, AngularPolicy angular, double gamma);

  QuadResult integrate(const Integrand& h) const { return integrate_band(h, 0.0, 1.0); }
  QuadResult integrate_annulus(const Integrand& h, double r_min) const;
  QuadResult integrate_inner(const Integrand& h, double r_max) const;
  QuadResult integrate_band(const Integrand& h, double r0, double r1) const;

  const RadialPanels& panels() const { return panels_; }
  const AngularPolicy& angular() const { return angular_; }
  double gamma() const { return gamma_; }

 private:
  double run(const Integrand& h, const RadialPanels& panels, const AngularPolicy& angular,
             double r0, double r1) const;

  RadialPanels panels_;
  AngularPolicy angular_;
  double gamma_;
};

/// (1/2pi) int |f(r e^{it})|^p dt by the trapezoid rule on `count` angles,
/// refined once by doubling the count for the reported error estimate.
QuadResult circle_mean(const ComplexMap& f, double r, double p, int count);

/// Single-grid variant (no refinement pass).
double circle_mean_once(const ComplexMap& f, double r, double p, int count);

/// Thread cap: min(BERNLAB_THREADS, OpenMP default).
int effective_threads();

/// Deterministic parallel loop; results must be written per-index. The first
/// exception thrown by the body is rethrown after the loop.
template <class F>
void parallel_for(std::size_t count, F&& body) {
  std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 1) num_threads(effective_threads())
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(bernlab_parallel_for_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace bernlab
