#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bernlab/analytic_function.hpp"
#include "bernlab/quadrature.hpp"

namespace bernlab {

/// Grid controls shared by the norm operations. angular = 0 picks the
/// default max(4096, 64 * degree).
struct NormOptions {
  int panels = 40;
  int gauss = 16;
  int angular = 0;
  bool taper = false;
  double per_scale = 32.0;
  int floor_count = 1024;
};

struct GridEcho {
  int panels = 0;
  int gauss = 0;
  int angular = 0;
  bool taper = false;
  double gamma = 0.0;
};

// Computed functional value plus the request echo, the grid actually used,
// and the refinement-based error estimate. Circle integrals use the
// normalized measure dt/(2pi); area integrals use plain Lebesgue dA
// (total mass pi on the disk); every report records both conventions.
struct NormReport {
  std::string functional;
  std::vector<std::pair<std::string, double>> params;
  double value = 0.0;
  double error_estimate = 0.0;
  GridEcho grid;
  std::vector<std::pair<std::string, double>> diagnostics;

  nlohmann::ordered_json to_json() const;
};

/// Boundary-trace Hardy norm (1/2pi int |f|^p dt)^(1/p), p >= 1. The report
/// carries circle means at r = 0.5, 0.9, 1 as a monotonicity diagnostic.
NormReport hardy_norm(const AnalyticFunction& f, double p, const NormOptions& opts = {});

/// Bergman norm of the derivative (int_D |f'|^p dA)^(1/p), p >= 1.
NormReport bergman_deriv_norm(const AnalyticFunction& f, double p, const NormOptions& opts = {});

/// Besov seminorm (int_D |f'|^sigma (1-|z|^2)^((1-alpha) sigma - 1) dA)^(1/sigma),
/// sigma in (0,2), alpha in (0,1).
NormReport besov_seminorm(const AnalyticFunction& f, double sigma, double alpha,
                          const NormOptions& opts = {});

/// Littlewood-Paley square function S(f)(t) = (int_0^1 (1-r)|f'(re^{it})|^2 dr)^(1/2).
double square_function(const AnalyticFunction& f, double t, const NormOptions& opts = {});

/// (1/2pi int S(f)^p dt)^(1/p).
NormReport littlewood_paley_norm(const AnalyticFunction& f, double p,
                                 const NormOptions& opts = {});

// Angular integral int |f'|^2 |f|^(lambda-2) dt (not normalized) on the
// circle of radius r_tilde, lambda in (0, 2]. If |f| dips below 1e-13 on the
// grid the call fails with a zero-on-circle error naming the radius;
// with allow_perturb the radius is stepped down by 2^-30 (never silently:
// the radius actually used is reported back).
double hayman_lhs(const AnalyticFunction& f, double r_tilde, double lambda, int count = 0,
                  bool allow_perturb = false, double* used_radius = nullptr);

/// max_{|z|=r} |f(z)| via grid scan plus golden-section refinement.
double max_modulus(const AnalyticFunction& f, double r, int count = 0);

/// Iterated mixed norm int_0^1 (int |f'(re^{it})| dt)^p dr.
NormReport pommerenke_mixed_norm(const AnalyticFunction& f, double p,
                                 const NormOptions& opts = {});

/// Lacunary BMOA surrogate: the H^2 norm, valid for lacunary input only.
NormReport bmoa_surrogate(const AnalyticFunction& f, const NormOptions& opts = {});

}  // namespace bernlab
