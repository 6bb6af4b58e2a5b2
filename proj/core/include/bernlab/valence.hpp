#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "bernlab/analytic_function.hpp"

namespace bernlab {

struct ValenceOptions {
  double contour_radius = 1.0 - 0x1.0p-20;
  int angular = 0;          // 0 = max(4096, 64 * degree)
  int max_angular = 1 << 22;
  double min_distance = 1e-6;  // reject w this close to f(contour)
  double residue_tol = 1e-3;
};

/// Covering count n(w): the argument-principle contour integral
/// (1/2pi i) oint f'/(f - w) dz on |z| = contour_radius, rounded to the
/// nearest integer. The raw value must land within residue_tol of an
/// integer; otherwise the angular count is doubled up to max_angular and
/// then the call fails.
int valence_at(const AnalyticFunction& f, Complex w, const ValenceOptions& opts = {});

struct ValenceSample {
  Complex w;
  int count = 0;
};

struct ValenceProfile {
  double R = 0.0;
  int radial_cells = 0;
  int angular_cells = 0;
  std::uint64_t seed = 0;
  std::vector<ValenceSample> samples;
  double mean_valence = 0.0;
  double n_bound = 0.0;   // certified valence bound of the representation
  double check_nR2 = 0.0; // n_bound * R^2, the mean-valence reference value

  nlohmann::ordered_json to_json() const;
  void write_csv(std::ostream& os) const;  // w_re, w_im, count
};

// Area mean (1/pi) int_{|w|<R} n(w) dA(w) over a jittered polar grid of
// radial_cells x angular_cells cells; each cell contributes its exact area
// times the count sampled at a jittered interior point, so constant-count
// regions integrate exactly. A node failing the contour precondition is
// re-jittered by up to half a grid step before the error propagates.
ValenceProfile mean_valence(const AnalyticFunction& f, double R, int radial_cells = 32,
                            int angular_cells = 64, std::uint64_t seed = 1,
                            const ValenceOptions& opts = {});

struct CertifyRow {
  double R = 0.0;
  double mean_valence = 0.0;
  double bound = 0.0;
  bool ok = false;
};

struct CertifyReport {
  bool passed = false;
  double claim = 0.0;
  std::vector<CertifyRow> rows;

  nlohmann::ordered_json to_json() const;
};

/// Mean n-valence certificate: passes iff mean_valence(R) <=
/// claim * R^2 * (1 + 1e-6) + 1e-9 for every R in r_list. claim may be any
/// positive real, not necessarily an integer.
CertifyReport certify_mean_valent(const AnalyticFunction& f, double claim,
                                  const std::vector<double>& r_list, int radial_cells = 32,
                                  int angular_cells = 64, std::uint64_t seed = 1,
                                  const ValenceOptions& opts = {});

}  // namespace bernlab
