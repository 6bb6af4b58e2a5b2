#include "bernlab/valence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "bernlab/prng.hpp"
#include "bernlab/quadrature.hpp"
#include "bernlab/summation.hpp"

namespace bernlab {

namespace {

struct ContourPass {
  Complex integral;
  double min_distance;
};

ContourPass contour_integral(const AnalyticFunction& f, Complex w, double rho, int count) {
  auto circle = unit_circle(count);
  const auto& u = *circle;
  const int block = 8192;
  const int nblocks = (count + block - 1) / block;
  std::vector<double> re(nblocks), im(nblocks), dist(nblocks);
  parallel_for(static_cast<std::size_t>(nblocks), [&](std::size_t b) {
    const int lo = static_cast<int>(b) * block;
    const int hi = std::min(count, lo + block);
    Complex acc = 0.0;
    double dmin = std::numeric_limits<double>::infinity();
    for (int j = lo; j < hi; ++j) {
      const Complex z(rho * u[j].real(), rho * u[j].imag());
      auto [v, d] = f.eval_with_deriv(z);
      const Complex denom = v - w;
      dmin = std::min(dmin, std::abs(denom));
      acc += d * z / denom;
    }
    re[b] = acc.real();
    im[b] = acc.imag();
    dist[b] = dmin;
  });
  double dmin = std::numeric_limits<double>::infinity();
  for (double d : dist) dmin = std::min(dmin, d);
  return {Complex(pairwise_sum(re), pairwise_sum(im)) / static_cast<double>(count), dmin};
}

}  // namespace

int valence_at(const AnalyticFunction& f, Complex w, const ValenceOptions& opts) {
  const double rho = opts.contour_radius;
  if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("contour radius must be in (0, 1)");
  int count = opts.angular > 0 ? opts.angular : default_angular(f.degree()).target;
  count = std::min(count, opts.max_angular);

  while (true) {
    const ContourPass pass = contour_integral(f, w, rho, count);
    if (pass.min_distance <= opts.min_distance) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "w = (%.6g, %.6g) too close to f(contour): min |f - w| = %.3g",
                    w.real(), w.imag(), pass.min_distance);
      throw NumericalError(buf);
    }
    const double k = std::round(pass.integral.real());
    if (std::abs(pass.integral - Complex(k, 0.0)) <= opts.residue_tol) {
      if (k < 0.0) throw NumericalError("negative winding count; contour integral unreliable");
      return static_cast<int>(k);
    }
    if (count >= opts.max_angular)
      throw NumericalError("non-integer residue: angular resolution exhausted");
    count = std::min(2 * count, opts.max_angular);
  }
}

ValenceProfile mean_valence(const AnalyticFunction& f, double R, int radial_cells,
                            int angular_cells, std::uint64_t seed, const ValenceOptions& opts) {
  if (!(R > 0.0)) throw ParameterError("mean valence needs R > 0");
  if (radial_cells < 1 || angular_cells < 1) throw ParameterError("empty valence grid");

  ValenceProfile prof;
  prof.R = R;
  prof.radial_cells = radial_cells;
  prof.angular_cells = angular_cells;
  prof.seed = seed;
  prof.samples.resize(static_cast<std::size_t>(radial_cells) * angular_cells);

  const double dr = R / radial_cells;
  const double dth = kTwoPi / angular_cells;
  CounterRng base(seed, 0xba5e);

  parallel_for(prof.samples.size(), [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / angular_cells;  // radial index 0-based
    const int j = static_cast<int>(idx) % angular_cells;
    for (int attempt = 0;; ++attempt) {
      CounterRng rng = base.split(idx * 8 + attempt);
      // jitter keeps the sample strictly inside its cell (40% of a half-step),
      // plus a half-step radial shift on retries to dodge critical values
      double r = (i + 0.5) * dr + 0.4 * dr * (rng.uniform01() - 0.5);
      if (attempt > 0) r = std::max(0.25 * dr, r - 0.5 * dr * rng.uniform01());
      const double th = (j + 0.5) * dth + 0.4 * dth * (rng.uniform01() - 0.5);
      const Complex w = r * Complex(std::cos(th), std::sin(th));
      try {
        prof.samples[idx] = {w, valence_at(f, w, opts)};
        return;
      } catch (const NumericalError&) {
        if (attempt >= 3) throw;
      }
    }
  });

  // cell areas are exact: (1/pi) * area(cell i) = R^2 (2i+1) / (nr^2 * na)
  std::vector<double> parts(prof.samples.size());
  for (std::size_t idx = 0; idx < prof.samples.size(); ++idx) {
    const int i = static_cast<int>(idx) / angular_cells;
    parts[idx] = prof.samples[idx].count * (2.0 * i + 1.0);
  }
  prof.mean_valence = pairwise_sum(parts) * R * R /
                      (static_cast<double>(radial_cells) * radial_cells * angular_cells);
  prof.n_bound = static_cast<double>(f.degree());
  prof.check_nR2 = prof.n_bound * R * R;
  return prof;
}

nlohmann::ordered_json ValenceProfile::to_json() const {
  nlohmann::ordered_json j;
  j["R"] = R;
  j["radial_cells"] = radial_cells;
  j["angular_cells"] = angular_cells;
  j["seed"] = seed;
  j["mean_valence"] = mean_valence;
  j["n_bound"] = n_bound;
  j["check_nR2"] = check_nR2;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& s : samples)
    rows.push_back({s.w.real(), s.w.imag(), s.count});
  j["samples"] = rows;
  return j;
}

void ValenceProfile::write_csv(std::ostream& os) const {
  os << "#schema=bernlab.valence_profile.v1\n";
  os << "w_re,w_im,count\n";
  char buf[96];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d\n", s.w.real(), s.w.imag(), s.count);
    os << buf;
  }
}

CertifyReport certify_mean_valent(const AnalyticFunction& f, double claim,
                                  const std::vector<double>& r_list, int radial_cells,
                                  int angular_cells, std::uint64_t seed,
                                  const ValenceOptions& opts) {
  if (!(claim > 0.0)) throw ParameterError("valence claim must be positive");
  if (r_list.empty()) throw ParameterError("certify needs at least one radius");
  CertifyReport rep;
  rep.claim = claim;
  rep.passed = true;
  for (double R : r_list) {
    const ValenceProfile prof = mean_valence(f, R, radial_cells, angular_cells, seed, opts);
    CertifyRow row;
    row.R = R;
    row.mean_valence = prof.mean_valence;
    row.bound = claim * R * R * (1.0 + 1e-6) + 1e-9;
    row.ok = prof.mean_valence <= row.bound;
    rep.passed = rep.passed && row.ok;
    rep.rows.push_back(row);
  }
  return rep;
}

nlohmann::ordered_json CertifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["claim"] = claim;
  j["passed"] = passed;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : this->rows)
    rows.push_back({{"R", r.R}, {"mean_valence", r.mean_valence}, {"bound", r.bound}, {"ok", r.ok}});
  j["rows"] = rows;
  return j;
}

}  // namespace bernlab
