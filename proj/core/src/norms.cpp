#include "bernlab/norms.hpp"

#include <algorithm>
#include <cmath>

#include <cstdio>
#include <limits>

#include "bernlab/fft.hpp"
#include "bernlab/summation.hpp"

namespace bernlab {

namespace {

int pick_angular(const NormOptions& opts, const AnalyticFunction& f) {
  return opts.angular > 0 ? opts.angular : default_angular(f.degree()).target;
}

RadialPanels pick_panels(const NormOptions& opts) { return {opts.panels, opts.gauss, true}; }

AngularPolicy pick_policy(const NormOptions& opts, const AnalyticFunction& f) {
  return {pick_angular(opts, f), opts.taper, opts.per_scale, opts.floor_count};
}

GridEcho echo(const NormOptions& opts, int angular, double gamma) {
  return {opts.panels, opts.gauss, angular, opts.taper, gamma};
}

double pow_abs(Complex v, double p) {
  if (p == 1.0) return std::abs(v);
  if (p == 2.0) return std::norm(v);
  return std::pow(std::abs(v), p);
}

/// error of I^(1/p) given the error of I
double root_error(double integral, double err, double p) {
  if (integral <= 0.0) return err;
  return err / p * std::pow(integral, 1.0 / p - 1.0);
}

}  // namespace

nlohmann::ordered_json NormReport::to_json() const {
  nlohmann::ordered_json j;
  j["functional"] = functional;
  nlohmann::ordered_json pj;
  for (const auto& [k, v] : params) pj[k] = v;
  j["params"] = pj;
  j["value"] = value;
  j["error_estimate"] = error_estimate;
  j["grid"] = {{"panels", grid.panels},
               {"gauss", grid.gauss},
               {"angular", grid.angular},
               {"taper", grid.taper},
               {"gamma", grid.gamma}};
  j["conventions"] = {{"circle_measure", "dt/(2pi)"},
                      {"area_measure", "Lebesgue dA, total mass pi on the unit disk"},
                      {"boundary_weight", "(1-|z|^2)^gamma"}};
  nlohmann::ordered_json dj;
  for (const auto& [k, v] : diagnostics) dj[k] = v;
  j["diagnostics"] = dj;
  return j;
}

NormReport hardy_norm(const AnalyticFunction& f, double p, const NormOptions& opts) {
  if (!(p >= 1.0)) throw ParameterError("hardy norm requires p >= 1");
  const int M = pick_angular(opts, f);
  auto ev = [&](Complex z) { return f.eval(z); };
  const QuadResult mean = circle_mean(ev, 1.0, p, M);
  NormReport rep;
  rep.functional = "hardy";
  rep.params = {{"p", p}};
  rep.value = std::pow(mean.value, 1.0 / p);
  rep.error_estimate = root_error(mean.value, mean.error_estimate, p);
  rep.grid = echo(opts, M, 0.0);
  for (double r : {0.5, 0.9, 1.0})
    rep.diagnostics.emplace_back("mean_r" + std::to_string(r).substr(0, 3),
                                 std::pow(circle_mean_once(ev, r, p, M), 1.0 / p));
  return rep;
}

NormReport bergman_deriv_norm(const AnalyticFunction& f, double p, const NormOptions& opts) {
  if (!(p >= 1.0)) throw ParameterError("bergman norm of the derivative requires p >= 1");
  const int M = pick_angular(opts, f);
  DiskQuadrature quad(pick_panels(opts), pick_policy(opts, f), 0.0);
  const QuadResult integral =
      quad.integrate([&](Complex z) { return pow_abs(f.deriv(z), p); });
  NormReport rep;
  rep.functional = "bergman_deriv";
  rep.params = {{"p", p}};
  rep.value = std::pow(integral.value, 1.0 / p);
  rep.error_estimate = root_error(integral.value, integral.error_estimate, p);
  rep.grid = echo(opts, M, 0.0);
  rep.diagnostics.emplace_back("integral", integral.value);
  rep.diagnostics.emplace_back("integral_error", integral.error_estimate);
  return rep;
}

NormReport besov_seminorm(const AnalyticFunction& f, double sigma, double alpha,
                          const NormOptions& opts) {
  if (!(sigma > 0.0 && sigma < 2.0)) throw ParameterError("besov seminorm requires sigma in (0, 2)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("besov seminorm requires alpha in (0, 1)");
  const double gamma = (1.0 - alpha) * sigma - 1.0;
  if (gamma <= -1.0) throw ParameterError("besov weight exponent is not integrable");
  const int M = pick_angular(opts, f);
  DiskQuadrature quad(pick_panels(opts), pick_policy(opts, f), gamma);
  const QuadResult integral =
      quad.integrate([&](Complex z) { return pow_abs(f.deriv(z), sigma); });
  NormReport rep;
  rep.functional = "besov";
  rep.params = {{"sigma", sigma}, {"alpha", alpha}};
  rep.value = std::pow(integral.value, 1.0 / sigma);
  rep.error_estimate = root_error(integral.value, integral.error_estimate, sigma);
  rep.grid = echo(opts, M, gamma);
  rep.diagnostics.emplace_back("integral", integral.value);
  rep.diagnostics.emplace_back("integral_error", integral.error_estimate);
  return rep;
}

namespace {

// S(f)^2 on the full angle grid for one radial rule; shared evaluation per
// circle keeps the cost at radial x angular.
std::vector<double> square_function_sq(const AnalyticFunction& f, const RadialPanels& panels,
                                       int count) {
  auto nodes = radial_nodes_plain(panels, 0.0, 1.0);
  auto circle = unit_circle(count);
  const auto& u = *circle;
  std::vector<double> s2(count, 0.0);
  std::vector<double> row(count);
  for (const auto& n : nodes) {
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t j) {
      const Complex z(n.r * u[j].real(), n.r * u[j].imag());
      row[j] = std::norm(f.deriv(z));
    });
    const double w = n.weight * n.one_minus_r;
    for (int j = 0; j < count; ++j) s2[j] += w * row[j];
  }
  return s2;
}

}  // namespace

double square_function(const AnalyticFunction& f, double t, const NormOptions& opts) {
  auto nodes = radial_nodes_plain(pick_panels(opts), 0.0, 1.0);
  const Complex dir(std::cos(t), std::sin(t));
  std::vector<double> parts(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    parts[i] = n.weight * n.one_minus_r * std::norm(f.deriv(n.r * dir));
  }
  return std::sqrt(pairwise_sum(parts));
}

NormReport littlewood_paley_norm(const AnalyticFunction& f, double p, const NormOptions& opts) {
  if (!(p > 0.0)) throw ParameterError("littlewood-paley norm requires p > 0");
  const int M = pick_angular(opts, f);
  const RadialPanels panels = pick_panels(opts);

  auto lp_once = [&](const RadialPanels& rp, int count) {
    std::vector<double> s2 = square_function_sq(f, rp, count);
    std::vector<double> vals(count);
    for (int j = 0; j < count; ++j) vals[j] = std::pow(s2[j], 0.5 * p);
    return pairwise_sum(vals) / count;
  };

  const double coarse = lp_once(panels, M);
  RadialPanels fine = panels;
  fine.depth += 4;
  const double refined = lp_once(fine, 2 * M);

  NormReport rep;
  rep.functional = "littlewood_paley";
  rep.params = {{"p", p}};
  rep.value = std::pow(refined, 1.0 / p);
  rep.error_estimate = root_error(refined, std::abs(refined - coarse), p);
  rep.grid = echo(opts, M, 0.0);
  rep.diagnostics.emplace_back("mean_Sp", refined);
  return rep;
}

double hayman_lhs(const AnalyticFunction& f, double r_tilde, double lambda, int count,
                  bool allow_perturb, double* used_radius) {
  if (!(lambda > 0.0 && lambda <= 2.0)) throw ParameterError("hayman exponent lambda must be in (0, 2]");
  if (!(r_tilde >= 0.0 && r_tilde < 1.0)) throw ParameterError("hayman radius must be in [0, 1)");
  const int M = count > 0 ? count : default_angular(f.degree()).target;
  auto circle = unit_circle(M);
  const auto& u = *circle;

  double r = r_tilde;
  const int attempts = allow_perturb ? 4 : 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<double> vals(M);
    double min_abs = std::numeric_limits<double>::infinity();
    const int block = 8192;
    const int nblocks = (M + block - 1) / block;
    std::vector<double> block_min(nblocks);
    parallel_for(static_cast<std::size_t>(nblocks), [&](std::size_t b) {
      const int lo = static_cast<int>(b) * block;
      const int hi = std::min(M, lo + block);
      double bm = std::numeric_limits<double>::infinity();
      for (int j = lo; j < hi; ++j) {
        const Complex z(r * u[j].real(), r * u[j].imag());
        auto [v, d] = f.eval_with_deriv(z);
        const double a = std::abs(v);
        bm = std::min(bm, a);
        vals[j] = std::norm(d) * std::pow(a, lambda - 2.0);
      }
      block_min[b] = bm;
    });
    for (double bm : block_min) min_abs = std::min(min_abs, bm);
    if (min_abs < 1e-13) {
      if (attempt + 1 < attempts) {
        r -= 0x1.0p-30;  // perturbed radius, reported via used_radius
        continue;
      }
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "zero on circle r = %.17g (|f| < 1e-13); retry with a perturbed radius", r);
      throw NumericalError(buf);
    }
    if (used_radius) *used_radius = r;
    return pairwise_sum(vals) * (kTwoPi / M);
  }
  throw NumericalError("hayman_lhs: unreachable");
}

double max_modulus(const AnalyticFunction& f, double r, int count) {
  if (!(r >= 0.0 && r <= 1.0)) throw ParameterError("max_modulus radius must be in [0, 1]");
  const int M = count > 0 ? count : default_angular(f.degree()).target;
  auto circle = unit_circle(M);
  const auto& u = *circle;
  std::vector<double> vals(M);
  parallel_for(static_cast<std::size_t>(M), [&](std::size_t j) {
    vals[j] = std::abs(f.eval(Complex(r * u[j].real(), r * u[j].imag())));
  });
  int best = 0;
  for (int j = 1; j < M; ++j)
    if (vals[j] > vals[best]) best = j;

  // golden-section refinement around the winning cell
  auto g = [&](double t) { return std::abs(f.eval(r * Complex(std::cos(t), std::sin(t)))); };
  const double step = kTwoPi / M;
  double a = (best - 1) * step, b = (best + 1) * step;
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double g1 = g(x1), g2 = g(x2);
  for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + inv_phi * (b - a);
      g2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - inv_phi * (b - a);
      g1 = g(x1);
    }
  }
  return std::max({vals[best], g1, g2});
}

NormReport pommerenke_mixed_norm(const AnalyticFunction& f, double p, const NormOptions& opts) {
  if (!(p >= 1.0)) throw ParameterError("mixed norm requires p >= 1");
  const int M = pick_angular(opts, f);
  const RadialPanels panels = pick_panels(opts);
  const AngularPolicy pol = pick_policy(opts, f);

  auto mixed_once = [&](const RadialPanels& rp, const AngularPolicy& ap) {
    auto nodes = radial_nodes_plain(rp, 0.0, 1.0);
    std::vector<double> parts(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t i) {
      const auto& n = nodes[i];
      const int cnt = ap.taper
                          ? static_cast<int>(next_pow2(static_cast<std::size_t>(std::clamp(
                                ap.per_scale / std::max(n.one_minus_r, 1e-18),
                                static_cast<double>(ap.floor_count), static_cast<double>(ap.target)))))
                          : ap.target;
      const double mean = circle_mean_once([&](Complex z) { return f.deriv(z); }, n.r, 1.0, cnt);
      parts[i] = n.weight * std::pow(kTwoPi * mean, p);
    });
    return pairwise_sum(parts);
  };

  const double coarse = mixed_once(panels, pol);
  RadialPanels fine = panels;
  fine.depth += 4;
  AngularPolicy fine_pol = pol;
  fine_pol.target = 2 * pol.target;
  fine_pol.per_scale = 2.0 * pol.per_scale;
  fine_pol.floor_count = 2 * pol.floor_count;
  const double refined = mixed_once(fine, fine_pol);

  NormReport rep;
  rep.functional = "pommerenke_mixed";
  rep.params = {{"p", p}};
  rep.value = refined;
  rep.error_estimate = std::abs(refined - coarse);
  rep.grid = echo(opts, M, 0.0);
  return rep;
}

NormReport bmoa_surrogate(const AnalyticFunction& f, const NormOptions& opts) {
  if (f.kind() != AnalyticFunction::Kind::Lacunary)
    throw ParameterError("bmoa surrogate is only valid for lacunary series");
  NormReport rep = hardy_norm(f, 2.0, opts);
  rep.functional = "bmoa_surrogate";
  rep.diagnostics.emplace_back("surrogate", 1.0);  // flags the H^2 stand-in
  return rep;
}

}  // namespace bernlab
