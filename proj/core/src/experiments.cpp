#include "bernlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace bernlab {

namespace {

void validate_n_list(const std::vector<int>& ns, int minimum = 1) {
  if (ns.empty()) throw ParameterError("sweep needs a nonempty n list");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < minimum) throw ParameterError("sweep n values must be >= " + std::to_string(minimum));
    if (i > 0 && ns[i] <= ns[i - 1])
      throw ParameterError("sweep n list must be strictly increasing");
  }
}

long long ll(int v) { return static_cast<long long>(v); }

struct RatioTracker {
  double max_ratio = -1.0;
  double min_ratio = std::numeric_limits<double>::infinity();
  std::size_t max_index = 0;

  void add(std::size_t idx, double r) {
    if (r > max_ratio) {
      max_ratio = r;
      max_index = idx;
    }
    min_ratio = std::min(min_ratio, r);
  }
};

std::optional<GrowthFit> try_fit(const std::vector<std::pair<double, double>>& pts,
                                 std::optional<double> fb, std::optional<double> fg) {
  if (pts.size() < 3) return std::nullopt;
  for (const auto& [n, y] : pts)
    if (!(y > 0.0) || !(n > 1.0)) return std::nullopt;
  return fit_growth(pts, fb, fg);
}

nlohmann::ordered_json base_summary(const char* theorem, const SweepConfig& cfg) {
  nlohmann::ordered_json j;
  j["theorem"] = theorem;
  j["family"] = family_name(cfg.family);
  j["seed"] = cfg.seed;
  j["n_list"] = cfg.n_list;
  j["params"] = {{"p", cfg.p}, {"sigma", cfg.sigma}, {"alpha", cfg.alpha}, {"K", cfg.K}};
  return j;
}

void attach_ratio_stats(nlohmann::ordered_json& j, const RatioTracker& t) {
  j["ratio_max"] = t.max_ratio;
  j["ratio_min"] = t.min_ratio;
  if (t.min_ratio > 0.0) j["ratio_spread"] = t.max_ratio / t.min_ratio;
}

AnalyticFunction make_g(const std::string& id, std::uint64_t seed) {
  if (id == "1") return Polynomial({Complex(1.0, 0.0)});
  if (id == "cauchy")
    return RationalFunction(Polynomial({Complex(1.0, 0.0)}),
                            Polynomial({Complex(1.0, 0.0), Complex(-0.5, 0.0)}));
  if (id == "rpoly4") return random_family(FamilyKind::RandomPolynomial, 4, seed);
  throw ParameterError("unknown g selector: " + id);
}

}  // namespace

Family family_from_name(const std::string& name) {
  if (name == "power") return Family::Power;
  if (name == "lacunary") return Family::Lacunary;
  if (name == "clustered-blaschke") return Family::ClusteredBlaschke;
  if (name == "uniform-blaschke") return Family::UniformBlaschke;
  throw ParameterError("unknown family: " + name);
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Power: return "power";
    case Family::Lacunary: return "lacunary";
    case Family::ClusteredBlaschke: return "clustered-blaschke";
    case Family::UniformBlaschke: return "uniform-blaschke";
  }
  return "?";
}

FamilyMember make_family_member(Family fam, int n_or_m, std::uint64_t seed) {
  switch (fam) {
    case Family::Power: {
      std::vector<Complex> c(n_or_m + 1, Complex(0.0, 0.0));
      c.back() = 1.0;
      return {Polynomial(std::move(c)), ll(n_or_m), 0, "z^" + std::to_string(n_or_m)};
    }
    case Family::Lacunary: {
      LacunarySeries s = LacunarySeries::standard(n_or_m);
      const long long deg = s.degree();
      return {std::move(s), deg, n_or_m, "P_" + std::to_string(n_or_m)};
    }
    case Family::ClusteredBlaschke:
      return {random_family(FamilyKind::ClusteredBlaschke, n_or_m, seed), ll(n_or_m), 0,
              "clustered"};
    case Family::UniformBlaschke:
      return {random_family(FamilyKind::UniformBlaschke, n_or_m, seed), ll(n_or_m), 0, "uniform"};
  }
  throw ParameterError("unknown family");
}

NormOptions sweep_norm_options(long long degree, const QuadOverride& o) {
  // Lighter than the norm defaults: band-check accuracy, not oracle
  // accuracy. Every report's value comes from the built-in refinement pass
  // (depth + 4, doubled angles), so the effective grid is one notch finer.
  NormOptions opts;
  int lg = 1;
  while ((1ll << lg) < degree) ++lg;
  opts.panels = std::clamp(lg + 4, 10, 36);
  opts.gauss = 12;
  opts.angular = static_cast<int>(
      std::max<long long>(2048, std::min<long long>(4 * degree, 1ll << 18)));
  opts.taper = true;
  opts.per_scale = 12.0;
  opts.floor_count = 512;
  if (o.panels > 0) opts.panels = o.panels;
  if (o.gauss > 0) opts.gauss = o.gauss;
  if (o.angular > 0) opts.angular = o.angular;
  if (o.taper == 0) opts.taper = false;
  if (o.taper == 1) opts.taper = true;
  return opts;
}

// ---------------------------------------------------------------------------
// fit_growth

GrowthFit fit_growth(const std::vector<std::pair<double, double>>& points,
                     std::optional<double> fixed_beta, std::optional<double> fixed_gamma) {
  if (points.size() < 3) throw ParameterError("growth fit needs at least 3 points");
  for (const auto& [n, y] : points) {
    if (!(n > 1.0)) throw ParameterError("growth fit needs n > 1");
    if (!(y > 0.0)) throw ParameterError("growth fit needs positive values");
  }

  const bool free_beta = !fixed_beta.has_value();
  const bool free_gamma = !fixed_gamma.has_value();
  const int k = 1 + (free_beta ? 1 : 0) + (free_gamma ? 1 : 0);

  double ata[3][3] = {};
  double atb[3] = {};
  for (const auto& [n, y] : points) {
    const double ln_n = std::log(n);
    const double lnln_n = std::log(ln_n);
    double row[3];
    int c = 0;
    row[c++] = 1.0;
    if (free_beta) row[c++] = ln_n;
    if (free_gamma) row[c++] = lnln_n;
    double target = std::log(y);
    if (!free_beta) target -= *fixed_beta * ln_n;
    if (!free_gamma) target -= *fixed_gamma * lnln_n;
    for (int i = 0; i < k; ++i) {
      for (int j2 = 0; j2 < k; ++j2) ata[i][j2] += row[i] * row[j2];
      atb[i] += row[i] * target;
    }
  }

  // solve the k x k normal equations by Gaussian elimination with pivoting
  double m[3][4];
  for (int i = 0; i < k; ++i) {
    for (int j2 = 0; j2 < k; ++j2) m[i][j2] = ata[i][j2];
    m[i][k] = atb[i];
  }
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-12 * (1.0 + std::abs(ata[col][col])))
      throw ParameterError("degenerate design matrix in growth fit");
    std::swap(m[col], m[piv]);
    for (int r = 0; r < k; ++r) {
      if (r == col) continue;
      const double fac = m[r][col] / m[col][col];
      for (int c2 = col; c2 <= k; ++c2) m[r][c2] -= fac * m[col][c2];
    }
  }
  double sol[3];
  for (int i = 0; i < k; ++i) sol[i] = m[i][k] / m[i][i];

  GrowthFit fit;
  int c = 0;
  fit.c = std::exp(sol[c++]);
  fit.beta = free_beta ? sol[c++] : *fixed_beta;
  fit.gamma = free_gamma ? sol[c++] : *fixed_gamma;
  fit.beta_fixed = !free_beta;
  fit.gamma_fixed = !free_gamma;

  double res = 0.0;
  for (const auto& [n, y] : points) {
    const double model = std::log(fit.c) + fit.beta * std::log(n) + fit.gamma * std::log(std::log(n));
    res = std::max(res, std::abs(std::log(y) - model));
  }
  fit.residual = res;
  return fit;
}

nlohmann::ordered_json GrowthFit::to_json() const {
  nlohmann::ordered_json j;
  j["model"] = "C * n^beta * (log n)^gamma";
  j["C"] = c;
  j["beta"] = beta;
  j["gamma"] = gamma;
  j["beta_fixed"] = beta_fixed;
  j["gamma_fixed"] = gamma_fixed;
  j["residual"] = residual;
  return j;
}

// ---------------------------------------------------------------------------
// sweeps

SweepResult sweep_theorem1(const SweepConfig& cfg) {
  if (!(cfg.p > 1.0)) throw ParameterError("theorem 1 sweep requires p > 1");
  validate_n_list(cfg.n_list);

  SweepResult res;
  res.table.schema = "bernlab.sweep.theorem1.v1";
  res.table.columns = {"family", "n",      "terms", "p",     "a1_deriv", "a1_error",
                       "hp_norm", "hp_error", "sqrt_log", "ratio", "is_max_ratio"};

  RatioTracker track;
  std::vector<std::pair<double, double>> fit_pts;
  std::vector<std::vector<Table::Cell>> rows;
  for (int nv : cfg.n_list) {
    FamilyMember mem = make_family_member(cfg.family, nv, cfg.seed);
    const NormOptions opts = sweep_norm_options(mem.n, cfg.quad);
    const NormReport a1 = bergman_deriv_norm(mem.f, 1.0, opts);
    const NormReport hp = hardy_norm(mem.f, cfg.p, opts);
    const double slog = std::sqrt(std::log(static_cast<double>(mem.n) + 1.0));
    const double ratio = a1.value / (slog * hp.value);
    track.add(rows.size(), ratio);
    fit_pts.emplace_back(static_cast<double>(mem.n), a1.value);
    rows.push_back({std::string(family_name(cfg.family)), ll(static_cast<int>(mem.n)),
                    ll(mem.terms), cfg.p, a1.value, a1.error_estimate, hp.value,
                    hp.error_estimate, slog, ratio, ll(0)});
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].back() = ll(i == track.max_index ? 1 : 0);
  res.table.rows = std::move(rows);
  res.fit = try_fit(fit_pts, 0.0, std::nullopt);

  res.summary = base_summary("1", cfg);
  attach_ratio_stats(res.summary, track);
  res.summary["fit"] = res.fit ? res.fit->to_json() : nlohmann::ordered_json();
  return res;
}

SweepResult sweep_theorem1_disk_sup(const SweepConfig& cfg) {
  const bool sqrt_log_mode = cfg.p == 1.0;
  if (!sqrt_log_mode && !(cfg.p > 1.0 && cfg.p <= 2.0))
    throw ParameterError("disk-sup sweep requires p = 1 or p in (1, 2]");
  validate_n_list(cfg.n_list);

  SweepResult res;
  res.table.schema = "bernlab.sweep.theorem1_sup.v1";
  res.table.columns = {"family", "n",    "terms", "p",     "ap_deriv_pow", "ap_error",
                       "hinf",   "bound", "ratio", "is_max_ratio"};

  RatioTracker track;
  std::vector<std::pair<double, double>> fit_pts;
  std::vector<std::vector<Table::Cell>> rows;
  for (int nv : cfg.n_list) {
    FamilyMember mem = make_family_member(cfg.family, nv, cfg.seed);
    const NormOptions opts = sweep_norm_options(mem.n, cfg.quad);
    const NormReport ap = bergman_deriv_norm(mem.f, cfg.p, opts);
    const double lhs = std::pow(ap.value, cfg.p);  // int |f'|^p dA
    const double hinf = max_modulus(mem.f, 1.0, opts.angular);
    const double nn = static_cast<double>(mem.n);
    const double bound = sqrt_log_mode ? std::sqrt(std::log(nn + 1.0)) * hinf
                                       : std::pow(nn, cfg.p - 1.0) * std::pow(hinf, cfg.p);
    const double ratio = bound > 0.0 ? lhs / bound : 0.0;
    track.add(rows.size(), ratio);
    fit_pts.emplace_back(nn, lhs);
    rows.push_back({std::string(family_name(cfg.family)), ll(static_cast<int>(mem.n)),
                    ll(mem.terms), cfg.p, lhs, ap.error_estimate, hinf, bound, ratio, ll(0)});
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].back() = ll(i == track.max_index ? 1 : 0);
  res.table.rows = std::move(rows);
  res.fit = sqrt_log_mode ? try_fit(fit_pts, 0.0, std::nullopt)
                          : try_fit(fit_pts, std::nullopt, 0.0);

  res.summary = base_summary("1-sup", cfg);
  attach_ratio_stats(res.summary, track);
  res.summary["fit"] = res.fit ? res.fit->to_json() : nlohmann::ordered_json();
  return res;
}

SweepResult sweep_theorem2(const SweepConfig& cfg) {
  if (!(cfg.p > 1.0)) throw ParameterError("theorem 2 sweep requires p > 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 0.5))
    throw ParameterError("theorem 2 hypothesis: alpha < 1/2 required (and alpha > 0)");
  if (!(cfg.sigma > 0.0 && cfg.sigma < 2.0))
    throw ParameterError("theorem 2 hypothesis: sigma in (0, 2) required");
  validate_n_list(cfg.n_list, 2);

  const double p = cfg.p, sigma = cfg.sigma, alpha = cfg.alpha;
  const double regime_split = 2.0 * sigma / (2.0 - sigma);
  const bool regime1 = p >= regime_split;
  if (!regime1 && !(sigma < p / (alpha * p + 1.0)))
    throw ParameterError(
        "theorem 2 hypothesis (hos): sigma < p/(alpha p + 1) required in the low-p regime");

  SweepResult res;
  res.table.schema = "bernlab.sweep.theorem2.v1";
  res.table.columns = {"family",  "n",       "terms",  "p",      "sigma",   "alpha",
                       "regime",  "besov_pow", "besov_error", "hp_norm", "lambda",
                       "hos1_ok", "hos2_ok", "bound",  "ratio",  "is_max_ratio"};

  RatioTracker track;
  std::vector<std::pair<double, double>> fit_pts;
  std::vector<std::vector<Table::Cell>> rows;
  for (int nv : cfg.n_list) {
    FamilyMember mem = make_family_member(cfg.family, nv, cfg.seed);
    const NormOptions opts = sweep_norm_options(mem.n, cfg.quad);
    const NormReport besov = besov_seminorm(mem.f, sigma, alpha, opts);
    const NormReport hp = hardy_norm(mem.f, p, opts);
    const double nn = static_cast<double>(mem.n);
    const double lhs = std::pow(besov.value, sigma);

    // lambda policy: 1/log n in the high-p regime, else the exponent-matching
    // solution of p = (2 - lambda) sigma / (2 - sigma)
    const double lambda = regime1 ? 1.0 / std::log(nn) : 2.0 - p * (2.0 - sigma) / sigma;
    const bool hos1 = p >= (2.0 - lambda) * sigma / (2.0 - sigma) - 1e-12;
    const bool hos2 = p * (1.0 - 2.0 * alpha) > lambda;

    const double bound =
        (regime1 ? std::pow(nn, alpha * sigma) * std::pow(std::log(nn), 0.5 * sigma)
                 : std::pow(nn, alpha * sigma + sigma / p + 0.5 * sigma - 1.0)) *
        std::pow(hp.value, sigma);
    const double ratio = bound > 0.0 ? lhs / bound : 0.0;
    track.add(rows.size(), ratio);
    fit_pts.emplace_back(nn, lhs);
    rows.push_back({std::string(family_name(cfg.family)), ll(static_cast<int>(mem.n)),
                    ll(mem.terms), p, sigma, alpha, ll(regime1 ? 1 : 2), lhs,
                    besov.error_estimate, hp.value, lambda, ll(hos1 ? 1 : 0), ll(hos2 ? 1 : 0),
                    bound, ratio, ll(0)});
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].back() = ll(i == track.max_index ? 1 : 0);
  res.table.rows = std::move(rows);
  res.fit = try_fit(fit_pts, std::nullopt, 0.0);

  res.summary = base_summary("2", cfg);
  res.summary["regime"] = regime1 ? 1 : 2;
  attach_ratio_stats(res.summary, track);
  res.summary["fit"] = res.fit ? res.fit->to_json() : nlohmann::ordered_json();
  res.summary["beta_target"] = alpha * sigma;
  return res;
}

SweepResult sweep_theorem3(const SweepConfig& cfg) {
  if (!(cfg.p > 1.0)) throw ParameterError("theorem 3 sweep requires p > 1");
  if (cfg.family == Family::Lacunary)
    throw ParameterError("theorem 3 requires a Blaschke-type family (power or blaschke)");
  validate_n_list(cfg.n_list);

  std::vector<std::string> g_ids;
  if (cfg.g_select == "all")
    g_ids = {"1", "cauchy", "rpoly4"};
  else if (cfg.g_select == "one")
    g_ids = {"1"};
  else if (cfg.g_select == "cauchy" || cfg.g_select == "rpoly4" || cfg.g_select == "1")
    g_ids = {cfg.g_select};
  else
    throw ParameterError("unknown g selection: " + cfg.g_select);

  SweepResult res;
  res.table.schema = "bernlab.sweep.theorem3.v1";
  res.table.columns = {"family", "n", "g",     "p",         "lhs",  "lhs_error",
                       "g_hp",   "bound", "ratio", "is_max_ratio"};

  RatioTracker track;
  std::map<std::string, std::vector<std::pair<double, double>>> fit_pts;
  std::vector<std::vector<Table::Cell>> rows;
  for (int nv : cfg.n_list) {
    FamilyMember mem = make_family_member(cfg.family, nv, cfg.seed);
    const NormOptions opts = sweep_norm_options(mem.n, cfg.quad);
    DiskQuadrature quad({opts.panels, opts.gauss, true},
                        {opts.angular, opts.taper, opts.per_scale, opts.floor_count}, 0.0);
    for (const auto& gid : g_ids) {
      const AnalyticFunction g = make_g(gid, cfg.seed);
      const NormOptions gopts = sweep_norm_options(std::max<long long>(g.degree(), 4), cfg.quad);
      const double g_hp = hardy_norm(g, cfg.p, gopts).value;
      const QuadResult lhs = quad.integrate(
          [&](Complex z) { return std::abs(mem.f.deriv(z) * g.eval(z)); });
      const double nn = static_cast<double>(mem.n);
      const double bound = std::sqrt(std::log(nn + 1.0)) * g_hp;
      const double ratio = lhs.value / bound;
      track.add(rows.size(), ratio);
      fit_pts[gid].emplace_back(nn, lhs.value);
      rows.push_back({std::string(family_name(cfg.family)), ll(static_cast<int>(mem.n)), gid,
                      cfg.p, lhs.value, lhs.error_estimate, g_hp, bound, ratio, ll(0)});
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].back() = ll(i == track.max_index ? 1 : 0);
  res.table.rows = std::move(rows);

  res.summary = base_summary("3", cfg);
  attach_ratio_stats(res.summary, track);
  nlohmann::ordered_json fits;
  for (const auto& [gid, pts] : fit_pts) {
    auto fit = try_fit(pts, 0.0, std::nullopt);  // log-power: C (log n)^gamma
    fits[gid] = fit ? fit->to_json() : nlohmann::ordered_json();
    if (gid == g_ids.front() && fit) res.fit = fit;
  }
  res.summary["fits"] = fits;
  return res;
}

SweepResult sweep_pommerenke(const SweepConfig& cfg) {
  if (!(cfg.p >= 1.0 && cfg.p < 2.0))
    throw ParameterError("pommerenke sweep requires 1 <= p < 2");
  validate_n_list(cfg.n_list);

  SweepResult res;
  res.table.schema = "bernlab.sweep.pommerenke.v1";
  res.table.columns = {"family", "n",    "terms", "p",     "mixed", "mixed_error",
                       "hp_norm", "bound", "ratio", "is_max_ratio"};

  RatioTracker track;
  std::vector<std::pair<double, double>> fit_pts;
  std::vector<std::vector<Table::Cell>> rows;
  for (int nv : cfg.n_list) {
    FamilyMember mem = make_family_member(cfg.family, nv, cfg.seed);
    const NormOptions opts = sweep_norm_options(mem.n, cfg.quad);
    const NormReport mixed = pommerenke_mixed_norm(mem.f, cfg.p, opts);
    const NormReport hp = hardy_norm(mem.f, cfg.p, opts);
    const double nn = static_cast<double>(mem.n);
    const double bound = std::pow(nn, 0.5 * cfg.p) * std::pow(hp.value, cfg.p);
    const double ratio = bound > 0.0 ? mixed.value / bound : 0.0;
    track.add(rows.size(), ratio);
    fit_pts.emplace_back(nn, mixed.value);
    rows.push_back({std::string(family_name(cfg.family)), ll(static_cast<int>(mem.n)),
                    ll(mem.terms), cfg.p, mixed.value, mixed.error_estimate, hp.value, bound,
                    ratio, ll(0)});
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].back() = ll(i == track.max_index ? 1 : 0);
  res.table.rows = std::move(rows);
  res.fit = try_fit(fit_pts, std::nullopt, 0.0);

  res.summary = base_summary("pommerenke", cfg);
  attach_ratio_stats(res.summary, track);
  res.summary["fit"] = res.fit ? res.fit->to_json() : nlohmann::ordered_json();
  return res;
}

Table check_lemma32(const AnalyticFunction& f, double p, double n_bound,
                    const std::vector<double>& r_list, const NormOptions& opts) {
  if (!(p >= 1.0 && p < 2.0)) throw ParameterError("lemma 3.2 check requires 1 <= p < 2");
  if (r_list.empty()) throw ParameterError("lemma 3.2 check needs radii");
  const int M = opts.angular > 0 ? opts.angular : default_angular(f.degree()).target;
  const double hp = hardy_norm(f, p, opts).value;

  Table t;
  t.schema = "bernlab.lemma32.v1";
  t.columns = {"r", "lhs", "bound_no_c", "ratio", "is_max_ratio"};
  RatioTracker track;
  for (double r : r_list) {
    if (!(r >= 0.0 && r < 1.0)) throw ParameterError("lemma 3.2 radii must be in [0, 1)");
    const double lhs =
        kTwoPi * circle_mean([&](Complex z) { return f.deriv(z); }, r, 1.0, M).value;
    const double bound = std::sqrt(n_bound) * std::pow(1.0 - r, -1.0 / p) * hp;
    const double ratio = lhs / bound;
    track.add(t.rows.size(), ratio);
    t.rows.push_back({r, lhs, bound, ratio, ll(0)});
  }
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    t.rows[i].back() = ll(i == track.max_index ? 1 : 0);
  return t;
}

SweepResult sweep_lemma32(const SweepConfig& cfg) {
  if (!(cfg.p >= 1.0 && cfg.p < 2.0))
    throw ParameterError("lemma 3.2 sweep requires 1 <= p < 2");
  validate_n_list(cfg.n_list);

  SweepResult res;
  res.table.schema = "bernlab.sweep.lemma32.v1";
  res.table.columns = {"family", "n", "terms", "p", "r", "lhs", "bound_no_c", "ratio",
                       "is_max_ratio"};
  RatioTracker track;
  std::vector<std::vector<Table::Cell>> rows;
  for (int nv : cfg.n_list) {
    FamilyMember mem = make_family_member(cfg.family, nv, cfg.seed);
    const NormOptions opts = sweep_norm_options(mem.n, cfg.quad);
    Table part = check_lemma32(mem.f, cfg.p, static_cast<double>(mem.n), cfg.r_list, opts);
    for (auto& row : part.rows) {
      const double r = std::get<double>(row[0]);
      const double lhs = std::get<double>(row[1]);
      const double bound = std::get<double>(row[2]);
      const double ratio = std::get<double>(row[3]);
      track.add(rows.size(), ratio);
      rows.push_back({std::string(family_name(cfg.family)), ll(static_cast<int>(mem.n)),
                      ll(mem.terms), cfg.p, r, lhs, bound, ratio, ll(0)});
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i].back() = ll(i == track.max_index ? 1 : 0);
  res.table.rows = std::move(rows);

  res.summary = base_summary("lemma32", cfg);
  attach_ratio_stats(res.summary, track);
  res.summary["empirical_C"] = track.max_ratio;
  return res;
}

HaymanWitness hayman_witness_search(const AnalyticFunction& f, double r, double lambda,
                                    double n_bound, int count) {
  if (!(r > 0.5 && r < 1.0)) throw ParameterError("hayman search needs r in (1/2, 1)");
  if (!(lambda > 0.0 && lambda < 2.0)) throw ParameterError("hayman search needs lambda in (0, 2)");
  if (!(n_bound > 0.0)) throw ParameterError("hayman search needs a positive valence bound");

  const double rhs =
      4.0 * n_bound * std::pow(max_modulus(f, r), lambda) / (lambda * (1.0 - r));

  HaymanWitness res;
  res.rhs = rhs;
  res.min_ratio = std::numeric_limits<double>::infinity();

  const double lo = 2.0 * r - 1.0;
  const double step = (r - lo) / 63.0;
  double best_rt = lo;
  auto probe = [&](double rt) -> bool {
    double used = rt;
    const double lhs = hayman_lhs(f, rt, lambda, count, /*allow_perturb=*/true, &used);
    ++res.evaluations;
    const double ratio = lhs / rhs;
    if (ratio < res.min_ratio) {
      res.min_ratio = ratio;
      best_rt = used;
    }
    if (lhs <= rhs) {
      res.found = true;
      res.r_tilde = used;
      res.lhs = lhs;
      return true;
    }
    return false;
  };

  for (int k = 0; k < 64; ++k)
    if (probe(lo + k * step)) return res;
  // one 8x refinement pass around the best candidate
  const double w_lo = std::max(lo, best_rt - step);
  const double w_hi = std::min(r, best_rt + step);
  const double fine = (w_hi - w_lo) / 16.0;
  for (int k = 0; k <= 16; ++k)
    if (probe(w_lo + k * fine)) return res;
  res.r_tilde = best_rt;
  res.lhs = res.min_ratio * rhs;
  return res;
}

nlohmann::ordered_json HaymanWitness::to_json() const {
  nlohmann::ordered_json j;
  j["found"] = found;
  j["r_tilde"] = r_tilde;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["min_ratio"] = min_ratio;
  j["evaluations"] = evaluations;
  return j;
}

SplitDiagnostic split_radius_diagnostic(const AnalyticFunction& f, double p, double K,
                                        const NormOptions& opts) {
  if (!(K > 0.0)) throw ParameterError("split diagnostic needs K > 0");
  (void)p;  // recorded by callers; the split integrand is |f'| dA
  const long long n = std::max<long long>(f.degree(), 1);
  const double r_split = 1.0 - std::pow(static_cast<double>(n), -K);

  const int M = opts.angular > 0 ? opts.angular : default_angular(f.degree()).target;
  DiskQuadrature quad({opts.panels, opts.gauss, true},
                      {M, opts.taper, opts.per_scale, opts.floor_count}, 0.0);
  auto h = [&](Complex z) { return std::abs(f.deriv(z)); };

  SplitDiagnostic d;
  d.r_split = r_split;
  const QuadResult full = quad.integrate(h);
  d.full = full.value;
  if (r_split <= 0.0) {
    d.inner = 0.0;
    d.annulus = full.value;
    d.reconciliation_gap = 0.0;
    return d;
  }
  d.inner = quad.integrate_inner(h, r_split).value;
  d.annulus = quad.integrate_annulus(h, r_split).value;
  d.reconciliation_gap = std::abs(d.inner + d.annulus - d.full);
  return d;
}

nlohmann::ordered_json SplitDiagnostic::to_json() const {
  nlohmann::ordered_json j;
  j["r_split"] = r_split;
  j["inner"] = inner;
  j["annulus"] = annulus;
  j["full"] = full;
  j["reconciliation_gap"] = reconciliation_gap;
  return j;
}

}  // namespace bernlab
