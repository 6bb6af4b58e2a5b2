#include "bernlab/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bernlab/fft.hpp"
#include "bernlab/summation.hpp"

namespace bernlab {

namespace {

// --- harmonic-range helpers (block boundaries grow double-exponentially,
// so sums over [a, b) must work for astronomically large endpoints) ---

double digamma(double x) {
  double shift = 0.0;
  while (x < 12.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  return shift + std::log(x) - 0.5 * inv -
         inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

double trigamma(double x) {
  double s = 0.0;
  while (x < 12.0) {
    s += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  return s + inv * (1.0 + 0.5 * inv + inv2 / 6.0 - inv2 * inv2 / 30.0);
}

/// sum_{k = ceil(a)}^{ceil(b) - 1} 1/k
double harmonic_range(double a, double b) {
  const double ca = std::ceil(a), cb = std::ceil(b);
  if (!(cb > ca)) return 0.0;
  if (cb - ca <= 2e6 && cb < 4.0e15) {
    double s = 0.0;
    for (long long k = static_cast<long long>(cb) - 1; k >= static_cast<long long>(ca); --k)
      s += 1.0 / static_cast<double>(k);
    return s;
  }
  return digamma(cb) - digamma(ca);
}

/// sum_{k = ceil(a)}^{ceil(b) - 1} 1/k^2
double inv_square_range(double a, double b) {
  const double ca = std::ceil(a), cb = std::ceil(b);
  if (!(cb > ca)) return 0.0;
  if (cb - ca <= 2e6 && cb < 4.0e15) {
    double s = 0.0;
    for (long long k = static_cast<long long>(cb) - 1; k >= static_cast<long long>(ca); --k)
      s += 1.0 / (static_cast<double>(k) * static_cast<double>(k));
    return s;
  }
  return trigamma(ca) - trigamma(cb);
}

}  // namespace

// ---------------------------------------------------------------------------
// CoeffFunction

CoeffFunction::CoeffFunction(std::vector<Complex> coeffs, bool lacunary)
    : coeffs_(std::move(coeffs)), lacunary_(lacunary) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  if (coeffs_.size() > kSupportCap)
    throw ParameterError("coefficient support exceeds the 2^20 cap");
}

CoeffFunction CoeffFunction::from_lacunary(const LacunarySeries& s) {
  const long long deg = s.degree();
  if (deg + 1 > static_cast<long long>(kSupportCap))
    throw ParameterError("lacunary degree exceeds the coefficient support cap");
  std::vector<Complex> c(static_cast<std::size_t>(deg) + 1, Complex(0.0, 0.0));
  for (const auto& t : s.terms()) c[static_cast<std::size_t>(1) << t.k] = t.a;
  return CoeffFunction(std::move(c), true);
}

double CoeffFunction::h2_norm_sq() const {
  std::vector<double> sq(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) sq[k] = std::norm(coeffs_[k]);
  return pairwise_sum(sq);
}

double best_poly_approx_h2(const CoeffFunction& f, int n) {
  if (n < 0) throw ParameterError("approximation degree must be >= 0");
  const auto& a = f.coeffs();
  double tail = 0.0;
  for (std::size_t k = a.size(); k > static_cast<std::size_t>(n) + 1;) {
    --k;
    tail += std::norm(a[k]);
  }
  return std::sqrt(tail);
}

// ---------------------------------------------------------------------------
// dyadic_block_sum

BlockSumResult dyadic_block_sum(int m) {
  if (m < 1) throw ParameterError("dyadic block index must be >= 1");
  BlockSumResult res;
  res.m = m;
  if (m <= 4) {
    const long long lo = 1ll << (1ll << (m - 1));
    const long long hi = 1ll << (1ll << m);
    double s = 0.0;
    for (long long n = hi; n >= lo; --n) {
      const double x = static_cast<double>(n);
      s += 1.0 / (x * std::sqrt(std::log(x)));
    }
    res.value = s;
    res.method = "direct";
  } else {
    // int dt/(t sqrt(log t)) = 2 sqrt(log t); between 2^(2^(m-1)) and 2^(2^m)
    const double log2v = std::log(2.0);
    const double sm = std::exp2(0.5 * m);
    res.value = 2.0 * std::sqrt(log2v) * sm * (1.0 - std::exp2(-0.5));
    res.method = "integral";
  }
  res.ratio_to_2_m2 = res.value / std::exp2(0.5 * m);
  return res;
}

// ---------------------------------------------------------------------------
// inverse_series_test

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Converges: return "converges";
    case Verdict::Diverges: return "diverges";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

SeriesDiagnosis inverse_series_test(const CoeffFunction& f, SeriesWeight weight, double p,
                                    const std::function<double(double)>& extra) {
  if (weight == SeriesWeight::InvP && !(p > 0.0))
    throw ParameterError("n^(-1/p) weight needs p > 0");

  const auto& a = f.coeffs();
  int last = static_cast<int>(a.size()) - 1;
  while (last > 0 && std::abs(a[last]) == 0.0) --last;

  SeriesDiagnosis diag;
  if (last == 0 || (last >= 0 && std::abs(a[last]) == 0.0)) {
    diag.verdict = Verdict::Converges;  // zero function, sum 0
    return diag;
  }

  std::vector<double> tail(last + 2, 0.0);
  for (int k = last; k >= 0; --k) tail[k] = tail[k + 1] + std::norm(a[k]);

  auto w = [&](double n) {
    return weight == SeriesWeight::SqrtLog ? 1.0 / (n * std::sqrt(std::log(n)))
                                           : std::pow(n, -1.0 / p);
  };

  double sum = 0.0, first_block = 0.0;
  for (int n = 2; n <= last; ++n) {
    const double e = std::sqrt(tail[n + 1]);
    double d = e * w(n);
    if (extra) d *= extra(static_cast<double>(n));
    sum += d;
    if (n <= 4) first_block += d;
  }
  diag.partial_sum = sum;
  diag.first_block = first_block;

  for (int n = 2; n <= last; n *= 2) {
    const double e = std::sqrt(tail[n + 1]);
    double d = e * w(n);
    if (extra) d *= extra(static_cast<double>(n));
    diag.samples.emplace_back(static_cast<double>(n), d);
  }

  if (sum == 0.0) {
    diag.verdict = Verdict::Converges;
    return diag;
  }

  // Per-step fits over a window of four positive dyadic samples. The last
  // one or two samples can be contaminated by the finite coefficient
  // support (the Parseval tail dies at the cap, not by the true decay), so
  // the window is allowed to step off up to two trailing samples.
  std::vector<std::pair<double, double>> pos;
  for (const auto& s : diag.samples)
    if (s.second > 0.0) pos.push_back(s);
  for (int drop = 0; drop <= 2; ++drop) {
    const int end = static_cast<int>(pos.size()) - drop;
    const int take = std::min<int>(4, end);
    if (take < 2) break;
    std::vector<double> s_slopes, rho_slopes;
    for (int i = end - take; i + 1 < end; ++i) {
      const auto& [n0, d0] = pos[i];
      const auto& [n1, d1] = pos[i + 1];
      s_slopes.push_back(-(std::log(d1) - std::log(d0)) / (std::log(n1) - std::log(n0)));
      rho_slopes.push_back((std::log(d1) - std::log(d0)) / (n1 - n0));
    }
    double sm = 0.0, rm = 0.0;
    for (std::size_t i = 0; i < s_slopes.size(); ++i) {
      sm += s_slopes[i];
      rm += rho_slopes[i];
    }
    sm /= s_slopes.size();
    rm /= rho_slopes.size();
    double sres = 0.0, rres = 0.0;
    for (std::size_t i = 0; i < s_slopes.size(); ++i) {
      sres = std::max(sres, std::abs(s_slopes[i] - sm));
      rres = std::max(rres, std::abs(rho_slopes[i] - rm));
    }
    diag.power_s = sm;
    diag.power_residual = sres;
    diag.geom_rho = std::exp(rm);
    diag.geom_residual = rres;
    if ((sm > 1.02 && sres < 0.1) || (diag.geom_rho < 0.99 && rres < 0.1)) {
      diag.verdict = Verdict::Converges;
      return diag;
    }
  }
  diag.verdict = (first_block > 0.0 && sum > 10.0 * first_block) ? Verdict::Diverges
                                                                 : Verdict::Inconclusive;
  return diag;
}

nlohmann::ordered_json SeriesDiagnosis::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(verdict);
  j["partial_sum"] = partial_sum;
  j["first_block"] = first_block;
  j["power_fit"] = {{"s", power_s}, {"residual", power_residual}};
  j["geometric_fit"] = {{"rho", geom_rho}, {"residual", geom_residual}};
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [n, d] : samples) arr.push_back({n, d});
  j["dyadic_increments"] = arr;
  return j;
}

// ---------------------------------------------------------------------------
// lemma_lac_test

LacTestResult lemma_lac_test(const LacunarySeries& f, int k_annulus_max) {
  LacTestResult res;
  double pw = 0.0, pa = 0.0;
  for (const auto& t : f.terms()) {
    const double m = std::abs(t.a);
    pw += std::ldexp(m, -t.k);
    pa += m;
    res.k_values.push_back(t.k);
    res.coeff_abs.push_back(m);
    res.partial_weighted.push_back(pw);
    res.partial_abs.push_back(pa);
  }

  const long long deg = f.degree();
  const int depth = std::max(k_annulus_max + 2, 14);
  AngularPolicy pol;
  pol.target = static_cast<int>(std::max<long long>(4096, std::min<long long>(8 * deg, 1 << 17)));
  pol.taper = true;
  pol.per_scale = 16.0;
  pol.floor_count = 1024;
  DiskQuadrature quad({depth, 12, true}, pol, 0.0);

  for (const auto& t : f.terms()) {
    if (t.k > k_annulus_max) continue;
    const int k = t.k;
    const double r_lo = 1.0 - std::ldexp(1.0, -k);
    const double r_hi = 1.0 - std::ldexp(1.0, -k - 1);
    if (!(r_lo >= 0.0 && r_lo < r_hi)) continue;  // k = 0 band is [0, 1/2]
    const QuadResult band =
        quad.integrate_band([&](Complex z) { return std::abs(f.eval(z)); }, r_lo, r_hi);
    LacAnnulusRow row;
    row.k = k;
    const double am = std::abs(t.a);
    row.coeff_term = std::ldexp(am, -k);
    // exact int_band r^(2^k + 1) dr
    const double q = std::ldexp(1.0, k) + 2.0;
    row.exact_lhs = am * (std::pow(r_hi, q) - std::pow(r_lo, q)) / q;
    row.annulus_integral = band.value;
    row.quad_error = band.error_estimate;
    row.rhs = band.value / kTwoPi;
    row.compensated_rhs =
        r_lo > 0.0 ? band.value / kPi * std::pow(r_lo, -(std::ldexp(1.0, k) + 1.0))
                   : std::numeric_limits<double>::infinity();
    row.ok = row.exact_lhs <= row.rhs * (1.0 + 1e-9) + row.quad_error / kTwoPi + 1e-15;
    res.annulus.push_back(row);
  }
  return res;
}

LacTestResult lemma_lac_test(const CoeffFunction& f, int k_annulus_max) {
  const auto& a = f.coeffs();
  std::vector<LacunaryTerm> terms;
  for (std::size_t j = 1; j < a.size(); ++j) {
    if (std::abs(a[j]) == 0.0) continue;
    if ((j & (j - 1)) != 0)
      throw ParameterError("coefficients are not supported on powers of two");
    int k = 0;
    while ((std::size_t(1) << k) < j) ++k;
    terms.push_back({k, a[j]});
  }
  if (a.size() > 0 && std::abs(a[0]) != 0.0)
    throw ParameterError("lacunary test requires a vanishing constant term");
  return lemma_lac_test(LacunarySeries(std::move(terms)), k_annulus_max);
}

nlohmann::ordered_json LacTestResult::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json parts = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < k_values.size(); ++i)
    parts.push_back({{"k", k_values[i]},
                     {"abs_coeff", coeff_abs[i]},
                     {"partial_weighted", partial_weighted[i]},
                     {"partial_abs", partial_abs[i]}});
  j["partials"] = parts;
  nlohmann::ordered_json ann = nlohmann::ordered_json::array();
  for (const auto& r : annulus)
    ann.push_back({{"k", r.k},
                   {"coeff_term", r.coeff_term},
                   {"exact_lhs", r.exact_lhs},
                   {"annulus_integral", r.annulus_integral},
                   {"rhs", r.rhs},
                   {"compensated_rhs", r.compensated_rhs},
                   {"quad_error", r.quad_error},
                   {"ok", r.ok}});
  j["annulus"] = ann;
  return j;
}

// ---------------------------------------------------------------------------
// PhiFunction

PhiFunction::PhiFunction(std::string name, std::function<double(double)> at,
                         std::function<double(double)> at_pow2)
    : name_(std::move(name)), at_(std::move(at)), at_pow2_(std::move(at_pow2)) {}

double PhiFunction::at_pow2(double k) const {
  if (at_pow2_) return at_pow2_(k);
  if (k <= 900.0) return at_(std::exp2(k));
  throw NumericalError("phi handle cannot be probed beyond 2^900");
}

PhiFunction PhiFunction::builtin(const std::string& name) {
  const double ln2 = std::log(2.0);
  if (name == "log")
    return PhiFunction(
        name, [](double x) { return 1.0 / std::log(x + 2.0); },
        [ln2](double k) {
          return 1.0 / (k <= 900.0 ? std::log(std::exp2(k) + 2.0) : k * ln2);
        });
  if (name == "sqrtlog")
    return PhiFunction(
        name, [](double x) { return 1.0 / std::sqrt(std::log(x + 2.0)); },
        [ln2](double k) {
          return 1.0 / std::sqrt(k <= 900.0 ? std::log(std::exp2(k) + 2.0) : k * ln2);
        });
  if (name == "loglog")
    return PhiFunction(
        name, [](double x) { return 1.0 / std::log(std::log(x + 16.0)); },
        [ln2](double k) {
          return 1.0 / std::log(k <= 900.0 ? std::log(std::exp2(k) + 16.0) : k * ln2);
        });
  throw ParameterError("unknown phi: " + name + " (builtins: log, sqrtlog, loglog)");
}

// ---------------------------------------------------------------------------
// littlewood_counterexample

namespace {

// minimal (integer when representable) k >= lo with phi(2^k) <= target
double find_min_k(const PhiFunction& phi, double lo, double target, int block_index) {
  double k = std::max(lo, 1.0);
  auto stuck = [&] {
    throw ParameterError("phi does not decay within the probed range (stuck at block " +
                         std::to_string(block_index) + ")");
  };
  double val;
  try {
    val = phi.at_pow2(k);
  } catch (const NumericalError&) {
    stuck();
    throw;
  }
  if (val <= target) return k;
  double step = 1.0;
  try {
    while (phi.at_pow2(k + step) > target) {
      step *= 2.0;
      if (k + step >= 1e290) stuck();
    }
  } catch (const NumericalError&) {
    stuck();
  }
  double a = k + 0.5 * step, b = k + step;
  if (phi.at_pow2(a) <= target) {
    b = a;
    a = k;
  }
  while (b - a > std::max(0.5, b * 1e-12)) {
    const double mid = 0.5 * (a + b);
    (phi.at_pow2(mid) <= target ? b : a) = mid;
  }
  if (b > 4.0e15) return b;
  double kk = std::ceil(b);
  while (kk - 1.0 >= std::max(lo, 1.0) && phi.at_pow2(kk - 1.0) <= target) kk -= 1.0;
  return kk;
}

// sharp-enough upper bound for level * sum_{k in [a,b)} phi(2^k)/k: exact
// summation when the block is short, otherwise a monotone segment bound.
std::pair<double, bool> weighted_block(const PhiFunction& phi, double level, double a, double b) {
  if (b - a <= 2e6 && b < 4.0e15) {
    double s = 0.0;
    for (double k = std::ceil(a); k < b; k += 1.0) s += phi.at_pow2(k) / k;
    return {level * s, true};
  }
  double s = 0.0;
  const double ratio = std::pow(b / a, 1.0 / 64.0);
  double lo = a;
  for (int i = 0; i < 64; ++i) {
    const double hi = (i == 63) ? b : a * std::pow(ratio, i + 1);
    s += phi.at_pow2(lo) * harmonic_range(lo, hi);  // phi nonincreasing
    lo = hi;
  }
  return {level * s, false};
}

}  // namespace

std::pair<CoeffFunction, CounterexampleReport> littlewood_counterexample(const PhiFunction& phi,
                                                                         int blocks) {
  if (blocks < 3) throw ParameterError("counterexample construction needs at least 3 blocks");

  CounterexampleReport rep;
  rep.phi = phi.name();

  double c_prev = 1.0;
  double K = find_min_k(phi, 1.0, 0.5, 1);
  double div_partial = 0.0;

  for (int j = 1; j <= blocks; ++j) {
    const double next_target = std::ldexp(1.0, -(j + 1));
    const double next_start = find_min_k(phi, K + 1.0, next_target, j + 1);
    double b = std::max({K * K, next_start, K + 1.0});
    double H = harmonic_range(K, b);
    const double c = std::min(c_prev, 1.0 / H);
    if (c * H < 1.0) {
      // extend the block until it contributes at least 1 to sum psi(k)/k
      double hi = b;
      while (c * harmonic_range(K, hi) < 1.0) {
        hi *= 2.0;
        if (hi >= 1e290)
          throw ParameterError("block extension ran away (stuck at block " + std::to_string(j) +
                               ")");
      }
      double lo = std::max(b, 0.5 * hi);
      while (hi - lo > std::max(1.0, hi * 1e-12)) {
        const double mid = 0.5 * (lo + hi);
        (c * harmonic_range(K, mid) >= 1.0 ? hi : lo) = mid;
      }
      b = hi;
      H = harmonic_range(K, b);
    }

    CounterexampleBlock blk;
    blk.k_begin = K;
    blk.k_end = b;
    blk.level = c;
    blk.divergent_contrib = c * H;
    auto [tw, exact] = weighted_block(phi, c, K, b);
    blk.weighted_contrib = tw;
    blk.weighted_bound = std::ldexp(1.0, -j);
    blk.exact_weighted = exact;
    rep.blocks.push_back(blk);

    div_partial += blk.divergent_contrib;
    rep.divergence_partials.push_back(div_partial);
    rep.weighted_total += tw;
    rep.square_sum += c * c * inv_square_range(K, b);

    c_prev = c;
    K = b;
  }
  rep.square_sum += c_prev * c_prev / std::max(K - 1.0, 1.0);  // tail of sum 1/k^2

  rep.cert_divergence = true;
  for (std::size_t i = 0; i < rep.blocks.size(); ++i) {
    if (!(rep.blocks[i].divergent_contrib >= 1.0 - 1e-9)) rep.cert_divergence = false;
  }
  rep.cert_weighted = true;
  for (const auto& blk : rep.blocks)
    if (!(blk.weighted_contrib <= blk.weighted_bound)) rep.cert_weighted = false;
  rep.cert_h2 = std::isfinite(rep.square_sum) && rep.square_sum < 1e9;

  // coefficient truncation within the support cap (exponents 2^k, k <= 20)
  int k_cap = 0;
  while ((std::size_t(1) << (k_cap + 1)) < CoeffFunction::kSupportCap) ++k_cap;
  std::vector<LacunaryTerm> terms;
  for (const auto& blk : rep.blocks) {
    if (blk.k_begin > k_cap) break;
    const double hi = std::min(blk.k_end - 1.0, static_cast<double>(k_cap));
    for (double k = blk.k_begin; k <= hi; k += 1.0) {
      terms.push_back({static_cast<int>(k), Complex(blk.level / k, 0.0)});
      rep.truncated_k_max = static_cast<int>(k);
    }
  }
  CoeffFunction f = terms.empty() ? CoeffFunction(std::vector<Complex>{Complex(0.0, 0.0)}, true)
                                  : CoeffFunction::from_lacunary(LacunarySeries(std::move(terms)));

  rep.en_series =
      inverse_series_test(f, SeriesWeight::SqrtLog, 2.0, [&](double n) { return phi.at(n); });
  rep.series_verdict = rep.en_series.verdict;
  rep.cert_series = rep.en_series.verdict == Verdict::Converges;

  return {std::move(f), std::move(rep)};
}

nlohmann::ordered_json CounterexampleReport::to_json() const {
  nlohmann::ordered_json j;
  j["phi"] = phi;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& b : blocks)
    arr.push_back({{"k_begin", b.k_begin},
                   {"k_end", b.k_end},
                   {"level", b.level},
                   {"divergent_contrib", b.divergent_contrib},
                   {"weighted_contrib", b.weighted_contrib},
                   {"weighted_bound", b.weighted_bound},
                   {"exact_weighted", b.exact_weighted}});
  j["blocks"] = arr;
  j["divergence_partials"] = divergence_partials;
  j["weighted_total"] = weighted_total;
  j["square_sum"] = square_sum;
  j["truncated_k_max"] = truncated_k_max;
  j["certificates"] = {{"divergence", cert_divergence},
                       {"weighted_convergence", cert_weighted},
                       {"h2_membership", cert_h2},
                       {"en_series", cert_series}};
  j["series_verdict"] = verdict_name(series_verdict);
  j["en_series"] = en_series.to_json();
  return j;
}

// ---------------------------------------------------------------------------
// coefficient-polynomial norms via FFT circles

namespace {

constexpr int kCoeffAngularCap = 1 << 22;

int coeff_circle_count(std::size_t degree, int mult) {
  const std::size_t want = std::max<std::size_t>(4096, mult * (degree + 1));
  return static_cast<int>(std::min<std::size_t>(next_pow2(want), kCoeffAngularCap));
}

// |g| on the full circle of radius r by zero-padded inverse FFT
void circle_abs_values(const std::vector<Complex>& coeffs, double r, int m,
                       std::vector<Complex>& work, std::vector<double>& out) {
  work.assign(m, Complex(0.0, 0.0));
  double rk = 1.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {  // coeffs.size() <= m by construction
    work[k] = coeffs[k] * rk;
    rk *= r;
  }
  fft_inplace(work, true);
  out.resize(m);
  for (int jj = 0; jj < m; ++jj) out[jj] = std::abs(work[jj]) * m;
}

double a1_run(const std::vector<Complex>& dcoeffs, const RadialPanels& rp, int m_top) {
  auto nodes = radial_nodes_area(rp, 0.0, 0.0, 1.0);
  std::vector<double> parts(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    thread_local std::vector<Complex> scaled, work;
    thread_local std::vector<double> vals;
    const double r = nodes[i].r;
    scaled.resize(dcoeffs.size());
    double rk = 1.0, top = 0.0;
    for (std::size_t k = 0; k < dcoeffs.size(); ++k) {
      scaled[k] = dcoeffs[k] * rk;
      top = std::max(top, std::norm(scaled[k]));
      rk *= r;
    }
    // away from the boundary the scaled spectrum dies geometrically; the
    // circle count only needs to cover the surviving band
    std::size_t cut = dcoeffs.size();
    while (cut > 1 && std::norm(scaled[cut - 1]) <= top * 1e-40) --cut;
    const int m = std::min(m_top, coeff_circle_count(cut - 1, 4));
    work.assign(m, Complex(0.0, 0.0));
    std::copy(scaled.begin(), scaled.begin() + std::min<std::size_t>(cut, m), work.begin());
    fft_inplace(work, true);
    vals.resize(m);
    for (int jj = 0; jj < m; ++jj) vals[jj] = std::abs(work[jj]) * m;
    parts[i] = nodes[i].weight * (kTwoPi / m) * pairwise_sum(vals);
  });
  return pairwise_sum(parts);
}

}  // namespace

QuadResult coeff_a1_deriv_norm(const std::vector<Complex>& coeffs, int panels, int gauss) {
  std::vector<Complex> d;
  if (coeffs.size() > 1) {
    d.resize(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k)
      d[k - 1] = coeffs[k] * static_cast<double>(k);
  } else {
    d.push_back(0.0);
  }
  const int m = coeff_circle_count(d.size() - 1, 4);
  const double coarse = a1_run(d, {panels, gauss, true}, m);
  const double refined = a1_run(d, {panels + 4, gauss, true},
                                std::min(2 * m, kCoeffAngularCap));
  return {refined, std::abs(refined - coarse)};
}

double coeff_hp_boundary_norm(const std::vector<Complex>& coeffs, double p) {
  if (!(p >= 1.0)) throw ParameterError("boundary norm requires p >= 1");
  const int m = coeff_circle_count(coeffs.size() - 1, 8);
  std::vector<Complex> work;
  std::vector<double> vals;
  circle_abs_values(coeffs, 1.0, m, work, vals);
  for (auto& v : vals) v = std::pow(v, p);
  return std::pow(pairwise_sum(vals) / m, 1.0 / p);
}

// ---------------------------------------------------------------------------
// dyadic_scheme_trace

DyadicTrace dyadic_scheme_trace(const CoeffFunction& f, double p, int k_max) {
  if (k_max < 1) throw ParameterError("dyadic trace needs k_max >= 1");
  if ((1ll << k_max) > 20)
    throw ParameterError("k_max too large for the coefficient support cap (k_max <= 4)");
  if (!(p >= 1.0)) throw ParameterError("dyadic trace needs p >= 1");

  const auto& a = f.coeffs();
  const int n_max = static_cast<int>(a.size()) - 1;

  auto truncation = [&](long long n) {
    const long long hi = std::min<long long>(n, n_max);
    return std::vector<Complex>(a.begin(), a.begin() + hi + 1);
  };
  auto block_coeffs = [&](long long lo, long long hi) {
    // coefficients with index in (lo, hi]
    std::vector<Complex> c(static_cast<std::size_t>(std::min<long long>(hi, n_max)) + 1,
                           Complex(0.0, 0.0));
    bool any = false;
    for (long long k = lo + 1; k <= std::min<long long>(hi, n_max); ++k) {
      c[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)];
      if (std::abs(c[static_cast<std::size_t>(k)]) != 0.0) any = true;
    }
    if (!any) c.assign(1, Complex(0.0, 0.0));
    return c;
  };

  DyadicTrace trace;
  const std::vector<Complex> f2 = truncation(2);
  trace.f2_a1 = coeff_a1_deriv_norm(f2).value;
  trace.full_a1 = coeff_a1_deriv_norm(a).value;

  double mass_total = f.h2_norm_sq();
  double mass_blocks = 0.0;
  for (int k = 0; k <= std::min<long long>(2, n_max); ++k) mass_blocks += std::norm(a[k]);

  double rhs = trace.f2_a1;
  for (int m = 1; m <= k_max; ++m) {
    const long long lo = 1ll << (1ll << (m - 1));
    const long long hi = 1ll << (1ll << m);
    const std::vector<Complex> u = block_coeffs(lo, hi);

    DyadicTraceRow row;
    row.m = m;
    double mass = 0.0;
    for (const auto& c : u) mass += std::norm(c);
    row.coeff_mass = mass;
    mass_blocks += mass;

    if (mass == 0.0) {
      row.hp_norm = 0.0;
      row.a1_deriv = 0.0;
    } else {
      row.hp_norm = (p == 2.0) ? std::sqrt(mass) : coeff_hp_boundary_norm(u, p);
      row.a1_deriv = coeff_a1_deriv_norm(u).value;
    }

    // E_{2^(2^(m-1))}: exact Parseval tail for p = 2, boundary norm of the
    // truncation remainder otherwise (an upper bound for the best error)
    double e;
    if (p == 2.0) {
      e = best_poly_approx_h2(f, static_cast<int>(std::min<long long>(lo, n_max + 1)));
    } else {
      std::vector<Complex> tail_poly(a);
      for (long long k = 0; k <= std::min<long long>(lo, n_max); ++k)
        tail_poly[static_cast<std::size_t>(k)] = 0.0;
      e = coeff_hp_boundary_norm(tail_poly, p);
    }
    row.bound_term = std::exp2(0.5 * m) * e;
    row.ratio = row.bound_term > 0.0 ? row.a1_deriv / row.bound_term : 0.0;

    rhs += row.a1_deriv;
    trace.rows.push_back(row);
  }

  // mass beyond the last block counts toward the reconciliation
  const long long top = 1ll << (1ll << k_max);
  for (long long k = top + 1; k <= n_max; ++k) mass_blocks += std::norm(a[static_cast<std::size_t>(k)]);

  trace.rhs_total = rhs;
  trace.coeff_mass_gap = std::abs(mass_blocks - mass_total);
  return trace;
}

nlohmann::ordered_json DyadicTrace::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows)
    arr.push_back({{"m", r.m},
                   {"hp_norm", r.hp_norm},
                   {"a1_deriv", r.a1_deriv},
                   {"bound_term", r.bound_term},
                   {"ratio", r.ratio},
                   {"coeff_mass", r.coeff_mass}});
  j["rows"] = arr;
  j["f2_a1"] = f2_a1;
  j["full_a1"] = full_a1;
  j["rhs_total"] = rhs_total;
  j["coeff_mass_gap"] = coeff_mass_gap;
  return j;
}

}  // namespace bernlab
