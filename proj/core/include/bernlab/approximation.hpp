#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bernlab/analytic_function.hpp"
#include "bernlab/quadrature.hpp"

namespace bernlab {

/// Taylor coefficients a_0..a_N with N capped at 2^20; the working object
/// of the inverse-approximation suite. In H^2 the best polynomial
/// approximation by degree <= n is the Parseval tail of the coefficients.
class CoeffFunction {
 public:
  static constexpr std::size_t kSupportCap = (std::size_t(1) << 20) + 1;

  CoeffFunction() = default;
  explicit CoeffFunction(std::vector<Complex> coeffs, bool lacunary = false);
  static CoeffFunction from_lacunary(const LacunarySeries& s);

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  int max_index() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool lacunary_structure() const { return lacunary_; }
  double h2_norm_sq() const;

 private:
  std::vector<Complex> coeffs_;
  bool lacunary_ = false;
};

/// E_n(f, H^2): exact Parseval tail sqrt(sum_{k>n} |a_k|^2).
double best_poly_approx_h2(const CoeffFunction& f, int n);

struct BlockSumResult {
  int m = 0;
  double value = 0.0;
  double ratio_to_2_m2 = 0.0;  // value / 2^(m/2)
  std::string method;          // "direct" or "integral"
};

/// sum over n in [2^(2^(m-1)), 2^(2^m)] of 1/(n sqrt(log n)); summed term by
/// term through m = 4, evaluated by the closed-form integral
/// 2 (sqrt(log b) - sqrt(log a)) beyond that.
BlockSumResult dyadic_block_sum(int m);

enum class SeriesWeight { SqrtLog, InvP };  // 1/(n sqrt(log n)) or n^(-1/p)
enum class Verdict { Converges, Diverges, Inconclusive };

const char* verdict_name(Verdict v);

struct SeriesDiagnosis {
  Verdict verdict = Verdict::Inconclusive;
  double partial_sum = 0.0;
  double first_block = 0.0;  // increments over n in [2, 4]
  double power_s = 0.0, power_residual = 0.0;   // d_n ~ C n^-s on dyadic samples
  double geom_rho = 0.0, geom_residual = 0.0;   // d_n ~ C rho^n
  std::vector<std::pair<double, double>> samples;  // (n, increment)

  nlohmann::ordered_json to_json() const;
};

// Convergence diagnosis of sum_n E_n(f, H^2) w(n) [* extra(n)] with
// E_n replaced by the computable Parseval tail. Decision rule: per-step
// dyadic fits of the increments to n^-s and rho^n; "converges" needs the
// decaying model to hold with log-scale residual < 0.1; otherwise
// "diverges" once the partial sums pass 10x the first block, else
// "inconclusive".
SeriesDiagnosis inverse_series_test(const CoeffFunction& f, SeriesWeight weight, double p = 2.0,
                                    const std::function<double(double)>& extra = {});

struct LacAnnulusRow {
  int k = 0;
  double coeff_term = 0.0;        // 2^-k |a_k|
  double exact_lhs = 0.0;         // |a_k| int_band r^(2^k + 1) dr
  double annulus_integral = 0.0;  // int_band |f| dA
  double rhs = 0.0;               // annulus_integral / 2pi
  double compensated_rhs = 0.0;   // (1/pi) A_k (1 - 2^-k)^-(2^k + 1)
  bool ok = false;
  double quad_error = 0.0;
};

struct LacTestResult {
  std::vector<int> k_values;
  std::vector<double> coeff_abs;
  std::vector<double> partial_weighted;  // running sum of 2^-k |a_k|
  std::vector<double> partial_abs;       // running sum of |a_k|
  std::vector<LacAnnulusRow> annulus;

  nlohmann::ordered_json to_json() const;
};

/// Coefficient test behind "f' in A^1 forces sum |a_k| < inf" for lacunary
/// series: both partial-sum sequences plus, for k <= k_annulus_max, the
/// annulus integrals of |f| that quantitatively dominate 2^-k |a_k|
/// (with the exact r^(2^k) compensation factor, circle means normalized
/// by 1/2pi).
LacTestResult lemma_lac_test(const LacunarySeries& f, int k_annulus_max = 12);
LacTestResult lemma_lac_test(const CoeffFunction& f, int k_annulus_max = 12);

// Positive nonincreasing weight handle. at_pow2(k) evaluates phi(2^k) for
// real k, stable far beyond the range where 2^k is representable (needed
// because block boundaries grow double-exponentially).
class PhiFunction {
 public:
  PhiFunction(std::string name, std::function<double(double)> at,
              std::function<double(double)> at_pow2 = {});
  static PhiFunction builtin(const std::string& name);  // log | sqrtlog | loglog

  const std::string& name() const { return name_; }
  double at(double x) const { return at_(x); }
  double at_pow2(double k) const;

 private:
  std::string name_;
  std::function<double(double)> at_;
  std::function<double(double)> at_pow2_;
};

struct CounterexampleBlock {
  double k_begin = 0.0;
  double k_end = 0.0;
  double level = 0.0;              // psi on the block
  double divergent_contrib = 0.0;  // level * sum_{k in block} 1/k  (>= 1 - 1e-9)
  double weighted_contrib = 0.0;   // sum psi(k) phi(2^k)/k  (<= 2^-j)
  double weighted_bound = 0.0;     // the 2^-j target
  bool exact_weighted = false;     // direct summation vs monotone upper bound
};

struct CounterexampleReport {
  std::string phi;
  std::vector<CounterexampleBlock> blocks;
  std::vector<double> divergence_partials;
  double weighted_total = 0.0;
  double square_sum = 0.0;  // sum (psi(k)/k)^2 including the c_J tail bound
  int truncated_k_max = 0;  // largest k whose exponent 2^k fits the support cap
  SeriesDiagnosis en_series;  // E_n-weighted partial sums and tail fits
  bool cert_divergence = false;  // (i)
  bool cert_weighted = false;    // (ii)
  bool cert_h2 = false;          // (iii)
  bool cert_series = false;      // (iv)
  Verdict series_verdict = Verdict::Inconclusive;

  bool all_certificates() const {
    return cert_divergence && cert_weighted && cert_h2 && cert_series;
  }
  nlohmann::ordered_json to_json() const;
};

// Littlewood-style extremal function f = sum psi(j)/j z^(2^j) for a given
// decaying phi: psi is piecewise constant on blocks [K_j, K_{j+1}) with
// K_j minimal subject to phi(2^(K_j)) <= 2^-j and K_{j+1} >= K_j^2, levels
// c_j = min(c_{j-1}, 1/sum_block 1/k) extended until each block adds at
// least 1 to sum psi(k)/k. Returns the coefficient truncation that fits
// the support cap plus the four self-validating certificates.
std::pair<CoeffFunction, CounterexampleReport> littlewood_counterexample(const PhiFunction& phi,
                                                                         int blocks);

struct DyadicTraceRow {
  int m = 0;
  double hp_norm = 0.0;     // ||u_m||_{H^p surrogate}
  double a1_deriv = 0.0;    // ||u_m'||_{A^1}
  double bound_term = 0.0;  // 2^(m/2) E_{2^(2^(m-1))}
  double ratio = 0.0;
  double coeff_mass = 0.0;  // sum |a_k|^2 over the block
};

struct DyadicTrace {
  std::vector<DyadicTraceRow> rows;
  double f2_a1 = 0.0;          // ||f_2'||_{A^1}
  double full_a1 = 0.0;        // ||f'||_{A^1}
  double rhs_total = 0.0;      // f2_a1 + sum_m a1_deriv
  double coeff_mass_gap = 0.0; // |sum of block masses - total mass|

  nlohmann::ordered_json to_json() const;
};

/// Telescoping u_m = f_{2^(2^m)} - f_{2^(2^(m-1))} with truncations as
/// approximants; k_max <= 4 so the top support 2^16 stays inside the cap.
DyadicTrace dyadic_scheme_trace(const CoeffFunction& f, double p, int k_max);

/// int_D |g'| dA for a coefficient polynomial, evaluated on radial panels
/// with full circles done by FFT. Exposed for tests.
QuadResult coeff_a1_deriv_norm(const std::vector<Complex>& coeffs, int panels = 22,
                               int gauss = 10);

/// Boundary H^p norm of a coefficient polynomial via FFT circle values.
double coeff_hp_boundary_norm(const std::vector<Complex>& coeffs, double p);

}  // namespace bernlab
