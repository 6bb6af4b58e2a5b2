#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bernlab/common.hpp"

namespace bernlab {

class AnalyticFunction;

/// Dense Taylor polynomial a_0 + a_1 z + ... + a_d z^d.
class Polynomial {
 public:
  Polynomial() : coeffs_{Complex(0.0, 0.0)} {}
  explicit Polynomial(std::vector<Complex> coeffs);

  /// Index of the last nonzero coefficient (0 for the zero polynomial).
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  Complex eval(Complex z) const;
  std::pair<Complex, Complex> eval_with_deriv(Complex z) const;
  Polynomial derivative() const;

 private:
  std::vector<Complex> coeffs_;
  bool monomial_ = false;
};

/// One term a * z^(2^k) of a series supported on powers of two.
struct LacunaryTerm {
  int k = 0;
  Complex a;
};

// Power series supported on exponents 2^k. Evaluation walks the squaring
// chain z, z^2, z^4, ... so the cost is O(#terms + log max-exponent) even
// when the degree is in the thousands.
class LacunarySeries {
 public:
  LacunarySeries() = default;
  explicit LacunarySeries(std::vector<LacunaryTerm> terms);

  const std::vector<LacunaryTerm>& terms() const { return terms_; }
  int max_k() const { return terms_.empty() ? 0 : terms_.back().k; }
  long long degree() const { return terms_.empty() ? 0 : (1ll << terms_.back().k); }
  double h2_norm() const;  // sqrt(sum |a_k|^2)

  Complex eval(Complex z) const;
  std::pair<Complex, Complex> eval_with_deriv(Complex z) const;

  /// P_n(z) = sum_{k=1..n} z^(2^k).
  static LacunarySeries standard(int n);

 private:
  std::vector<LacunaryTerm> terms_;  // k strictly increasing
};

// Finite Blaschke product with factor convention
//   b_a(z) = (|a|/a) (a - z)/(1 - conj(a) z),  b_0(z) = z,
// so b_a(0) = |a| >= 0. The derivative is evaluated through
//   B'(z) = B(z) sum_j (|a_j|^2 - 1)/((1 - conj(a_j) z)(a_j - z)),
// switching to an exact product-rule pass when z comes within 1e-8 of a
// zero (the summed form cancels there).
class BlaschkeProduct {
 public:
  BlaschkeProduct() = default;
  explicit BlaschkeProduct(std::vector<Complex> zeros);

  const std::vector<Complex>& zeros() const { return zeros_; }
  int degree() const { return static_cast<int>(zeros_.size()); }

  Complex eval(Complex z) const;
  std::pair<Complex, Complex> eval_with_deriv(Complex z) const;

 private:
  std::pair<Complex, Complex> eval_product_rule(Complex z) const;

  std::vector<Complex> zeros_;
  // structure-of-arrays mirrors for the vectorized factor loop
  std::vector<double> zr_, zi_, s_, phr_, phi_;
};

/// Ratio of polynomials; all denominator roots must lie outside the closed
/// unit disk (verified at construction by simultaneous root iteration).
class RationalFunction {
 public:
  RationalFunction(Polynomial numerator, Polynomial denominator);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  Complex eval(Complex z) const;
  std::pair<Complex, Complex> eval_with_deriv(Complex z) const;

 private:
  Polynomial num_, den_;
};

struct ProductFunction {
  std::vector<AnalyticFunction> factors;
};

class AnalyticFunction {
 public:
  enum class Kind { Polynomial, Lacunary, Blaschke, Rational, Product };

  AnalyticFunction() : repr_(Polynomial{}) {}
  AnalyticFunction(Polynomial p) : repr_(std::move(p)) {}
  AnalyticFunction(LacunarySeries s) : repr_(std::move(s)) {}
  AnalyticFunction(BlaschkeProduct b) : repr_(std::move(b)) {}
  AnalyticFunction(RationalFunction r) : repr_(std::move(r)) {}
  AnalyticFunction(ProductFunction p) : repr_(std::move(p)) {}

  Kind kind() const;
  std::string kind_name() const;

  Complex eval(Complex z) const;
  Complex deriv(Complex z) const;
  std::pair<Complex, Complex> eval_with_deriv(Complex z) const;

  /// Degree parameter: polynomial degree, lacunary top exponent, number of
  /// Blaschke zeros, max(num, den) degree, or the sum over product factors.
  /// Doubles as the certified valence bound of the representation.
  long long degree() const;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&repr_);
  }

 private:
  std::variant<Polynomial, LacunarySeries, BlaschkeProduct, RationalFunction, ProductFunction>
      repr_;
};

/// First n_coeffs Taylor coefficients via FFT of boundary samples at r = 1
/// (boundary Fourier coefficients equal Taylor coefficients for functions
/// analytic on the closed disk). Sample count is at least 8 * n_coeffs.
std::vector<Complex> taylor_coeffs(const AnalyticFunction& f, int n_coeffs);

enum class FamilyKind { ClusteredBlaschke, UniformBlaschke, RandomPolynomial };

/// Deterministic seeded test families:
///  - clustered-blaschke: n zeros with |a| = 1 - 1/n, angles uniform;
///  - uniform-blaschke:   n zeros distributed by area measure;
///  - random-polynomial:  degree n, unit-variance complex Gaussian
///    coefficients, leading coefficient forced away from zero.
AnalyticFunction random_family(FamilyKind kind, int n, std::uint64_t seed);

}  // namespace bernlab
