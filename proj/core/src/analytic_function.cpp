#include "bernlab/analytic_function.hpp"

#include <algorithm>
#include <cmath>

#include "bernlab/fft.hpp"
#include "bernlab/prng.hpp"
#include "bernlab/roots.hpp"

namespace bernlab {

namespace {

Complex ipow(Complex z, long long e) {
  Complex acc = 1.0, base = z;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

constexpr int kMaxLacunaryK = 40;
constexpr std::size_t kTaylorSampleCap = std::size_t(1) << 22;

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && std::abs(coeffs_.back()) == 0.0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  monomial_ = true;
  for (std::size_t k = 0; k + 1 < coeffs_.size(); ++k)
    if (std::abs(coeffs_[k]) != 0.0) {
      monomial_ = false;
      break;
    }
}

Complex Polynomial::eval(Complex z) const {
  const int d = degree();
  if (monomial_) return coeffs_[d] * ipow(z, d);
  Complex p = coeffs_[d];
  for (int k = d - 1; k >= 0; --k) p = p * z + coeffs_[k];
  return p;
}

std::pair<Complex, Complex> Polynomial::eval_with_deriv(Complex z) const {
  const int d = degree();
  if (monomial_) {
    if (d == 0) return {coeffs_[0], 0.0};
    Complex zd1 = ipow(z, d - 1);
    return {coeffs_[d] * zd1 * z, coeffs_[d] * static_cast<double>(d) * zd1};
  }
  Complex p = coeffs_[d], dp = 0.0;
  for (int k = d - 1; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + coeffs_[k];
  }
  return {p, dp};
}

Polynomial Polynomial::derivative() const {
  const int d = degree();
  if (d == 0) return Polynomial{};
  std::vector<Complex> c(d);
  for (int k = 1; k <= d; ++k) c[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Polynomial(std::move(c));
}

// ---------------------------------------------------------------------------
// LacunarySeries

LacunarySeries::LacunarySeries(std::vector<LacunaryTerm> terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const LacunaryTerm& t) { return std::abs(t.a) == 0.0; });
  for (const auto& t : terms_)
    if (t.k < 0 || t.k > kMaxLacunaryK)
      throw ParameterError("lacunary exponent index out of range [0, 40]");
  std::sort(terms_.begin(), terms_.end(),
            [](const LacunaryTerm& a, const LacunaryTerm& b) { return a.k < b.k; });
  for (std::size_t i = 0; i + 1 < terms_.size(); ++i)
    if (terms_[i].k == terms_[i + 1].k)
      throw ParameterError("lacunary exponents must be distinct powers of two");
}

LacunarySeries LacunarySeries::standard(int n) {
  if (n < 0) throw ParameterError("lacunary term count must be nonnegative");
  std::vector<LacunaryTerm> t;
  t.reserve(n);
  for (int k = 1; k <= n; ++k) t.push_back({k, Complex(1.0, 0.0)});
  return LacunarySeries(std::move(t));
}

double LacunarySeries::h2_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::norm(t.a);
  return std::sqrt(s);
}

Complex LacunarySeries::eval(Complex z) const {
  Complex val = 0.0, w = z;  // w = z^(2^k) along the squaring chain
  int k = 0;
  for (const auto& t : terms_) {
    while (k < t.k) {
      w *= w;
      ++k;
    }
    val += t.a * w;
  }
  return val;
}

std::pair<Complex, Complex> LacunarySeries::eval_with_deriv(Complex z) const {
  Complex val = 0.0, der = 0.0;
  Complex w = z, v = 1.0;  // w = z^(2^k), v = z^(2^k - 1)
  int k = 0;
  for (const auto& t : terms_) {
    while (k < t.k) {
      v = v * v * z;
      w *= w;
      ++k;
    }
    val += t.a * w;
    der += t.a * std::ldexp(1.0, t.k) * v;
  }
  return {val, der};
}

// ---------------------------------------------------------------------------
// BlaschkeProduct

BlaschkeProduct::BlaschkeProduct(std::vector<Complex> zeros) : zeros_(std::move(zeros)) {
  const std::size_t n = zeros_.size();
  zr_.resize(n);
  zi_.resize(n);
  s_.resize(n);
  phr_.resize(n);
  phi_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex a = zeros_[j];
    const double m = std::abs(a);
    if (m >= 1.0) throw ParameterError("blaschke zero outside the open unit disk");
    zr_[j] = a.real();
    zi_[j] = a.imag();
    s_[j] = m * m - 1.0;
    // phase |a|/a = conj(a)/|a|; the a = 0 factor is b_0(z) = z = (-1)(0-z)/1
    const Complex ph = (m == 0.0) ? Complex(-1.0, 0.0) : std::conj(a) / m;
    phr_[j] = ph.real();
    phi_[j] = ph.imag();
  }
}

// The factor loops run in four independent lanes (lane l takes the zeros
// j = l mod 4) so the compiler can vectorize across the complex product,
// which is otherwise a serial accumulation. The lane assignment is fixed,
// so results do not depend on anything but the zero order.
Complex BlaschkeProduct::eval(Complex z) const {
  const std::size_t n = zeros_.size();
  const double zx = z.real(), zy = z.imag();
  double bx[4] = {1.0, 1.0, 1.0, 1.0}, by[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t j = 0; j < n4; j += 4) {
    for (int l = 0; l < 4; ++l) {
      const std::size_t i = j + l;
      const double ux = 1.0 - (zr_[i] * zx + zi_[i] * zy);
      const double uy = zi_[i] * zx - zr_[i] * zy;
      const double vx = zr_[i] - zx, vy = zi_[i] - zy;
      const double nu = ux * ux + uy * uy;
      const double tx = (vx * ux + vy * uy) / nu;
      const double ty = (vy * ux - vx * uy) / nu;
      const double cx = tx * phr_[i] - ty * phi_[i];
      const double cy = tx * phi_[i] + ty * phr_[i];
      const double nbx = bx[l] * cx - by[l] * cy;
      by[l] = bx[l] * cy + by[l] * cx;
      bx[l] = nbx;
    }
  }
  double px = 1.0, py = 0.0;
  for (int l = 0; l < 4; ++l) {
    const double nbx = px * bx[l] - py * by[l];
    py = px * by[l] + py * bx[l];
    px = nbx;
  }
  for (std::size_t j = n4; j < n; ++j) {
    const double ux = 1.0 - (zr_[j] * zx + zi_[j] * zy);
    const double uy = zi_[j] * zx - zr_[j] * zy;
    const double vx = zr_[j] - zx, vy = zi_[j] - zy;
    const double nu = ux * ux + uy * uy;
    const double tx = (vx * ux + vy * uy) / nu;
    const double ty = (vy * ux - vx * uy) / nu;
    const double cx = tx * phr_[j] - ty * phi_[j];
    const double cy = tx * phi_[j] + ty * phr_[j];
    const double nbx = px * cx - py * cy;
    py = px * cy + py * cx;
    px = nbx;
  }
  return {px, py};
}

std::pair<Complex, Complex> BlaschkeProduct::eval_with_deriv(Complex z) const {
  const std::size_t n = zeros_.size();
  if (n == 0) return {Complex(1.0, 0.0), Complex(0.0, 0.0)};
  const double zx = z.real(), zy = z.imag();
  double bx[4] = {1.0, 1.0, 1.0, 1.0}, by[4] = {0.0, 0.0, 0.0, 0.0};
  double sr[4] = {0.0, 0.0, 0.0, 0.0}, si[4] = {0.0, 0.0, 0.0, 0.0};
  double md[4] = {4.0, 4.0, 4.0, 4.0};
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t j = 0; j < n4; j += 4) {
    for (int l = 0; l < 4; ++l) {
      const std::size_t i = j + l;
      const double ux = 1.0 - (zr_[i] * zx + zi_[i] * zy);
      const double uy = zi_[i] * zx - zr_[i] * zy;
      const double vx = zr_[i] - zx, vy = zi_[i] - zy;
      const double nu = ux * ux + uy * uy;
      const double tx = (vx * ux + vy * uy) / nu;
      const double ty = (vy * ux - vx * uy) / nu;
      const double cx = tx * phr_[i] - ty * phi_[i];
      const double cy = tx * phi_[i] + ty * phr_[i];
      const double nbx = bx[l] * cx - by[l] * cy;
      by[l] = bx[l] * cy + by[l] * cx;
      bx[l] = nbx;
      // summed logarithmic derivative term s_j / ((1 - conj(a) z)(a - z))
      const double dx = ux * vx - uy * vy;
      const double dy = ux * vy + uy * vx;
      const double w = s_[i] / (dx * dx + dy * dy);
      sr[l] += w * dx;
      si[l] -= w * dy;
      const double d2 = vx * vx + vy * vy;
      if (d2 < md[l]) md[l] = d2;
    }
  }
  double px = 1.0, py = 0.0, sxt = 0.0, syt = 0.0, mind2 = 4.0;
  for (int l = 0; l < 4; ++l) {
    const double nbx = px * bx[l] - py * by[l];
    py = px * by[l] + py * bx[l];
    px = nbx;
    sxt += sr[l];
    syt += si[l];
    mind2 = std::min(mind2, md[l]);
  }
  for (std::size_t j = n4; j < n; ++j) {
    const double ux = 1.0 - (zr_[j] * zx + zi_[j] * zy);
    const double uy = zi_[j] * zx - zr_[j] * zy;
    const double vx = zr_[j] - zx, vy = zi_[j] - zy;
    const double nu = ux * ux + uy * uy;
    const double tx = (vx * ux + vy * uy) / nu;
    const double ty = (vy * ux - vx * uy) / nu;
    const double cx = tx * phr_[j] - ty * phi_[j];
    const double cy = tx * phi_[j] + ty * phr_[j];
    const double nbx = px * cx - py * cy;
    py = px * cy + py * cx;
    px = nbx;
    const double dx = ux * vx - uy * vy;
    const double dy = ux * vy + uy * vx;
    const double w = s_[j] / (dx * dx + dy * dy);
    sxt += w * dx;
    syt -= w * dy;
    const double d2 = vx * vx + vy * vy;
    if (d2 < mind2) mind2 = d2;
  }
  if (mind2 < 1e-16) return eval_product_rule(z);  // |z - a_j| < 1e-8
  const Complex value(px, py);
  return {value, value * Complex(sxt, syt)};
}

std::pair<Complex, Complex> BlaschkeProduct::eval_product_rule(Complex z) const {
  const std::size_t n = zeros_.size();
  std::vector<Complex> factor(n), dfac(n), prefix(n + 1), suffix(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex a(zr_[j], zi_[j]);
    const Complex ph(phr_[j], phi_[j]);
    const Complex u = 1.0 - std::conj(a) * z;
    factor[j] = ph * (a - z) / u;
    dfac[j] = ph * (std::norm(a) - 1.0) / (u * u);
  }
  prefix[0] = 1.0;
  for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] * factor[j];
  suffix[n] = 1.0;
  for (std::size_t j = n; j > 0; --j) suffix[j - 1] = suffix[j] * factor[j - 1];
  Complex der = 0.0;
  for (std::size_t j = 0; j < n; ++j) der += dfac[j] * prefix[j] * suffix[j + 1];
  return {prefix[n], der};
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.degree() == 0 && std::abs(den_.coeffs()[0]) == 0.0)
    throw ParameterError("rational function with zero denominator");
  if (den_.degree() > 0) {
    for (const Complex& r : aberth_roots(den_.coeffs()))
      if (std::abs(r) <= 1.0 + 1e-12)
        throw ParameterError("denominator root inside or on the closed unit disk");
  }
}

Complex RationalFunction::eval(Complex z) const { return num_.eval(z) / den_.eval(z); }

std::pair<Complex, Complex> RationalFunction::eval_with_deriv(Complex z) const {
  auto [p, dp] = num_.eval_with_deriv(z);
  auto [q, dq] = den_.eval_with_deriv(z);
  const Complex v = p / q;
  return {v, (dp - v * dq) / q};
}

// ---------------------------------------------------------------------------
// AnalyticFunction

AnalyticFunction::Kind AnalyticFunction::kind() const {
  return static_cast<Kind>(repr_.index());
}

std::string AnalyticFunction::kind_name() const {
  switch (kind()) {
    case Kind::Polynomial: return "polynomial";
    case Kind::Lacunary: return "lacunary";
    case Kind::Blaschke: return "blaschke";
    case Kind::Rational: return "rational";
    case Kind::Product: return "product";
  }
  return "?";
}

Complex AnalyticFunction::eval(Complex z) const {
  return std::visit(
      [&](const auto& f) -> Complex {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ProductFunction>) {
          Complex v = 1.0;
          for (const auto& g : f.factors) v *= g.eval(z);
          return v;
        } else {
          return f.eval(z);
        }
      },
      repr_);
}

std::pair<Complex, Complex> AnalyticFunction::eval_with_deriv(Complex z) const {
  return std::visit(
      [&](const auto& f) -> std::pair<Complex, Complex> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ProductFunction>) {
          Complex v = 1.0, d = 0.0;
          for (const auto& g : f.factors) {
            auto [gv, gd] = g.eval_with_deriv(z);
            d = d * gv + v * gd;
            v *= gv;
          }
          return {v, d};
        } else {
          return f.eval_with_deriv(z);
        }
      },
      repr_);
}

Complex AnalyticFunction::deriv(Complex z) const { return eval_with_deriv(z).second; }

long long AnalyticFunction::degree() const {
  return std::visit(
      [](const auto& f) -> long long {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ProductFunction>) {
          long long d = 0;
          for (const auto& g : f.factors) d += g.degree();
          return d;
        } else {
          return static_cast<long long>(f.degree());
        }
      },
      repr_);
}

std::vector<Complex> taylor_coeffs(const AnalyticFunction& f, int n_coeffs) {
  if (n_coeffs < 1) throw ParameterError("taylor_coeffs needs n_coeffs >= 1");
  std::size_t want = 8 * static_cast<std::size_t>(n_coeffs);
  if (f.kind() != AnalyticFunction::Kind::Rational) {
    long long deg = f.degree();
    want = std::max<std::size_t>(want, 2 * static_cast<std::size_t>(deg + 1));
  }
  const std::size_t samples = next_pow2(want);
  if (samples > kTaylorSampleCap)
    throw ParameterError("taylor_coeffs request exceeds the sample support cap");

  std::vector<Complex> vals(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(samples);
    vals[j] = f.eval(Complex(std::cos(t), std::sin(t)));
  }
  fft_inplace(vals);
  std::vector<Complex> out(n_coeffs);
  for (int k = 0; k < n_coeffs; ++k) out[k] = vals[k] / static_cast<double>(samples);
  return out;
}

AnalyticFunction random_family(FamilyKind kind, int n, std::uint64_t seed) {
  if (n < 1) throw ParameterError("family degree must be >= 1");
  CounterRng rng(seed, CounterRng::mix(static_cast<std::uint64_t>(kind) * 0x100 + 1) +
                           static_cast<std::uint64_t>(n));
  switch (kind) {
    case FamilyKind::ClusteredBlaschke: {
      std::vector<Complex> zeros(n);
      const double rho = 1.0 - 1.0 / n;
      for (auto& a : zeros) {
        const double th = kTwoPi * rng.uniform01();
        a = rho * Complex(std::cos(th), std::sin(th));
      }
      return BlaschkeProduct(std::move(zeros));
    }
    case FamilyKind::UniformBlaschke: {
      std::vector<Complex> zeros(n);
      for (auto& a : zeros) {
        const double r = std::sqrt(rng.uniform01());
        const double th = kTwoPi * rng.uniform01();
        a = r * Complex(std::cos(th), std::sin(th));
      }
      return BlaschkeProduct(std::move(zeros));
    }
    case FamilyKind::RandomPolynomial: {
      std::vector<Complex> c(n + 1);
      for (auto& a : c) {
        auto [g1, g2] = rng.gaussian_pair();
        a = Complex(g1, g2) / std::sqrt(2.0);
      }
      if (std::abs(c[n]) < 1e-6) c[n] += 1.0;  // keep the degree exact
      return Polynomial(std::move(c));
    }
  }
  throw ParameterError("unknown family kind");
}

}  // namespace bernlab
