#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bernlab/analytic_function.hpp"
#include "bernlab/function_io.hpp"
#include "bernlab/prng.hpp"
#include "bernlab/roots.hpp"

using namespace bernlab;

namespace {

AnalyticFunction monomial(int n) {
  std::vector<Complex> c(n + 1, Complex(0.0, 0.0));
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

// central finite difference, the derivative oracle
Complex fd_deriv(const AnalyticFunction& f, Complex z, double h) {
  return (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("polynomial evaluation basics") {
  Polynomial p({Complex(0, 0), Complex(0, 0), Complex(1, 0)});  // z^2
  CHECK(p.eval(Complex(0, 1)) == Complex(-1, 0));
  CHECK(p.degree() == 2);

  auto [v, d] = p.eval_with_deriv(Complex(0.5, 0.25));
  const Complex z(0.5, 0.25);
  CHECK(std::abs(v - z * z) < 1e-15);
  CHECK(std::abs(d - 2.0 * z) < 1e-15);

  // monomial fast path agrees with Horner
  AnalyticFunction m = monomial(37);
  Polynomial dense([] {
    std::vector<Complex> c(38, Complex(0, 0));
    c[37] = 1.0;
    c[3] = 1e-30;  // defeat the monomial flag
    return c;
  }());
  const Complex zz(0.83, -0.21);
  CHECK(std::abs(m.eval(zz) - dense.eval(zz)) < 1e-14);
}

TEST_CASE("lacunary evaluation and derivative") {
  LacunarySeries p3 = LacunarySeries::standard(3);  // z^2 + z^4 + z^8
  CHECK(std::abs(p3.eval(Complex(1, 0)) - Complex(3, 0)) < 1e-15);
  CHECK(p3.degree() == 8);
  CHECK(p3.h2_norm() == doctest::Approx(std::sqrt(3.0)));

  const Complex z(0.4, 0.31);
  auto [v, d] = p3.eval_with_deriv(z);
  const Complex zv = std::pow(z, 2) + std::pow(z, 4) + std::pow(z, 8);
  const Complex zd = 2.0 * z + 4.0 * std::pow(z, 3) + 8.0 * std::pow(z, 7);
  CHECK(std::abs(v - zv) < 1e-14);
  CHECK(std::abs(d - zd) < 1e-14);

  CHECK_THROWS_AS(LacunarySeries({{2, 1.0}, {2, 1.0}}), ParameterError);
}

TEST_CASE("blaschke factor conventions") {
  // single zero at the origin: b_0(z) = z, b' = 1
  BlaschkeProduct b0({Complex(0, 0)});
  const Complex z(0.3, -0.2);
  CHECK(std::abs(b0.eval(z) - z) < 1e-15);
  CHECK(std::abs(b0.eval_with_deriv(z).second - 1.0) < 1e-15);

  // b_a(0) = |a| >= 0
  BlaschkeProduct ba({Complex(0.3, 0.4)});
  CHECK(std::abs(ba.eval(Complex(0, 0)) - Complex(0.5, 0.0)) < 1e-15);

  // |b'_a(1)| = (1-|a|^2)/|1-a|^2 = 3 for a = 0.5
  BlaschkeProduct bh({Complex(0.5, 0.0)});
  CHECK(std::abs(bh.eval_with_deriv(Complex(1, 0)).second) == doctest::Approx(3.0).epsilon(1e-12));

  CHECK_THROWS_AS(BlaschkeProduct({Complex(1.0, 0.0)}), ParameterError);
}

TEST_CASE("finite-difference order of the derivative across kinds") {
  std::vector<AnalyticFunction> fs;
  fs.push_back(Polynomial({Complex(0.3, 0), Complex(-1, 0.5), Complex(0, 0), Complex(2, 1)}));
  fs.push_back(LacunarySeries::standard(5));
  fs.push_back(random_family(FamilyKind::UniformBlaschke, 12, 3));
  fs.push_back(RationalFunction(Polynomial({Complex(1, 0), Complex(0.5, 0)}),
                                Polynomial({Complex(1, 0), Complex(-0.5, 0)})));
  fs.push_back(ProductFunction{{LacunarySeries::standard(3),
                                Polynomial({Complex(1, 0), Complex(0, 0.7)})}});

  const Complex z(0.31, 0.42);
  for (const auto& f : fs) {
    const Complex exact = f.deriv(z);
    const double e1 = std::abs(fd_deriv(f, z, 1e-4) - exact);
    const double e2 = std::abs(fd_deriv(f, z, 5e-5) - exact);
    if (e1 < 1e-13 && e2 < 1e-13) continue;  // derivative locally linear
    const double order = std::log(e1 / e2) / std::log(2.0);
    CHECK(order > 1.9);
  }
}

TEST_CASE("blaschke near-zero fallback stays accurate") {
  auto zeros = std::vector<Complex>{{0.5, 0.0}, {-0.3, 0.2}, {0.1, -0.6}};
  BlaschkeProduct b(zeros);
  // exactly at a zero the derivative is the product-rule value
  const Complex a = zeros[0];
  const Complex d_at = b.eval_with_deriv(a).second;
  const Complex fd = fd_deriv(AnalyticFunction(b), a, 1e-5);
  CHECK(std::abs(b.eval_with_deriv(a).first) < 1e-14);
  CHECK(std::abs(d_at - fd) < 1e-8 * std::abs(d_at));
  // within the 1e-8 window
  const Complex near = a + Complex(3e-9, -2e-9);
  CHECK(std::abs(b.eval_with_deriv(near).second - d_at) < 1e-6 * std::abs(d_at));
}

TEST_CASE("boundary unimodularity and the derivative bounds") {
  AnalyticFunction b = random_family(FamilyKind::ClusteredBlaschke, 64, 11);
  const auto* bp = b.get_if<BlaschkeProduct>();
  REQUIRE(bp != nullptr);
  const int n = bp->degree();

  double worst = 0.0;
  for (int j = 0; j < 4096; ++j) {
    const double t = 2.0 * M_PI * j / 4096;
    worst = std::max(worst, std::abs(std::abs(b.eval(std::polar(1.0, t))) - 1.0));
  }
  CHECK(worst < 1e-10);

  // |B'(re^it)| <= 1/(1-r^2) + 1e-9 pointwise
  for (double r : {0.3, 0.9, 1.0 - 1.0 / n, 1.0 - 0x1.0p-20}) {
    const double cap = 1.0 / (1.0 - r * r) + 1e-9;
    for (int j = 0; j < 512; ++j) {
      const double t = 2.0 * M_PI * (j + 0.37) / 512;
      CHECK(std::abs(b.deriv(std::polar(r, t))) <= cap);
    }
  }
}

TEST_CASE("taylor coefficients via boundary fft") {
  // z^3
  auto c3 = taylor_coeffs(monomial(3), 5);
  REQUIRE(c3.size() == 5);
  for (int k = 0; k < 5; ++k)
    CHECK(std::abs(c3[k] - (k == 3 ? Complex(1, 0) : Complex(0, 0))) < 1e-13);

  // geometric: 1/(1 - z/2) has a_k = 2^-k
  RationalFunction geo(Polynomial({Complex(1, 0)}), Polynomial({Complex(1, 0), Complex(-0.5, 0)}));
  auto cg = taylor_coeffs(AnalyticFunction(geo), 21);
  for (int k = 0; k <= 20; ++k)
    CHECK(std::abs(cg[k] - Complex(std::ldexp(1.0, -k), 0)) < 1e-12);

  // lacunary P_2: nonzero exactly at exponents 2 and 4
  auto cl = taylor_coeffs(AnalyticFunction(LacunarySeries::standard(2)), 6);
  for (int k = 0; k < 6; ++k) {
    const double expect = (k == 2 || k == 4) ? 1.0 : 0.0;
    CHECK(std::abs(cl[k] - expect) < 1e-12);
  }

  // polynomial round trip at random coefficients
  AnalyticFunction rp = random_family(FamilyKind::RandomPolynomial, 24, 5);
  const auto* poly = rp.get_if<Polynomial>();
  auto back = taylor_coeffs(rp, 25);
  for (int k = 0; k <= 24; ++k) CHECK(std::abs(back[k] - poly->coeffs()[k]) < 1e-12);
}

TEST_CASE("random families are deterministic with forced shapes") {
  AnalyticFunction a = random_family(FamilyKind::ClusteredBlaschke, 4, 1);
  AnalyticFunction b = random_family(FamilyKind::ClusteredBlaschke, 4, 1);
  const auto* za = a.get_if<BlaschkeProduct>();
  const auto* zb = b.get_if<BlaschkeProduct>();
  REQUIRE(za);
  REQUIRE(zb);
  REQUIRE(za->zeros().size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(za->zeros()[i] == zb->zeros()[i]);
    CHECK(std::abs(za->zeros()[i]) == doctest::Approx(0.75).epsilon(1e-15));
  }

  AnalyticFunction p = random_family(FamilyKind::RandomPolynomial, 8, 7);
  CHECK(p.degree() == 8);
}

TEST_CASE("rational construction rejects poles in the closed disk") {
  CHECK_THROWS_AS(RationalFunction(Polynomial({Complex(1, 0)}),
                                   Polynomial({Complex(1, 0), Complex(-2.0, 0)})),
                  ParameterError);  // root at 1/2
  CHECK_NOTHROW(RationalFunction(Polynomial({Complex(1, 0)}),
                                 Polynomial({Complex(1, 0), Complex(-0.5, 0)})));
}

TEST_CASE("function spec json round trip") {
  nlohmann::json spec = {{"kind", "product"},
                         {"factors",
                          {{{"kind", "blaschke"}, {"zeros", {{0.5, 0.0}, {-0.25, 0.25}}}},
                           {{"kind", "lacunary"}, {"terms", {{1, 1.0, 0.0}, {3, 0.5, -0.5}}}}}}};
  AnalyticFunction f = parse_function(spec);
  CHECK(f.kind() == AnalyticFunction::Kind::Product);
  const Complex z(0.2, 0.1);
  AnalyticFunction f2 = parse_function(function_to_json(f));
  CHECK(std::abs(f.eval(z) - f2.eval(z)) < 1e-15);

  CHECK_THROWS_AS(parse_function(nlohmann::json{{"kind", "weird"}}), ParameterError);
}

TEST_CASE("aberth root oracle finds known roots") {
  // (z - 0.5)(z + 0.25 i)(z - 2)
  Polynomial p({Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0)});
  std::vector<Complex> roots = {Complex(0.5, 0), Complex(0, -0.25), Complex(2, 0)};
  std::vector<Complex> c = {Complex(1, 0)};
  for (const auto& r : roots) {
    std::vector<Complex> next(c.size() + 1, Complex(0, 0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * r;
    }
    c = next;
  }
  auto found = aberth_roots(c);
  REQUIRE(found.size() == 3);
  for (const auto& r : roots) {
    double best = 1e9;
    for (const auto& g : found) best = std::min(best, std::abs(g - r));
    CHECK(best < 1e-10);
  }
  CHECK(count_roots_in_disk(Polynomial(c), Complex(0, 0), 1.0) == 2);
}
