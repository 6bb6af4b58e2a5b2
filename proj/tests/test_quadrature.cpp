#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "bernlab/analytic_function.hpp"
#include "bernlab/quadrature.hpp"
#include "bernlab/summation.hpp"

using namespace bernlab;

namespace {

AnalyticFunction monomial(int n) {
  std::vector<Complex> c(n + 1, Complex(0.0, 0.0));
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

DiskQuadrature default_quad(double gamma, int target = 4096) {
  return DiskQuadrature({40, 16, true}, {target, false, 32.0, 1024}, gamma);
}

}  // namespace

TEST_CASE("trapezoid exactness for e^{ikt}, |k| < M") {
  const int M = 256;
  auto circle = unit_circle(M);
  for (int k : {0, 1, 7, 100, 255, -255}) {
    std::vector<double> re(M), im(M);
    for (int j = 0; j < M; ++j) {
      const double t = 2.0 * M_PI * j / M;
      re[j] = std::cos(k * t);
      im[j] = std::sin(k * t);
    }
    const double sr = pairwise_sum(re) / M;
    const double si = pairwise_sum(im) / M;
    const double expect = (k == 0) ? 1.0 : 0.0;
    CHECK(std::abs(sr - expect) < 1e-13);
    CHECK(std::abs(si) < 1e-13);
  }
  (void)circle;
}

TEST_CASE("disk area and singular weights") {
  auto one = [](Complex) { return 1.0; };
  SUBCASE("gamma = 0 gives pi") {
    const QuadResult q = default_quad(0.0).integrate(one);
    CHECK(std::abs(q.value - M_PI) / M_PI < 1e-12);
  }
  SUBCASE("gamma = -1/2 gives 2 pi") {
    const QuadResult q = default_quad(-0.5).integrate(one);
    CHECK(std::abs(q.value - 2.0 * M_PI) / (2.0 * M_PI) < 1e-10);
  }
  SUBCASE("gamma = 1 gives pi/2") {
    // int (1-r^2) r dr dt = 2 pi (1/2 - 1/4)
    const QuadResult q = default_quad(1.0).integrate(one);
    CHECK(std::abs(q.value - M_PI / 2.0) < 1e-12);
  }
  SUBCASE("non-integrable weight rejected") {
    CHECK_THROWS_AS(default_quad(-1.0), ParameterError);
  }
}

TEST_CASE("derivative of z^n has closed-form area integrals") {
  for (int n : {1, 10, 100}) {
    AnalyticFunction f = monomial(n);
    auto h = [&](Complex z) { return std::abs(f.deriv(z)); };
    const double expect = 2.0 * M_PI * n / (n + 1.0);
    const QuadResult q = default_quad(0.0).integrate(h);
    CHECK(std::abs(q.value - expect) / expect < 1e-12);
    CHECK(q.error_estimate < 1e-8 * expect);
  }
}

TEST_CASE("annulus integrals and additivity") {
  auto one = [](Complex) { return 1.0; };
  DiskQuadrature quad = default_quad(0.0);

  SUBCASE("area of the outer half annulus") {
    const QuadResult q = quad.integrate_annulus(one, 0.5);
    CHECK(std::abs(q.value - 0.75 * M_PI) < 1e-12);
  }
  SUBCASE("z^16 split at 1 - 1/16") {
    AnalyticFunction f = monomial(16);
    auto h = [&](Complex z) { return std::abs(f.deriv(z)); };
    const double rmin = 1.0 - 1.0 / 16.0;
    const double expect = 2.0 * M_PI * 16.0 / 17.0 * (1.0 - std::pow(rmin, 17.0));
    const QuadResult q = quad.integrate_annulus(h, rmin);
    CHECK(std::abs(q.value - expect) / expect < 1e-11);
  }
  SUBCASE("split inside the terminal panel keeps the jacobi rule") {
    const double rmin = 1.0 - 0x1.0p-42;  // beyond depth 40
    const QuadResult q = default_quad(-0.5).integrate_annulus(one, rmin);
    // int_{rmin}^1 (1-r^2)^(-1/2) r dr * 2pi = 2pi sqrt(1-rmin^2)
    const double expect = 2.0 * M_PI * std::sqrt(1.0 - rmin * rmin);
    CHECK(std::abs(q.value - expect) / expect < 1e-9);
  }
  SUBCASE("inner + annulus reconciles with the full disk") {
    std::vector<std::pair<AnalyticFunction, double>> cases;
    cases.emplace_back(monomial(8), 0.5);
    cases.emplace_back(monomial(16), 1.0 - 1.0 / 16.0);
    cases.emplace_back(random_family(FamilyKind::UniformBlaschke, 6, 2), 0.75);
    for (const auto& [f, rmin] : cases) {
      auto h = [&](Complex z) { return std::abs(f.deriv(z)); };
      const double full = quad.integrate(h).value;
      const double inner = quad.integrate_inner(h, rmin).value;
      const double outer = quad.integrate_annulus(h, rmin).value;
      CHECK(std::abs(inner + outer - full) / full < 1e-10);
    }
  }
}

TEST_CASE("refinement error estimate brackets the truth") {
  AnalyticFunction b = random_family(FamilyKind::ClusteredBlaschke, 32, 5);
  auto h = [&](Complex z) { return std::abs(b.deriv(z)); };
  // light grid vs a strong reference
  DiskQuadrature light({20, 8, true}, {2048, true, 8.0, 256}, 0.0);
  DiskQuadrature heavy({40, 16, true}, {8192, false, 32.0, 1024}, 0.0);
  const QuadResult ql = light.integrate(h);
  const QuadResult qh = heavy.integrate(h);
  CHECK(std::abs(ql.value - qh.value) < 20.0 * (ql.error_estimate + qh.error_estimate) + 1e-9);
}

TEST_CASE("circle mean closed forms") {
  AnalyticFunction f = monomial(2);
  const QuadResult q = circle_mean([&](Complex z) { return f.eval(z); }, 0.5, 2.0, 512);
  CHECK(std::abs(q.value - 0.0625) < 1e-14);  // |z^2|^2 = r^4 at r = 1/2

  AnalyticFunction c3 = monomial(3);
  const QuadResult qd = circle_mean([&](Complex z) { return c3.deriv(z); }, 0.9, 1.0, 512);
  CHECK(std::abs(qd.value - 3.0 * 0.81) < 1e-12);

  CHECK_THROWS_AS(circle_mean([](Complex) { return Complex(1.0, 0.0); }, 1.5, 1.0, 64),
                  ParameterError);
}

TEST_CASE("taper plus threads keeps results bit-identical") {
  AnalyticFunction b = random_family(FamilyKind::ClusteredBlaschke, 48, 9);
  auto h = [&](Complex z) { return std::abs(b.deriv(z)); };
  DiskQuadrature quad({18, 10, true}, {2048, true, 16.0, 512}, 0.0);
  const double v1 = quad.integrate(h).value;
  const double v2 = quad.integrate(h).value;
  CHECK(v1 == v2);  // same process, repeated run
}
