#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bernlab/approximation.hpp"

using namespace bernlab;

namespace {

CoeffFunction geometric_coeffs(int n_max, double ratio = 0.5) {
  std::vector<Complex> c(n_max + 1);
  double v = 1.0;
  for (int k = 0; k <= n_max; ++k) {
    c[k] = v;
    v *= ratio;
  }
  return CoeffFunction(std::move(c));
}

}  // namespace

TEST_CASE("parseval tails") {
  const CoeffFunction f = geometric_coeffs(40);
  // E_2 = sqrt(sum_{k>=3} 4^-k) = sqrt(1/48)
  CHECK(best_poly_approx_h2(f, 2) == doctest::Approx(std::sqrt(1.0 / 48.0)).epsilon(1e-12));
  CHECK(best_poly_approx_h2(f, 40) == 0.0);
  CHECK(best_poly_approx_h2(f, 100) == 0.0);

  double prev = 1e300;
  for (int n = 0; n <= 41; ++n) {
    const double e = best_poly_approx_h2(f, n);
    CHECK(e <= prev + 1e-15);
    prev = e;
  }

  // P_m with n = 2^(m-1): exactly one surviving exponent
  const CoeffFunction pm = CoeffFunction::from_lacunary(LacunarySeries::standard(5));
  CHECK(best_poly_approx_h2(pm, 16) == doctest::Approx(1.0));
}

TEST_CASE("dyadic block sums") {
  SUBCASE("m = 1 is the explicit three-term sum") {
    const double expect = 1.0 / (2.0 * std::sqrt(std::log(2.0))) +
                          1.0 / (3.0 * std::sqrt(std::log(3.0))) +
                          1.0 / (4.0 * std::sqrt(std::log(4.0)));
    const BlockSumResult r = dyadic_block_sum(1);
    CHECK(r.method == "direct");
    CHECK(r.value == doctest::Approx(expect).epsilon(1e-14));
  }
  SUBCASE("direct sums land in the acceptance band") {
    // exact ratios: 0.7997, 0.5530, 0.4947, 0.4879 for m = 1..4
    for (int m = 1; m <= 4; ++m) {
      const BlockSumResult r = dyadic_block_sum(m);
      CHECK(r.method == "direct");
      CHECK(r.ratio_to_2_m2 > 0.4);
      CHECK(r.ratio_to_2_m2 < 3.0);
    }
  }
  SUBCASE("consecutive blocks scale like sqrt(2) from m = 4 on") {
    for (int m = 4; m <= 8; ++m) {
      const double ratio = dyadic_block_sum(m).value / dyadic_block_sum(m - 1).value;
      CHECK(ratio == doctest::Approx(std::sqrt(2.0)).epsilon(0.15));
    }
  }
  SUBCASE("integral method beyond the direct cap") {
    CHECK(dyadic_block_sum(5).method == "integral");
    CHECK_THROWS_AS(dyadic_block_sum(0), ParameterError);
  }
}

TEST_CASE("inverse series diagnosis") {
  SUBCASE("geometric coefficients converge") {
    const SeriesDiagnosis d = inverse_series_test(geometric_coeffs(40), SeriesWeight::SqrtLog);
    CHECK(d.verdict == Verdict::Converges);
    CHECK(d.geom_rho < 0.99);
  }
  SUBCASE("zero function converges with sum zero") {
    const SeriesDiagnosis d =
        inverse_series_test(CoeffFunction({Complex(0.0, 0.0)}), SeriesWeight::SqrtLog);
    CHECK(d.verdict == Verdict::Converges);
    CHECK(d.partial_sum == 0.0);
  }
  SUBCASE("n^(-1/p) weight needs a valid p") {
    CHECK_THROWS_AS(inverse_series_test(geometric_coeffs(10), SeriesWeight::InvP, 0.0),
                    ParameterError);
    const SeriesDiagnosis d = inverse_series_test(geometric_coeffs(40), SeriesWeight::InvP, 2.0);
    CHECK(d.verdict == Verdict::Converges);
  }
}

TEST_CASE("lacunary coefficient test") {
  SUBCASE("P_m has coefficient sum m") {
    const LacTestResult res = lemma_lac_test(LacunarySeries::standard(8), 8);
    CHECK(res.partial_abs.back() == doctest::Approx(8.0));
    for (const auto& row : res.annulus) {
      INFO("k = " << row.k);
      CHECK(row.ok);
    }
    CHECK(res.annulus.size() == 8);
  }
  SUBCASE("a_k = 4^-k: both series converge, the bound holds at every k") {
    std::vector<LacunaryTerm> terms;
    for (int k = 1; k <= 12; ++k) terms.push_back({k, Complex(std::pow(4.0, -k), 0.0)});
    const LacTestResult res = lemma_lac_test(LacunarySeries(std::move(terms)), 12);
    CHECK(res.partial_weighted.back() < 0.2);
    CHECK(res.partial_abs.back() < 0.34);
    REQUIRE(res.annulus.size() == 12);
    for (const auto& row : res.annulus) {
      INFO("k = " << row.k);
      CHECK(row.ok);
    }
  }
  SUBCASE("zero function yields empty partials") {
    const LacTestResult res = lemma_lac_test(LacunarySeries{}, 5);
    CHECK(res.partial_abs.empty());
    CHECK(res.annulus.empty());
  }
  SUBCASE("non-lacunary coefficients are rejected") {
    CHECK_THROWS_AS(lemma_lac_test(geometric_coeffs(5), 5), ParameterError);
  }
}

TEST_CASE("littlewood counterexample construction") {
  for (const char* name : {"log", "sqrtlog", "loglog"}) {
    CAPTURE(name);
    auto [f, rep] = littlewood_counterexample(PhiFunction::builtin(name), 6);
    CHECK(rep.cert_divergence);
    CHECK(rep.cert_weighted);
    CHECK(rep.cert_h2);
    CHECK(rep.cert_series);
    REQUIRE(rep.blocks.size() == 6);
    CHECK(rep.divergence_partials.back() >= 6.0 * (1.0 - 1e-9));
    // psi nonincreasing, boundaries strictly increasing
    for (std::size_t i = 0; i < rep.blocks.size(); ++i) {
      CHECK(rep.blocks[i].k_end > rep.blocks[i].k_begin);
      if (i > 0) {
        CHECK(rep.blocks[i].level <= rep.blocks[i - 1].level);
        CHECK(rep.blocks[i].k_begin == rep.blocks[i - 1].k_end);
      }
    }
  }
  SUBCASE("non-decaying phi is rejected") {
    PhiFunction flat("flat", [](double) { return 1.0; });
    CHECK_THROWS_AS(littlewood_counterexample(flat, 4), ParameterError);
  }
  SUBCASE("too few blocks rejected") {
    CHECK_THROWS_AS(littlewood_counterexample(PhiFunction::builtin("log"), 2), ParameterError);
  }
}

TEST_CASE("coefficient-polynomial norms via fft circles") {
  SUBCASE("a1 norm of (z^10)' matches the closed form") {
    std::vector<Complex> c(11, Complex(0.0, 0.0));
    c[10] = 1.0;
    const QuadResult q = coeff_a1_deriv_norm(c);
    const double expect = 2.0 * M_PI * 10.0 / 11.0;
    CHECK(std::abs(q.value - expect) / expect < 1e-9);
  }
  SUBCASE("boundary H^p norms") {
    std::vector<Complex> c(8, Complex(0.0, 0.0));
    c[7] = 1.0;
    CHECK(coeff_hp_boundary_norm(c, 4.0) == doctest::Approx(1.0).epsilon(1e-12));
    const CoeffFunction g = geometric_coeffs(30);
    CHECK(coeff_hp_boundary_norm(g.coeffs(), 2.0) ==
          doctest::Approx(std::sqrt(g.h2_norm_sq())).epsilon(1e-12));
  }
}

TEST_CASE("dyadic scheme trace") {
  SUBCASE("geometric coefficients with support 2^16") {
    const CoeffFunction f = geometric_coeffs(1 << 16);
    const DyadicTrace tr = dyadic_scheme_trace(f, 2.0, 4);
    REQUIRE(tr.rows.size() == 4);
    CHECK(tr.coeff_mass_gap < 1e-12);
    CHECK(tr.full_a1 <= tr.rhs_total + 1e-9);
    for (const auto& row : tr.rows) {
      CHECK(row.a1_deriv >= 0.0);
      if (row.coeff_mass > 0.0) CHECK(row.hp_norm == doctest::Approx(std::sqrt(row.coeff_mass)));
    }
  }
  SUBCASE("low-degree polynomials have empty upper blocks") {
    std::vector<Complex> c(5, Complex(0.0, 0.0));
    c[1] = 1.0;
    c[4] = -2.0;
    const DyadicTrace tr = dyadic_scheme_trace(CoeffFunction(std::move(c)), 2.0, 3);
    REQUIRE(tr.rows.size() == 3);
    CHECK(tr.rows[1].a1_deriv == 0.0);  // block (4, 16] is empty
    CHECK(tr.rows[2].a1_deriv == 0.0);
  }
  SUBCASE("support cap enforced") {
    CHECK_THROWS_AS(dyadic_scheme_trace(geometric_coeffs(64), 2.0, 5), ParameterError);
  }
}
