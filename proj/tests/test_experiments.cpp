#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bernlab/experiments.hpp"

using namespace bernlab;

namespace {

AnalyticFunction monomial(int n) {
  std::vector<Complex> c(n + 1, Complex(0.0, 0.0));
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

double column(const Table& t, std::size_t row, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) {
      if (std::holds_alternative<double>(t.rows[row][i])) return std::get<double>(t.rows[row][i]);
      return static_cast<double>(std::get<long long>(t.rows[row][i]));
    }
  FAIL("no column " << name);
  return 0.0;
}

}  // namespace

TEST_CASE("growth fit inverts synthetic models") {
  SUBCASE("y = 3 sqrt(log n) with beta fixed 0") {
    std::vector<std::pair<double, double>> pts;
    for (int n = 8; n <= 4096; n *= 2) pts.emplace_back(n, 3.0 * std::sqrt(std::log(n)));
    const GrowthFit fit = fit_growth(pts, 0.0, std::nullopt);
    CHECK(fit.c == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(fit.gamma == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(fit.residual < 1e-10);
  }
  SUBCASE("y = n^2 recovers beta") {
    std::vector<std::pair<double, double>> pts;
    for (int n = 4; n <= 256; n *= 2) pts.emplace_back(n, static_cast<double>(n) * n);
    const GrowthFit fit = fit_growth(pts, std::nullopt, 0.0);
    CHECK(fit.beta == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("scale equivariance") {
    std::vector<std::pair<double, double>> pts, scaled;
    for (int n = 4; n <= 512; n *= 2) {
      const double y = 2.0 * std::pow(n, 1.3) * std::pow(std::log(n), 0.4);
      pts.emplace_back(n, y);
      scaled.emplace_back(n, 7.5 * y);
    }
    const GrowthFit a = fit_growth(pts, std::nullopt, std::nullopt);
    const GrowthFit b = fit_growth(scaled, std::nullopt, std::nullopt);
    CHECK(b.c / a.c == doctest::Approx(7.5).epsilon(1e-12));
    CHECK(b.beta == doctest::Approx(a.beta).epsilon(1e-12));
    CHECK(b.gamma == doctest::Approx(a.gamma).epsilon(1e-12));
  }
  SUBCASE("residual is the max abs log deviation") {
    std::vector<std::pair<double, double>> pts;
    for (int n = 4; n <= 128; n *= 2) pts.emplace_back(n, std::pow(n, 1.5));
    pts[2].second *= std::exp(0.25);
    const GrowthFit fit = fit_growth(pts, std::nullopt, 0.0);
    double res = 0.0;
    for (const auto& [n, y] : pts)
      res = std::max(res, std::abs(std::log(y) - std::log(fit.c) - fit.beta * std::log(n)));
    CHECK(fit.residual == doctest::Approx(res).epsilon(1e-12));
  }
  SUBCASE("degenerate designs are rejected") {
    std::vector<std::pair<double, double>> pts = {{4.0, 1.0}, {4.0, 2.0}, {4.0, 3.0}};
    CHECK_THROWS_AS(fit_growth(pts, std::nullopt, std::nullopt), ParameterError);
    CHECK_THROWS_AS(fit_growth({{2.0, 1.0}, {4.0, 2.0}}, std::nullopt, std::nullopt),
                    ParameterError);
  }
}

TEST_CASE("theorem 1 sweep on powers and lacunary series") {
  SweepConfig cfg;
  cfg.family = Family::Power;
  cfg.n_list = {4, 8, 16, 32};
  cfg.p = 2.0;
  const SweepResult res = sweep_theorem1(cfg);
  REQUIRE(res.table.rows.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const double n = column(res.table, i, "n");
    const double lhs = column(res.table, i, "a1_deriv");
    const double expect = 2.0 * M_PI * n / (n + 1.0);
    CHECK(lhs == doctest::Approx(expect).epsilon(1e-7));
    CHECK(column(res.table, i, "hp_norm") == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(column(res.table, 3, "ratio") < column(res.table, 0, "ratio"));
  CHECK(res.fit.has_value());

  SweepConfig lac = cfg;
  lac.family = Family::Lacunary;
  lac.n_list = {4, 5, 6, 7};
  const SweepResult lres = sweep_theorem1(lac);
  for (std::size_t i = 0; i < 4; ++i) {
    const double m = column(lres.table, i, "terms");
    CHECK(column(lres.table, i, "n") == doctest::Approx(std::exp2(m)));
    CHECK(column(lres.table, i, "hp_norm") == doctest::Approx(std::sqrt(m)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(sweep_theorem1([&] {
                    SweepConfig bad = cfg;
                    bad.p = 1.0;
                    return bad;
                  }()),
                  ParameterError);
}

TEST_CASE("disk-sup sweep reproduces the p = 2 constant") {
  SweepConfig cfg;
  cfg.family = Family::Power;
  cfg.n_list = {8, 16, 32};
  cfg.p = 2.0;
  const SweepResult res = sweep_theorem1_disk_sup(cfg);
  for (std::size_t i = 0; i < res.table.rows.size(); ++i) {
    // int |(z^n)'|^2 dA = pi n, so the ratio to n^(p-1) = n is pi
    CHECK(column(res.table, i, "ratio") == doctest::Approx(M_PI).epsilon(1e-6));
  }
}

TEST_CASE("theorem 2 sweep: regimes, lambda policy, hypotheses") {
  SweepConfig cfg;
  cfg.family = Family::Power;
  cfg.n_list = {16, 32, 64, 128, 256};
  cfg.p = 4.0;
  cfg.sigma = 1.0;
  cfg.alpha = 0.25;

  const SweepResult res = sweep_theorem2(cfg);
  REQUIRE(res.table.rows.size() == 5);
  double prev = 1e300;
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(column(res.table, i, "regime") == 1.0);
    const double n = column(res.table, i, "n");
    CHECK(column(res.table, i, "lambda") == doctest::Approx(1.0 / std::log(n)));
    CHECK(column(res.table, i, "hos1_ok") == 1.0);
    CHECK(column(res.table, i, "hos2_ok") == 1.0);
    const double ratio = column(res.table, i, "ratio");
    CHECK(ratio <= prev * (1.0 + 1e-3));
    prev = ratio;
  }
  REQUIRE(res.fit.has_value());
  CHECK(res.fit->beta == doctest::Approx(cfg.alpha * cfg.sigma).epsilon(0.2));

  SUBCASE("alpha at 1/2 is rejected") {
    SweepConfig bad = cfg;
    bad.alpha = 0.6;
    CHECK_THROWS_WITH_AS(sweep_theorem2(bad), doctest::Contains("alpha < 1/2"), ParameterError);
  }
  SUBCASE("low-p regime needs sigma < p/(alpha p + 1)") {
    SweepConfig r2 = cfg;
    r2.p = 1.5;
    r2.sigma = 1.05;
    const SweepResult rr = sweep_theorem2(r2);
    CHECK(column(rr.table, 0, "regime") == 2.0);
    const double lam = 2.0 - r2.p * (2.0 - r2.sigma) / r2.sigma;
    CHECK(column(rr.table, 0, "lambda") == doctest::Approx(lam));

    SweepConfig bad = cfg;
    bad.p = 1.5;
    bad.sigma = 1.2;
    CHECK_THROWS_AS(sweep_theorem2(bad), ParameterError);
  }
}

TEST_CASE("theorem 3 sweep on blaschke-type families") {
  SweepConfig cfg;
  cfg.family = Family::Power;
  cfg.n_list = {1, 4, 8};
  cfg.p = 2.0;
  cfg.g_select = "one";
  const SweepResult res = sweep_theorem3(cfg);
  REQUIRE(res.table.rows.size() == 3);
  // B = z^n, g = 1: the integral is 2 pi n/(n+1); at n = 1 this is pi
  CHECK(column(res.table, 0, "lhs") == doctest::Approx(M_PI).epsilon(1e-7));
  CHECK(column(res.table, 2, "lhs") == doctest::Approx(2.0 * M_PI * 8.0 / 9.0).epsilon(1e-7));

  SUBCASE("lacunary families are rejected") {
    SweepConfig bad = cfg;
    bad.family = Family::Lacunary;
    CHECK_THROWS_AS(sweep_theorem3(bad), ParameterError);
  }
  SUBCASE("cauchy factor has the geometric H^2 norm") {
    SweepConfig c2 = cfg;
    c2.g_select = "cauchy";
    const SweepResult r2 = sweep_theorem3(c2);
    CHECK(column(r2.table, 0, "g_hp") == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-9));
  }
}

TEST_CASE("pommerenke sweep") {
  SweepConfig cfg;
  cfg.family = Family::Power;
  cfg.n_list = {4, 16, 64};
  cfg.p = 1.0;
  const SweepResult res = sweep_pommerenke(cfg);
  for (std::size_t i = 0; i < res.table.rows.size(); ++i)
    CHECK(column(res.table, i, "mixed") == doctest::Approx(2.0 * M_PI).epsilon(1e-8));
  CHECK(column(res.table, 2, "ratio") < column(res.table, 0, "ratio"));
  SweepConfig bad = cfg;
  bad.p = 2.0;
  CHECK_THROWS_AS(sweep_pommerenke(bad), ParameterError);
}

TEST_CASE("lemma 3.2 circle-mean check") {
  AnalyticFunction f = monomial(6);
  const Table t = check_lemma32(f, 1.5, 6.0, {0.5, 0.9, 0.99});
  REQUIRE(t.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const double r = std::get<double>(t.rows[i][0]);
    const double lhs = std::get<double>(t.rows[i][1]);
    CHECK(lhs == doctest::Approx(2.0 * M_PI * 6.0 * std::pow(r, 5.0)).epsilon(1e-9));
  }
  // empirical C is the max ratio and is flagged
  int flags = 0;
  for (const auto& row : t.rows) flags += static_cast<int>(std::get<long long>(row.back()));
  CHECK(flags == 1);
}

TEST_CASE("hayman witness search") {
  SUBCASE("closed-form witness for z^n across the grid") {
    AnalyticFunction f = monomial(16);
    for (double r : {0.9, 0.99}) {
      for (double lambda : {0.5, 1.0, 1.5}) {
        const HaymanWitness w = hayman_witness_search(f, r, lambda, 16.0);
        CAPTURE(r);
        CAPTURE(lambda);
        CHECK(w.found);
        CHECK(w.lhs <= w.rhs);
      }
    }
  }
  SUBCASE("constants find a witness immediately") {
    const HaymanWitness w = hayman_witness_search(Polynomial({Complex(2.0, 0.0)}), 0.9, 1.0, 1.0);
    CHECK(w.found);
    CHECK(w.lhs == 0.0);
  }
  SUBCASE("clustered blaschke at tight radii") {
    AnalyticFunction b = random_family(FamilyKind::ClusteredBlaschke, 32, 17);
    const HaymanWitness w = hayman_witness_search(b, 0.99, 1.0, 32.0);
    CHECK(w.found);
  }
}

TEST_CASE("split radius diagnostic") {
  AnalyticFunction f = monomial(8);
  const SplitDiagnostic d = split_radius_diagnostic(f, 2.0, 1.0);
  // inner integral of |(z^8)'| over |z| < R is 2 pi n R^(n+1)/(n+1)
  const double R = 1.0 - 1.0 / 8.0;
  CHECK(d.r_split == doctest::Approx(R));
  CHECK(d.inner == doctest::Approx(2.0 * M_PI * 8.0 / 9.0 * std::pow(R, 9.0)).epsilon(1e-9));
  CHECK(d.reconciliation_gap < 1e-9 * d.full);

  const SplitDiagnostic far = split_radius_diagnostic(f, 2.0, 6.0);
  CHECK(far.annulus < 1e-3 * far.full);
}
