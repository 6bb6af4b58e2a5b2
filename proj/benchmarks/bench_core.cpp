#include <benchmark/benchmark.h>

#include <complex>

#include "bernlab/analytic_function.hpp"
#include "bernlab/fft.hpp"
#include "bernlab/norms.hpp"
#include "bernlab/quadrature.hpp"

using namespace bernlab;

namespace {

AnalyticFunction monomial(int n) {
  std::vector<Complex> c(n + 1, Complex(0.0, 0.0));
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

void BlaschkeDerivCircle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  AnalyticFunction b = random_family(FamilyKind::ClusteredBlaschke, n, 1);
  const double r = 1.0 - 1.0 / (4.0 * n);
  auto circle = unit_circle(4096);
  std::size_t j = 0;
  for (auto _ : state) {
    const Complex z = r * (*circle)[j++ & 4095];
    benchmark::DoNotOptimize(b.deriv(z));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BlaschkeDerivCircle)->RangeMultiplier(4)->Range(64, 4096);

void LacunaryEval(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  AnalyticFunction f = LacunarySeries::standard(m);
  const Complex z(0.63, 0.41);
  for (auto _ : state) benchmark::DoNotOptimize(f.eval_with_deriv(z));
}
BENCHMARK(LacunaryEval)->DenseRange(5, 13, 4);

void DiskIntegralMonomialDeriv(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  AnalyticFunction f = monomial(n);
  DiskQuadrature quad({28, 12, true}, {4096, false, 32.0, 1024}, 0.0);
  for (auto _ : state) {
    auto q = quad.integrate([&](Complex z) { return std::abs(f.deriv(z)); });
    benchmark::DoNotOptimize(q.value);
  }
}
BENCHMARK(DiskIntegralMonomialDeriv)->Arg(10)->Arg(100);

void Fft(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<Complex> a(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = Complex(std::cos(0.1 * k), std::sin(0.07 * k));
  for (auto _ : state) {
    auto b = a;
    fft_inplace(b);
    benchmark::DoNotOptimize(b[1]);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(Fft)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

void HardyNormBlaschke(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  AnalyticFunction b = random_family(FamilyKind::ClusteredBlaschke, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hardy_norm(b, 2.0).value);
}
BENCHMARK(HardyNormBlaschke)->Arg(64)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
