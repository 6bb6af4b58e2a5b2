#include "bernlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

#include "bernlab/fft.hpp"
#include "bernlab/gauss_rules.hpp"
#include "bernlab/summation.hpp"

namespace bernlab {

namespace {

constexpr int kAngularCap = 1 << 22;

int taper_count(const AngularPolicy& ap, double one_minus_r) {
  if (!ap.taper) return ap.target;
  double want = ap.per_scale / std::max(one_minus_r, 1e-18);
  want = std::clamp(want, static_cast<double>(ap.floor_count), static_cast<double>(ap.target));
  return static_cast<int>(next_pow2(static_cast<std::size_t>(std::ceil(want))));
}

void assign_angular(std::vector<RadialNode>& nodes, const AngularPolicy& ap) {
  for (auto& n : nodes) n.angular = taper_count(ap, n.one_minus_r);
}

// Panels expressed in delta = 1 - r, so near-boundary nodes keep full
// precision in their distance to the boundary.
struct DeltaPanel {
  double lo, hi;   // delta interval, lo < hi
  bool jacobi;     // absorb delta^gamma into the rule (lo == 0 only)
};

std::vector<DeltaPanel> build_panels(const RadialPanels& rp, double r0, double r1) {
  if (rp.depth < 1 || rp.gauss < 2) throw ParameterError("radial panels need depth >= 1, gauss >= 2");
  if (!(r0 >= 0.0 && r0 < r1 && r1 <= 1.0))
    throw ParameterError("radial band must satisfy 0 <= r0 < r1 <= 1");
  const double d0 = 1.0 - r0;  // outermost delta of the band
  const double d1 = 1.0 - r1;  // innermost delta (0 if the band touches r = 1)
  std::vector<DeltaPanel> panels;
  // geometric panels [2^-j-1, 2^-j] in delta, j = 0..depth-1
  for (int j = 0; j < rp.depth; ++j) {
    double hi = std::ldexp(1.0, -j);
    double lo = 0.5 * hi;
    hi = std::min(hi, d0);
    lo = std::max(lo, d1);
    if (lo < hi) panels.push_back({lo, hi, false});
  }
  // terminal panel [0, 2^-depth]
  double hi = std::min(std::ldexp(1.0, -rp.depth), d0);
  if (d1 < hi) {
    if (d1 == 0.0)
      panels.push_back({0.0, hi, rp.jacobi_terminal});
    else
      panels.push_back({d1, hi, false});
  }
  return panels;
}

std::vector<RadialNode> nodes_from_panels(const std::vector<DeltaPanel>& panels, int gauss,
                                          double gamma, bool area_weight) {
  std::vector<RadialNode> nodes;
  nodes.reserve(panels.size() * gauss);
  for (const auto& p : panels) {
    QuadRule rule = p.jacobi ? gauss_jacobi(gauss, p.lo, p.hi, 0.0, gamma)
                             : gauss_legendre(gauss, p.lo, p.hi);
    for (int i = gauss - 1; i >= 0; --i) {  // increasing r
      const double delta = rule.x[i];
      const double r = 1.0 - delta;
      double w = rule.w[i];
      if (area_weight) {
        // (1-r^2)^gamma = (delta (2-delta))^gamma; the Jacobi rule already
        // carries delta^gamma, leaving the smooth (2-delta)^gamma part.
        if (p.jacobi)
          w *= std::pow(2.0 - delta, gamma);
        else if (gamma != 0.0)
          w *= std::pow(delta * (2.0 - delta), gamma);
        w *= r;
      }
      nodes.push_back({r, delta, w, 0});
    }
  }
  return nodes;
}

// Angular trapezoid sum of h on the circle of radius r: (2pi/M) sum_j h(z_j),
// evaluated serially in blocks with a fixed pairwise reduction.
double circle_sum(const Integrand& h, double r, int count) {
  auto circle = unit_circle(count);
  std::vector<double> vals(count);
  const auto& u = *circle;
  for (int j = 0; j < count; ++j) {
    const double v = h(Complex(r * u[j].real(), r * u[j].imag()));
    vals[j] = v;
  }
  const double s = pairwise_sum(vals);
  if (!std::isfinite(s)) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "non-finite integrand on the circle r = %.17g", r);
    throw NumericalError(buf);
  }
  return s * (kTwoPi / count);
}

double pow_abs(Complex v, double p) {
  if (p == 1.0) return std::abs(v);
  if (p == 2.0) return std::norm(v);
  return std::pow(std::abs(v), p);
}

}  // namespace

AngularPolicy default_angular(long long degree) {
  long long target = std::max<long long>(4096, 64 * std::max<long long>(degree, 0));
  target = std::min<long long>(target, kAngularCap);
  return {static_cast<int>(target), false, 32.0, 1024};
}

std::shared_ptr<const std::vector<Complex>> unit_circle(int count) {
  if (count < 4) throw ParameterError("circle grid needs at least 4 angles");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const std::vector<Complex>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[count];
  if (!slot) {
    auto pts = std::make_shared<std::vector<Complex>>(count);
    for (int j = 0; j < count; ++j) {
      const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(count);
      (*pts)[j] = Complex(std::cos(t), std::sin(t));
    }
    slot = std::move(pts);
  }
  return slot;
}

std::vector<RadialNode> radial_nodes_area(const RadialPanels& panels, double gamma, double r0,
                                          double r1) {
  if (gamma <= -1.0) throw ParameterError("weight exponent gamma must be > -1 (integrable)");
  return nodes_from_panels(build_panels(panels, r0, r1), panels.gauss, gamma, true);
}

std::vector<RadialNode> radial_nodes_plain(const RadialPanels& panels, double r0, double r1) {
  auto ps = build_panels(panels, r0, r1);
  for (auto& p : ps) p.jacobi = false;  // plain dr has no endpoint weight
  return nodes_from_panels(ps, panels.gauss, 0.0, false);
}

DiskQuadrature::DiskQuadrature(RadialPanels panels, AngularPolicy angular, double gamma)
    : panels_(panels), angular_(angular), gamma_(gamma) {
  if (gamma_ <= -1.0) throw ParameterError("weight exponent gamma must be > -1 (integrable)");
  if (angular_.target < 4) throw ParameterError("angular target too small");
}

double DiskQuadrature::run(const Integrand& h, const RadialPanels& panels,
                           const AngularPolicy& angular, double r0, double r1) const {
  auto nodes = radial_nodes_area(panels, gamma_, r0, r1);
  assign_angular(nodes, angular);
  std::vector<double> partial(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    const RadialNode& n = nodes[i];
    partial[i] = n.weight * circle_sum(h, n.r, n.angular);
  });
  return pairwise_sum(partial);
}

QuadResult DiskQuadrature::integrate_band(const Integrand& h, double r0, double r1) const {
  const double coarse = run(h, panels_, angular_, r0, r1);
  RadialPanels fine = panels_;
  fine.depth += 4;
  AngularPolicy fine_ang = angular_;
  fine_ang.target = std::min(2 * angular_.target, kAngularCap);
  fine_ang.per_scale = 2.0 * angular_.per_scale;
  fine_ang.floor_count = std::min(2 * angular_.floor_count, kAngularCap);
  const double refined = run(h, fine, fine_ang, r0, r1);
  return {refined, std::abs(refined - coarse)};
}

QuadResult DiskQuadrature::integrate_annulus(const Integrand& h, double r_min) const {
  if (!(r_min >= 0.0 && r_min < 1.0)) throw ParameterError("annulus needs 0 <= r_min < 1");
  return integrate_band(h, r_min, 1.0);
}

QuadResult DiskQuadrature::integrate_inner(const Integrand& h, double r_max) const {
  if (!(r_max > 0.0 && r_max <= 1.0)) throw ParameterError("inner disk needs 0 < r_max <= 1");
  return integrate_band(h, 0.0, r_max);
}

double circle_mean_once(const ComplexMap& f, double r, double p, int count) {
  if (!(r >= 0.0 && r <= 1.0)) throw ParameterError("circle radius must lie in [0, 1]");
  if (!(p > 0.0)) throw ParameterError("circle mean exponent must be positive");
  auto circle = unit_circle(count);
  const auto& u = *circle;

  // fixed 8192-wide blocks so the reduction order is thread-count independent
  const int block = 8192;
  const int nblocks = (count + block - 1) / block;
  std::vector<double> bsum(nblocks);
  parallel_for(static_cast<std::size_t>(nblocks), [&](std::size_t b) {
    const int lo = static_cast<int>(b) * block;
    const int hi = std::min(count, lo + block);
    std::vector<double> vals(hi - lo);
    for (int j = lo; j < hi; ++j) {
      const Complex v = f(Complex(r * u[j].real(), r * u[j].imag()));
      vals[j - lo] = pow_abs(v, p);
    }
    bsum[b] = pairwise_sum(vals);
  });
  const double s = pairwise_sum(bsum) / count;
  if (!std::isfinite(s)) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "non-finite values on the circle r = %.17g", r);
    throw NumericalError(buf);
  }
  return s;
}

QuadResult circle_mean(const ComplexMap& f, double r, double p, int count) {
  const double coarse = circle_mean_once(f, r, p, count);
  const double refined = circle_mean_once(f, r, p, std::min(2 * count, kAngularCap));
  return {refined, std::abs(refined - coarse)};
}

int effective_threads() {
  static const int n = [] {
    if (const char* s = std::getenv("BERNLAB_THREADS")) {
      const int v = std::atoi(s);
      if (v > 0) return v;
    }
    return omp_get_max_threads();
  }();
  return n;
}

}  // namespace bernlab
