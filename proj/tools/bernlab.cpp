// bernlab command-line front end: parse function specs and sweep configs,
// dispatch to the lab modules, emit JSON/CSV/SVG reports with manifests.
//
// Exit codes: 0 success, 2 parameter/hypothesis error, 3 numerical error,
// 64 usage error. Plots never affect the exit status.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bernlab/approximation.hpp"
#include "bernlab/experiments.hpp"
#include "bernlab/function_io.hpp"
#include "bernlab/manifest.hpp"
#include "bernlab/norms.hpp"
#include "bernlab/svg.hpp"
#include "bernlab/valence.hpp"
#include "bernlab/version.hpp"

namespace {

using namespace bernlab;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write: " + path);
  out << text;
}

void emit_json(const std::string& out_path, const nlohmann::ordered_json& j) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
}

std::vector<int> parse_n_list(const std::string& spec) {
  std::vector<int> out;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const int a = std::stoi(spec.substr(0, dots));
    const int b = std::stoi(spec.substr(dots + 2));
    if (b < a) throw ParameterError("empty n range: " + spec);
    for (int v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  std::size_t pos = 0;
  while (pos < spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    out.push_back(std::stoi(spec.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (out.empty()) throw ParameterError("empty n list");
  return out;
}

double require_flag(double v, const char* flag, const char* functional) {
  if (std::isnan(v))
    throw ParameterError(std::string("missing ") + flag + " for " + functional);
  return v;
}

// ---------------------------------------------------------------------------

struct NormArgs {
  std::string function, functional, out;
  double p = NAN, sigma = NAN, alpha = NAN;
  int panels = 0, gauss = 0, angular = 0;
};

void run_norm(const NormArgs& a) {
  static const std::vector<std::string> known = {"hardy", "a1-deriv",   "ap-deriv", "besov",
                                                 "lp",    "pommerenke", "bmoa"};
  if (std::find(known.begin(), known.end(), a.functional) == known.end())
    throw UsageError("unknown functional: " + a.functional);

  Timer timer;
  const AnalyticFunction f = load_function(a.function);
  NormOptions opts;
  if (a.panels > 0) opts.panels = a.panels;
  if (a.gauss > 0) opts.gauss = a.gauss;
  if (a.angular > 0) opts.angular = a.angular;

  NormReport rep;
  if (a.functional == "hardy")
    rep = hardy_norm(f, require_flag(a.p, "--p", "hardy"), opts);
  else if (a.functional == "a1-deriv")
    rep = bergman_deriv_norm(f, 1.0, opts);
  else if (a.functional == "ap-deriv")
    rep = bergman_deriv_norm(f, require_flag(a.p, "--p", "ap-deriv"), opts);
  else if (a.functional == "besov")
    rep = besov_seminorm(f, require_flag(a.sigma, "--sigma", "besov"),
                         require_flag(a.alpha, "--alpha", "besov"), opts);
  else if (a.functional == "lp")
    rep = littlewood_paley_norm(f, require_flag(a.p, "--p", "lp"), opts);
  else if (a.functional == "pommerenke")
    rep = pommerenke_mixed_norm(f, require_flag(a.p, "--p", "pommerenke"), opts);
  else
    rep = bmoa_surrogate(f, opts);

  RunManifest man;
  man.command = "norm";
  man.params = {{"function", a.function}, {"functional", a.functional}};
  if (!std::isnan(a.p)) man.params["p"] = a.p;
  if (!std::isnan(a.sigma)) man.params["sigma"] = a.sigma;
  if (!std::isnan(a.alpha)) man.params["alpha"] = a.alpha;
  man.timing_ms = timer.ms();

  nlohmann::ordered_json j;
  j["manifest"] = man.to_json();
  j["report"] = rep.to_json();
  emit_json(a.out, j);
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string theorem, family = "power", n_spec, out, g = "all", r_spec;
  double p = NAN, sigma = NAN, alpha = NAN, K = 1.0;
  std::uint64_t seed = 1;
  int panels = 0, gauss = 0, angular = 0, taper = -1;
  bool plot = false;
};

void run_sweep(const SweepArgs& a) {
  static const std::vector<std::string> known = {"1", "1-sup", "2", "3", "pommerenke", "lemma32"};
  if (std::find(known.begin(), known.end(), a.theorem) == known.end())
    throw UsageError("unknown theorem id: " + a.theorem);
  if (a.out.empty()) throw ParameterError("sweep needs --out <dir>");

  Timer timer;
  SweepConfig cfg;
  cfg.family = family_from_name(a.family);
  cfg.n_list = parse_n_list(a.n_spec);
  cfg.seed = a.seed;
  if (!std::isnan(a.p)) cfg.p = a.p;
  if (!std::isnan(a.sigma)) cfg.sigma = a.sigma;
  if (!std::isnan(a.alpha)) cfg.alpha = a.alpha;
  cfg.K = a.K;
  cfg.g_select = a.g;
  cfg.quad = {a.panels, a.gauss, a.angular, a.taper};
  if (!a.r_spec.empty()) {
    cfg.r_list.clear();
    std::size_t pos = 0;
    while (pos < a.r_spec.size()) {
      auto comma = a.r_spec.find(',', pos);
      if (comma == std::string::npos) comma = a.r_spec.size();
      cfg.r_list.push_back(std::stod(a.r_spec.substr(pos, comma - pos)));
      pos = comma + 1;
    }
  }

  SweepResult res;
  std::string plot_x = "n", plot_y;
  if (a.theorem == "1") {
    res = sweep_theorem1(cfg);
    plot_y = "a1_deriv";
  } else if (a.theorem == "1-sup") {
    res = sweep_theorem1_disk_sup(cfg);
    plot_y = "ap_deriv_pow";
  } else if (a.theorem == "2") {
    res = sweep_theorem2(cfg);
    plot_y = "besov_pow";
  } else if (a.theorem == "3") {
    res = sweep_theorem3(cfg);
    plot_y = "lhs";
  } else if (a.theorem == "pommerenke") {
    res = sweep_pommerenke(cfg);
    plot_y = "mixed";
  } else {
    res = sweep_lemma32(cfg);
    plot_y = "lhs";
  }

  fs::create_directories(a.out);
  {
    std::ofstream csv(fs::path(a.out) / "sweep.csv", std::ios::binary);
    if (!csv) throw ParameterError("cannot write sweep.csv under " + a.out);
    res.table.write_csv(csv);
  }

  RunManifest man;
  man.command = "sweep";
  man.params = {{"theorem", a.theorem}, {"family", a.family}, {"n", a.n_spec},
                {"p", cfg.p},           {"sigma", cfg.sigma}, {"alpha", cfg.alpha},
                {"K", cfg.K},           {"g", cfg.g_select}};
  man.seed = cfg.seed;
  man.timing_ms = timer.ms();

  nlohmann::ordered_json summary;
  summary["manifest"] = man.to_json();
  summary["summary"] = res.summary;
  summary["fit"] = res.fit ? res.fit->to_json() : nlohmann::ordered_json();
  emit_json((fs::path(a.out) / "summary.json").string(), summary);

  if (a.plot) {
    std::vector<std::pair<double, double>> pts;
    int xi = -1, yi = -1;
    for (std::size_t i = 0; i < res.table.columns.size(); ++i) {
      if (res.table.columns[i] == plot_x) xi = static_cast<int>(i);
      if (res.table.columns[i] == plot_y) yi = static_cast<int>(i);
    }
    if (a.theorem == "lemma32") {
      for (std::size_t i = 0; i < res.table.columns.size(); ++i)
        if (res.table.columns[i] == "r") xi = static_cast<int>(i);
    }
    for (const auto& row : res.table.rows) {
      double x = 0.0, y = 0.0;
      if (xi >= 0) {
        if (std::holds_alternative<long long>(row[xi]))
          x = static_cast<double>(std::get<long long>(row[xi]));
        else if (std::holds_alternative<double>(row[xi]))
          x = std::get<double>(row[xi]);
        if (a.theorem == "lemma32") x = 1.0 / (1.0 - x);
      }
      if (yi >= 0 && std::holds_alternative<double>(row[yi])) y = std::get<double>(row[yi]);
      pts.emplace_back(x, y);
    }
    const GrowthFit* fit = res.fit ? &*res.fit : nullptr;
    write_text((fs::path(a.out) / "plot.svg").string(),
               loglog_svg("theorem " + a.theorem + " / " + a.family, pts, fit));
  }
}

// ---------------------------------------------------------------------------

struct ValenceArgs {
  std::string function, r_spec = "1", out, csv;
  double claim = NAN, rho = 1.0 - 0x1.0p-20;
  std::uint64_t seed = 1;
  int radial = 32, sectors = 64;
};

void run_valence(const ValenceArgs& a) {
  Timer timer;
  const AnalyticFunction f = load_function(a.function);
  ValenceOptions vopts;
  vopts.contour_radius = a.rho;

  std::vector<double> r_list;
  std::size_t pos = 0;
  while (pos < a.r_spec.size()) {
    auto comma = a.r_spec.find(',', pos);
    if (comma == std::string::npos) comma = a.r_spec.size();
    r_list.push_back(std::stod(a.r_spec.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (r_list.empty()) throw ParameterError("valence needs --R");

  RunManifest man;
  man.command = "valence";
  man.params = {{"function", a.function}, {"R", a.r_spec}, {"rho", a.rho}};
  man.seed = a.seed;

  nlohmann::ordered_json j;
  ValenceProfile last;
  if (!std::isnan(a.claim)) {
    man.params["claim"] = a.claim;
    const CertifyReport rep =
        certify_mean_valent(f, a.claim, r_list, a.radial, a.sectors, a.seed, vopts);
    j["certify"] = rep.to_json();
    last = mean_valence(f, r_list.back(), a.radial, a.sectors, a.seed, vopts);
  } else {
    last = mean_valence(f, r_list.back(), a.radial, a.sectors, a.seed, vopts);
    j["profile"] = last.to_json();
  }
  man.timing_ms = timer.ms();
  j["manifest"] = man.to_json();
  if (!std::isnan(a.claim)) j["profile_last_R"] = last.to_json();
  emit_json(a.out, j);
  if (!a.csv.empty()) {
    std::ofstream csv(a.csv, std::ios::binary);
    if (!csv) throw ParameterError("cannot write: " + a.csv);
    last.write_csv(csv);
  }
}

// ---------------------------------------------------------------------------

struct HaymanArgs {
  std::string function, out;
  double r = NAN, lambda = NAN, n_bound = NAN;
  int angular = 0;
};

void run_hayman(const HaymanArgs& a) {
  Timer timer;
  const AnalyticFunction f = load_function(a.function);
  const double nb =
      std::isnan(a.n_bound) ? static_cast<double>(f.degree()) : a.n_bound;
  const HaymanWitness w = hayman_witness_search(f, require_flag(a.r, "--r", "hayman"),
                                                require_flag(a.lambda, "--lambda", "hayman"), nb,
                                                a.angular);
  RunManifest man;
  man.command = "hayman";
  man.params = {{"function", a.function}, {"r", a.r}, {"lambda", a.lambda}, {"n", nb}};
  man.timing_ms = timer.ms();
  nlohmann::ordered_json j;
  j["manifest"] = man.to_json();
  j["witness"] = w.to_json();
  emit_json(a.out, j);
}

// ---------------------------------------------------------------------------

struct CounterexampleArgs {
  std::string phi = "log", out;
  int blocks = 6;
};

void run_counterexample(const CounterexampleArgs& a) {
  Timer timer;
  const PhiFunction phi = PhiFunction::builtin(a.phi);
  auto [f, rep] = littlewood_counterexample(phi, a.blocks);

  RunManifest man;
  man.command = "counterexample";
  man.params = {{"phi", a.phi}, {"blocks", a.blocks}};
  man.timing_ms = timer.ms();

  nlohmann::ordered_json j;
  j["manifest"] = man.to_json();
  j["report"] = rep.to_json();
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  const auto& c = f.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k)
    if (std::abs(c[k]) != 0.0) {
      int lg = 0;
      while ((std::size_t(1) << lg) < k) ++lg;
      terms.push_back({lg, c[k].real(), c[k].imag()});
    }
  j["function"] = {{"kind", "lacunary"}, {"terms", terms}};
  emit_json(a.out, j);
}

// ---------------------------------------------------------------------------

struct InverseArgs {
  std::string coeffs, weight = "sqrtlog", out;
  double p = 2.0;
};

void run_inverse(const InverseArgs& a) {
  Timer timer;
  std::ifstream in(a.coeffs);
  if (!in) throw ParameterError("cannot open coefficient file: " + a.coeffs);
  nlohmann::json cj;
  try {
    in >> cj;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed coefficient file: ") + e.what());
  }
  const nlohmann::json& arr = cj.is_object() && cj.contains("coeffs") ? cj["coeffs"] : cj;
  if (!arr.is_array()) throw ParameterError("coefficient file must hold an array of [re, im]");
  std::vector<Complex> coeffs;
  for (const auto& e : arr) {
    if (e.is_number())
      coeffs.emplace_back(e.get<double>(), 0.0);
    else
      coeffs.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  }

  SeriesWeight w;
  if (a.weight == "sqrtlog")
    w = SeriesWeight::SqrtLog;
  else if (a.weight == "invp")
    w = SeriesWeight::InvP;
  else
    throw UsageError("unknown weight: " + a.weight + " (sqrtlog | invp)");

  const SeriesDiagnosis diag = inverse_series_test(CoeffFunction(std::move(coeffs)), w, a.p);

  RunManifest man;
  man.command = "inverse";
  man.params = {{"coeffs", a.coeffs}, {"weight", a.weight}, {"p", a.p}};
  man.timing_ms = timer.ms();
  nlohmann::ordered_json j;
  j["manifest"] = man.to_json();
  j["diagnosis"] = diag.to_json();
  emit_json(a.out, j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bernlab: integral functionals and Bernstein-type sweeps on the unit disk"};
  app.require_subcommand(1);

  NormArgs na;
  auto* norm = app.add_subcommand("norm", "compute one functional of a function spec");
  norm->add_option("--function", na.function, "function spec JSON")->required();
  norm->add_option("--functional", na.functional,
                   "hardy|a1-deriv|ap-deriv|besov|lp|pommerenke|bmoa")
      ->required();
  norm->add_option("--p", na.p);
  norm->add_option("--sigma", na.sigma);
  norm->add_option("--alpha", na.alpha);
  norm->add_option("--panels", na.panels);
  norm->add_option("--gauss", na.gauss);
  norm->add_option("--angular", na.angular);
  norm->add_option("--out", na.out, "output JSON path (stdout when absent)");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "run a theorem sweep over a family");
  sweep->add_option("--theorem", sa.theorem, "1|1-sup|2|3|pommerenke|lemma32")->required();
  sweep->add_option("--family", sa.family, "power|lacunary|clustered-blaschke|uniform-blaschke");
  sweep->add_option("--n", sa.n_spec, "range a..b or comma list")->required();
  sweep->add_option("--p", sa.p);
  sweep->add_option("--sigma", sa.sigma);
  sweep->add_option("--alpha", sa.alpha);
  sweep->add_option("--K", sa.K);
  sweep->add_option("--seed", sa.seed);
  sweep->add_option("--g", sa.g, "theorem 3 right factor: 1|cauchy|rpoly4|all");
  sweep->add_option("--r", sa.r_spec, "lemma32 radii, comma list");
  sweep->add_option("--panels", sa.panels);
  sweep->add_option("--gauss", sa.gauss);
  sweep->add_option("--angular", sa.angular);
  sweep->add_option("--taper", sa.taper, "0|1 angular taper override");
  sweep->add_flag("--plot", sa.plot, "also write plot.svg");
  sweep->add_option("--out", sa.out, "output directory")->required();

  ValenceArgs va;
  auto* valence = app.add_subcommand("valence", "covering counts and mean valence");
  valence->add_option("--function", va.function)->required();
  valence->add_option("--R", va.r_spec, "radius or comma list");
  valence->add_option("--claim", va.claim, "certify mean n-valence against this n");
  valence->add_option("--rho", va.rho, "contour radius");
  valence->add_option("--seed", va.seed);
  valence->add_option("--radial-cells", va.radial);
  valence->add_option("--angular-cells", va.sectors);
  valence->add_option("--out", va.out);
  valence->add_option("--csv", va.csv, "write the w-grid profile as CSV");

  HaymanArgs ha;
  auto* hayman = app.add_subcommand("hayman", "witness search for the good-radius bound");
  hayman->add_option("--function", ha.function)->required();
  hayman->add_option("--r", ha.r)->required();
  hayman->add_option("--lambda", ha.lambda)->required();
  hayman->add_option("--n", ha.n_bound, "valence bound (default: degree)");
  hayman->add_option("--angular", ha.angular);
  hayman->add_option("--out", ha.out);

  CounterexampleArgs ca;
  auto* cex = app.add_subcommand("counterexample", "Littlewood-style lacunary construction");
  cex->add_option("--phi", ca.phi, "log|sqrtlog|loglog")->required();
  cex->add_option("--blocks", ca.blocks)->required();
  cex->add_option("--out", ca.out);

  InverseArgs ia;
  auto* inverse = app.add_subcommand("inverse", "series convergence diagnosis from coefficients");
  inverse->add_option("--coeffs", ia.coeffs)->required();
  inverse->add_option("--weight", ia.weight, "sqrtlog|invp")->required();
  inverse->add_option("--p", ia.p);
  inverse->add_option("--out", ia.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (app.got_subcommand(norm)) run_norm(na);
    else if (app.got_subcommand(sweep)) run_sweep(sa);
    else if (app.got_subcommand(valence)) run_valence(va);
    else if (app.got_subcommand(hayman)) run_hayman(ha);
    else if (app.got_subcommand(cex)) run_counterexample(ca);
    else if (app.got_subcommand(inverse)) run_inverse(ia);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 64;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
