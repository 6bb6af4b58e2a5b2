#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bernlab/analytic_function.hpp"
#include "bernlab/norms.hpp"
#include "bernlab/table.hpp"

namespace bernlab {

enum class Family { Power, Lacunary, ClusteredBlaschke, UniformBlaschke };

Family family_from_name(const std::string& name);
const char* family_name(Family f);

struct FamilyMember {
  AnalyticFunction f;
  long long n = 0;  // valence bound fed to every theorem ratio (the degree)
  int terms = 0;    // lacunary term count m (0 otherwise)
  std::string label;
};

/// For lacunary families the sweep parameter is the term count m and the
/// recorded n is the degree 2^m; for the others the parameter is the degree.
FamilyMember make_family_member(Family fam, int n_or_m, std::uint64_t seed);

struct QuadOverride {
  int panels = 0;   // 0 = sweep default
  int gauss = 0;
  int angular = 0;
  int taper = -1;   // -1 default, 0 off, 1 on
};

struct SweepConfig {
  Family family = Family::Power;
  std::vector<int> n_list;
  std::uint64_t seed = 1;
  double p = 2.0;
  double sigma = 1.0;
  double alpha = 0.25;
  double K = 1.0;
  std::string g_select = "all";  // theorem 3: one | cauchy | rpoly | all
  std::vector<double> r_list = {0.5, 0.9, 0.99, 0.999};  // lemma32 radii
  QuadOverride quad;
};

/// Fitted C n^beta (log n)^gamma with any of beta, gamma held fixed;
/// residual is the max abs deviation in log scale.
struct GrowthFit {
  double c = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  bool beta_fixed = false;
  bool gamma_fixed = false;
  double residual = 0.0;

  nlohmann::ordered_json to_json() const;
};

GrowthFit fit_growth(const std::vector<std::pair<double, double>>& points,
                     std::optional<double> fixed_beta, std::optional<double> fixed_gamma);

struct SweepResult {
  Table table;
  std::optional<GrowthFit> fit;
  nlohmann::ordered_json summary;
};

// The sweeps. Each instantiates its theorem's ratio over the family, flags
// the max-ratio row, and (with >= 3 rows) fits the growth model.
SweepResult sweep_theorem1(const SweepConfig& cfg);           // A^1 of f' vs sqrt(log) H^p
SweepResult sweep_theorem1_disk_sup(const SweepConfig& cfg);  // A^p of f' vs H^infinity
SweepResult sweep_theorem2(const SweepConfig& cfg);           // Besov vs H^p, two regimes
SweepResult sweep_theorem3(const SweepConfig& cfg);           // B' g vs sqrt(log) H^p
SweepResult sweep_pommerenke(const SweepConfig& cfg);         // mixed norm vs n^(p/2)
SweepResult sweep_lemma32(const SweepConfig& cfg);            // circle means vs n^(1/2)/(1-r)^(1/p)

struct HaymanWitness {
  bool found = false;
  double r_tilde = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double min_ratio = 0.0;  // min lhs/rhs observed over the scan
  int evaluations = 0;

  nlohmann::ordered_json to_json() const;
};

/// Scans 64 candidate radii on [2r-1, r] (one 8x refinement pass around the
/// best) for the first r_tilde with
///   int |f'|^2 |f|^(lambda-2) dt <= 4 n_bound M(r,f)^lambda / (lambda (1-r)).
HaymanWitness hayman_witness_search(const AnalyticFunction& f, double r, double lambda,
                                    double n_bound, int count = 0);

/// Rows (r, int |f'| dt, n^(1/2) (1-r)^(-1/p) ||f||_p, ratio); the max ratio
/// is the empirical constant of the circle-mean bound.
Table check_lemma32(const AnalyticFunction& f, double p, double n_bound,
                    const std::vector<double>& r_list, const NormOptions& opts = {});

struct SplitDiagnostic {
  double r_split = 0.0;
  double inner = 0.0;
  double annulus = 0.0;
  double full = 0.0;
  double reconciliation_gap = 0.0;

  nlohmann::ordered_json to_json() const;
};

/// Inner-disk/annulus split of int |f'| dA at r = 1 - n^-K.
SplitDiagnostic split_radius_diagnostic(const AnalyticFunction& f, double p, double K,
                                        const NormOptions& opts = {});

/// Sweep-grade grid defaults for a family member of the given degree
/// (lighter than the norm defaults; every row records its grid).
NormOptions sweep_norm_options(long long degree, const QuadOverride& o);

}  // namespace bernlab
