#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mrleq/distribution.hpp"
#include "mrleq/equilibrium.hpp"

namespace mrleq {

// Slack allowed when comparing two solved wholesale prices.
inline constexpr double kPriceOrderTolerance = 1e-7;

enum class CaseStatus { pass, fail, skipped, observed };
std::string to_string(CaseStatus s);

struct Precondition {
  std::string name;
  bool certified = false;
  std::string detail;
};

// One application of the "larger in mrl order => larger price" lemma:
// lower <=mrl upper was (or was not) certified and r*_lower, r*_upper observed.
struct LemmaCheck {
  std::string lower;
  std::string upper;
  bool mrl_certified = false;
  bool both_dgmrl = false;
  double r_lower = 0.0;
  double r_upper = 0.0;

  bool violated() const {
    return mrl_certified && both_dgmrl && r_lower > r_upper + kPriceOrderTolerance;
  }
};

struct ExperimentCase {
  std::string id;
  std::string description;
  json inputs;
  std::vector<Precondition> preconditions;
  std::string predicted;
  std::vector<std::pair<std::string, double>> observed;
  std::vector<LemmaCheck> lemma_checks;
  std::vector<std::string> flags;
  CaseStatus status = CaseStatus::skipped;
  std::string reason;
};

struct ExperimentReport {
  std::string id;
  std::string hypothesis;
  bool exploratory = false;
  std::vector<ExperimentCase> cases;

  int count(CaseStatus s) const;
  // No failing case. Exploratory reports never fail.
  bool ok() const { return exploratory || count(CaseStatus::fail) == 0; }
};

// r*_X <= r*_{cX} for each c >= 1, given X strictly DGMRL.
ExperimentReport scale_experiment(DistributionPtr x, const std::vector<double>& c_values);

// r*_X <= r*_{X+Z}. When X+Z is not DGMRL-certified, every fixed point of X+Z
// must lie above r*_X instead.
ExperimentReport convolution_experiment(DistributionPtr x, DistributionPtr z,
                                        const ConvolutionOptions& options = {});

// Closure of the price ordering under an increasing convex map, adding an
// independent IFR summand, and mixing; all given X1 <=mrl X2.
// The hr-order variant of the summand case is reported as its own case.
ExperimentReport closure_experiments(DistributionPtr x1, DistributionPtr x2, const MonotoneMap& phi,
                                     DistributionPtr z, double p,
                                     const ConvolutionOptions& options = {});

// Excess-wealth branch (alpha_L1 <= alpha_L2, one input DMRL) and dispersive
// branch (one input IFR); each predicts r*_1 <= r*_2.
ExperimentReport variability_experiments(DistributionPtr x1, DistributionPtr x2);

// Truncated normals with sigma1 < sigma2, mu1 <= mu2: mrl certificate and
// price ordering, with both coefficients of variation reported.
ExperimentReport normal_family_experiment(double mu1, double sigma1, double mu2, double sigma2);

struct CurveRow {
  double r = 0.0;
  double survival_f = 0.0;
  double survival_g = 0.0;
  double log_ratio = 0.0;
  double mrl_f = 0.0;
  double mrl_g = 0.0;
};

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CounterexampleResult {
  ExperimentReport report;
  std::vector<CurveRow> curves;
  std::vector<Assertion> assertions;
  EquilibriumResult solved_f;
  EquilibriumResult solved_g;
  bool ok() const;
};

// Reference values for the stochastically-larger-but-cheaper example.
struct CounterexampleTargets {
  double r_f = 1.0299;
  double r_f_tolerance = 2e-3;
  double r_g = 1.0 / 0.9;
  double r_g_tolerance = 1e-3;
};

// F = sinusoid(pi, 0.8, 1.2), G = sinusoid(0, 0.9, 0) = exponential(0.9).
CounterexampleResult counterexample_reproduction(const CounterexampleTargets& targets = {},
                                                 int curve_points = 1000);
std::string counterexample_csv(const std::vector<CurveRow>& rows);

// Exploratory: for every ordered pair of DGMRL-certified inputs with A <=st B
// certified, reports whether r*_A > r*_B. Asserts nothing.
ExperimentReport st_dominance_sweep(const std::vector<DistributionPtr>& corpus);
std::vector<DistributionPtr> default_sweep_corpus();

// Built-in configurations used by `experiment all` and the acceptance suite.
struct ClosureConfig {
  DistributionPtr x1;
  DistributionPtr x2;
  MonotoneMap phi;
  DistributionPtr z;
  double p = 0.5;
};
std::vector<DistributionPtr> standard_scale_inputs();
std::vector<double> standard_scale_factors();
std::vector<ClosureConfig> standard_closure_configs();
std::vector<std::pair<DistributionPtr, DistributionPtr>> standard_variability_pairs();
// scale, closure, variability, convolution and normal-family reports.
std::vector<ExperimentReport> standard_suite();

// Cases where a certified mrl order came with reversed prices.
std::vector<std::string> lemma_violations(const std::vector<ExperimentReport>& reports);

}  // namespace mrleq
