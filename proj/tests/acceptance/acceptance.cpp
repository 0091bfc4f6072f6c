// One PASS/FAIL line per acceptance criterion. With an argument N only
// criterion N runs; the exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mrleq/comparative.hpp"
#include "mrleq/equilibrium.hpp"
#include "mrleq/oracle.hpp"
#include "mrleq/orders.hpp"
#include "mrleq/reliability.hpp"

using namespace mrleq;

namespace {

class Criterion {
 public:
  // Records one sub-check; every failing sub-check is printed.
  void check(bool ok, const std::string& what) {
    if (!ok) {
      ok_ = false;
      std::printf("  failed: %s\n", what.c_str());
    }
  }
  void note(const std::string& what) { std::printf("  %s\n", what.c_str()); }
  bool ok() const { return ok_; }

 private:
  bool ok_ = true;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void counterexample(Criterion& c) {
  auto t0 = std::chrono::steady_clock::now();
  CounterexampleResult r = counterexample_reproduction();
  double elapsed = seconds_since(t0);
  for (const auto& a : r.assertions) {
    c.note((a.passed ? "ok   " : "FAIL ") + a.name + ": " + a.detail);
    c.check(a.passed, a.name);
  }
  c.note(fmt("r*_F = %.10f, r*_G = %.10f", r.solved_f.r_star, r.solved_g.r_star));
  c.check(elapsed < 10.0, fmt("runtime %.2f s < 10 s", elapsed));
}

void analytic(Criterion& c) {
  auto t0 = std::chrono::steady_clock::now();
  for (double b : {1.0, 2.0, 5.0}) {
    double r = solve_wholesale_price(make_uniform(0.0, b)).r_star;
    c.check(std::abs(r - b / 3.0) <= 1e-7, fmt("uniform(0,%g): r* = %.12g vs b/3", b, r));
  }
  for (double lambda : {0.5, 0.9, 2.0}) {
    double r = solve_wholesale_price(make_exponential(lambda)).r_star;
    c.check(std::abs(r - 1.0 / lambda) <= 1e-7, fmt("exponential(%g): r* = %.12g vs 1/lambda", lambda, r));
  }
  double elapsed = seconds_since(t0);
  c.check(elapsed < 1.0, fmt("runtime %.3f s < 1 s", elapsed));
}

void oracle_agreement(Criterion& c) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<DistributionPtr> corpus = {
      make_exponential(1.0),
      make_exponential(0.5),
      make_uniform(0.0, 1.0),
      make_uniform(1.0, 3.0),
      make_truncated_normal(1.0, 1.0),
      make_truncated_normal(5.0, 2.0),
      mixture(make_uniform(0.0, 1.0), make_uniform(0.0, 2.0), 0.5),
      mixture(make_truncated_normal(2.0, 0.5), make_truncated_normal(3.0, 0.5), 0.4),
      shift_scale(make_truncated_normal(1.0, 1.0), {0.0, 2.0}),
      shift_scale(make_exponential(1.0), {0.0, 3.0}),
  };
  int certified = 0;
  for (const auto& d : corpus) {
    EquilibriumResult s = solve_wholesale_price(d);
    if (!s.dgmrl_certified) {
      c.note("not DGMRL-certified, excluded: " + d->spec().dump());
      continue;
    }
    ++certified;
    OracleReport o = argmax_grid(*d, 1, oracle_grid(*d, 4000));
    double gap = std::abs(o.r_hat - s.r_star);
    c.check(gap <= o.grid_step, d->spec().dump() + fmt(": gap %.3g > step %.3g", gap, o.grid_step));
  }
  c.note(fmt("%g DGMRL-certified distributions", certified));
  c.check(certified >= 8, "at least 8 certified distributions");
  double elapsed = seconds_since(t0);
  c.check(elapsed < 60.0, fmt("runtime %.2f s < 60 s", elapsed));
}

void price_of_anarchy(Criterion& c) {
  for (int n = 1; n <= 10; ++n) {
    c.check(poa(n) == 1.0 + 1.0 / n, fmt("poa(%g) exact", n));
    for (double r : {0.1, 1.0, 7.5}) {
      double e = empirical_poa(r, n, approach_grid(r, 60));
      c.check(std::abs(e - (1.0 + 1.0 / n)) <= 1e-4, fmt("empirical poa n=%g r*=%g: %.10g", n, r, e));
    }
  }
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> price(0.05, 5.0), markup(1e-3, 10.0);
  std::uniform_int_distribution<int> firms(1, 25);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    double r = price(rng);
    double alpha = r * (1.0 + markup(rng));
    int n = firms(rng);
    // Realized quantities and profits, written out by hand.
    double q_total = n * (alpha - r) / (n + 1.0);
    double q_each = (alpha - r) / (n + 1.0);
    double p = alpha - q_total;
    double supplier = r * q_total;
    double retailers = n * (p - r) * q_each;
    double integrated = r * (alpha - r);
    double expected = integrated / (supplier + retailers);
    double got = efficiency_ratio(alpha / r, n);
    double rel = std::abs(got - expected) / expected;
    worst = std::max(worst, rel);
    MarketOutcome m = fundamentals(r, alpha, n);
    c.check(m.efficiency && std::abs(*m.efficiency - expected) <= 1e-10 * expected,
            fmt("fundamentals efficiency at alpha=%g r*=%g n=%g", alpha, r, n));
  }
  c.check(worst <= 1e-10, fmt("efficiency ratio worst relative error %.3g", worst));
}

void comparative_sweeps(Criterion& c) {
  auto gated = [&](const ExperimentReport& r) {
    for (const auto& e : r.cases) {
      if (e.status != CaseStatus::pass) continue;
      for (const auto& p : e.preconditions)
        c.check(p.certified, e.id + " passed with uncertified precondition " + p.name);
    }
  };
  int scale_failures = 0, scale_passes = 0;
  for (const auto& x : standard_scale_inputs()) {
    ExperimentReport r = scale_experiment(x, standard_scale_factors());
    gated(r);
    scale_failures += r.count(CaseStatus::fail);
    scale_passes += r.count(CaseStatus::pass);
  }
  c.note(fmt("scale: %g passed, %g failed", scale_passes, scale_failures));
  c.check(scale_failures == 0, "scale experiments without failures");
  c.check(scale_passes == 12, "all 12 scale cases certified");

  int closure_certified = 0, closure_failures = 0;
  for (const auto& cfg : standard_closure_configs()) {
    ExperimentReport r = closure_experiments(cfg.x1, cfg.x2, cfg.phi, cfg.z, cfg.p);
    gated(r);
    closure_failures += r.count(CaseStatus::fail);
    if (r.count(CaseStatus::pass) > 0 && r.ok()) ++closure_certified;
  }
  c.note(fmt("closure: %g certified configurations, %g failed cases", closure_certified, closure_failures));
  c.check(closure_failures == 0, "closure experiments without failures");
  c.check(closure_certified >= 5, "at least 5 certified closure configurations");

  int variability_certified = 0, variability_failures = 0;
  for (const auto& [x1, x2] : standard_variability_pairs()) {
    ExperimentReport r = variability_experiments(x1, x2);
    gated(r);
    variability_failures += r.count(CaseStatus::fail);
    if (r.count(CaseStatus::pass) > 0) ++variability_certified;
  }
  c.note(fmt("variability: %g certified pairs, %g failed cases", variability_certified, variability_failures));
  c.check(variability_failures == 0, "variability experiments without failures");
  c.check(variability_certified >= 5, "at least 5 disp/ew-certified pairs");
}

void implication_chains(Criterion& c) {
  std::vector<std::pair<DistributionPtr, DistributionPtr>> pairs = {
      {make_exponential(2.0), make_exponential(1.0)},
      {make_uniform(0.0, 1.0), make_uniform(0.0, 2.0)},
      {make_uniform(0.25, 0.75), make_uniform(0.0, 1.0)},
      {make_truncated_normal(10.0, 1.0), make_truncated_normal(10.0, 2.0)},
      {shift_scale(make_exponential(1.0), {1.0, 1.0}), shift_scale(make_exponential(1.0), {0.0, 2.0})},
      {make_uniform(1.0, 2.0), make_uniform(0.5, 2.5)},
      {make_truncated_normal(1.0, 1.0), make_truncated_normal(2.0, 1.0)},
      {make_exponential(0.9), make_sinusoid({3.141592653589793, 0.8, 1.2})},
      {mixture(make_exponential(1.0), make_exponential(2.0), 0.5), make_exponential(1.0)},
      {make_uniform(0.0, 1.0), make_exponential(1.0)},
      {make_truncated_normal(5.0, 1.0), make_uniform(0.0, 10.0)},
      {make_exponential(1.0), make_exponential(1.0)},
  };
  int hr_affirmed = 0, disp_equal_mean = 0;
  for (const auto& [a, b] : pairs) {
    std::string label = a->spec().dump() + " vs " + b->spec().dump();
    OrderVerdict hr = check_hr(*a, *b);
    if (hr.holds()) {
      ++hr_affirmed;
      c.check(check_mrl(*a, *b).holds(), "hr affirmed but mrl not: " + label);
    }
    Moments ma = moments(*a), mb = moments(*b);
    bool equal_mean = std::abs(ma.mean - mb.mean) <= 1e-9 * std::max(1.0, std::abs(mb.mean));
    if (equal_mean && check_disp(*a, *b).holds()) {
      ++disp_equal_mean;
      c.check(check_ew(*a, *b).holds(), "disp affirmed, equal means, but ew not: " + label);
      c.check(check_cx(*a, *b).holds(), "disp affirmed, equal means, but cx not: " + label);
      c.check(ma.variance <= mb.variance * (1.0 + 1e-12), "disp affirmed but variance reversed: " + label);
    }
  }
  c.note(fmt("%g pairs, %g hr-affirmed, %g disp-affirmed with equal means", pairs.size(), hr_affirmed,
             disp_equal_mean));
  c.check(pairs.size() >= 10, "at least 10 pairs");
  c.check(hr_affirmed > 0 && disp_equal_mean > 0, "both chains exercised");
}

void lemma_audit(Criterion& c) {
  std::vector<ExperimentReport> reports = standard_suite();
  int checks = 0;
  for (const auto& r : reports)
    for (const auto& e : r.cases)
      for (const auto& l : e.lemma_checks) checks += l.mrl_certified && l.both_dgmrl;
  std::vector<std::string> v = lemma_violations(reports);
  for (const auto& s : v) c.note(s);
  c.note(fmt("%g certified mrl-ordered price comparisons", checks));
  c.check(v.empty(), "no reversed prices under a certified mrl order");
  c.check(checks > 0, "audit is not vacuous");
}

void cournot_audit(Criterion& c) {
  double worst_excess = -1.0;
  for (double alpha : {0.5, 1.0, 2.0})
    for (double r : {0.1, 0.3, 0.8})
      for (int n : {1, 3, 10}) {
        DeviationReport d = cournot_deviation_check(alpha, r, n, quantity_grid(alpha));
        worst_excess = std::max(worst_excess, d.max_gain - d.grid_bound);
        c.check(d.max_gain <= 1e-6 + d.grid_bound,
                fmt("alpha=%g r=%g n=%g", alpha, r, n) + fmt(": gain %.3g", d.max_gain));
      }
  c.note(fmt("largest gain beyond the grid bound: %.3g", worst_excess));
}

void monte_carlo(Criterion& c) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<DistributionPtr> corpus = {make_exponential(1.0), make_uniform(0.0, 2.0),
                                         make_truncated_normal(1.0, 1.0),
                                         mixture(make_uniform(0.0, 1.0), make_uniform(0.0, 2.0), 0.5)};
  const int n = 3;
  for (const auto& d : corpus) {
    double r = solve_wholesale_price(d).r_star;
    ExpectedProfits q = expected_profits(*d, r, n);
    McEstimates mc = monte_carlo_profits(*d, r, n, 1000000, 12345);
    auto within = [&](const char* name, double exact, const McEstimate& est) {
      double z = std::abs(exact - est.mean) / est.std_error;
      c.check(z <= 4.0, d->spec().dump() + " " + name + fmt(": %.3g standard errors", z));
    };
    within("supplier", q.supplier, mc.supplier);
    within("retailer", q.retailer_each, mc.retailer_each);
    within("integrated", q.integrated, mc.integrated);
    within("decentralized", q.decentralized, mc.decentralized);
  }
  double elapsed = seconds_since(t0);
  c.check(elapsed < 30.0, fmt("runtime %.2f s < 30 s", elapsed));
}

struct Entry {
  const char* title;
  std::function<void(Criterion&)> body;
};

const std::vector<Entry>& criteria() {
  static const std::vector<Entry> all = {
      {"stochastically larger demand with a lower price", counterexample},
      {"analytic fixed points", analytic},
      {"brute-force oracle agreement", oracle_agreement},
      {"price of anarchy", price_of_anarchy},
      {"comparative statics sweeps", comparative_sweeps},
      {"order implication chains", implication_chains},
      {"mrl order never reverses prices", lemma_audit},
      {"Cournot deviation audit", cournot_audit},
      {"Monte Carlo cross-check", monte_carlo},
  };
  return all;
}

bool run_one(std::size_t i) {
  Criterion c;
  try {
    criteria()[i].body(c);
  } catch (const std::exception& e) {
    c.check(false, std::string("exception: ") + e.what());
  }
  std::printf("%s criterion %zu: %s\n", c.ok() ? "PASS" : "FAIL", i + 1, criteria()[i].title);
  std::fflush(stdout);
  return c.ok();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 2) {
    std::fprintf(stderr, "usage: %s [criterion 1-%zu]\n", argv[0], criteria().size());
    return 1;
  }
  if (argc == 2) {
    char* end = nullptr;
    long k = std::strtol(argv[1], &end, 10);
    if (*end != '\0' || k < 1 || k > static_cast<long>(criteria().size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[1]);
      return 1;
    }
    return run_one(static_cast<std::size_t>(k - 1)) ? 0 : 1;
  }
  bool ok = true;
  for (std::size_t i = 0; i < criteria().size(); ++i) ok = run_one(i) && ok;
  return ok ? 0 : 1;
}
