#include "mrleq/comparative.hpp"

#include <algorithm>
#include <cmath>
#include <locale>
#include <numbers>
#include <sstream>
#include <tuple>

#include "mrleq/error.hpp"
#include "mrleq/orders.hpp"
#include "mrleq/reliability.hpp"

namespace mrleq {

std::string to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::pass: return "pass";
    case CaseStatus::fail: return "fail";
    case CaseStatus::skipped: return "skipped";
    case CaseStatus::observed: return "observed";
  }
  return "unknown";
}

int ExperimentReport::count(CaseStatus s) const {
  return static_cast<int>(
      std::count_if(cases.begin(), cases.end(), [s](const ExperimentCase& c) { return c.status == s; }));
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(6);
  os << v;
  return os.str();
}

Precondition dgmrl_precondition(const std::string& label, const Distribution& d) {
  PropertyVerdict v;
  try {
    d.mean();
    v = check_property(d, Property::dgmrl, {}, Strictness::strict);
  } catch (const Error& e) {
    return {label + " DGMRL", false, e.what()};
  }
  Precondition p{label + " DGMRL", v.holds == Holds::yes, to_string(v.holds)};
  if (v.witness)
    p.detail += " at r=" + num(v.witness->r1) + ".." + num(v.witness->r2);
  if (!v.note.empty()) p.detail += " (" + v.note + ")";
  return p;
}

Precondition property_precondition(const std::string& label, const Distribution& d, Property prop) {
  PropertyVerdict v = check_property(d, prop);
  return {label + " " + to_string(prop), v.holds == Holds::yes, to_string(v.holds)};
}

Precondition order_precondition(const std::string& lhs, const std::string& rhs, Order order,
                                const Distribution& a, const Distribution& b) {
  OrderVerdict v = check_order(order, a, b);
  Precondition p{lhs + " <=" + to_string(order) + " " + rhs, v.holds(), to_string(v.direction)};
  if (!v.holds() && v.forward.witness) {
    const OrderWitness& w = *v.forward.witness;
    for (std::size_t i = 0; i < w.coords.size(); ++i)
      p.detail += " " + w.coord_names[i] + "=" + num(w.coords[i]);
  }
  return p;
}

bool all_certified(const std::vector<Precondition>& pre, std::string& reason) {
  for (const auto& p : pre) {
    if (!p.certified) {
      reason = "precondition not certified: " + p.name + " (" + p.detail + ")";
      return false;
    }
  }
  return true;
}

double solve(const DistributionPtr& d) { return solve_wholesale_price(d).r_star; }

LemmaCheck lemma(const std::string& lo, const std::string& hi, const Distribution& a,
                 const Distribution& b, bool both_dgmrl, double ra, double rb) {
  LemmaCheck c;
  c.lower = lo;
  c.upper = hi;
  c.mrl_certified = check_mrl(a, b).holds();
  c.both_dgmrl = both_dgmrl;
  c.r_lower = ra;
  c.r_upper = rb;
  return c;
}

void judge(ExperimentCase& c, bool ok, const std::string& what) {
  c.status = ok ? CaseStatus::pass : CaseStatus::fail;
  c.reason = ok ? what + " holds" : what + " violated";
}

// Nonnegative second differences of phi over the support of base.
Precondition convexity_precondition(const MonotoneMap& phi, const Distribution& base) {
  double lo = base.support_low();
  double hi = base.bounded() ? base.support_high() : base.quantile(1.0 - 1e-9);
  const int n = 400;
  double h = (hi - lo) / n;
  double worst = 0.0;
  for (int i = 1; i < n; ++i) {
    double x = lo + i * h;
    double f0 = phi.forward(x - h), f1 = phi.forward(x), f2 = phi.forward(x + h);
    double scale = std::max({1.0, std::abs(f0), std::abs(f1), std::abs(f2)});
    worst = std::min(worst, (f0 - 2.0 * f1 + f2) / scale);
  }
  return {"phi convex", worst >= -1e-12, "min scaled second difference " + num(worst)};
}

}  // namespace

ExperimentReport scale_experiment(DistributionPtr x, const std::vector<double>& c_values) {
  ExperimentReport rep;
  rep.id = "scale";
  rep.hypothesis = "X DGMRL, c >= 1  =>  r*(X) <= r*(cX)";
  Precondition x_ok = dgmrl_precondition("X", *x);
  std::optional<double> rx;
  for (double c : c_values) {
    ExperimentCase ec;
    ec.id = "scale/c=" + num(c);
    ec.description = "scaling by c";
    ec.inputs = {{"x", x->spec()}, {"c", c}};
    ec.predicted = "r*(X) <= r*(cX)";
    ec.preconditions = {x_ok, {"c >= 1", c >= 1.0, num(c)}};
    if (!all_certified(ec.preconditions, ec.reason)) {
      rep.cases.push_back(std::move(ec));
      continue;
    }
    if (!rx) rx = solve(x);
    DistributionPtr cx = shift_scale(x, {0.0, c});
    double rc = solve(cx);
    ec.observed = {{"r_x", *rx}, {"r_cx", rc}};
    ec.lemma_checks.push_back(lemma("X", "cX", *x, *cx, true, *rx, rc));
    judge(ec, *rx <= rc + kPriceOrderTolerance, "r*(X) <= r*(cX)");
    rep.cases.push_back(std::move(ec));
  }
  return rep;
}

ExperimentReport convolution_experiment(DistributionPtr x, DistributionPtr z,
                                        const ConvolutionOptions& options) {
  ExperimentReport rep;
  rep.id = "convolution";
  rep.hypothesis = "X DGMRL, Z >= 0 independent with finite variance  =>  r*(X) <= r*(X+Z)";
  ExperimentCase ec;
  ec.id = "convolution";
  ec.description = "adding independent nonnegative noise";
  ec.inputs = {{"x", x->spec()}, {"z", z->spec()}};
  ec.predicted = "r*(X) <= r*(X+Z)";
  ec.preconditions.push_back(dgmrl_precondition("X", *x));
  Precondition zvar{"Z finite second moment", true, ""};
  try {
    zvar.detail = num(z->second_moment());
  } catch (const InfiniteMomentError& e) {
    zvar.certified = false;
    zvar.detail = e.what();
  }
  ec.preconditions.push_back(zvar);
  if (!all_certified(ec.preconditions, ec.reason)) {
    rep.cases.push_back(std::move(ec));
    return rep;
  }
  double rx = solve(x);
  DistributionPtr sum = convolve(x, z, options);
  EquilibriumResult rs = solve_wholesale_price(sum);
  ec.observed = {{"r_x", rx}, {"r_sum", rs.r_star}};
  if (rs.dgmrl_certified) {
    ec.flags.push_back("mode=unique");
    ec.lemma_checks.push_back(lemma("X", "X+Z", *x, *sum, true, rx, rs.r_star));
    judge(ec, rx <= rs.r_star + kPriceOrderTolerance, "r*(X) <= r*(X+Z)");
  } else {
    ec.flags.push_back("mode=multiplicity");
    bool ok = true;
    for (std::size_t i = 0; i < rs.all_fixed_points.size(); ++i) {
      ec.observed.emplace_back("fixed_point_" + std::to_string(i), rs.all_fixed_points[i]);
      ok = ok && rx <= rs.all_fixed_points[i] + kPriceOrderTolerance;
    }
    judge(ec, ok, "every fixed point of X+Z >= r*(X)");
  }
  rep.cases.push_back(std::move(ec));
  return rep;
}

ExperimentReport closure_experiments(DistributionPtr x1, DistributionPtr x2, const MonotoneMap& phi,
                                     DistributionPtr z, double p, const ConvolutionOptions& options) {
  ExperimentReport rep;
  rep.id = "closure";
  rep.hypothesis = "X1 <=mrl X2, both DGMRL  =>  price ordering survives phi, +Z and mixing";
  json base_inputs = {{"x1", x1->spec()}, {"x2", x2->spec()}};
  Precondition d1 = dgmrl_precondition("X1", *x1);
  Precondition d2 = dgmrl_precondition("X2", *x2);
  Precondition mrl12 = order_precondition("X1", "X2", Order::mrl, *x1, *x2);

  std::optional<double> r1, r2;
  auto base_prices = [&] {
    if (!r1) r1 = solve(x1);
    if (!r2) r2 = solve(x2);
  };

  // Increasing convex transformation.
  {
    ExperimentCase ec;
    ec.id = "closure/phi";
    ec.description = "increasing convex map applied to both";
    ec.inputs = base_inputs;
    ec.inputs["phi"] = phi.spec;
    ec.predicted = "r*(phi(X1)) <= r*(phi(X2))";
    ec.preconditions = {d1, d2, mrl12, convexity_precondition(phi, *x1),
                        convexity_precondition(phi, *x2)};
    if (all_certified(ec.preconditions, ec.reason)) {
      DistributionPtr y1 = transform_increasing(x1, phi);
      DistributionPtr y2 = transform_increasing(x2, phi);
      ec.preconditions.push_back(dgmrl_precondition("phi(X1)", *y1));
      ec.preconditions.push_back(dgmrl_precondition("phi(X2)", *y2));
      if (all_certified(ec.preconditions, ec.reason)) {
        double a = solve(y1), b = solve(y2);
        ec.observed = {{"r_phi_x1", a}, {"r_phi_x2", b}};
        ec.lemma_checks.push_back(lemma("phi(X1)", "phi(X2)", *y1, *y2, true, a, b));
        judge(ec, a <= b + kPriceOrderTolerance, "r*(phi(X1)) <= r*(phi(X2))");
      }
    }
    rep.cases.push_back(std::move(ec));
  }

  // Independent IFR summand, under the mrl order and under the hr order.
  Precondition z_ifr = property_precondition("Z", *z, Property::ifr);
  Precondition hr12 = order_precondition("X1", "X2", Order::hr, *x1, *x2);
  std::optional<std::pair<DistributionPtr, DistributionPtr>> sums;
  for (int variant = 0; variant < 2; ++variant) {
    ExperimentCase ec;
    ec.id = variant == 0 ? "closure/sum" : "closure/sum-hr";
    ec.description = variant == 0 ? "independent IFR summand, mrl-ordered inputs"
                                  : "independent IFR summand, hr-ordered inputs";
    ec.inputs = base_inputs;
    ec.inputs["z"] = z->spec();
    ec.predicted = "r*(X1+Z) <= r*(X2+Z)";
    ec.preconditions = {d1, d2, variant == 0 ? mrl12 : hr12, z_ifr};
    if (all_certified(ec.preconditions, ec.reason)) {
      if (!sums) sums.emplace(convolve(x1, z, options), convolve(x2, z, options));
      const auto& [s1, s2] = *sums;
      ec.preconditions.push_back(dgmrl_precondition("X1+Z", *s1));
      ec.preconditions.push_back(dgmrl_precondition("X2+Z", *s2));
      if (all_certified(ec.preconditions, ec.reason)) {
        double a = solve(s1), b = solve(s2);
        ec.observed = {{"r_x1_z", a}, {"r_x2_z", b}};
        ec.lemma_checks.push_back(lemma("X1+Z", "X2+Z", *s1, *s2, true, a, b));
        judge(ec, a <= b + kPriceOrderTolerance, "r*(X1+Z) <= r*(X2+Z)");
      }
    }
    rep.cases.push_back(std::move(ec));
  }

  // Mixture.
  {
    ExperimentCase ec;
    ec.id = "closure/mixture";
    ec.description = "mixture p X1 + (1-p) X2";
    ec.inputs = base_inputs;
    ec.inputs["p"] = p;
    ec.predicted = "r*(X1) <= r*(Xp) <= r*(X2)";
    ec.preconditions = {d1, d2, mrl12, {"0 < p < 1", p > 0.0 && p < 1.0, num(p)}};
    if (all_certified(ec.preconditions, ec.reason)) {
      DistributionPtr xp = mixture(x1, x2, p);
      ec.preconditions.push_back(dgmrl_precondition("Xp", *xp));
      if (all_certified(ec.preconditions, ec.reason)) {
        base_prices();
        double rp = solve(xp);
        ec.observed = {{"r_x1", *r1}, {"r_xp", rp}, {"r_x2", *r2}};
        ec.lemma_checks.push_back(lemma("X1", "Xp", *x1, *xp, true, *r1, rp));
        ec.lemma_checks.push_back(lemma("Xp", "X2", *xp, *x2, true, rp, *r2));
        judge(ec, *r1 <= rp + kPriceOrderTolerance && rp <= *r2 + kPriceOrderTolerance,
              "r*(X1) <= r*(Xp) <= r*(X2)");
      }
    }
    rep.cases.push_back(std::move(ec));
  }
  return rep;
}

ExperimentReport variability_experiments(DistributionPtr x1, DistributionPtr x2) {
  ExperimentReport rep;
  rep.id = "variability";
  rep.hypothesis = "X1 less variable than X2 (ew or disp), both DGMRL  =>  r*(X1) <= r*(X2)";
  json inputs = {{"x1", x1->spec()}, {"x2", x2->spec()}};
  Precondition d1 = dgmrl_precondition("X1", *x1);
  Precondition d2 = dgmrl_precondition("X2", *x2);
  std::optional<std::pair<double, double>> prices;

  auto finish = [&](ExperimentCase& ec) {
    if (!all_certified(ec.preconditions, ec.reason)) return;
    if (!prices) prices.emplace(solve(x1), solve(x2));
    auto [a, b] = *prices;
    ec.observed = {{"r_x1", a}, {"r_x2", b}};
    bool both = d1.certified && d2.certified;
    ec.lemma_checks.push_back(lemma("X1", "X2", *x1, *x2, both, a, b));
    judge(ec, a <= b + kPriceOrderTolerance, "r*(X1) <= r*(X2)");
  };

  {
    ExperimentCase ec;
    ec.id = "variability/ew";
    ec.description = "excess wealth order";
    ec.inputs = inputs;
    ec.predicted = "r*(X1) <= r*(X2)";
    Precondition dmrl1 = property_precondition("X1", *x1, Property::dmrl);
    Precondition dmrl2 = property_precondition("X2", *x2, Property::dmrl);
    ec.preconditions = {d1, d2, order_precondition("X1", "X2", Order::ew, *x1, *x2),
                        {"alpha_L1 <= alpha_L2", x1->support_low() <= x2->support_low(),
                         num(x1->support_low()) + " vs " + num(x2->support_low())},
                        {"X1 or X2 DMRL", dmrl1.certified || dmrl2.certified,
                         dmrl1.detail + " / " + dmrl2.detail}};
    finish(ec);
    rep.cases.push_back(std::move(ec));
  }
  {
    ExperimentCase ec;
    ec.id = "variability/disp";
    ec.description = "dispersive order";
    ec.inputs = inputs;
    ec.predicted = "r*(X1) <= r*(X2)";
    Precondition ifr1 = property_precondition("X1", *x1, Property::ifr);
    Precondition ifr2 = property_precondition("X2", *x2, Property::ifr);
    ec.preconditions = {d1, d2, order_precondition("X1", "X2", Order::disp, *x1, *x2),
                        {"X1 or X2 IFR", ifr1.certified || ifr2.certified,
                         ifr1.detail + " / " + ifr2.detail}};
    finish(ec);
    rep.cases.push_back(std::move(ec));
  }
  return rep;
}

ExperimentReport normal_family_experiment(double mu1, double sigma1, double mu2, double sigma2) {
  ExperimentReport rep;
  rep.id = "normal-family";
  rep.hypothesis = "sigma1 < sigma2, mu1 <= mu2  =>  N1 <=mrl N2 and r*(N1) <= r*(N2), truncated at 0";
  ExperimentCase ec;
  ec.id = "normal/" + num(mu1) + "," + num(sigma1) + "-" + num(mu2) + "," + num(sigma2);
  ec.description = "normals truncated at zero";
  ec.inputs = {{"mu1", mu1}, {"sigma1", sigma1}, {"mu2", mu2}, {"sigma2", sigma2}};
  ec.predicted = "X1 <=mrl X2 and r*(X1) <= r*(X2)";
  ec.preconditions = {{"sigma1 < sigma2", sigma1 < sigma2, num(sigma1) + " vs " + num(sigma2)},
                      {"mu1 <= mu2", mu1 <= mu2, num(mu1) + " vs " + num(mu2)}};
  if (!all_certified(ec.preconditions, ec.reason)) {
    rep.cases.push_back(std::move(ec));
    return rep;
  }
  for (auto [mu, sigma, label] : {std::tuple{mu1, sigma1, "X1"}, std::tuple{mu2, sigma2, "X2"}}) {
    double lost = normal_mass_below_zero(mu, sigma);
    if (lost > 0.05)
      ec.flags.push_back(std::string(label) + " poor proxy: mass below zero " + num(lost));
  }
  DistributionPtr n1 = make_truncated_normal(mu1, sigma1);
  DistributionPtr n2 = make_truncated_normal(mu2, sigma2);
  Moments m1 = moments(*n1), m2 = moments(*n2);
  bool mrl_ok = check_mrl(*n1, *n2).holds();
  EquilibriumResult s1 = solve_wholesale_price(n1);
  EquilibriumResult s2 = solve_wholesale_price(n2);
  ec.observed = {{"r_x1", s1.r_star}, {"r_x2", s2.r_star}, {"cv_x1", m1.cv}, {"cv_x2", m2.cv}};
  ec.flags.push_back(std::string("mrl order ") + (mrl_ok ? "certified" : "not certified"));
  ec.lemma_checks.push_back(lemma("X1", "X2", *n1, *n2, s1.dgmrl_certified && s2.dgmrl_certified,
                                  s1.r_star, s2.r_star));
  bool price_ok = s1.r_star <= s2.r_star + kPriceOrderTolerance;
  ec.status = mrl_ok && price_ok ? CaseStatus::pass : CaseStatus::fail;
  if (!mrl_ok)
    ec.reason = "mrl order not certified after truncation";
  else
    ec.reason = price_ok ? "mrl order and price ordering hold" : "price ordering violated";
  rep.cases.push_back(std::move(ec));
  return rep;
}

bool CounterexampleResult::ok() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

CounterexampleResult counterexample_reproduction(const CounterexampleTargets& targets,
                                                 int curve_points) {
  if (curve_points < 2) throw DomainError("curve_points must be at least 2");
  CounterexampleResult out;
  DistributionPtr f = make_sinusoid({std::numbers::pi, 0.8, 1.2});
  DistributionPtr g = make_sinusoid({0.0, 0.9, 0.0});

  out.solved_f = solve_wholesale_price(f);
  out.solved_g = solve_wholesale_price(g);
  const double rf = out.solved_f.r_star;
  const double rg = out.solved_g.r_star;

  const double r_max = 10.0;
  double min_log_ratio = kInfinity;
  out.curves.reserve(curve_points);
  for (int i = 1; i <= curve_points; ++i) {
    double r = r_max * i / curve_points;
    CurveRow row;
    row.r = r;
    row.survival_f = f->survival(r);
    row.survival_g = g->survival(r);
    row.log_ratio = std::log(row.survival_f) - std::log(row.survival_g);
    row.mrl_f = mrl(*f, r);
    row.mrl_g = mrl(*g, r);
    min_log_ratio = std::min(min_log_ratio, row.log_ratio);
    out.curves.push_back(row);
  }

  OrderVerdict st = check_st(*g, *f);
  out.assertions.push_back({"(a) G <=st F", st.holds() && min_log_ratio > 0.0,
                            "st " + to_string(st.direction) + ", min log(SF/SG) on (0," +
                                num(r_max) + "] = " + num(min_log_ratio)});
  out.assertions.push_back({"(b) r*_F", std::abs(rf - targets.r_f) <= targets.r_f_tolerance,
                            "observed " + num(rf) + ", target " + num(targets.r_f) + " +/- " +
                                num(targets.r_f_tolerance)});
  out.assertions.push_back({"(c) r*_G", std::abs(rg - targets.r_g) <= targets.r_g_tolerance,
                            "observed " + num(rg) + ", target " + num(targets.r_g) + " +/- " +
                                num(targets.r_g_tolerance)});
  out.assertions.push_back({"(d) r*_G > r*_F", rg > rf, num(rg) + " vs " + num(rf)});
  PropertyVerdict dmrl = check_property(*f, Property::dmrl);
  PropertyVerdict dgmrl = check_property(*f, Property::dgmrl);
  out.assertions.push_back({"(e) F neither DMRL nor DGMRL",
                            dmrl.holds == Holds::no && dgmrl.holds == Holds::no,
                            "DMRL " + to_string(dmrl.holds) + ", DGMRL " + to_string(dgmrl.holds)});
  bool unique = out.solved_f.all_fixed_points.size() == 1 && out.solved_g.all_fixed_points.size() == 1;
  out.assertions.push_back({"(f) unique fixed points", unique,
                            std::to_string(out.solved_f.all_fixed_points.size()) + " and " +
                                std::to_string(out.solved_g.all_fixed_points.size())});
  OrderVerdict m = check_mrl(*g, *f);
  std::string mdetail = "direction " + to_string(m.direction);
  if (m.forward.witness)
    mdetail += ", witness r=" + num(m.forward.witness->coords[0]) + " m_G=" +
               num(m.forward.witness->lhs) + " m_F=" + num(m.forward.witness->rhs);
  out.assertions.push_back({"G <=mrl F rejected", !m.holds() && m.forward.witness.has_value(), mdetail});

  ExperimentReport& rep = out.report;
  rep.id = "counterexample";
  rep.hypothesis = "st dominance alone does not order wholesale prices";
  for (const Assertion& a : out.assertions) {
    ExperimentCase ec;
    ec.id = "counterexample/" + a.name;
    ec.description = a.detail;
    ec.inputs = {{"f", f->spec()}, {"g", g->spec()}};
    ec.observed = {{"r_f", rf}, {"r_g", rg}};
    ec.status = a.passed ? CaseStatus::pass : CaseStatus::fail;
    ec.reason = a.detail;
    rep.cases.push_back(std::move(ec));
  }
  return out;
}

std::string counterexample_csv(const std::vector<CurveRow>& rows) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << "r,survival_F,survival_G,log_ratio,mrl_F,mrl_G\n";
  for (const CurveRow& r : rows)
    os << r.r << ',' << r.survival_f << ',' << r.survival_g << ',' << r.log_ratio << ','
       << r.mrl_f << ',' << r.mrl_g << '\n';
  return os.str();
}

ExperimentReport st_dominance_sweep(const std::vector<DistributionPtr>& corpus) {
  ExperimentReport rep;
  rep.id = "st-sweep";
  rep.hypothesis = "exploratory: does A <=st B order r* among DGMRL inputs?";
  rep.exploratory = true;
  std::vector<bool> certified;
  std::vector<double> price;
  for (const auto& d : corpus) {
    EquilibriumResult s = solve_wholesale_price(d);
    certified.push_back(s.dgmrl_certified);
    price.push_back(s.r_star);
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      if (i == j || !certified[i] || !certified[j]) continue;
      if (!check_st(*corpus[i], *corpus[j]).holds()) continue;
      ExperimentCase ec;
      ec.id = "st-sweep/" + std::to_string(i) + "<=" + std::to_string(j);
      ec.description = "A <=st B";
      ec.inputs = {{"a", corpus[i]->spec()}, {"b", corpus[j]->spec()}};
      ec.observed = {{"r_a", price[i]}, {"r_b", price[j]}};
      ec.lemma_checks.push_back(lemma("A", "B", *corpus[i], *corpus[j], true, price[i], price[j]));
      ec.status = CaseStatus::observed;
      bool reversal = price[i] > price[j] + kPriceOrderTolerance;
      ec.reason = reversal ? "reversal: r*(A) > r*(B)" : "no reversal";
      if (reversal) ec.flags.push_back("reversal");
      rep.cases.push_back(std::move(ec));
    }
  }
  return rep;
}

std::vector<DistributionPtr> default_sweep_corpus() {
  return {make_exponential(1.0),
          make_exponential(0.5),
          make_uniform(0.0, 1.0),
          make_uniform(0.0, 3.0),
          make_uniform(1.0, 2.0),
          make_truncated_normal(1.0, 1.0),
          make_truncated_normal(2.0, 0.5),
          make_truncated_normal(3.0, 2.0),
          mixture(make_exponential(2.0), make_exponential(0.25), 0.9),
          shift_scale(make_exponential(1.0), {0.5, 1.0})};
}

std::vector<DistributionPtr> standard_scale_inputs() {
  return {make_uniform(0.0, 1.0), make_exponential(1.0), make_truncated_normal(1.0, 1.0)};
}

std::vector<double> standard_scale_factors() { return {1.0, 1.5, 2.0, 5.0}; }

std::vector<ClosureConfig> standard_closure_configs() {
  return {
      {make_exponential(2.0), make_exponential(1.0), MonotoneMap::power(2.0), make_uniform(0.0, 1.0), 0.5},
      {make_uniform(0.0, 1.0), make_uniform(0.0, 2.0), MonotoneMap::power(2.0), make_exponential(2.0), 0.3},
      {make_truncated_normal(5.0, 1.0), make_truncated_normal(6.0, 1.5), MonotoneMap::power(1.5),
       make_uniform(0.0, 2.0), 0.5},
      {make_uniform(0.0, 2.0), make_exponential(1.0), MonotoneMap::linear(2.0),
       make_truncated_normal(1.0, 0.5), 0.7},
      {make_truncated_normal(2.0, 0.5), make_truncated_normal(2.5, 0.5), MonotoneMap::expm1(),
       make_uniform(0.0, 1.0), 0.5},
      {make_uniform(0.5, 1.5), make_uniform(0.0, 2.0), MonotoneMap::power(3.0), make_exponential(1.0), 0.4},
  };
}

std::vector<std::pair<DistributionPtr, DistributionPtr>> standard_variability_pairs() {
  return {
      {make_uniform(0.25, 0.75), make_uniform(0.0, 1.0)},
      {make_exponential(2.0), make_exponential(1.0)},
      {make_uniform(0.0, 1.0), make_uniform(0.0, 2.0)},
      {make_truncated_normal(10.0, 1.0), make_truncated_normal(10.0, 2.0)},
      {shift_scale(make_exponential(1.0), {1.0, 1.0}), shift_scale(make_exponential(1.0), {0.5, 2.0})},
      {make_uniform(1.0, 2.0), make_uniform(0.0, 3.0)},
  };
}

std::vector<ExperimentReport> standard_suite() {
  std::vector<ExperimentReport> out;
  for (const auto& x : standard_scale_inputs()) out.push_back(scale_experiment(x, standard_scale_factors()));
  for (const auto& c : standard_closure_configs())
    out.push_back(closure_experiments(c.x1, c.x2, c.phi, c.z, c.p));
  for (const auto& [a, b] : standard_variability_pairs()) out.push_back(variability_experiments(a, b));
  out.push_back(convolution_experiment(make_uniform(0.0, 1.0), make_exponential(1.0)));
  out.push_back(convolution_experiment(make_exponential(1.0), make_uniform(0.0, 1.0)));
  out.push_back(normal_family_experiment(1.0, 0.5, 1.5, 1.0));
  out.push_back(normal_family_experiment(0.5, 1.0, 1.0, 2.0));
  return out;
}

std::vector<std::string> lemma_violations(const std::vector<ExperimentReport>& reports) {
  std::vector<std::string> out;
  for (const auto& rep : reports)
    for (const auto& c : rep.cases)
      for (const auto& l : c.lemma_checks)
        if (l.violated())
          out.push_back(c.id + ": " + l.lower + " <=mrl " + l.upper + " but r* " + num(l.r_lower) +
                        " > " + num(l.r_upper));
  return out;
}

}  // namespace mrleq
