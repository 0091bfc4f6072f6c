#include "mrleq/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "mrleq/error.hpp"

namespace mrleq {
namespace {

struct Bisection {
  double root;
  double lo;
  double hi;
  int iterations;
};

// psi(lo) > 0 >= psi(hi)
template <class F>
Bisection bisect(const F& psi, double lo, double hi, int max_iter) {
  int it = 0;
  for (; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= 1e-15 * (1.0 + mid)) break;
    if (psi(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double root = std::abs(psi(lo)) <= std::abs(psi(hi)) ? lo : hi;
  return {root, lo, hi, it};
}

}  // namespace

EquilibriumResult solve_wholesale_price(const MarketConfig& cfg, const SolverOptions& opts) {
  if (cfg.n < 1) throw ParameterDomainError("number of retailers must be >= 1");
  if (!cfg.demand) throw ParameterDomainError("market has no demand distribution");
  const Distribution& d = *cfg.demand;

  // Existence needs a finite second moment.
  const Moments mom = moments(d);

  EquilibriumResult res;
  res.dgmrl = check_property(d, Property::dgmrl, opts.certificate_grid, Strictness::strict);
  res.dgmrl_certified = res.dgmrl.holds == Holds::yes;

  auto psi = [&d](double r) { return mrl(d, r) - r; };
  const double limit = d.bounded() ? d.support_high() : d.quantile(1.0 - 1e-10);

  // Dense sign-change scan over [0, limit].
  std::vector<std::pair<double, double>> brackets;
  const int n_scan = std::max(opts.scan_points, 16);
  double prev_r = 0.0;
  double prev_v = psi(0.0);
  for (int i = 1; i <= n_scan; ++i) {
    const double r = limit * static_cast<double>(i) / n_scan;
    const double v = psi(r);
    if (prev_v > 0.0 && v <= 0.0) brackets.emplace_back(prev_r, r);
    prev_r = r;
    prev_v = v;
  }
  std::vector<Bisection> roots;
  for (const auto& [lo, hi] : brackets) roots.push_back(bisect(psi, lo, hi, opts.max_iter));
  for (const auto& b : roots) res.all_fixed_points.push_back(b.root);

  if (res.dgmrl_certified) {
    if (roots.size() > 1) {
      throw InternalInconsistencyError("DGMRL-certified demand has " +
                                       std::to_string(roots.size()) + " fixed points");
    }
    double hi = std::max(mom.mean, 1e-12);
    while (psi(hi) > 0.0) {
      if (hi >= limit) {
        throw NoFixedPointError("m(r) - r stays positive up to quantile(1 - 1e-10)");
      }
      hi = std::min(2.0 * hi, limit);
    }
    const Bisection b = bisect(psi, 0.0, hi, opts.max_iter);
    res.r_star = b.root;
    res.bracket_low = b.lo;
    res.bracket_high = b.hi;
    res.iterations = b.iterations;
    res.all_fixed_points = {b.root};
  } else {
    if (roots.empty()) throw NoFixedPointError("no sign change of m(r) - r on [0, " +
                                               describe(limit) + "]");
    auto objective = [&d](double r) { return r * d.tail_integral(r); };
    const auto best = std::max_element(roots.begin(), roots.end(), [&](const auto& a, const auto& b) {
      return objective(a.root) < objective(b.root);
    });
    res.r_star = best->root;
    res.bracket_low = best->lo;
    res.bracket_high = best->hi;
    res.iterations = best->iterations;
  }
  res.residual = std::abs(psi(res.r_star));
  res.converged = res.residual < opts.tol * (1.0 + res.r_star);
  return res;
}

EquilibriumResult solve_wholesale_price(DistributionPtr demand, const SolverOptions& opts) {
  return solve_wholesale_price(MarketConfig{1, std::move(demand)}, opts);
}

MarketOutcome fundamentals(double r_star, double alpha, int n) {
  if (!(r_star >= 0.0) || !(alpha >= 0.0) || n < 1) {
    throw ParameterDomainError("fundamentals require r* >= 0, alpha >= 0, n >= 1");
  }
  MarketOutcome out;
  out.alpha = alpha;
  out.r_star = r_star;
  out.n = n;
  const double excess = std::max(alpha - r_star, 0.0);
  const double nn = static_cast<double>(n);
  out.transaction = excess > 0.0;
  out.q_star = nn / (nn + 1.0) * excess;
  out.p_star = alpha - out.q_star;
  out.profit_supplier = nn / (nn + 1.0) * excess * r_star;
  const double share = excess / (nn + 1.0);
  out.profit_retailer_each = share * share;
  out.profit_integrated = r_star * excess;
  out.profit_decentralized_total = out.profit_supplier + nn * out.profit_retailer_each;
  if (out.profit_supplier > 0.0) {
    out.ratio = nn * out.profit_retailer_each / out.profit_supplier;
  }
  if (out.transaction) {
    out.efficiency = out.profit_integrated / out.profit_decentralized_total;
  }
  return out;
}

double profit_ratio(double alpha, double r_star, int n) {
  if (!(r_star > 0.0) || n < 1) throw ParameterDomainError("profit ratio needs r* > 0, n >= 1");
  if (!(alpha > r_star)) throw NoTransactionError("alpha <= r*: no transaction takes place");
  return (alpha / r_star - 1.0) / (static_cast<double>(n) + 1.0);
}

double integrated_expected_profit(const Distribution& d, double r) {
  if (!(r >= 0.0)) throw DomainError("price must be >= 0");
  if (r == 0.0 || r >= d.support_high()) return 0.0;
  return r * d.tail_integral(r);
}

double efficiency_ratio(double alpha_over_r, int n) {
  if (n < 1) throw ParameterDomainError("n must be >= 1");
  const double nn = static_cast<double>(n);
  return (nn + 1.0) * (nn + 1.0) / nn / (nn + alpha_over_r);
}

double poa(int n) {
  if (n < 1) throw ParameterDomainError("n must be >= 1");
  return 1.0 + 1.0 / static_cast<double>(n);
}

double empirical_poa(double r_star, int n, const std::vector<double>& alpha_grid) {
  if (!(r_star > 0.0)) throw DomainError("empirical PoA needs r* > 0");
  double best = -kInfinity;
  for (double a : alpha_grid) {
    if (a > r_star) best = std::max(best, efficiency_ratio(a / r_star, n));
  }
  if (!std::isfinite(best)) throw DomainError("alpha grid has no point above r*");
  return best;
}

double empirical_poa(const MarketConfig& cfg, const std::vector<double>& alpha_grid) {
  return empirical_poa(solve_wholesale_price(cfg).r_star, cfg.n, alpha_grid);
}

std::vector<double> approach_grid(double r_star, int points, double smallest_gap) {
  if (points < 2 || !(smallest_gap > 0.0 && smallest_gap < 1.0)) {
    throw DomainError("approach grid needs >= 2 points and a gap in (0, 1)");
  }
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    out[i] = r_star * (1.0 + std::pow(smallest_gap, t));
  }
  return out;
}

}  // namespace mrleq
