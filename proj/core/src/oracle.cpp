#include "mrleq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mrleq/error.hpp"
#include "mrleq/parallel.hpp"
#include "mrleq/quadrature.hpp"

namespace mrleq {
namespace {

constexpr int kMcChunks = 64;

// Integral of g over [a, support_high), truncated at survival < 1e-12 * survival(a).
double integrate_over_tail(const Distribution& d, const RealFunction& g, double a) {
  const QuadratureOptions quad{1e-15, 1e-12, 2000};
  if (d.bounded()) return integrate(g, a, d.support_high(), quad).value;
  TailOptions tail;
  tail.quad = quad;
  tail.cutoff = 1e-12 * d.survival(a);
  const RealFunction surv = [&d](double u) { return d.survival(u); };
  return integrate_tail(g, a, surv, tail).value;
}

double excess_moment(const Distribution& d, double r, int power) {
  if (!(r >= 0.0)) throw DomainError("price must be >= 0");
  if (r >= d.support_high()) return 0.0;
  const double lower = std::max(r, d.support_low());
  // E[(X-r)^k ; X > r] = (lower-r)^k S(lower) + k * int (u-r)^{k-1} S(u) du.
  // The survival is continuous where a density may jump, and a jump that falls
  // between quadrature nodes goes unseen; a missed kink costs far less.
  const RealFunction g = [&](double u) {
    return power * std::pow(u - r, power - 1) * d.survival(u);
  };
  return std::pow(lower - r, power) * d.survival(lower) + integrate_over_tail(d, g, lower);
}

struct Accumulator {
  long double sum[4] = {0, 0, 0, 0};
  long double sumsq[4] = {0, 0, 0, 0};
};

}  // namespace

double expected_excess(const Distribution& d, double r) { return excess_moment(d, r, 1); }

double expected_excess_squared(const Distribution& d, double r) { return excess_moment(d, r, 2); }

double expected_supplier_profit(const Distribution& d, int n, double r) {
  if (n < 1) throw ParameterDomainError("n must be >= 1");
  if (r == 0.0) return 0.0;
  const double nn = static_cast<double>(n);
  return r * nn / (nn + 1.0) * expected_excess(d, r);
}

std::vector<double> oracle_grid(const Distribution& d, int points) {
  if (points < 2) throw DomainError("oracle grid needs >= 2 points");
  const double hi = d.quantile(1.0 - 1e-8);
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[i] = hi * static_cast<double>(i + 1) / points;
  return grid;
}

OracleReport argmax_grid(const Distribution& d, int n, const std::vector<double>& r_grid) {
  if (n < 1) throw ParameterDomainError("n must be >= 1");
  if (r_grid.size() < 2000) throw DomainError("oracle grid needs at least 2000 points");
  std::vector<double> grid = r_grid;
  std::sort(grid.begin(), grid.end());

  // The n/(n+1) factor is applied after the argmax so that r_hat is n-free.
  std::vector<double> revenue(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { revenue[i] = grid[i] * expected_excess(d, grid[i]); });

  const auto best = std::max_element(revenue.begin(), revenue.end());
  const auto worst = std::min_element(revenue.begin(), revenue.end());
  if (*best - *worst <= 1e-15 * std::max(1.0, std::abs(*best))) {
    throw DegenerateInputError("expected supplier profit is flat across the grid");
  }
  OracleReport rep;
  rep.n = n;
  const auto k = static_cast<std::size_t>(best - revenue.begin());
  rep.r_hat = grid[k];
  double step = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) step = std::max(step, grid[i] - grid[i - 1]);
  rep.grid_step = step;
  const double scale = static_cast<double>(n) / (n + 1.0);
  rep.profit_curve.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rep.profit_curve.push_back({grid[i], scale * revenue[i]});
  return rep;
}

DeviationReport cournot_deviation_check(double alpha, double r, int n,
                                        const std::vector<double>& q_grid) {
  if (!(alpha >= 0.0) || !(r >= 0.0) || n < 1) {
    throw ParameterDomainError("deviation check needs alpha >= 0, r >= 0, n >= 1");
  }
  if (q_grid.empty()) throw DomainError("empty quantity grid");
  const double nn = static_cast<double>(n);
  DeviationReport rep;
  rep.candidate_q = std::max(alpha - r, 0.0) / (nn + 1.0);
  const double others = (nn - 1.0) * rep.candidate_q;
  auto payoff = [&](double q) { return q * std::max(alpha - q - others, 0.0) - r * q; };
  const double base = payoff(rep.candidate_q);
  rep.max_gain = -kInfinity;
  for (double q : q_grid) {
    const double gain = payoff(q) - base;
    if (gain > rep.max_gain) {
      rep.max_gain = gain;
      rep.best_q = q;
    }
  }
  double step = 0.0;
  std::vector<double> sorted = q_grid;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) step = std::max(step, sorted[i] - sorted[i - 1]);
  // payoff has curvature -2 in q, so a grid point sits within step^2 of the optimum.
  rep.grid_bound = step * step;
  return rep;
}

std::vector<double> quantity_grid(double alpha, int points) {
  if (points < 2) throw DomainError("quantity grid needs >= 2 points");
  const double top = std::max(alpha, 1e-12);
  std::vector<double> q(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) q[i] = top * static_cast<double>(i) / (points - 1);
  return q;
}

ExpectedProfits expected_profits(const Distribution& d, double r_star, int n) {
  if (n < 1) throw ParameterDomainError("n must be >= 1");
  const double nn = static_cast<double>(n);
  const double e1 = expected_excess(d, r_star);
  const double e2 = expected_excess_squared(d, r_star);
  ExpectedProfits p;
  p.supplier = r_star * nn / (nn + 1.0) * e1;
  p.retailer_each = e2 / ((nn + 1.0) * (nn + 1.0));
  p.integrated = r_star * e1;
  p.decentralized = p.supplier + nn * p.retailer_each;
  return p;
}

McEstimates monte_carlo_profits(const Distribution& d, double r_star, int n, std::size_t samples,
                                std::uint64_t seed) {
  if (n < 1) throw ParameterDomainError("n must be >= 1");
  if (samples < 2) throw DomainError("Monte Carlo needs at least 2 samples");
  const double nn = static_cast<double>(n);
  std::vector<Accumulator> acc(kMcChunks);
  parallel_for(kMcChunks, [&](std::size_t c) {
    const std::size_t begin = samples * c / kMcChunks;
    const std::size_t end = samples * (c + 1) / kMcChunks;
    std::mt19937_64 rng(splitmix64(seed + c));
    Accumulator& a = acc[c];
    for (std::size_t i = begin; i < end; ++i) {
      const double alpha = d.sample(rng);
      const double excess = std::max(alpha - r_star, 0.0);
      const double share = excess / (nn + 1.0);
      const double v[4] = {nn / (nn + 1.0) * excess * r_star, share * share, r_star * excess,
                           nn / (nn + 1.0) * excess * r_star + nn * share * share};
      for (int j = 0; j < 4; ++j) {
        a.sum[j] += v[j];
        a.sumsq[j] += static_cast<long double>(v[j]) * v[j];
      }
    }
  });
  Accumulator total;
  for (const auto& a : acc) {
    for (int j = 0; j < 4; ++j) {
      total.sum[j] += a.sum[j];
      total.sumsq[j] += a.sumsq[j];
    }
  }
  const auto ns = static_cast<long double>(samples);
  McEstimate est[4];
  for (int j = 0; j < 4; ++j) {
    const long double mean = total.sum[j] / ns;
    const long double var = std::max<long double>(0, (total.sumsq[j] - ns * mean * mean) / (ns - 1));
    est[j] = {static_cast<double>(mean), static_cast<double>(std::sqrt(var / ns))};
  }
  McEstimates out;
  out.supplier = est[0];
  out.retailer_each = est[1];
  out.integrated = est[2];
  out.decentralized = est[3];
  out.seed = seed;
  out.samples = samples;
  out.chunks = kMcChunks;
  return out;
}

}  // namespace mrleq
