#pragma once

#include <optional>
#include <vector>

#include "mrleq/distribution.hpp"
#include "mrleq/reliability.hpp"

namespace mrleq {

struct MarketConfig {
  int n = 1;  // number of retailers
  DistributionPtr demand;
};

struct SolverOptions {
  double tol = 1e-9;  // residual bound, relative: tol * (1 + r*)
  int max_iter = 200;
  // Resolution of the sign-change scan of m(r) - r used to detect multiple fixed points.
  int scan_points = 20000;
  GridSpec certificate_grid{};
};

struct EquilibriumResult {
  double r_star = 0.0;
  double residual = 0.0;  // |r* - m(r*)|
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  std::vector<double> all_fixed_points;
  bool dgmrl_certified = false;
  PropertyVerdict dgmrl;
  int iterations = 0;
  bool converged = false;
};

// Supplier's optimal wholesale price as the fixed point r* = m(r*).
// Under a strict DGMRL certificate the unique root of m(r) - r is found by
// bisection on [0, r_hi] (m(0) = mean > 0; r_hi by doubling from the mean).
// Otherwise every sign change on a dense scan is refined, and r_star is the
// fixed point with the largest expected supplier revenue.
// Throws InfiniteMomentError, NoFixedPointError, InternalInconsistencyError.
EquilibriumResult solve_wholesale_price(const MarketConfig& cfg, const SolverOptions& opts = {});
EquilibriumResult solve_wholesale_price(DistributionPtr demand, const SolverOptions& opts = {});

// Realized market outcome for demand alpha at wholesale price r_star.
struct MarketOutcome {
  double alpha = 0.0;
  double r_star = 0.0;
  int n = 1;
  double q_star = 0.0;
  double p_star = 0.0;
  double profit_supplier = 0.0;
  double profit_retailer_each = 0.0;
  double profit_integrated = 0.0;
  double profit_decentralized_total = 0.0;
  std::optional<double> ratio;       // n * Pi_i / Pi_s when Pi_s > 0
  std::optional<double> efficiency;  // Pi_I / Pi_D when alpha > r*
  bool transaction = false;
};

MarketOutcome fundamentals(double r_star, double alpha, int n);

// Retailers-to-supplier realized profit ratio (alpha / r* - 1) / (n + 1).
// Throws NoTransactionError when alpha <= r_star.
double profit_ratio(double alpha, double r_star, int n);

// r * E[(alpha - r)^+] = r m(r) survival(r).
double integrated_expected_profit(const Distribution& d, double r);

// (n+1)^2 / n * 1 / (n + alpha/r*), the realized Pi_I / Pi_D for alpha > r*.
double efficiency_ratio(double alpha_over_r, int n);

// Worst-case efficiency ratio: 1 + 1/n.
double poa(int n);

// Max of efficiency_ratio over the alpha grid points above r_star.
// Throws DomainError when no point lies above r_star.
double empirical_poa(double r_star, int n, const std::vector<double>& alpha_grid);
double empirical_poa(const MarketConfig& cfg, const std::vector<double>& alpha_grid);

// alpha values r*(1 + g) with gaps g log-spaced from 1 down to smallest_gap.
std::vector<double> approach_grid(double r_star, int points, double smallest_gap = 1e-6);

}  // namespace mrleq
