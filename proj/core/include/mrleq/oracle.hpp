#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mrleq/distribution.hpp"

namespace mrleq {

// Brute-force checks that do not go through the fixed-point machinery.

// E[(alpha - r)^+] by direct quadrature of (x - r) f(x) (survival integral when
// the model has no density), truncated where survival < 1e-12 * survival(r).
double expected_excess(const Distribution& d, double r);
// E[((alpha - r)^+)^2] by the same route.
double expected_excess_squared(const Distribution& d, double r);

// Supplier's expected revenue r * n/(n+1) * E[(alpha - r)^+].
double expected_supplier_profit(const Distribution& d, int n, double r);

struct ProfitPoint {
  double r = 0.0;
  double profit = 0.0;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct McEstimates {
  McEstimate supplier;
  McEstimate retailer_each;
  McEstimate integrated;
  McEstimate decentralized;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  int chunks = 0;
};

// Quadrature values of the same four expected realized profits.
struct ExpectedProfits {
  double supplier = 0.0;
  double retailer_each = 0.0;
  double integrated = 0.0;
  double decentralized = 0.0;
};

struct OracleReport {
  int n = 1;
  double r_hat = 0.0;
  double grid_step = 0.0;
  std::vector<ProfitPoint> profit_curve;
  std::optional<McEstimates> mc;
  double deviation_max = 0.0;
};

// Uniform grid of `points` prices on (0, quantile(1 - 1e-8)].
std::vector<double> oracle_grid(const Distribution& d, int points = 4000);

// Grid maximizer of expected_supplier_profit. The maximizer does not depend on n.
// Throws DomainError for grids with fewer than 2000 points and
// DegenerateInputError when the profit curve is flat.
OracleReport argmax_grid(const Distribution& d, int n, const std::vector<double>& r_grid);

struct DeviationReport {
  double max_gain = 0.0;     // max over the grid of pi_i(q) - pi_i(candidate)
  double candidate_q = 0.0;  // (alpha - r)^+ / (n + 1)
  double best_q = 0.0;
  double grid_bound = 0.0;   // loss of the nearest grid point to an interior best response
};

// Unilateral deviation audit for the symmetric second-stage Cournot candidate.
DeviationReport cournot_deviation_check(double alpha, double r, int n,
                                        const std::vector<double>& q_grid);

// `points` quantities spread uniformly over [0, max(alpha, 1e-12)].
std::vector<double> quantity_grid(double alpha, int points = 20001);

ExpectedProfits expected_profits(const Distribution& d, double r_star, int n);

// Realized supplier, retailer and channel profits averaged over `samples` draws. Chunks draw from
// mt19937_64 streams seeded by splitmix64(seed + chunk) and are merged in
// chunk order, so results do not depend on the thread count.
McEstimates monte_carlo_profits(const Distribution& d, double r_star, int n,
                                std::size_t samples, std::uint64_t seed);

}  // namespace mrleq
