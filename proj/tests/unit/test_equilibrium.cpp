#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mrleq/equilibrium.hpp"
#include "mrleq/error.hpp"
#include "mrleq/orders.hpp"
#include "mrleq/reliability.hpp"
#include "reference.hpp"

using namespace mrleq;

namespace {

std::vector<DistributionPtr> dgmrl_corpus() {
  return {make_exponential(0.5),
          make_exponential(2.0),
          make_uniform(0.0, 1.0),
          make_uniform(0.25, 0.75),
          make_uniform(1.0, 3.0),
          make_truncated_normal(1.0, 1.0),
          make_truncated_normal(10.0, 2.0),
          shift_scale(make_exponential(1.0), {0.5, 2.0}),
          mixture(make_exponential(2.0), make_exponential(1.0), 0.5),
          convolve(make_uniform(0.0, 1.0), make_uniform(0.0, 1.0)),
          convolve(make_exponential(1.0), make_uniform(0.0, 1.0)),
          transform_increasing(make_uniform(0.0, 1.0), MonotoneMap::power(2.0))};
}

}  // namespace

TEST_CASE("analytic fixed points") {
  auto u = solve_wholesale_price(make_uniform(0.0, 1.0));
  CHECK(std::abs(u.r_star - 1.0 / 3.0) < 1e-8);
  CHECK(u.dgmrl_certified);
  CHECK(u.all_fixed_points.size() == 1);
  for (double b : {1.0, 2.0, 5.0}) CHECK(std::abs(solve_wholesale_price(make_uniform(0.0, b)).r_star - b / 3.0) < 1e-7);
  for (double l : {0.5, 0.9, 2.0}) CHECK(std::abs(solve_wholesale_price(make_exponential(l)).r_star - 1.0 / l) < 1e-7);

  // Printed value for exponential(0.9) differs from 1/0.9 by less than 5e-4.
  CHECK(std::abs(solve_wholesale_price(make_exponential(0.9)).r_star - 1.1114) < 5e-4);
}

TEST_CASE("fixed point at or below the lower support end") {
  // m(a) = (b - a)/2 <= a when 3a >= b, so r* = mean / 2.
  auto d = make_uniform(0.25, 0.75);
  auto r = solve_wholesale_price(d);
  CHECK(r.r_star == doctest::Approx(0.25).epsilon(1e-9));
  auto r2 = solve_wholesale_price(make_uniform(1.0, 2.0));
  CHECK(r2.r_star == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("sinusoid counterexample price") {
  auto r = solve_wholesale_price(make_sinusoid({std::numbers::pi, 0.8, 1.2}));
  CHECK_FALSE(r.dgmrl_certified);
  CHECK(r.all_fixed_points.size() == 1);
  CHECK(std::abs(r.r_star - ref::kSinusoidFixedPoint) < 1e-8);
  // Independent check of the fixed point by brute-force integration.
  ref::SinusoidRef rf(std::numbers::pi, 0.8, 1.2);
  CHECK(std::abs(rf.mrl(ref::kSinusoidFixedPoint) - ref::kSinusoidFixedPoint) < 1e-8);
}

TEST_CASE("truncated normal price agrees with a Simpson reference") {
  ref::TruncNormalRef rn(1.0, 1.0);
  const double expected = ref::bisect([&](double r) { return rn.mrl(r) - r; }, 0.0, 3.0);
  CHECK(std::abs(solve_wholesale_price(make_truncated_normal(1.0, 1.0)).r_star - expected) < 1e-7);
}

TEST_CASE("residual invariant on certified solves") {
  for (const auto& d : dgmrl_corpus()) {
    CAPTURE(d->spec().dump());
    auto r = solve_wholesale_price(d);
    REQUIRE(r.dgmrl_certified);
    CHECK(r.converged);
    CHECK(r.residual < 1e-9 * (1.0 + r.r_star));
    CHECK(std::abs(r.r_star - mrl(*d, r.r_star)) < 1e-9 * (1.0 + r.r_star));
    CHECK(r.r_star > 0.0);
    CHECK(r.r_star < d->support_high());
    CHECK(r.bracket_low <= r.r_star);
    CHECK(r.r_star <= r.bracket_high);
  }
}

TEST_CASE("larger in mrl order means a larger price") {
  auto corpus = dgmrl_corpus();
  std::vector<double> prices;
  for (const auto& d : corpus) prices.push_back(solve_wholesale_price(d).r_star);
  int certified_pairs = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      if (i == j || !check_mrl(*corpus[i], *corpus[j]).holds()) continue;
      ++certified_pairs;
      CHECK(prices[i] <= prices[j] + 1e-7);
    }
  CHECK(certified_pairs >= 10);
}

TEST_CASE("multiple fixed points") {
  // A little far-away mass: m(r) = r below 1/2, again on (1, 9) at 4.75.
  auto d = mixture(make_uniform(0.0, 1.0), make_uniform(9.0, 10.0), 0.99);
  auto r = solve_wholesale_price(d);
  CHECK_FALSE(r.dgmrl_certified);
  REQUIRE(r.all_fixed_points.size() == 2);
  CHECK(r.all_fixed_points[1] == doctest::Approx(4.75));
  for (double x : r.all_fixed_points) CHECK(std::abs(mrl(*d, x) - x) < 1e-8 * (1.0 + x));
  // r_star is the root with the largest expected revenue.
  for (double x : r.all_fixed_points)
    CHECK(integrated_expected_profit(*d, r.r_star) >= integrated_expected_profit(*d, x) - 1e-12);
}

TEST_CASE("fundamentals") {
  MarketOutcome a = fundamentals(1.0 / 3.0, 1.0, 1);
  CHECK(a.q_star == doctest::Approx(1.0 / 3.0));
  CHECK(a.p_star == doctest::Approx(2.0 / 3.0));
  CHECK(a.profit_supplier == doctest::Approx(1.0 / 9.0));
  CHECK(a.profit_retailer_each == doctest::Approx(1.0 / 9.0));
  CHECK(*a.ratio == doctest::Approx(1.0));
  CHECK(a.profit_integrated == doctest::Approx(2.0 / 9.0));
  CHECK(*a.efficiency == doctest::Approx(1.0));

  MarketOutcome none = fundamentals(1.0 / 3.0, 0.2, 3);
  CHECK_FALSE(none.transaction);
  CHECK(none.q_star == 0.0);
  CHECK(none.p_star == 0.2);
  CHECK(none.profit_supplier == 0.0);
  CHECK(none.profit_retailer_each == 0.0);
  CHECK(none.profit_integrated == 0.0);
  CHECK_FALSE(none.ratio.has_value());

  CHECK(*fundamentals(0.7, 1.4, 1).ratio == doctest::Approx(0.5));
}

TEST_CASE("fundamentals invariants on random triples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ur(0.05, 3.0), ua(0.0, 6.0);
  std::uniform_int_distribution<int> un(1, 10);
  for (int i = 0; i < 500; ++i) {
    const double r = ur(rng), alpha = ua(rng);
    const int n = un(rng);
    MarketOutcome o = fundamentals(r, alpha, n);
    CHECK(o.q_star == doctest::Approx(n / (n + 1.0) * std::max(alpha - r, 0.0)));
    CHECK(o.p_star == doctest::Approx(alpha - o.q_star));
    CHECK(o.profit_supplier >= 0.0);
    CHECK(o.profit_retailer_each >= 0.0);
    CHECK(o.profit_decentralized_total == doctest::Approx(o.profit_supplier + n * o.profit_retailer_each));
    if (alpha > r) {
      CHECK(*o.ratio == doctest::Approx(n * o.profit_retailer_each / o.profit_supplier));
      CHECK(*o.ratio == doctest::Approx(profit_ratio(alpha, r, n)).epsilon(1e-12));
      CHECK(*o.efficiency == doctest::Approx(efficiency_ratio(alpha / r, n)).epsilon(1e-10));
    } else {
      CHECK(o.profit_integrated == 0.0);
      CHECK(o.profit_decentralized_total == 0.0);
    }
  }
}

TEST_CASE("profit ratio") {
  CHECK(profit_ratio(3.0, 1.0, 1) == doctest::Approx(1.0));
  CHECK(profit_ratio(2.0, 1.0, 3) == doctest::Approx(0.25));
  CHECK_THROWS_AS(profit_ratio(1.0, 1.0, 2), NoTransactionError);
  CHECK_THROWS_AS(profit_ratio(0.5, 1.0, 2), NoTransactionError);
}

TEST_CASE("integrated expected profit") {
  CHECK(integrated_expected_profit(*make_uniform(0.0, 1.0), 1.0 / 3.0) == doctest::Approx(2.0 / 27.0));
  CHECK(integrated_expected_profit(*make_uniform(0.0, 1.0), 0.0) == 0.0);
  CHECK(integrated_expected_profit(*make_uniform(0.0, 1.0), 1.0) == 0.0);
  CHECK(integrated_expected_profit(*make_uniform(0.0, 1.0), 2.0) == 0.0);
  CHECK(integrated_expected_profit(*make_exponential(1.0), 1.0) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("price of anarchy") {
  for (int n = 1; n <= 10; ++n) CHECK(poa(n) == 1.0 + 1.0 / n);
  CHECK(poa(1) == 2.0);
  CHECK(poa(4) == 1.25);
  CHECK(efficiency_ratio(1.0, 3) == doctest::Approx(4.0 / 3.0));
  CHECK(efficiency_ratio(2.0, 2) == doctest::Approx(1.125));
  for (int n : {1, 2, 5}) {
    double prev = kInfinity;
    for (int i = 1; i <= 100; ++i) {
      const double e = efficiency_ratio(1.0 + 0.05 * i, n);
      CHECK(e < prev);
      prev = e;
    }
    CHECK(std::abs(empirical_poa(0.8, n, approach_grid(0.8, 60)) - poa(n)) < 1e-4);
  }
  CHECK_THROWS_AS(empirical_poa(1.0, 2, {0.5, 1.0}), DomainError);
  MarketConfig cfg{2, make_uniform(0.0, 1.0)};
  CHECK(std::abs(empirical_poa(cfg, approach_grid(1.0 / 3.0, 60)) - 1.5) < 1e-4);
}

TEST_CASE("solver errors") {
  // e^X - 1 with X ~ exponential(0.5) has no finite mean.
  auto heavy = transform_increasing(make_exponential(0.5), MonotoneMap::expm1());
  CHECK_THROWS_AS(solve_wholesale_price(heavy), InfiniteMomentError);
}
