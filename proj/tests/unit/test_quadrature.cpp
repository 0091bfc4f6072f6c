#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mrleq/error.hpp"
#include "mrleq/quadrature.hpp"

using namespace mrleq;

TEST_CASE("integrate polynomials and smooth functions") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 3.0).value == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value ==
        doctest::Approx(2.0).epsilon(1e-13));
  auto r = integrate([](double x) { return std::exp(-x); }, 0.0, 5.0);
  CHECK(r.converged);
  CHECK(std::abs(r.value - (1.0 - std::exp(-5.0))) < 1e-13);
}

TEST_CASE("reversed and empty intervals") {
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
  CHECK(integrate([](double x) { return x; }, 1.0, 0.0).value == doctest::Approx(-0.5));
}

TEST_CASE("kinks and endpoint singularities are refined") {
  auto kink = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0);
  CHECK(std::abs(kink.value - (0.045 + 0.245)) < 1e-10);
  auto sq = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  CHECK(std::abs(sq.value - 2.0 / 3.0) < 1e-10);
}

TEST_CASE("tail integration") {
  auto decay = [](double x) { return std::exp(-x); };
  auto t = integrate_tail(decay, 0.0, decay);
  CHECK(t.converged);
  CHECK(std::abs(t.value - 1.0) < 1e-11);
  CHECK(decay(t.upper) < 1e-12);

  auto g = [](double x) { return x * std::exp(-2.0 * x); };
  CHECK(std::abs(integrate_tail(g, 1.0, g).value - 0.75 * std::exp(-2.0)) < 1e-12);
}

TEST_CASE("heavy tails that never decay raise InfiniteMomentError") {
  auto slow = [](double x) { return 1.0 / std::log(x + 2.0); };
  CHECK_THROWS_AS(integrate_tail(slow, 0.0, slow), InfiniteMomentError);
  CHECK_THROWS_AS(find_truncation_point(slow, 0.0, 1.0, 1e-12), InfiniteMomentError);
}

TEST_CASE("find_truncation_point doubles from the scale") {
  auto decay = [](double x) { return std::exp(-x); };
  double x = find_truncation_point(decay, 0.0, 1.0, 1e-12);
  CHECK(decay(x) < 1e-12);
  CHECK(decay(x / 2.0) >= 1e-12);
}

TEST_CASE("a kink anywhere in the panel is resolved") {
  // Survival 1 - 3x/4 on [0, 1], (2 - x)/4 on [1, 2]; the kink position
  // relative to the panel sweeps through every value as r moves.
  auto surv = [](double x) { return x < 1.0 ? 1.0 - 0.75 * x : 0.25 * (2.0 - x); };
  double worst = 0.0;
  for (int i = 0; i < 4000; ++i) {
    const double r = 0.999 * i / 4000.0;
    const double exact = 0.75 - r + 0.375 * r * r;
    worst = std::max(worst, std::abs(integrate(surv, r, 2.0, {1e-15, 1e-12, 2000}).value - exact));
  }
  CHECK(worst < 1e-10);
}
