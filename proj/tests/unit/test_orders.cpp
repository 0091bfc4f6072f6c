#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mrleq/error.hpp"
#include "mrleq/orders.hpp"
#include "mrleq/reliability.hpp"

using namespace mrleq;

namespace {

struct Pair {
  DistributionPtr a, b;
};

std::vector<Pair> pairs() {
  return {
      {make_exponential(2.0), make_exponential(1.0)},
      {make_uniform(0.0, 1.0), make_uniform(0.0, 2.0)},
      {make_uniform(0.25, 0.75), make_uniform(0.0, 1.0)},
      {make_truncated_normal(10.0, 1.0), make_truncated_normal(10.0, 2.0)},
      {make_truncated_normal(5.0, 1.0), make_truncated_normal(6.0, 1.0)},
      {make_exponential(0.9), make_sinusoid({std::numbers::pi, 0.8, 1.2})},
      {make_uniform(0.0, 2.0), make_exponential(1.0)},
      {mixture(make_exponential(2.0), make_exponential(1.0), 0.5), make_exponential(1.0)},
      {make_uniform(1.0, 2.0), make_uniform(0.0, 3.0)},
      {shift_scale(make_exponential(1.0), {0.0, 1.0}), shift_scale(make_exponential(1.0), {0.0, 3.0})},
      {make_truncated_normal(2.0, 0.5), make_uniform(1.0, 3.0)},
      {make_uniform(0.0, 1.0), convolve(make_uniform(0.0, 1.0), make_uniform(0.0, 1.0))},
  };
}

}  // namespace

TEST_CASE("st examples") {
  CHECK(check_st(*make_exponential(2.0), *make_exponential(1.0)).holds());
  auto g = make_exponential(0.9);
  auto f = make_sinusoid({std::numbers::pi, 0.8, 1.2});
  OrderVerdict v = check_st(*g, *f);
  CHECK(v.holds());
  CHECK(v.direction == Direction::first_le_second);
  for (int i = 1; i <= 800; ++i) {
    const double r = i * 0.01;
    CHECK(std::log(f->survival(r) / g->survival(r)) > 0.0);
  }
  CHECK_FALSE(check_st(*make_exponential(1.0), *make_exponential(2.0)).holds());
}

TEST_CASE("hr examples") {
  CHECK(check_hr(*make_exponential(2.0), *make_exponential(1.0)).holds());
  CHECK(check_hr(*make_uniform(0.0, 1.0), *make_uniform(0.0, 2.0)).holds());
  OrderVerdict rev = check_hr(*make_exponential(1.0), *make_exponential(2.0));
  CHECK_FALSE(rev.holds());
  CHECK(rev.forward.witness.has_value());
}

TEST_CASE("hr without densities falls back to the survival ratio") {
  // A convolution built with linear interpolation has no density.
  ConvolutionOptions linear;
  linear.hermite = false;
  auto a = convolve(make_exponential(2.0), make_exponential(2.0), linear);
  auto b = convolve(make_exponential(1.0), make_exponential(1.0), linear);
  REQUIRE_FALSE(a->has_density());
  OrderVerdict v = check_hr(*a, *b);
  CHECK(v.unsupported_input);
  CHECK(v.ratio_forward.has_value());
  CHECK(v.holds());
}

TEST_CASE("mrl examples") {
  CHECK(check_mrl(*make_exponential(2.0), *make_exponential(1.0)).holds());
  auto g = make_exponential(0.9);
  auto f = make_sinusoid({std::numbers::pi, 0.8, 1.2});
  OrderVerdict v = check_mrl(*g, *f);
  CHECK_FALSE(v.holds());
  REQUIRE(v.forward.witness.has_value());
  const double r = v.forward.witness->coords[0];
  CHECK(mrl(*g, r) > mrl(*f, r));
}

TEST_CASE("cx examples") {
  CHECK(check_cx(*make_uniform(0.25, 0.75), *make_uniform(0.0, 1.0)).holds());
  OrderVerdict v = check_cx(*make_exponential(1.0), *make_exponential(2.0));
  CHECK(v.direction == Direction::inapplicable);
  CHECK_FALSE(v.holds());
}

TEST_CASE("disp and ew examples") {
  CHECK(check_disp(*make_uniform(0.0, 1.0), *make_uniform(0.0, 2.0)).holds());
  CHECK(check_disp(*make_exponential(2.0), *make_exponential(1.0)).holds());
  CHECK(check_ew(*make_uniform(0.0, 1.0), *make_uniform(0.0, 2.0)).holds());
  CHECK(check_ew(*make_exponential(2.0), *make_exponential(1.0)).holds());
  CHECK_FALSE(check_disp(*make_uniform(0.0, 2.0), *make_uniform(0.0, 1.0)).holds());
  CHECK_FALSE(check_ew(*make_exponential(1.0), *make_exponential(2.0)).holds());
}

TEST_CASE("identical inputs satisfy every order in both directions") {
  for (auto d : {make_exponential(1.0), make_uniform(0.0, 1.0), make_sinusoid({std::numbers::pi, 0.8, 1.2}),
                 make_truncated_normal(2.0, 1.0)}) {
    for (Order o : {Order::st, Order::hr, Order::mrl, Order::cx, Order::disp, Order::ew}) {
      CAPTURE(to_string(o));
      CAPTURE(d->spec().dump());
      OrderVerdict v = check_order(o, *d, *d);
      CHECK(v.direction == Direction::both);
    }
  }
}

TEST_CASE("implication chains on the fixture corpus") {
  int hr_pairs = 0, disp_equal_mean = 0;
  for (const auto& [a, b] : pairs()) {
    CAPTURE(a->spec().dump());
    CAPTURE(b->spec().dump());
    if (check_hr(*a, *b).holds()) {
      ++hr_pairs;
      CHECK(check_mrl(*a, *b).holds());
    }
    if (check_disp(*a, *b).holds() && std::abs(a->mean() - b->mean()) < 1e-9 * (1.0 + a->mean())) {
      ++disp_equal_mean;
      CHECK(check_ew(*a, *b).holds());
      CHECK(check_cx(*a, *b).holds());
      CHECK(moments(*a).variance <= moments(*b).variance);
    }
  }
  CHECK(hr_pairs >= 4);
  CHECK(disp_equal_mean >= 1);
}

TEST_CASE("st and mrl are independent") {
  auto g = make_exponential(0.9);
  auto f = make_sinusoid({std::numbers::pi, 0.8, 1.2});
  CHECK(check_st(*g, *f).holds());
  CHECK_FALSE(check_mrl(*g, *f).holds());
}

TEST_CASE("order names") {
  CHECK(order_from_string("ew") == Order::ew);
  CHECK_THROWS_AS(order_from_string("lr"), DomainError);
}
