#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "mrleq/error.hpp"
#include "mrleq/reliability.hpp"
#include "reference.hpp"

using namespace mrleq;

namespace {

std::vector<DistributionPtr> corpus() {
  return {make_exponential(0.9),
          make_uniform(0.0, 1.0),
          make_uniform(0.5, 2.0),
          make_truncated_normal(1.0, 1.0),
          make_truncated_normal(5.0, 0.5),
          make_sinusoid({std::numbers::pi, 0.8, 1.2}),
          shift_scale(make_exponential(1.0), {1.0, 2.0}),
          mixture(make_exponential(1.0), make_exponential(3.0), 0.4),
          mixture(make_uniform(0.0, 2.0), make_exponential(1.0), 0.7),
          convolve(make_uniform(0.0, 1.0), make_uniform(0.0, 1.0)),
          transform_increasing(make_exponential(1.0), MonotoneMap::power(1.5))};
}

}  // namespace

TEST_CASE("mrl examples") {
  auto e = make_exponential(0.9);
  for (int i = 0; i <= 50; ++i) CHECK(std::abs(mrl(*e, i * 0.1) - 1.0 / 0.9) < 1e-7);
  CHECK(mrl(*make_uniform(0.0, 1.0), 0.4) == doctest::Approx(0.3).epsilon(1e-12));

  auto f = make_sinusoid({std::numbers::pi, 0.8, 1.2});
  // The printed price is a fixed point of m only to within 2e-3.
  CHECK(std::abs(mrl(*f, 1.0299) - 1.0299) < 2e-3);
  CHECK(std::abs(mrl(*f, ref::kSinusoidFixedPoint) - ref::kSinusoidFixedPoint) < 1e-9);
  ref::SinusoidRef rf(std::numbers::pi, 0.8, 1.2);
  for (double r : {0.2, 1.0, 2.5, 4.0}) CHECK(std::abs(mrl(*f, r) - rf.mrl(r)) < 1e-8);
}

TEST_CASE("mrl conventions at and beyond the support end") {
  auto u = make_uniform(0.0, 1.0);
  CHECK(mrl(*u, 1.0) == 0.0);
  CHECK(mrl(*u, 3.0) == 0.0);
  CHECK(evaluate_mrl(*u, 2.0).status == MrlStatus::beyond_support);
  auto n = make_truncated_normal(0.0, 1.0);
  // Survival ~1e-17: local expansion, bracketed by the Mills ratio bounds.
  MrlValue near = evaluate_mrl(*n, 8.5);
  CHECK(near.status == MrlStatus::near_support_end);
  CHECK(near.value > 8.5 / (8.5 * 8.5 + 1.0));
  CHECK(near.value < 1.0 / 8.5);
  MrlValue far = evaluate_mrl(*n, 40.0);
  CHECK(far.status == MrlStatus::indeterminate);
  CHECK(std::isnan(far.value));
}

TEST_CASE("mrl identities") {
  for (const auto& d : corpus()) {
    CAPTURE(d->spec().dump());
    CHECK(std::abs(mrl(*d, 0.0) - d->mean()) < 1e-7);
    for (double p : {0.05, 0.3, 0.6, 0.95}) {
      const double r = d->quantile(p);
      const double m = mrl(*d, r);
      CHECK(m > 0.0);
      CHECK(std::abs(m * d->survival(r) - d->tail_integral(r)) < 1e-8 * (1.0 + d->tail_integral(r)));
      if (r > 0.0) CHECK(gmrl(*d, r) == m / r);
    }
  }
}

TEST_CASE("mrl derivative identity m' = h m - 1") {
  for (const auto& d : corpus()) {
    if (!d->has_density()) continue;
    CAPTURE(d->spec().dump());
    for (double p : {0.1, 0.35, 0.6, 0.85}) {
      const double r = d->quantile(p);
      const double h = 1e-5 * (1.0 + r);
      const double deriv = (mrl(*d, r + h) - mrl(*d, r - h)) / (2.0 * h);
      CHECK(std::abs(deriv - (hazard(*d, r) * mrl(*d, r) - 1.0)) < 1e-4);
    }
  }
}

TEST_CASE("profiles") {
  GridSpec g;
  g.points = 200;
  ReliabilityProfile pe = profile(*make_exponential(1.0), g);
  REQUIRE(pe.hazard.has_value());
  for (std::size_t i = 0; i < pe.grid.size(); ++i) {
    const double r = pe.grid[i];
    CHECK((*pe.hazard)[i] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((*pe.gfr)[i] == doctest::Approx(r).epsilon(1e-10));
    CHECK(pe.gmrl[i] == doctest::Approx(1.0 / r).epsilon(1e-9));
    CHECK(pe.gmrl[i] == pe.mrl[i] / r);
    CHECK((*pe.gfr)[i] == r * (*pe.hazard)[i]);
  }
  ReliabilityProfile pu = profile(*make_uniform(0.0, 1.0), g);
  for (std::size_t i = 0; i < pu.grid.size(); ++i)
    CHECK((*pu.hazard)[i] == doctest::Approx(1.0 / (1.0 - pu.grid[i])).epsilon(1e-9));
  for (std::size_t i = 1; i < pu.grid.size(); ++i) CHECK((*pu.hazard)[i] > (*pu.hazard)[i - 1]);

  std::string csv = profile_csv(pe);
  CHECK(csv.rfind("r,mrl,gmrl,hazard,gfr\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 201);

  GridSpec bad;
  bad.explicit_points = {0.5, 2.0};
  CHECK_THROWS_AS(profile(*make_uniform(0.0, 1.0), bad), DomainError);
}

TEST_CASE("sinusoid gmrl crosses one exactly once on (0, 5)") {
  auto f = make_sinusoid({std::numbers::pi, 0.8, 1.2});
  int crossings = 0;
  double prev = gmrl(*f, 1e-3) - 1.0;
  for (int i = 1; i <= 100000; ++i) {
    const double r = 1e-3 + (5.0 - 1e-3) * i / 100000.0;
    const double v = gmrl(*f, r) - 1.0;
    if ((prev > 0) != (v > 0)) ++crossings;
    prev = v;
  }
  CHECK(crossings == 1);
}

TEST_CASE("property certificates") {
  auto e = make_exponential(1.0);
  CHECK(check_property(*e, Property::dgmrl, {}, Strictness::strict).holds == Holds::yes);
  CHECK(check_property(*e, Property::dmrl).holds == Holds::yes);
  CHECK(check_property(*e, Property::dmrl, {}, Strictness::strict).holds == Holds::no);
  CHECK(check_property(*make_uniform(0.0, 1.0), Property::ifr).holds == Holds::yes);

  auto f = make_sinusoid({std::numbers::pi, 0.8, 1.2});
  for (Property p : {Property::dmrl, Property::dgmrl}) {
    PropertyVerdict v = check_property(*f, p);
    CHECK(v.holds == Holds::no);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->r1 < v.witness->r2);
    const double a = p == Property::dmrl ? mrl(*f, v.witness->r1) : gmrl(*f, v.witness->r1);
    const double b = p == Property::dmrl ? mrl(*f, v.witness->r2) : gmrl(*f, v.witness->r2);
    CHECK(b > a);
  }

  CHECK(property_from_string("igfr") == Property::igfr);
  CHECK_THROWS_AS(property_from_string("nope"), DomainError);
  GridSpec outside;
  outside.explicit_points = {-1.0, 0.5};
  CHECK_THROWS_AS(check_property(*make_uniform(0.0, 1.0), Property::ifr, outside), DomainError);
}

TEST_CASE("IFR implies DMRL implies DGMRL on certificates") {
  for (const auto& d : corpus()) {
    CAPTURE(d->spec().dump());
    const Holds ifr = check_property(*d, Property::ifr).holds;
    const Holds dmrl = check_property(*d, Property::dmrl).holds;
    const Holds dgmrl = check_property(*d, Property::dgmrl).holds;
    if (ifr == Holds::yes) CHECK(dmrl != Holds::no);
    if (dmrl == Holds::yes) CHECK(dgmrl != Holds::no);
  }
}

TEST_CASE("strictness needs a decrease in every decade") {
  // Constant mrl: weak DMRL holds, strict DMRL fails.
  auto e = make_exponential(2.0);
  PropertyVerdict weak = check_property(*e, Property::dmrl, {}, Strictness::weak);
  PropertyVerdict strict = check_property(*e, Property::dmrl, {}, Strictness::strict);
  CHECK(weak.holds == Holds::yes);
  CHECK(strict.holds == Holds::no);
  CHECK(strict.strictness == Strictness::strict);
}
