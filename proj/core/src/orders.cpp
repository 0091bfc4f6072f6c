#include "mrleq/orders.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mrleq/error.hpp"
#include "mrleq/reliability.hpp"

namespace mrleq {
namespace {

// Scans lhs(i) <= rhs(i) + tol over indices and keeps the largest violation.
DirectionCheck scan(std::size_t n, double tol, const std::function<double(std::size_t)>& lhs,
                    const std::function<double(std::size_t)>& rhs,
                    const std::function<OrderWitness(std::size_t)>& where,
                    const std::function<double(double, double)>& scale = nullptr) {
  DirectionCheck out;
  out.max_violation = -kInfinity;
  std::size_t worst = n;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = lhs(i);
    const double b = rhs(i);
    double excess = a - b;
    if (scale) excess /= scale(a, b);
    if (excess > out.max_violation) {
      out.max_violation = excess;
      worst = i;
    }
  }
  out.holds = !(out.max_violation > tol);
  if (!out.holds && worst < n) {
    OrderWitness w = where(worst);
    w.lhs = lhs(worst);
    w.rhs = rhs(worst);
    out.witness = std::move(w);
  }
  return out;
}

Direction combine(bool forward, bool reverse) {
  if (forward && reverse) return Direction::both;
  if (forward) return Direction::first_le_second;
  if (reverse) return Direction::second_le_first;
  return Direction::neither;
}

OrderWitness at_r(double r) { return {{"r"}, {r}, 0.0, 0.0}; }

double relative_scale(double a, double b) { return std::max(1.0, std::max(std::abs(a), std::abs(b))); }

OrderGridInfo info_for(const std::vector<double>& grid) {
  return {"r", static_cast<int>(grid.size()), grid.front(), grid.back()};
}

std::vector<double> probe_points(const ProbeSpec& spec) {
  if (spec.points < 2 || !(spec.low > 0.0 && spec.low < spec.high && spec.high < 1.0)) {
    throw DomainError("probe spec needs >= 2 points inside (0, 1)");
  }
  std::vector<double> p(static_cast<std::size_t>(spec.points));
  for (int i = 0; i < spec.points; ++i) {
    p[i] = spec.low + (spec.high - spec.low) * i / (spec.points - 1);
  }
  return p;
}

// Survival ratio test: numerator / denominator nondecreasing where denominator > 0.
DirectionCheck ratio_check(const std::vector<double>& grid, const Distribution& num,
                           const Distribution& den, double tol) {
  std::vector<double> r;
  std::vector<double> ratio;
  for (double x : grid) {
    const double d = den.survival(x);
    if (d > 0.0) {
      r.push_back(x);
      ratio.push_back(num.survival(x) / d);
    }
  }
  if (r.size() < 2) return {true, 0.0, std::nullopt};
  return scan(
      r.size() - 1, tol, [&](std::size_t i) { return ratio[i]; },
      [&](std::size_t i) { return ratio[i + 1]; },
      [&](std::size_t i) { return OrderWitness{{"r1", "r2"}, {r[i], r[i + 1]}, 0.0, 0.0}; },
      relative_scale);
}

}  // namespace

std::string to_string(Order o) {
  switch (o) {
    case Order::st: return "st";
    case Order::hr: return "hr";
    case Order::mrl: return "mrl";
    case Order::cx: return "cx";
    case Order::disp: return "disp";
    case Order::ew: return "ew";
  }
  return "?";
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::both: return "both";
    case Direction::first_le_second: return "X1<=X2";
    case Direction::second_le_first: return "X2<=X1";
    case Direction::neither: return "neither";
    case Direction::inapplicable: return "inapplicable";
  }
  return "?";
}

Order order_from_string(const std::string& name) {
  for (Order o : {Order::st, Order::hr, Order::mrl, Order::cx, Order::disp, Order::ew}) {
    if (to_string(o) == name) return o;
  }
  throw DomainError("unknown order '" + name + "'");
}

std::vector<double> common_grid(const Distribution& x1, const Distribution& x2,
                                const OrderGrid& spec, bool include_zero) {
  if (spec.points < 2) throw DomainError("order grid needs at least 2 points");
  double lo = std::min(x1.quantile(spec.p_low), x2.quantile(spec.p_low));
  const double hi = std::max(x1.quantile(spec.p_high), x2.quantile(spec.p_high));
  if (!(lo > 0.0)) lo = std::min(1e-12, 0.5 * hi);
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(spec.points) + 1);
  if (include_zero) grid.push_back(0.0);
  for (int i = 0; i < spec.points; ++i) {
    const double t = static_cast<double>(i) / (spec.points - 1);
    grid.push_back(lo * std::pow(hi / lo, t));
  }
  return grid;
}

OrderVerdict check_st(const Distribution& x1, const Distribution& x2, const OrderGrid& spec) {
  const auto grid = common_grid(x1, x2, spec, true);
  std::vector<double> s1(grid.size());
  std::vector<double> s2(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s1[i] = x1.survival(grid[i]);
    s2[i] = x2.survival(grid[i]);
  }
  OrderVerdict v;
  v.order = Order::st;
  v.tolerance = kStTolerance;
  v.method = "survival";
  v.grid = info_for(grid);
  auto where = [&](std::size_t i) { return at_r(grid[i]); };
  v.forward = scan(grid.size(), v.tolerance, [&](std::size_t i) { return s1[i]; },
                   [&](std::size_t i) { return s2[i]; }, where);
  v.reverse = scan(grid.size(), v.tolerance, [&](std::size_t i) { return s2[i]; },
                   [&](std::size_t i) { return s1[i]; }, where);
  v.direction = combine(v.forward.holds, v.reverse.holds);
  return v;
}

OrderVerdict check_hr(const Distribution& x1, const Distribution& x2, const OrderGrid& spec) {
  const auto grid = common_grid(x1, x2, spec, false);
  OrderVerdict v;
  v.order = Order::hr;
  v.tolerance = kHrTolerance;
  v.grid = info_for(grid);
  v.ratio_forward = ratio_check(grid, x2, x1, v.tolerance);
  v.ratio_reverse = ratio_check(grid, x1, x2, v.tolerance);

  if (!x1.has_density() || !x2.has_density()) {
    v.unsupported_input = true;
    v.method = "survival_ratio";
    v.note = "density unavailable for an input; verdict from the survival-ratio test";
    v.forward = *v.ratio_forward;
    v.reverse = *v.ratio_reverse;
    v.direction = combine(v.forward.holds, v.reverse.holds);
    return v;
  }

  // Hazards are compared where both survivals are positive.
  std::vector<double> r;
  std::vector<double> h1;
  std::vector<double> h2;
  for (double x : grid) {
    const double s1 = x1.survival(x);
    const double s2 = x2.survival(x);
    if (s1 > 0.0 && s2 > 0.0) {
      r.push_back(x);
      h1.push_back(x1.density(x) / s1);
      h2.push_back(x2.density(x) / s2);
    }
  }
  v.method = "hazard";
  auto where = [&](std::size_t i) { return at_r(r[i]); };
  // X1 <=hr X2 iff h2 <= h1.
  v.forward = scan(r.size(), v.tolerance, [&](std::size_t i) { return h2[i]; },
                   [&](std::size_t i) { return h1[i]; }, where, relative_scale);
  v.reverse = scan(r.size(), v.tolerance, [&](std::size_t i) { return h1[i]; },
                   [&](std::size_t i) { return h2[i]; }, where, relative_scale);
  // Mass of X1 beyond the support of X2 is only visible to the ratio test.
  v.forward.holds = v.forward.holds && v.ratio_forward->holds;
  v.reverse.holds = v.reverse.holds && v.ratio_reverse->holds;
  if (!v.forward.holds && !v.forward.witness) v.forward.witness = v.ratio_forward->witness;
  if (!v.reverse.holds && !v.reverse.witness) v.reverse.witness = v.ratio_reverse->witness;
  v.direction = combine(v.forward.holds, v.reverse.holds);
  return v;
}

OrderVerdict check_mrl(const Distribution& x1, const Distribution& x2, const OrderGrid& spec) {
  // Points where either survival underflowed carry no usable mrl value.
  std::vector<double> grid, m1, m2;
  std::size_t dropped = 0;
  for (double r : common_grid(x1, x2, spec, true)) {
    const double a = mrl(x1, r), b = mrl(x2, r);
    if (std::isnan(a) || std::isnan(b)) {
      ++dropped;
      continue;
    }
    grid.push_back(r);
    m1.push_back(a);
    m2.push_back(b);
  }
  OrderVerdict v;
  if (dropped > 0) v.note = std::to_string(dropped) + " grid points dropped: survival underflow";
  v.order = Order::mrl;
  v.tolerance = kMrlTolerance;
  v.method = "mrl";
  v.grid = info_for(grid);
  auto where = [&](std::size_t i) { return at_r(grid[i]); };
  v.forward = scan(grid.size(), v.tolerance, [&](std::size_t i) { return m1[i]; },
                   [&](std::size_t i) { return m2[i]; }, where);
  v.reverse = scan(grid.size(), v.tolerance, [&](std::size_t i) { return m2[i]; },
                   [&](std::size_t i) { return m1[i]; }, where);
  v.direction = combine(v.forward.holds, v.reverse.holds);
  return v;
}

OrderVerdict check_cx(const Distribution& x1, const Distribution& x2, const OrderGrid& spec) {
  OrderVerdict v;
  v.order = Order::cx;
  v.tolerance = kCxTolerance;
  v.method = "tail_integral";
  const double mean1 = x1.mean();
  const double mean2 = x2.mean();
  const auto grid = common_grid(x1, x2, spec, true);
  v.grid = info_for(grid);
  if (std::abs(mean1 - mean2) >= 1e-6 * (1.0 + mean1)) {
    v.direction = Direction::inapplicable;
    v.note = "means differ (" + describe(mean1) + " vs " + describe(mean2) + ")";
    return v;
  }
  std::vector<double> t1(grid.size());
  std::vector<double> t2(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    t1[i] = x1.tail_integral(grid[i]);
    t2[i] = x2.tail_integral(grid[i]);
  }
  auto where = [&](std::size_t i) { return at_r(grid[i]); };
  v.forward = scan(grid.size(), v.tolerance, [&](std::size_t i) { return t1[i]; },
                   [&](std::size_t i) { return t2[i]; }, where);
  v.reverse = scan(grid.size(), v.tolerance, [&](std::size_t i) { return t2[i]; },
                   [&](std::size_t i) { return t1[i]; }, where);
  v.direction = combine(v.forward.holds, v.reverse.holds);
  return v;
}

OrderVerdict check_disp(const Distribution& x1, const Distribution& x2, ProbeSpec probes) {
  if (probes.points == 0) probes.points = 200;
  const auto p = probe_points(probes);
  const std::size_t n = p.size();
  std::vector<double> q1(n);
  std::vector<double> q2(n);
  for (std::size_t i = 0; i < n; ++i) {
    q1[i] = x1.quantile(p[i]);
    q2[i] = x2.quantile(p[i]);
  }
  // Flatten the triangular lattice u = p[i] <= v = p[j].
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
  }
  OrderVerdict v;
  v.order = Order::disp;
  v.tolerance = kDispTolerance;
  v.method = "quantile_spread";
  v.grid = {"uv-lattice", static_cast<int>(n), probes.low, probes.high};
  auto spread = [&](const std::vector<double>& q, std::size_t k) {
    return q[pairs[k].second] - q[pairs[k].first];
  };
  auto where = [&](std::size_t k) {
    return OrderWitness{{"u", "v"}, {p[pairs[k].first], p[pairs[k].second]}, 0.0, 0.0};
  };
  v.forward = scan(pairs.size(), v.tolerance, [&](std::size_t k) { return spread(q1, k); },
                   [&](std::size_t k) { return spread(q2, k); }, where, relative_scale);
  v.reverse = scan(pairs.size(), v.tolerance, [&](std::size_t k) { return spread(q2, k); },
                   [&](std::size_t k) { return spread(q1, k); }, where, relative_scale);
  v.direction = combine(v.forward.holds, v.reverse.holds);
  return v;
}

OrderVerdict check_ew(const Distribution& x1, const Distribution& x2, ProbeSpec probes) {
  if (probes.points == 0) probes.points = 500;
  const auto p = probe_points(probes);
  std::vector<double> w1(p.size());
  std::vector<double> w2(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    w1[i] = x1.tail_integral(x1.quantile(p[i]));
    w2[i] = x2.tail_integral(x2.quantile(p[i]));
  }
  OrderVerdict v;
  v.order = Order::ew;
  v.tolerance = kEwTolerance;
  v.method = "excess_wealth";
  v.grid = {"p", static_cast<int>(p.size()), probes.low, probes.high};
  auto where = [&](std::size_t i) { return OrderWitness{{"p"}, {p[i]}, 0.0, 0.0}; };
  v.forward = scan(p.size(), v.tolerance, [&](std::size_t i) { return w1[i]; },
                   [&](std::size_t i) { return w2[i]; }, where);
  v.reverse = scan(p.size(), v.tolerance, [&](std::size_t i) { return w2[i]; },
                   [&](std::size_t i) { return w1[i]; }, where);
  v.direction = combine(v.forward.holds, v.reverse.holds);
  return v;
}

OrderVerdict check_order(Order order, const Distribution& x1, const Distribution& x2) {
  switch (order) {
    case Order::st: return check_st(x1, x2);
    case Order::hr: return check_hr(x1, x2);
    case Order::mrl: return check_mrl(x1, x2);
    case Order::cx: return check_cx(x1, x2);
    case Order::disp: return check_disp(x1, x2);
    case Order::ew: return check_ew(x1, x2);
  }
  throw DomainError("unknown order");
}

}  // namespace mrleq
