#include "mrleq/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "mrleq/error.hpp"
#include "mrleq/quadrature.hpp"

namespace mrleq {
namespace {

constexpr int kTailTableSegments = 4096;
constexpr double kTableCutoff = 1e-18;

}  // namespace

Distribution::Distribution(double low, double high) : low_(low), high_(high) {
  if (!(low >= 0.0) || !(high > low)) {
    throw ParameterDomainError("support must satisfy 0 <= low < high");
  }
}

double Distribution::density(double) const {
  throw DomainError("distribution has no density");
}

double Distribution::quantile(double p) const { return bisect_quantile(p); }

double Distribution::bisect_quantile(double p) const {
  if (!(p > 0.0)) return low_;
  if (!(p < 1.0)) return high_;

  // For p > 1/2 compare survival against 1 - p to keep relative precision in the tail.
  const bool upper = p > 0.5;
  const double q = 1.0 - p;
  auto below = [&](double x) { return upper ? survival(x) > q : cdf(x) < p; };

  double lo = low_;
  double hi;
  if (bounded()) {
    hi = high_;
  } else {
    double step = 1.0;
    hi = low_ + step;
    while (below(hi)) {
      lo = hi;
      step *= 2.0;
      hi = low_ + step;
      if (!std::isfinite(hi)) throw DomainError("quantile search diverged");
    }
  }
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (below(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double Distribution::mean() const { return numeric_mean(); }

double Distribution::second_moment() const { return numeric_second_moment(); }

double Distribution::tail_integral(double r) const {
  if (r >= high_) return 0.0;
  if (r < low_) return (low_ - r) + tail_integral_inside(low_);
  return tail_integral_inside(r);
}

double Distribution::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  while (u <= 0.0) u = unit(rng);
  return quantile(u);
}

const Distribution::TailTable& Distribution::tail_table() const {
  std::call_once(table_once_, [this] {
    auto table = std::make_unique<TailTable>();
    const RealFunction surv = [this](double u) { return survival(u); };

    double scale = bisect_quantile(0.5) - low_;
    if (!(scale > 0.0)) scale = 1.0;
    const double hi =
        bounded() ? high_ : find_truncation_point(surv, low_, scale, kTableCutoff);

    // Linear spacing near the lower end, geometric spacing further out.
    const double h0 = scale / 64.0;
    const double ratio = 1.0 + (hi - low_) / h0;
    table->knots.resize(kTailTableSegments + 1);
    for (int k = 0; k <= kTailTableSegments; ++k) {
      const double t = static_cast<double>(k) / kTailTableSegments;
      table->knots[k] = low_ + h0 * (std::pow(ratio, t) - 1.0);
    }
    table->knots.front() = low_;
    table->knots.back() = hi;

    const QuadratureOptions opts{1e-17, 1e-13, 200};
    table->right_cumulative.assign(kTailTableSegments + 1, 0.0);
    for (int k = kTailTableSegments - 1; k >= 0; --k) {
      const double piece = integrate(surv, table->knots[k], table->knots[k + 1], opts).value;
      table->right_cumulative[k] = table->right_cumulative[k + 1] + piece;
    }
    table_ = std::move(table);
  });
  return *table_;
}

double Distribution::tail_integral_inside(double r) const {
  const TailTable& table = tail_table();
  const RealFunction surv = [this](double u) { return survival(u); };
  const QuadratureOptions opts{1e-17, 1e-13, 200};

  if (r >= table.knots.back()) {
    // Beyond the truncation point; survival is below the table cutoff here.
    const double s = survival(r);
    if (s <= 0.0) return 0.0;
    TailOptions tail;
    tail.quad = opts;
    tail.cutoff = s * 1e-12;
    return integrate_tail(surv, r, surv, tail).value;
  }
  const auto it = std::upper_bound(table.knots.begin(), table.knots.end(), r);
  const auto k = static_cast<std::size_t>(it - table.knots.begin());
  return table.right_cumulative[k] + integrate(surv, r, table.knots[k], opts).value;
}

double Distribution::numeric_mean() const { return low_ + tail_integral_inside(low_); }

double Distribution::numeric_second_moment() const {
  const RealFunction weighted = [this](double u) { return 2.0 * u * survival(u); };
  const QuadratureOptions opts{1e-15, 1e-13, 4000};
  if (bounded()) {
    return low_ * low_ + integrate(weighted, low_, high_, opts).value;
  }
  TailOptions tail;
  tail.quad = opts;
  tail.cutoff = kTableCutoff;
  const RealFunction surv = [this](double u) { return survival(u); };
  const TailResult res = integrate_tail(weighted, low_, surv, tail);
  // Light tails shrink super-geometrically across doubling segments; a power
  // tail keeps contributing a fixed fraction per doubling.
  if (res.last_segment > 0.5 * res.prev_segment && res.last_segment > 1e-8 * res.value) {
    throw InfiniteMomentError("second moment does not converge (heavy tail)");
  }
  return low_ * low_ + res.value;
}

Moments moments(const Distribution& d) {
  Moments m;
  m.mean = d.mean();
  m.second_moment = d.second_moment();
  if (!std::isfinite(m.mean) || !std::isfinite(m.second_moment)) {
    throw InfiniteMomentError("moment is not finite");
  }
  m.variance = std::max(0.0, m.second_moment - m.mean * m.mean);
  m.cv = m.mean > 0.0 ? std::sqrt(m.variance) / m.mean : 0.0;
  return m;
}

}  // namespace mrleq
