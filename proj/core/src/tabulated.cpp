#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "mrleq/distribution.hpp"
#include "mrleq/error.hpp"
#include "mrleq/quadrature.hpp"

namespace mrleq {
namespace {

// Survival function stored on an ascending knot grid, interpolated either by a
// monotone cubic Hermite spline (slopes = -density) or piecewise linearly.
// Tail integrals and moments are exact for the interpolant, so the model is
// self-consistent.
class Tabulated final : public Distribution {
 public:
  Tabulated(std::vector<double> knots, std::vector<double> surv, std::vector<double> slopes,
            json spec)
      : Distribution(knots.front(), knots.back()),
        x_(std::move(knots)),
        s_(std::move(surv)),
        m_(std::move(slopes)),
        spec_(std::move(spec)) {
    const std::size_t n = x_.size();
    right_.assign(n, 0.0);
    for (std::size_t k = n - 1; k-- > 0;) right_[k] = right_[k + 1] + segment_integral(k, 0.0);
  }

  double survival(double x) const override {
    if (x <= x_.front()) return 1.0;
    if (x >= x_.back()) return 0.0;
    const auto [k, t] = locate(x);
    return eval(k, t);
  }
  bool has_density() const override { return !m_.empty(); }
  double density(double x) const override {
    if (m_.empty()) return Distribution::density(x);
    if (x < x_.front() || x >= x_.back()) return 0.0;
    const auto [k, t] = locate(x);
    const double h = width(k);
    const double t2 = t * t;
    const double ds = (6.0 * t2 - 6.0 * t) * s_[k] + (3.0 * t2 - 4.0 * t + 1.0) * h * m_[k] +
                      (-6.0 * t2 + 6.0 * t) * s_[k + 1] + (3.0 * t2 - 2.0 * t) * h * m_[k + 1];
    return std::max(0.0, -ds / h);
  }
  double quantile(double p) const override {
    if (!(p > 0.0)) return x_.front();
    if (!(p < 1.0)) return x_.back();
    const double q = 1.0 - p;
    // s_ is nonincreasing; find the first knot with survival <= q.
    const auto it = std::lower_bound(s_.begin(), s_.end(), q, std::greater<double>());
    const auto hi_idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - s_.begin()));
    double lo = x_[hi_idx - 1];
    double hi = x_[std::min(hi_idx, x_.size() - 1)];
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (survival(mid) > q ? lo : hi) = mid;
    }
    return hi;
  }
  double mean() const override { return x_.front() + right_.front(); }
  double second_moment() const override {
    // 3-point Gauss-Legendre is exact for u * (cubic).
    static constexpr std::array<double, 3> nodes = {-0.774596669241483377, 0.0,
                                                    0.774596669241483377};
    static constexpr std::array<double, 3> weights = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < x_.size(); ++k) {
      const double h = width(k);
      const double c = x_[k] + 0.5 * h;
      for (int j = 0; j < 3; ++j) {
        const double u = c + 0.5 * h * nodes[j];
        acc += weights[j] * 0.5 * h * u * eval(k, 0.5 * (1.0 + nodes[j]));
      }
    }
    return x_.front() * x_.front() + 2.0 * acc;
  }
  json spec() const override { return spec_; }

 protected:
  double tail_integral_inside(double r) const override {
    const auto [k, t] = locate(r);
    return right_[k + 1] + segment_integral(k, t);
  }

 private:
  double width(std::size_t k) const { return x_[k + 1] - x_[k]; }

  std::pair<std::size_t, double> locate(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const auto k = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(it - x_.begin() - 1, 0, static_cast<std::ptrdiff_t>(x_.size()) - 2));
    return {k, std::clamp((x - x_[k]) / width(k), 0.0, 1.0)};
  }

  double eval(std::size_t k, double t) const {
    if (m_.empty()) return s_[k] + t * (s_[k + 1] - s_[k]);
    const double h = width(k);
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double v = (2.0 * t3 - 3.0 * t2 + 1.0) * s_[k] + (t3 - 2.0 * t2 + t) * h * m_[k] +
                     (-2.0 * t3 + 3.0 * t2) * s_[k + 1] + (t3 - t2) * h * m_[k + 1];
    return std::clamp(v, s_[k + 1], s_[k]);
  }

  // Integral of the interpolant over [x_k + t h, x_{k+1}].
  double segment_integral(std::size_t k, double t) const {
    const double h = width(k);
    if (m_.empty()) {
      const double st = s_[k] + t * (s_[k + 1] - s_[k]);
      return 0.5 * (1.0 - t) * h * (st + s_[k + 1]);
    }
    auto h00 = [](double u) { return 0.5 * u * u * u * u - u * u * u + u; };
    auto h10 = [](double u) { return 0.25 * u * u * u * u - 2.0 / 3.0 * u * u * u + 0.5 * u * u; };
    auto h01 = [](double u) { return -0.5 * u * u * u * u + u * u * u; };
    auto h11 = [](double u) { return 0.25 * u * u * u * u - u * u * u / 3.0; };
    return h * (s_[k] * (h00(1.0) - h00(t)) + h * m_[k] * (h10(1.0) - h10(t)) +
                s_[k + 1] * (h01(1.0) - h01(t)) + h * m_[k + 1] * (h11(1.0) - h11(t)));
  }

  std::vector<double> x_;
  std::vector<double> s_;
  std::vector<double> m_;
  std::vector<double> right_;
  json spec_;
};

// Fritsch-Carlson limiter: keeps the cubic Hermite interpolant monotone.
void limit_slopes(const std::vector<double>& x, const std::vector<double>& s, std::vector<double>& m) {
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    const double secant = (s[k + 1] - s[k]) / (x[k + 1] - x[k]);
    if (secant == 0.0) {
      m[k] = 0.0;
      m[k + 1] = 0.0;
      continue;
    }
    double a = m[k] / secant;
    double b = m[k + 1] / secant;
    if (a < 0.0) {
      m[k] = 0.0;
      a = 0.0;
    }
    if (b < 0.0) {
      m[k + 1] = 0.0;
      b = 0.0;
    }
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      m[k] = tau * a * secant;
      m[k + 1] = tau * b * secant;
    }
  }
}

}  // namespace

DistributionPtr convolve(DistributionPtr x, DistributionPtr z, const ConvolutionOptions& options) {
  if (!x || !z) throw ParameterDomainError("convolve requires two distributions");
  if (options.knots < 16) throw ResolutionError("convolution needs at least 16 knots");
  if (!(options.tail_mass > 0.0 && options.tail_mass < 1e-3)) {
    throw ParameterDomainError("convolution tail_mass must lie in (0, 1e-3)");
  }
  const double mean_x = x->mean();
  const double mean_z = z->mean();
  x->second_moment();  // throws on divergent second moments
  z->second_moment();

  json spec = {{"kind", "convolve"},
               {"x", x->spec()},
               {"z", z->spec()},
               {"knots", options.knots},
               {"interpolation", options.hermite ? "hermite" : "linear"}};

  // Integrate against the density of whichever summand has one.
  DistributionPtr outer = x;
  DistributionPtr inner = z;
  if (!inner->has_density() && outer->has_density()) std::swap(outer, inner);

  const double lo = x->support_low() + z->support_low();
  const double hi = (x->bounded() ? x->support_high() : x->quantile(1.0 - options.tail_mass)) +
                    (z->bounded() ? z->support_high() : z->quantile(1.0 - options.tail_mass));
  // The density of the sum can kink wherever two support ends add up, so those
  // points are knots; each piece between them is split uniformly.
  std::vector<double> breaks{lo, hi};
  for (double a : {x->support_low(), x->support_high()})
    for (double b : {z->support_low(), z->support_high()})
      if (a + b > lo && a + b < hi) breaks.push_back(a + b);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [&](double u, double v) { return v - u < 1e-9 * (hi - lo); }),
               breaks.end());
  breaks.back() = hi;
  std::vector<double> knots{lo};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double len = breaks[i + 1] - breaks[i];
    const auto pieces = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(options.knots * len / (hi - lo))));
    for (std::size_t k = 1; k <= pieces; ++k)
      knots.push_back(k == pieces ? breaks[i + 1] : breaks[i] + len * static_cast<double>(k) / pieces);
  }
  const std::size_t n = knots.size();

  const QuadratureOptions quad{1e-15, 1e-12, 400};
  const double outer_lo = outer->support_low();
  const double outer_hi = outer->support_high();
  const double inner_lo = inner->support_low();
  const double inner_hi = inner->support_high();

  auto sum_survival = [&](double s) {
    if (s <= lo) return 1.0;
    if (inner->has_density()) {
      const double top = std::min(s - outer_lo, inner_hi);
      double value = inner->survival(s - outer_lo);
      if (top > inner_lo) {
        // Below s - outer_hi the outer survival is zero; starting there keeps
        // the kink at an interval end.
        const double from = std::max(inner_lo, s - outer_hi);
        if (top > from) {
          value += integrate([&](double v) { return outer->survival(s - v) * inner->density(v); },
                             from, top, quad)
                       .value;
        }
      }
      return value;
    }
    return integrate([&](double u) { return outer->survival(s - inner->quantile(u)); }, 0.0, 1.0,
                     quad)
        .value;
  };

  std::vector<double> surv(n);
  for (std::size_t k = 0; k < n; ++k) surv[k] = sum_survival(knots[k]);
  surv.front() = 1.0;
  surv.back() = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    if (surv[k] > surv[k - 1] + 1e-9) {
      throw ResolutionError("convolution table is not monotone near x = " +
                            describe(knots[k]));
    }
    surv[k] = std::min(surv[k], surv[k - 1]);
  }

  std::vector<double> slopes;
  if (options.hermite && x->has_density() && z->has_density()) {
    slopes.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double s = knots[k];
      const double a = std::max(inner_lo, s - outer_hi);
      const double b = std::min(inner_hi, s - outer_lo);
      double f = 0.0;
      if (b > a) {
        f = integrate([&](double v) { return outer->density(s - v) * inner->density(v); }, a, b,
                      quad)
                .value;
      }
      slopes[k] = -std::max(0.0, f);
    }
    slopes.back() = 0.0;
    limit_slopes(knots, surv, slopes);
  }

  auto result = std::make_shared<Tabulated>(std::move(knots), std::move(surv), std::move(slopes),
                                            std::move(spec));
  const double expected = mean_x + mean_z;
  if (std::abs(result->mean() - expected) > 1e-6 * (1.0 + expected)) {
    throw ResolutionError("convolution table too coarse: mean " + describe(result->mean()) +
                          " vs " + describe(expected));
  }
  return result;
}

}  // namespace mrleq
