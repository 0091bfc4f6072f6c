#include <algorithm>
#include <cmath>

#include "mrleq/distribution.hpp"
#include "mrleq/error.hpp"

namespace mrleq {
namespace {

class ShiftScale final : public Distribution {
 public:
  ShiftScale(DistributionPtr base, const ShiftScaleParams& p)
      : Distribution(p.delta + p.lambda * base->support_low(),
                     p.delta + p.lambda * base->support_high()),
        base_(std::move(base)),
        p_(p) {}

  double survival(double y) const override { return base_->survival(to_base(y)); }
  double cdf(double y) const override { return base_->cdf(to_base(y)); }
  bool has_density() const override { return base_->has_density(); }
  double density(double y) const override { return base_->density(to_base(y)) / p_.lambda; }
  double quantile(double q) const override { return p_.delta + p_.lambda * base_->quantile(q); }
  double mean() const override { return p_.delta + p_.lambda * base_->mean(); }
  double second_moment() const override {
    const double m = base_->mean();
    return p_.delta * p_.delta + 2.0 * p_.delta * p_.lambda * m +
           p_.lambda * p_.lambda * base_->second_moment();
  }
  double sample(std::mt19937_64& rng) const override {
    return p_.delta + p_.lambda * base_->sample(rng);
  }
  json spec() const override {
    return {{"kind", "shift_scale"}, {"delta", p_.delta}, {"lambda", p_.lambda},
            {"base", base_->spec()}};
  }

 protected:
  double tail_integral_inside(double r) const override {
    return p_.lambda * base_->tail_integral(to_base(r));
  }

 private:
  double to_base(double y) const { return (y - p_.delta) / p_.lambda; }

  DistributionPtr base_;
  ShiftScaleParams p_;
};

class Mixture final : public Distribution {
 public:
  Mixture(DistributionPtr first, DistributionPtr second, double p)
      : Distribution(std::min(first->support_low(), second->support_low()),
                     std::max(first->support_high(), second->support_high())),
        first_(std::move(first)),
        second_(std::move(second)),
        p_(p) {}

  double survival(double x) const override {
    return p_ * first_->survival(x) + (1.0 - p_) * second_->survival(x);
  }
  double cdf(double x) const override {
    return p_ * first_->cdf(x) + (1.0 - p_) * second_->cdf(x);
  }
  bool has_density() const override { return first_->has_density() && second_->has_density(); }
  double density(double x) const override {
    return p_ * first_->density(x) + (1.0 - p_) * second_->density(x);
  }
  double mean() const override { return p_ * first_->mean() + (1.0 - p_) * second_->mean(); }
  double second_moment() const override {
    return p_ * first_->second_moment() + (1.0 - p_) * second_->second_moment();
  }
  double sample(std::mt19937_64& rng) const override {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return unit(rng) < p_ ? first_->sample(rng) : second_->sample(rng);
  }
  json spec() const override {
    return {{"kind", "mixture"}, {"p", p_}, {"first", first_->spec()}, {"second", second_->spec()}};
  }

 protected:
  double tail_integral_inside(double r) const override {
    return p_ * first_->tail_integral(r) + (1.0 - p_) * second_->tail_integral(r);
  }

 private:
  DistributionPtr first_;
  DistributionPtr second_;
  double p_;
};

double map_low(const DistributionPtr& base, const MonotoneMap& map) {
  const double y = map.forward(base->support_low());
  if (!(y >= 0.0)) throw ParameterDomainError("transformed demand must be nonnegative");
  return y;
}

double map_high(const DistributionPtr& base, const MonotoneMap& map) {
  return base->bounded() ? map.forward(base->support_high()) : kInfinity;
}

class Transformed final : public Distribution {
 public:
  Transformed(DistributionPtr base, MonotoneMap map)
      : Distribution(map_low(base, map), map_high(base, map)),
        base_(std::move(base)),
        map_(std::move(map)) {}

  double survival(double y) const override {
    if (y <= support_low()) return 1.0;
    if (y >= support_high()) return 0.0;
    return base_->survival(inverse(y));
  }
  double cdf(double y) const override {
    if (y <= support_low()) return 0.0;
    if (y >= support_high()) return 1.0;
    return base_->cdf(inverse(y));
  }
  bool has_density() const override { return base_->has_density(); }
  double density(double y) const override {
    if (y < support_low() || y >= support_high()) return 0.0;
    const double x = inverse(y);
    return base_->density(x) / derivative(x);
  }
  double quantile(double p) const override { return map_.forward(base_->quantile(p)); }
  double sample(std::mt19937_64& rng) const override { return map_.forward(base_->sample(rng)); }
  json spec() const override {
    return {{"kind", "transform"}, {"map", map_.spec}, {"base", base_->spec()}};
  }

 private:
  double inverse(double y) const {
    if (map_.inverse) return map_.inverse(y);
    double lo = base_->support_low();
    double hi = base_->bounded() ? base_->support_high() : lo + 1.0;
    while (map_.forward(hi) < y) {
      lo = hi;
      hi = 2.0 * hi + 1.0;
      if (!std::isfinite(hi)) throw DomainError("inverse map search diverged");
    }
    for (int i = 0; i < 2000; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (map_.forward(mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  double derivative(double x) const {
    if (map_.derivative) return map_.derivative(x);
    const double h = 1e-6 * (1.0 + std::abs(x));
    const double lo = std::max(x - h, base_->support_low());
    return (map_.forward(x + h) - map_.forward(lo)) / (x + h - lo);
  }

  DistributionPtr base_;
  MonotoneMap map_;
};

}  // namespace

DistributionPtr shift_scale(DistributionPtr base, const ShiftScaleParams& params) {
  if (!base) throw ParameterDomainError("shift_scale requires a base distribution");
  if (!(params.lambda > 0.0) || !std::isfinite(params.lambda)) {
    throw ParameterDomainError("scale lambda must be > 0");
  }
  if (!(params.delta >= 0.0) || !std::isfinite(params.delta)) {
    throw ParameterDomainError("shift delta must be >= 0");
  }
  return std::make_shared<ShiftScale>(std::move(base), params);
}

DistributionPtr mixture(DistributionPtr first, DistributionPtr second, double p) {
  if (!first || !second) throw ParameterDomainError("mixture requires two components");
  if (!(p > 0.0 && p < 1.0)) throw ParameterDomainError("mixture weight must lie in (0, 1)");
  return std::make_shared<Mixture>(std::move(first), std::move(second), p);
}

DistributionPtr transform_increasing(DistributionPtr base, MonotoneMap map) {
  if (!base) throw ParameterDomainError("transform requires a base distribution");
  if (!map.forward) throw ContractViolationError("transform map has no forward function");

  constexpr int kProbes = 1000;
  double prev_x = base->quantile(1e-6);
  double prev_y = map.forward(prev_x);
  for (int i = 1; i <= kProbes; ++i) {
    const double p = 1e-6 + (1.0 - 2e-6) * i / kProbes;
    const double x = base->quantile(p);
    const double y = map.forward(x);
    if (x > prev_x && !(y > prev_y)) {
      throw ContractViolationError("map is not strictly increasing near x = " + describe(x));
    }
    prev_x = x;
    prev_y = y;
  }
  return std::make_shared<Transformed>(std::move(base), std::move(map));
}

MonotoneMap MonotoneMap::identity() {
  return {[](double x) { return x; }, [](double y) { return y; }, [](double) { return 1.0; },
          json{{"type", "identity"}}};
}

MonotoneMap MonotoneMap::linear(double slope) {
  if (!(slope > 0.0)) throw ParameterDomainError("linear map slope must be > 0");
  return {[slope](double x) { return slope * x; }, [slope](double y) { return y / slope; },
          [slope](double) { return slope; }, json{{"type", "linear"}, {"slope", slope}}};
}

MonotoneMap MonotoneMap::power(double exponent) {
  if (!(exponent > 0.0)) throw ParameterDomainError("power map exponent must be > 0");
  return {[exponent](double x) { return std::pow(std::max(x, 0.0), exponent); },
          [exponent](double y) { return std::pow(std::max(y, 0.0), 1.0 / exponent); },
          [exponent](double x) { return exponent * std::pow(std::max(x, 0.0), exponent - 1.0); },
          json{{"type", "power"}, {"exponent", exponent}}};
}

MonotoneMap MonotoneMap::expm1() {
  return {[](double x) { return std::expm1(x); }, [](double y) { return std::log1p(y); },
          [](double x) { return std::exp(x); }, json{{"type", "expm1"}}};
}

}  // namespace mrleq
