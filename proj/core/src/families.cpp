#include <cmath>
#include <numbers>

#include "mrleq/distribution.hpp"
#include "mrleq/error.hpp"

namespace mrleq {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double std_normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }
double std_normal_upper(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }
double std_normal_lower(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

// K(z) = z + 2/(z + 3/(z + 4/(...))), so that the Mills ratio Q/pdf equals
// 1/(z + 1/K(z)). Used for z > 4 where pdf - z Q cancels badly.
double mills_tail_fraction(double z) {
  double k = z;
  for (int j = 120; j >= 2; --j) k = z + j / k;
  return k;
}

// pdf(z) - z * Q(z) = integral of Q over [z, inf).
double normal_partial_expectation(double z) {
  if (z > 4.0) {
    const double k = mills_tail_fraction(z);
    const double d = z + 1.0 / k;
    return std_normal_pdf(z) / (k * d);
  }
  return std_normal_pdf(z) - z * std_normal_upper(z);
}

double normal_upper_stable(double z) {
  if (z > 4.0) return std_normal_pdf(z) / (z + 1.0 / mills_tail_fraction(z));
  return std_normal_upper(z);
}

class Exponential final : public Distribution {
 public:
  explicit Exponential(double rate) : Distribution(0.0, kInfinity), rate_(rate) {}

  double survival(double x) const override { return x <= 0.0 ? 1.0 : std::exp(-rate_ * x); }
  double cdf(double x) const override { return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x); }
  double density(double x) const override { return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x); }
  double quantile(double p) const override {
    if (!(p > 0.0)) return 0.0;
    if (!(p < 1.0)) return kInfinity;
    return -std::log1p(-p) / rate_;
  }
  double mean() const override { return 1.0 / rate_; }
  double second_moment() const override { return 2.0 / (rate_ * rate_); }
  json spec() const override { return {{"kind", "exponential"}, {"rate", rate_}}; }

 protected:
  double tail_integral_inside(double r) const override { return std::exp(-rate_ * r) / rate_; }

 private:
  double rate_;
};

class Uniform final : public Distribution {
 public:
  Uniform(double a, double b) : Distribution(a, b), a_(a), b_(b) {}

  double survival(double x) const override {
    if (x <= a_) return 1.0;
    if (x >= b_) return 0.0;
    return (b_ - x) / (b_ - a_);
  }
  double cdf(double x) const override {
    if (x <= a_) return 0.0;
    if (x >= b_) return 1.0;
    return (x - a_) / (b_ - a_);
  }
  double density(double x) const override { return (x >= a_ && x < b_) ? 1.0 / (b_ - a_) : 0.0; }
  double quantile(double p) const override {
    if (!(p > 0.0)) return a_;
    if (!(p < 1.0)) return b_;
    return a_ + p * (b_ - a_);
  }
  double mean() const override { return 0.5 * (a_ + b_); }
  double second_moment() const override { return (a_ * a_ + a_ * b_ + b_ * b_) / 3.0; }
  json spec() const override { return {{"kind", "uniform"}, {"a", a_}, {"b", b_}}; }

 protected:
  double tail_integral_inside(double r) const override {
    const double w = b_ - r;
    return w * w / (2.0 * (b_ - a_));
  }

 private:
  double a_;
  double b_;
};

class TruncatedNormal final : public Distribution {
 public:
  TruncatedNormal(double mu, double sigma)
      : Distribution(0.0, kInfinity),
        mu_(mu),
        sigma_(sigma),
        z0_(-mu / sigma),
        mass_(normal_upper_stable(-mu / sigma)) {
    if (!(mass_ > 1e-300)) throw ParameterDomainError("truncated normal keeps no mass above 0");
  }

  double survival(double x) const override {
    if (x <= 0.0) return 1.0;
    return normal_upper_stable(z(x)) / mass_;
  }
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    const double zx = z(x);
    if (zx < 0.0) return (std_normal_lower(zx) - std_normal_lower(z0_)) / mass_;
    return 1.0 - survival(x);
  }
  double density(double x) const override {
    if (x < 0.0) return 0.0;
    return std_normal_pdf(z(x)) / (sigma_ * mass_);
  }
  double mean() const override { return tail_integral_inside(0.0); }
  double second_moment() const override {
    const double ratio = std_normal_pdf(z0_) / mass_;
    const double var = sigma_ * sigma_ * (1.0 + z0_ * ratio - ratio * ratio);
    const double m = mean();
    return var + m * m;
  }
  json spec() const override {
    return {{"kind", "truncated_normal"}, {"mu", mu_}, {"sigma", sigma_}};
  }

 protected:
  double tail_integral_inside(double r) const override {
    return sigma_ * normal_partial_expectation(z(r)) / mass_;
  }

 private:
  double z(double x) const { return (x - mu_) / sigma_; }

  double mu_;
  double sigma_;
  double z0_;
  double mass_;
};

class Sinusoid final : public Distribution {
 public:
  explicit Sinusoid(const SinusoidParams& p)
      : Distribution(0.0, kInfinity), p_(p), c_(sinusoid_normalization(p)) {}

  double survival(double x) const override {
    if (x <= 0.0) return 1.0;
    const double psi = phase(x);
    const double k = p_.kappa;
    const double w = p_.omega;
    return c_ * std::exp(-k * x) * (1.0 / k + (k * std::cos(psi) - w * std::sin(psi)) / denom());
  }
  double density(double x) const override {
    if (x < 0.0) return 0.0;
    return c_ * std::exp(-p_.kappa * x) * (std::cos(phase(x)) + 1.0);
  }
  double mean() const override { return tail_integral_inside(0.0); }
  json spec() const override {
    return {{"kind", "sinusoid"}, {"omega", p_.omega}, {"kappa", p_.kappa}, {"phi", p_.phi}};
  }

 protected:
  double tail_integral_inside(double r) const override {
    const double psi = phase(r);
    const double k = p_.kappa;
    const double w = p_.omega;
    const double d = denom();
    return c_ * std::exp(-k * r) *
           (1.0 / (k * k) + ((k * k - w * w) * std::cos(psi) - 2.0 * k * w * std::sin(psi)) / (d * d));
  }

 private:
  double phase(double x) const { return p_.omega * (x - p_.phi); }
  double denom() const { return p_.kappa * p_.kappa + p_.omega * p_.omega; }

  SinusoidParams p_;
  double c_;
};

}  // namespace

double sinusoid_normalization(const SinusoidParams& params) {
  const double k = params.kappa;
  const double w = params.omega;
  if (!(k > 0.0)) throw ParameterDomainError("sinusoid kappa must be > 0");
  if (!(w >= 0.0)) throw ParameterDomainError("sinusoid omega must be >= 0");
  if (!std::isfinite(params.phi)) throw ParameterDomainError("sinusoid phi must be finite");
  const double theta = w * params.phi;
  const double den = k * k * std::cos(theta) + k * k + k * w * std::sin(theta) + w * w;
  const double c = k * (k * k + w * w) / den;
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ParameterDomainError("sinusoid normalization constant is not positive");
  }
  return c;
}

double normal_mass_below_zero(double mu, double sigma) {
  if (!(sigma > 0.0)) throw ParameterDomainError("normal sigma must be > 0");
  return std_normal_lower(-mu / sigma);
}

DistributionPtr make_exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw ParameterDomainError("exponential rate must be > 0");
  }
  return std::make_shared<Exponential>(rate);
}

DistributionPtr make_uniform(double a, double b) {
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) {
    throw ParameterDomainError("uniform requires 0 <= a < b");
  }
  return std::make_shared<Uniform>(a, b);
}

DistributionPtr make_truncated_normal(double mu, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterDomainError("truncated normal sigma must be > 0");
  }
  if (!std::isfinite(mu)) throw ParameterDomainError("truncated normal mu must be finite");
  return std::make_shared<TruncatedNormal>(mu, sigma);
}

DistributionPtr make_sinusoid(const SinusoidParams& params) {
  return std::make_shared<Sinusoid>(params);
}

}  // namespace mrleq
