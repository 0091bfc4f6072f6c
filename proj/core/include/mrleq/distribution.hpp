#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

namespace mrleq {

using json = nlohmann::json;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Immutable continuous demand distribution on [support_low, support_high] with
// support_low >= 0 (so cdf(0) = 0 unless support_low = 0).
//
// Concrete models are created through the factory functions below and shared
// as DistributionPtr. All const members are safe to call concurrently; lazily
// built tables are guarded by std::call_once.
class Distribution {
 public:
  virtual ~Distribution() = default;
  Distribution(const Distribution&) = delete;
  Distribution& operator=(const Distribution&) = delete;

  virtual double survival(double x) const = 0;
  virtual double cdf(double x) const { return 1.0 - survival(x); }

  virtual bool has_density() const { return true; }
  // Throws DomainError when the model has no density.
  virtual double density(double x) const;

  // Smallest x with cdf(x) >= p. p <= 0 and p >= 1 clamp to the support ends.
  virtual double quantile(double p) const;

  double support_low() const noexcept { return low_; }
  double support_high() const noexcept { return high_; }
  bool bounded() const noexcept { return high_ < kInfinity; }

  virtual double mean() const;
  // E[X^2]. Throws InfiniteMomentError when the tail integral does not converge.
  virtual double second_moment() const;

  // Integral of the survival function over [r, inf). Equals E[(X - r)^+].
  double tail_integral(double r) const;

  // Draws one variate. Default is inverse-transform sampling.
  virtual double sample(std::mt19937_64& rng) const;

  // Declarative description; feeding it back to distribution_from_spec
  // reconstructs an equivalent model.
  virtual json spec() const = 0;

 protected:
  Distribution(double low, double high);

  // tail_integral for r inside [support_low, support_high). The default
  // implementation uses a precomputed right-cumulative table of survival
  // integrals plus one adaptive piece per call.
  virtual double tail_integral_inside(double r) const;

  // Generic quadrature moments for models without closed forms.
  double numeric_mean() const;
  double numeric_second_moment() const;

 private:
  struct TailTable {
    std::vector<double> knots;
    std::vector<double> right_cumulative;  // integral of survival over [knots[k], end]
  };
  const TailTable& tail_table() const;
  double bisect_quantile(double p) const;

  double low_;
  double high_;
  mutable std::once_flag table_once_;
  mutable std::unique_ptr<TailTable> table_;
};

using DistributionPtr = std::shared_ptr<const Distribution>;

struct Moments {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  double cv = 0.0;
};

// Mean, second moment, variance and coefficient of variation. Throws
// InfiniteMomentError when the second moment diverges.
Moments moments(const Distribution& d);

// ---------------------------------------------------------------------------
// Analytic families

struct SinusoidParams {
  double omega = 0.0;  // angular frequency
  double kappa = 1.0;  // decay rate
  double phi = 0.0;    // phase shift, in demand units
};

struct ShiftScaleParams {
  double delta = 0.0;   // shift
  double lambda = 1.0;  // scale
};

// Normalization constant of the exponentially damped sinusoid density
// f(r) = C e^{-kappa r} (cos(omega (r - phi)) + 1).
double sinusoid_normalization(const SinusoidParams& params);

DistributionPtr make_exponential(double rate);
DistributionPtr make_uniform(double a, double b);
// N(mu, sigma^2) conditioned on X >= 0.
DistributionPtr make_truncated_normal(double mu, double sigma);
DistributionPtr make_sinusoid(const SinusoidParams& params);

// Probability mass an untruncated N(mu, sigma^2) puts below zero.
double normal_mass_below_zero(double mu, double sigma);

// ---------------------------------------------------------------------------
// Combinators

// delta + lambda * X
DistributionPtr shift_scale(DistributionPtr base, const ShiftScaleParams& params);

// cdf = p * cdf_1 + (1 - p) * cdf_2
DistributionPtr mixture(DistributionPtr first, DistributionPtr second, double p);

struct ConvolutionOptions {
  int knots = 4096;
  // Monotone cubic Hermite survival (density available) or piecewise linear.
  bool hermite = true;
  // Upper end covers quantiles up to 1 - tail_mass of the sum.
  double tail_mass = 1e-12;
};

// Distribution of X + Z for independent nonnegative X and Z, stored as a
// survival table. Throws ResolutionError when the table cannot certify a
// monotone cdf.
DistributionPtr convolve(DistributionPtr x, DistributionPtr z,
                         const ConvolutionOptions& options = {});

// Strictly increasing map used by transform_increasing. `inverse` and
// `derivative` are optional; missing pieces fall back to bisection and
// central differences.
struct MonotoneMap {
  std::function<double(double)> forward;
  std::function<double(double)> inverse;
  std::function<double(double)> derivative;
  json spec = "custom";

  static MonotoneMap identity();
  static MonotoneMap linear(double slope);
  // x^exponent on [0, inf); convex for exponent >= 1.
  static MonotoneMap power(double exponent);
  // e^x - 1
  static MonotoneMap expm1();
};

// Distribution of map(X). Throws ContractViolationError when the map is not
// strictly increasing on a probe grid over the support.
DistributionPtr transform_increasing(DistributionPtr base, MonotoneMap map);

}  // namespace mrleq
