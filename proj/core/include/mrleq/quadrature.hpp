#pragma once

#include <functional>

namespace mrleq {

using RealFunction = std::function<double(double)>;

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

// Globally adaptive Gauss-Kronrod (7/15) integration on a finite interval.
// The interval with the largest error estimate is bisected until the total
// estimate drops below max(abs_tol, rel_tol * |value|). A jump in f that
// falls between nodes is invisible; split at known discontinuities.
QuadratureResult integrate(const RealFunction& f, double a, double b,
                           const QuadratureOptions& opts = {});

struct TailOptions {
  QuadratureOptions quad{};
  // Integration stops once the decay probe falls below this level.
  double cutoff = 1e-12;
  // Hard limit on the truncation point; exceeding it signals divergence.
  double max_upper = 1e15;
};

struct TailResult {
  double value = 0.0;
  double upper = 0.0;        // truncation point actually used
  double last_segment = 0.0; // contribution of the outermost doubling segment
  double prev_segment = 0.0;
  bool converged = false;
};

// Integrates f on [a, inf) by summing over doubling segments [a + s_k, a + s_{k+1}]
// until decay(upper) < cutoff. `decay` is usually the survival function; it must be
// nonincreasing. Throws InfiniteMomentError when the truncation point exceeds
// max_upper.
TailResult integrate_tail(const RealFunction& f, double a, const RealFunction& decay,
                          const TailOptions& opts = {});

// Finds the smallest x of the form a + scale * 2^k with decay(x) < cutoff.
double find_truncation_point(const RealFunction& decay, double a, double scale,
                             double cutoff, double max_upper = 1e15);

}  // namespace mrleq
