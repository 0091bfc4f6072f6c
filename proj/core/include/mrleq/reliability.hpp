#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mrleq/distribution.hpp"

namespace mrleq {

// Probe grid for curves and certificates. Unless explicit points are given the
// grid runs between quantile(p_low) and quantile(p_high), log-spaced by default.
struct GridSpec {
  int points = 2000;
  double p_low = 1e-6;
  double p_high = 1.0 - 1e-6;
  bool log_spaced = true;
  std::vector<double> explicit_points;
};

// Ascending grid strictly inside the support. Throws DomainError for explicit
// points outside (support_low, support_high).
std::vector<double> make_grid(const Distribution& d, const GridSpec& spec);

enum class MrlStatus { ok, near_support_end, indeterminate, beyond_support };

struct MrlValue {
  double value = 0.0;
  MrlStatus status = MrlStatus::ok;
};

// m(r) = E[X - r | X > r], with m(r) = 0 for r >= support_high. Where the
// survival drops below 1e-14 the ratio is replaced by survival/density; where
// it underflows to zero inside the support the value is NaN (indeterminate).
MrlValue evaluate_mrl(const Distribution& d, double r);
double mrl(const Distribution& d, double r);
// e(r) = m(r) / r for r > 0.
double gmrl(const Distribution& d, double r);
// h(r) = f(r) / survival(r); +inf past the support.
double hazard(const Distribution& d, double r);

struct ReliabilityProfile {
  std::vector<double> grid;
  std::vector<double> mrl;
  std::vector<double> gmrl;
  // Absent when the distribution has no density.
  std::optional<std::vector<double>> hazard;
  std::optional<std::vector<double>> gfr;
};

ReliabilityProfile profile(const Distribution& d, const GridSpec& grid = {});

// CSV with columns r,mrl,gmrl,hazard,gfr (hazard columns empty when absent).
std::string profile_csv(const ReliabilityProfile& profile);

enum class Property { dmrl, dgmrl, ifr, igfr };
enum class Holds { yes, no, indeterminate };
enum class Strictness { weak, strict };

std::string to_string(Property p);
std::string to_string(Holds h);
Property property_from_string(const std::string& name);

// Adjacent grid pair (r1 < r2) whose curve values v1, v2 break monotonicity.
struct MonotonicityWitness {
  double r1 = 0.0;
  double r2 = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
};

// Grid certificate: holds = yes means no violation at this resolution.
struct PropertyVerdict {
  Property property = Property::dgmrl;
  Holds holds = Holds::indeterminate;
  Strictness strictness = Strictness::weak;
  std::optional<MonotonicityWitness> witness;
  double tolerance = 0.0;
  // Largest step against the required direction, scaled by max(1, |value|).
  double max_violation = 0.0;
  int grid_points = 0;
  std::string note;
};

inline constexpr double kPropertyTolerance = 1e-9;
inline constexpr double kStrictStep = 1e-12;

// DMRL / DGMRL: m / e nonincreasing. IFR / IGFR: h / g nondecreasing.
// Strict mode also demands at least one step of kStrictStep in the required
// direction within every decade of r covered by the grid.
PropertyVerdict check_property(const Distribution& d, Property property,
                               const GridSpec& grid = {},
                               Strictness strictness = Strictness::weak,
                               double tolerance = kPropertyTolerance);

}  // namespace mrleq
