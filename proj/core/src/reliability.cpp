#include "mrleq/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mrleq/error.hpp"

namespace mrleq {
namespace {

constexpr double kNearEndSurvival = 1e-14;

std::string fmt(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::vector<double> make_grid(const Distribution& d, const GridSpec& spec) {
  std::vector<double> grid;
  if (!spec.explicit_points.empty()) {
    grid = spec.explicit_points;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (double r : grid) {
      if (!(r > d.support_low() && r < d.support_high())) {
        throw DomainError("grid point " + fmt(r) + " outside the support interior");
      }
    }
    return grid;
  }
  if (spec.points < 2) throw DomainError("grid needs at least 2 points");
  if (!(spec.p_low > 0.0 && spec.p_low < spec.p_high && spec.p_high < 1.0)) {
    throw DomainError("grid probabilities must satisfy 0 < p_low < p_high < 1");
  }
  double lo = d.quantile(spec.p_low);
  const double hi = d.quantile(spec.p_high);
  if (!(lo > 0.0)) lo = std::min(1e-12, 0.5 * hi);
  grid.resize(static_cast<std::size_t>(spec.points));
  for (int i = 0; i < spec.points; ++i) {
    const double t = static_cast<double>(i) / (spec.points - 1);
    grid[i] = spec.log_spaced ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo);
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

MrlValue evaluate_mrl(const Distribution& d, double r) {
  if (!(r >= 0.0)) throw DomainError("mrl requires r >= 0");
  if (r >= d.support_high()) return {0.0, MrlStatus::beyond_support};
  const double s = d.survival(r);
  // Survival underflowed inside the support: nothing left to expand.
  if (s <= 0.0) return {std::nan(""), MrlStatus::indeterminate};
  if (s < kNearEndSurvival) {
    if (d.has_density()) {
      const double f = d.density(r);
      if (f > 0.0) return {s / f, MrlStatus::near_support_end};
    }
    return {d.tail_integral(r) / s, MrlStatus::indeterminate};
  }
  return {d.tail_integral(r) / s, MrlStatus::ok};
}

double mrl(const Distribution& d, double r) { return evaluate_mrl(d, r).value; }

double gmrl(const Distribution& d, double r) {
  if (!(r > 0.0)) throw DomainError("gmrl requires r > 0");
  return mrl(d, r) / r;
}

double hazard(const Distribution& d, double r) {
  const double s = d.survival(r);
  if (s <= 0.0) return kInfinity;
  return d.density(r) / s;
}

ReliabilityProfile profile(const Distribution& d, const GridSpec& grid_spec) {
  ReliabilityProfile out;
  out.grid = make_grid(d, grid_spec);
  const std::size_t n = out.grid.size();
  out.mrl.resize(n);
  out.gmrl.resize(n);
  const bool with_density = d.has_density();
  if (with_density) {
    out.hazard.emplace(n);
    out.gfr.emplace(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double r = out.grid[i];
    const double s = d.survival(r);
    const double m = s >= kNearEndSurvival ? d.tail_integral(r) / s : mrl(d, r);
    out.mrl[i] = m;
    out.gmrl[i] = m / r;
    if (with_density) {
      const double h = s > 0.0 ? d.density(r) / s : kInfinity;
      (*out.hazard)[i] = h;
      (*out.gfr)[i] = r * h;
    }
  }
  return out;
}

std::string profile_csv(const ReliabilityProfile& p) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << "r,mrl,gmrl,hazard,gfr\n";
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    os << p.grid[i] << ',' << p.mrl[i] << ',' << p.gmrl[i] << ',';
    if (p.hazard) os << (*p.hazard)[i];
    os << ',';
    if (p.gfr) os << (*p.gfr)[i];
    os << '\n';
  }
  return os.str();
}

std::string to_string(Property p) {
  switch (p) {
    case Property::dmrl: return "DMRL";
    case Property::dgmrl: return "DGMRL";
    case Property::ifr: return "IFR";
    case Property::igfr: return "IGFR";
  }
  return "?";
}

std::string to_string(Holds h) {
  switch (h) {
    case Holds::yes: return "yes";
    case Holds::no: return "no";
    case Holds::indeterminate: return "indeterminate";
  }
  return "?";
}

Property property_from_string(const std::string& name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "DMRL") return Property::dmrl;
  if (upper == "DGMRL") return Property::dgmrl;
  if (upper == "IFR") return Property::ifr;
  if (upper == "IGFR") return Property::igfr;
  throw DomainError("unknown property '" + name + "'");
}

PropertyVerdict check_property(const Distribution& d, Property property, const GridSpec& grid,
                               Strictness strictness, double tolerance) {
  PropertyVerdict verdict;
  verdict.property = property;
  verdict.strictness = strictness;
  verdict.tolerance = tolerance;

  const ReliabilityProfile prof = profile(d, grid);
  verdict.grid_points = static_cast<int>(prof.grid.size());

  const std::vector<double>* curve = nullptr;
  double direction = -1.0;  // -1: must not increase, +1: must not decrease
  switch (property) {
    case Property::dmrl: curve = &prof.mrl; break;
    case Property::dgmrl: curve = &prof.gmrl; break;
    case Property::ifr:
    case Property::igfr:
      direction = 1.0;
      if (!prof.hazard) {
        verdict.holds = Holds::indeterminate;
        verdict.note = "density unavailable; hazard-based property cannot be checked";
        return verdict;
      }
      curve = property == Property::ifr ? &*prof.hazard : &*prof.gfr;
      break;
  }

  const auto& r = prof.grid;
  const auto& v = *curve;
  double worst = -kInfinity;
  std::optional<MonotonicityWitness> worst_pair;
  // decade index -> whether a strict step was seen
  std::map<int, bool> strict_step;
  std::map<int, std::pair<std::size_t, std::size_t>> decade_span;

  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    if (!std::isfinite(v[i]) || !std::isfinite(v[i + 1])) {
      if (std::isnan(v[i]) || std::isnan(v[i + 1])) {
        verdict.holds = Holds::indeterminate;
        verdict.note = "curve is undefined at r = " + fmt(r[i]);
        return verdict;
      }
      continue;
    }
    // Positive `against` means a step against the required direction.
    const double against = -direction * (v[i + 1] - v[i]) / std::max(1.0, std::abs(v[i]));
    if (against > worst) {
      worst = against;
      worst_pair = MonotonicityWitness{r[i], r[i + 1], v[i], v[i + 1]};
    }
    const int decade = static_cast<int>(std::floor(std::log10(r[i])));
    auto& seen = strict_step[decade];
    if (against <= -kStrictStep) seen = true;
    auto span = decade_span.try_emplace(decade, i, i + 1).first;
    span->second.second = i + 1;
  }

  verdict.max_violation = worst;
  if (worst > tolerance) {
    verdict.holds = Holds::no;
    verdict.witness = worst_pair;
    return verdict;
  }
  if (strictness == Strictness::strict) {
    for (const auto& [decade, seen] : strict_step) {
      if (!seen) {
        const auto [a, b] = decade_span.at(decade);
        verdict.holds = Holds::no;
        verdict.witness = MonotonicityWitness{r[a], r[b], v[a], v[b]};
        verdict.note = "no strict step within decade starting at 1e" + std::to_string(decade);
        return verdict;
      }
    }
  }
  verdict.holds = Holds::yes;
  return verdict;
}

}  // namespace mrleq
