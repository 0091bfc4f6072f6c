#include "mrleq/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace mrleq {

namespace {

json witness_json(const std::optional<MonotonicityWitness>& w) {
  if (!w) return nullptr;
  return {{"r1", w->r1}, {"r2", w->r2}, {"v1", w->v1}, {"v2", w->v2}};
}

json direction_json(const DirectionCheck& c) {
  json j = {{"holds", c.holds}, {"max_violation", c.max_violation}, {"witness", nullptr}};
  if (c.witness) {
    json coords = json::object();
    for (std::size_t i = 0; i < c.witness->coords.size(); ++i)
      coords[c.witness->coord_names[i]] = c.witness->coords[i];
    j["witness"] = {{"at", coords}, {"lhs", c.witness->lhs}, {"rhs", c.witness->rhs}};
  }
  return j;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json mc_json(const McEstimate& e) { return {{"mean", e.mean}, {"std_error", e.std_error}}; }

void write_json(std::string& out, const json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::number_float:
      out += std::isfinite(j.get<double>()) ? format_double(j.get<double>()) : "null";
      return;
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write_json(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_json(out, v, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

json to_json(const Moments& m) {
  return {{"mean", m.mean}, {"second_moment", m.second_moment}, {"variance", m.variance}, {"cv", m.cv}};
}

json to_json(const PropertyVerdict& v) {
  return {{"property", to_string(v.property)},
          {"holds", to_string(v.holds)},
          {"strictness", v.strictness == Strictness::strict ? "strict" : "weak"},
          {"witness", witness_json(v.witness)},
          {"tolerance", v.tolerance},
          {"max_violation", v.max_violation},
          {"grid_points", v.grid_points},
          {"note", v.note}};
}

json to_json(const OrderVerdict& v) {
  json j = {{"order", to_string(v.order)},
            {"direction", to_string(v.direction)},
            {"forward", direction_json(v.forward)},
            {"reverse", direction_json(v.reverse)},
            {"tolerance", v.tolerance},
            {"grid",
             {{"kind", v.grid.kind}, {"points", v.grid.points}, {"low", v.grid.low}, {"high", v.grid.high}}},
            {"method", v.method},
            {"note", v.note},
            {"unsupported_input", v.unsupported_input}};
  if (v.ratio_forward) j["ratio_forward"] = direction_json(*v.ratio_forward);
  if (v.ratio_reverse) j["ratio_reverse"] = direction_json(*v.ratio_reverse);
  return j;
}

json to_json(const EquilibriumResult& r) {
  return {{"r_star", r.r_star},
          {"residual", r.residual},
          {"bracket", {r.bracket_low, r.bracket_high}},
          {"all_fixed_points", r.all_fixed_points},
          {"dgmrl_certified", r.dgmrl_certified},
          {"dgmrl", to_json(r.dgmrl)},
          {"iterations", r.iterations},
          {"converged", r.converged}};
}

json to_json(const MarketOutcome& o) {
  return {{"alpha", o.alpha},
          {"r_star", o.r_star},
          {"n", o.n},
          {"q_star", o.q_star},
          {"p_star", o.p_star},
          {"profit_supplier", o.profit_supplier},
          {"profit_retailer_each", o.profit_retailer_each},
          {"profit_integrated", o.profit_integrated},
          {"profit_decentralized_total", o.profit_decentralized_total},
          {"ratio", optional_json(o.ratio)},
          {"efficiency", optional_json(o.efficiency)},
          {"transaction", o.transaction}};
}

json to_json(const ReliabilityProfile& p) {
  json j = {{"r", p.grid}, {"mrl", p.mrl}, {"gmrl", p.gmrl}, {"hazard", nullptr}, {"gfr", nullptr}};
  if (p.hazard) j["hazard"] = *p.hazard;
  if (p.gfr) j["gfr"] = *p.gfr;
  return j;
}

json to_json(const McEstimates& m) {
  return {{"supplier", mc_json(m.supplier)},
          {"retailer_each", mc_json(m.retailer_each)},
          {"integrated", mc_json(m.integrated)},
          {"decentralized", mc_json(m.decentralized)},
          {"seed", m.seed},
          {"samples", m.samples},
          {"chunks", m.chunks}};
}

json to_json(const ExpectedProfits& p) {
  return {{"supplier", p.supplier},
          {"retailer_each", p.retailer_each},
          {"integrated", p.integrated},
          {"decentralized", p.decentralized}};
}

json to_json(const OracleReport& r) {
  json curve = json::array();
  for (const auto& pt : r.profit_curve) curve.push_back({pt.r, pt.profit});
  json j = {{"n", r.n},
            {"r_hat", r.r_hat},
            {"grid_step", r.grid_step},
            {"grid_points", r.profit_curve.size()},
            {"deviation_max", r.deviation_max},
            {"mc", nullptr}};
  if (r.mc) j["mc"] = to_json(*r.mc);
  return j;
}

json to_json(const DeviationReport& d) {
  return {{"max_gain", d.max_gain},
          {"candidate_q", d.candidate_q},
          {"best_q", d.best_q},
          {"grid_bound", d.grid_bound}};
}

json to_json(const ExperimentReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases) {
    json pre = json::array();
    for (const auto& p : c.preconditions)
      pre.push_back({{"name", p.name}, {"certified", p.certified}, {"detail", p.detail}});
    json observed = json::object();
    for (const auto& [k, v] : c.observed) observed[k] = v;
    json lemma = json::array();
    for (const auto& l : c.lemma_checks)
      lemma.push_back({{"lower", l.lower},
                       {"upper", l.upper},
                       {"mrl_certified", l.mrl_certified},
                       {"both_dgmrl", l.both_dgmrl},
                       {"r_lower", l.r_lower},
                       {"r_upper", l.r_upper},
                       {"violated", l.violated()}});
    cases.push_back({{"id", c.id},
                     {"description", c.description},
                     {"inputs", c.inputs},
                     {"preconditions", pre},
                     {"predicted", c.predicted},
                     {"observed", observed},
                     {"lemma_checks", lemma},
                     {"flags", c.flags},
                     {"status", to_string(c.status)},
                     {"reason", c.reason}});
  }
  return {{"id", r.id},
          {"hypothesis", r.hypothesis},
          {"exploratory", r.exploratory},
          {"passed", r.count(CaseStatus::pass)},
          {"failed", r.count(CaseStatus::fail)},
          {"skipped", r.count(CaseStatus::skipped)},
          {"observed", r.count(CaseStatus::observed)},
          {"ok", r.ok()},
          {"cases", cases}};
}

json to_json(const CounterexampleResult& r) {
  json asserts = json::array();
  for (const auto& a : r.assertions)
    asserts.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  return {{"r_star_f", r.solved_f.r_star},
          {"r_star_g", r.solved_g.r_star},
          {"solve_f", to_json(r.solved_f)},
          {"solve_g", to_json(r.solved_g)},
          {"assertions", asserts},
          {"ok", r.ok()},
          {"curve_points", r.curves.size()}};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // snprintf honours LC_NUMERIC; force '.'.
  for (char& ch : s)
    if (ch == ',') ch = '.';
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string dump_json(const json& value, int indent) {
  std::string out;
  write_json(out, value, indent, 0);
  out += '\n';
  return out;
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string profit_curve_csv(const std::vector<ProfitPoint>& curve) {
  std::vector<std::vector<double>> rows;
  rows.reserve(curve.size());
  for (const auto& p : curve) rows.push_back({p.r, p.profit});
  return to_csv({"r", "expected_profit"}, rows);
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename into " + target.string() + ": " + ec.message());
  }
}

}  // namespace mrleq
