#include "mrleq/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "mrleq/comparative.hpp"
#include "mrleq/distribution_spec.hpp"
#include "mrleq/equilibrium.hpp"
#include "mrleq/error.hpp"
#include "mrleq/oracle.hpp"
#include "mrleq/orders.hpp"
#include "mrleq/reliability.hpp"
#include "mrleq/serialize.hpp"

namespace mrleq::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string dist;
  std::string dist2;
  std::string z;
  std::string map;
  int n = 1;
  std::optional<double> alpha;
  std::optional<double> r_star;
  int grid_points = -1;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::size_t samples = 0;
  std::string property = "dgmrl";
  bool strict = false;
  std::string order = "mrl";
  std::string name = "all";
  std::vector<double> c;
  double p = 0.5;
  std::vector<double> params;
  std::string format = "json";
  std::string out;
  std::string config;
};

// One config key: how to echo it and how to load it from a config file.
struct Field {
  CLI::Option* option = nullptr;
  std::function<json()> get;
  std::function<void(const json&)> set;
};

std::string read_text(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream f(arg.substr(1), std::ios::binary);
  if (!f) throw UsageError("cannot read " + arg.substr(1));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json parse_json_arg(const std::string& arg, const std::string& what) {
  std::string text = read_text(arg);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError("", what + " is not valid JSON: " + e.what());
  }
}

DistributionPtr load_dist(const std::string& arg, const std::string& flag) {
  if (arg.empty()) throw UsageError(flag + " is required");
  json spec = parse_json_arg(arg, flag);
  return distribution_from_spec(spec);
}

std::string text_of(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

template <class F>
auto parse_name(F from_string, const std::string& name) {
  try {
    return from_string(name);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

class Command {
 public:
  Command(CLI::App& app, std::string name, std::string help, std::set<std::string> keys)
      : name_(std::move(name)), keys_(std::move(keys)) {
    sub_ = app.add_subcommand(name_, std::move(help));
  }

  CLI::App* sub() const { return sub_; }
  const std::string& name() const { return name_; }

  void register_options(Options& o) {
    auto want = [&](const std::string& k) { return keys_.count(k) > 0; };
    auto dist_field = [&](const std::string& key, std::string& slot, const std::string& help) {
      Field f;
      f.option = sub_->add_option("--" + key, slot, help);
      f.get = [&slot]() -> json {
        if (slot.empty()) return nullptr;
        return distribution_from_spec(json::parse(read_text(slot)))->spec();
      };
      f.set = [&slot](const json& j) { slot = j.is_null() ? "" : text_of(j); };
      fields_[key] = f;
    };
    if (want("dist")) dist_field("dist", o.dist, "distribution spec (JSON or @file)");
    if (want("dist2")) dist_field("dist2", o.dist2, "second distribution spec (JSON or @file)");
    if (want("z")) dist_field("z", o.z, "independent summand spec (JSON or @file)");
    if (want("map")) {
      Field f;
      f.option = sub_->add_option("--map", o.map, "increasing map, e.g. {\"type\":\"power\",\"exponent\":2}");
      f.get = [&o]() -> json { return o.map.empty() ? json(nullptr) : parse_json_arg(o.map, "--map"); };
      f.set = [&o](const json& j) { o.map = j.is_null() ? "" : text_of(j); };
      fields_["map"] = f;
    }
    add_scalar(want, "n", o.n, "number of retailers");
    add_optional(want, "alpha", o.alpha, "realized demand level");
    add_optional(want, "r_star", o.r_star, "wholesale price (skips the solve)");
    add_scalar(want, "grid_points", o.grid_points, "grid resolution");
    add_scalar(want, "tol", o.tol, "solver tolerance");
    add_scalar(want, "seed", o.seed, "Monte Carlo seed");
    add_scalar(want, "samples", o.samples, "Monte Carlo sample count (0 = off)");
    add_scalar(want, "property", o.property, "dmrl | dgmrl | ifr | igfr");
    add_scalar(want, "order", o.order, "st | hr | mrl | cx | disp | ew");
    add_scalar(want, "name", o.name,
               "scale | convolution | closure | variability | normal | st-sweep | all");
    add_scalar(want, "p", o.p, "mixing weight");
    if (want("strict")) {
      Field f;
      f.option = sub_->add_flag("--strict", o.strict, "require strict monotonicity");
      f.get = [&o] { return json(o.strict); };
      f.set = [&o](const json& j) { o.strict = j.get<bool>(); };
      fields_["strict"] = f;
    }
    add_list(want, "c", o.c, "scale factors");
    add_list(want, "params", o.params, "mu1,sigma1,mu2,sigma2");
    sub_->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub_->add_option("--out", o.out, "output file or directory (default stdout)");
    sub_->add_option("--config", o.config, "resolved config from an earlier run (JSON or @file)");
  }

  // Fills options not given on the command line from a config object.
  void apply_config(const json& cfg) {
    const json& c = cfg.contains("schema_version") && cfg.contains("config") ? cfg["config"] : cfg;
    if (!c.is_object()) throw SpecError("", "config must be a JSON object");
    for (auto it = c.begin(); it != c.end(); ++it) {
      auto f = fields_.find(it.key());
      if (f == fields_.end()) throw SpecError("/" + it.key(), "unknown config field for " + name_);
      if (f->second.option->count() > 0) continue;
      try {
        f->second.set(it.value());
      } catch (const json::exception& e) {
        throw SpecError("/" + it.key(), e.what());
      }
    }
  }

  json echo() const {
    json j = json::object();
    for (const auto& [k, f] : fields_) j[k] = f.get();
    return j;
  }

 private:
  template <class T>
  void add_scalar(const std::function<bool(const std::string&)>& want, const std::string& key, T& slot,
                  const std::string& help) {
    if (!want(key)) return;
    Field f;
    f.option = sub_->add_option("--" + dashed(key), slot, help);
    f.get = [&slot] { return json(slot); };
    f.set = [&slot](const json& j) { slot = j.get<T>(); };
    fields_[key] = f;
  }

  void add_optional(const std::function<bool(const std::string&)>& want, const std::string& key,
                    std::optional<double>& slot, const std::string& help) {
    if (!want(key)) return;
    Field f;
    f.option = sub_->add_option("--" + dashed(key), slot, help);
    f.get = [&slot] { return slot ? json(*slot) : json(nullptr); };
    f.set = [&slot](const json& j) {
      if (j.is_null())
        slot.reset();
      else
        slot = j.get<double>();
    };
    fields_[key] = f;
  }

  void add_list(const std::function<bool(const std::string&)>& want, const std::string& key,
                std::vector<double>& slot, const std::string& help) {
    if (!want(key)) return;
    Field f;
    f.option = sub_->add_option("--" + key, slot, help)->delimiter(',');
    f.get = [&slot] { return json(slot); };
    f.set = [&slot](const json& j) { slot = j.get<std::vector<double>>(); };
    fields_[key] = f;
  }

  static std::string dashed(std::string key) {
    for (char& ch : key)
      if (ch == '_') ch = '-';
    return key;
  }

  std::string name_;
  std::set<std::string> keys_;
  CLI::App* sub_ = nullptr;
  std::map<std::string, Field> fields_;
};

class Runner {
 public:
  Runner(const Options& o, const Command& cmd, std::ostream& out) : o_(o), cmd_(cmd), out_(out) {}

  int dispatch() {
    const std::string& c = cmd_.name();
    if (c == "solve") return solve();
    if (c == "fundamentals") return fundamentals_cmd();
    if (c == "profile") return profile_cmd();
    if (c == "check-property") return check_property_cmd();
    if (c == "check-order") return check_order_cmd();
    if (c == "oracle") return oracle_cmd();
    if (c == "experiment") return experiment_cmd();
    if (c == "counterexample") return counterexample_cmd();
    if (c == "poa") return poa_cmd();
    throw UsageError("unknown command " + c);
  }

 private:
  json envelope(json result) const {
    return {{"schema_version", kSchemaVersion},
            {"command", cmd_.name()},
            {"config", cmd_.echo()},
            {"result", std::move(result)}};
  }

  bool csv() const { return o_.format == "csv"; }

  void require_json() const {
    if (csv()) throw UsageError("--format csv is not available for " + cmd_.name());
  }

  void emit(const std::string& text, const std::string& stem) const {
    if (o_.out.empty()) {
      out_ << text;
      return;
    }
    namespace fs = std::filesystem;
    fs::path target(o_.out);
    if (o_.out.back() == '/' || fs::is_directory(target))
      target /= stem + (csv() ? ".csv" : ".json");
    atomic_write(target.string(), text);
  }

  void emit_json(const json& result) const { emit(dump_json(envelope(result)), cmd_.name()); }

  int grid(int fallback) const { return o_.grid_points > 0 ? o_.grid_points : fallback; }


  SolverOptions solver_options() const {
    SolverOptions s;
    s.tol = o_.tol;
    return s;
  }

  int solve() {
    DistributionPtr d = load_dist(o_.dist, "--dist");
    std::vector<double> factors = o_.c.empty() ? std::vector<double>{1.0} : o_.c;
    json runs = json::array();
    std::vector<std::vector<double>> rows;
    bool all_converged = true;
    for (double c : factors) {
      DistributionPtr dc = c == 1.0 ? d : shift_scale(d, {0.0, c});
      EquilibriumResult r = solve_wholesale_price(dc, solver_options());
      all_converged = all_converged && r.converged;
      json run = {{"param", c}, {"moments", to_json(moments(*dc))}, {"solve", to_json(r)}};
      const double nan = std::nan("");
      std::vector<double> row{c, r.r_star, r.residual, nan, nan, nan, nan};
      if (o_.alpha) {
        MarketOutcome m = fundamentals(r.r_star, *o_.alpha, o_.n);
        run["outcome"] = to_json(m);
        row[3] = m.q_star;
        row[4] = m.p_star;
        row[5] = m.profit_supplier;
        row[6] = m.profit_retailer_each;
      }
      rows.push_back(row);
      runs.push_back(run);
    }
    if (csv()) {
      std::string text = to_csv(
          {"param", "r_star", "residual", "q_star", "p_star", "profit_supplier", "profit_retailer_each"}, rows);
      emit(text, "solve");
    } else {
      json result = runs.size() == 1 && o_.c.empty() ? runs[0] : json{{"runs", runs}};
      if (runs.size() == 1 && o_.c.empty()) result["r_star"] = runs[0]["solve"]["r_star"];
      emit_json(result);
    }
    return all_converged ? kExitOk : kExitPrecondition;
  }

  int fundamentals_cmd() {
    require_json();
    if (!o_.alpha) throw UsageError("--alpha is required");
    double r;
    json result = json::object();
    if (o_.r_star) {
      r = *o_.r_star;
    } else {
      EquilibriumResult s = solve_wholesale_price(load_dist(o_.dist, "--dist"), solver_options());
      r = s.r_star;
      result["solve"] = to_json(s);
    }
    result["outcome"] = to_json(fundamentals(r, *o_.alpha, o_.n));
    emit_json(result);
    return kExitOk;
  }

  int profile_cmd() {
    DistributionPtr d = load_dist(o_.dist, "--dist");
    GridSpec g;
    g.points = grid(2000);
    ReliabilityProfile p = profile(*d, g);
    if (csv())
      emit(profile_csv(p), "profile");
    else
      emit_json(to_json(p));
    return kExitOk;
  }

  int check_property_cmd() {
    require_json();
    DistributionPtr d = load_dist(o_.dist, "--dist");
    GridSpec g;
    g.points = grid(2000);
    PropertyVerdict v = check_property(*d, parse_name(property_from_string, o_.property), g,
                                       o_.strict ? Strictness::strict : Strictness::weak);
    emit_json(to_json(v));
    return v.holds == Holds::yes ? kExitOk : kExitPrecondition;
  }

  int check_order_cmd() {
    require_json();
    DistributionPtr a = load_dist(o_.dist, "--dist");
    DistributionPtr b = load_dist(o_.dist2, "--dist2");
    Order order = parse_name(order_from_string, o_.order);
    OrderVerdict v;
    OrderGrid g;
    g.points = grid(2000);
    switch (order) {
      case Order::st: v = check_st(*a, *b, g); break;
      case Order::hr: v = check_hr(*a, *b, g); break;
      case Order::mrl: v = check_mrl(*a, *b, g); break;
      case Order::cx: v = check_cx(*a, *b, g); break;
      default: v = check_order(order, *a, *b);
    }
    emit_json(to_json(v));
    return v.holds() ? kExitOk : kExitPrecondition;
  }

  int oracle_cmd() {
    DistributionPtr d = load_dist(o_.dist, "--dist");
    EquilibriumResult s = solve_wholesale_price(d, solver_options());
    OracleReport rep = argmax_grid(*d, o_.n, oracle_grid(*d, grid(4000)));
    if (o_.samples > 0) rep.mc = monte_carlo_profits(*d, s.r_star, o_.n, o_.samples, o_.seed);
    if (csv()) {
      emit(profit_curve_csv(rep.profit_curve), "oracle");
      return kExitOk;
    }
    json result = {{"solve", to_json(s)},
                   {"oracle", to_json(rep)},
                   {"gap", std::abs(rep.r_hat - s.r_star)},
                   {"within_one_step", std::abs(rep.r_hat - s.r_star) <= rep.grid_step},
                   {"expected_profits", to_json(expected_profits(*d, s.r_star, o_.n))}};
    if (o_.alpha) {
      DeviationReport dev = cournot_deviation_check(*o_.alpha, s.r_star, o_.n, quantity_grid(*o_.alpha));
      result["deviation"] = to_json(dev);
    }
    emit_json(result);
    return kExitOk;
  }

  int experiment_cmd() {
    require_json();
    std::vector<ExperimentReport> reports;
    const std::string& name = o_.name;
    if (name == "all") {
      reports = standard_suite();
      reports.push_back(st_dominance_sweep(default_sweep_corpus()));
    } else if (name == "scale") {
      std::vector<double> c = o_.c.empty() ? standard_scale_factors() : o_.c;
      reports.push_back(scale_experiment(load_dist(o_.dist, "--dist"), c));
    } else if (name == "convolution") {
      reports.push_back(convolution_experiment(load_dist(o_.dist, "--dist"), load_dist(o_.z, "--z")));
    } else if (name == "closure") {
      MonotoneMap phi = o_.map.empty() ? MonotoneMap::power(2.0)
                                       : monotone_map_from_spec(parse_json_arg(o_.map, "--map"));
      DistributionPtr z = o_.z.empty() ? make_uniform(0.0, 1.0) : load_dist(o_.z, "--z");
      reports.push_back(closure_experiments(load_dist(o_.dist, "--dist"), load_dist(o_.dist2, "--dist2"),
                                            phi, z, o_.p));
    } else if (name == "variability") {
      reports.push_back(variability_experiments(load_dist(o_.dist, "--dist"), load_dist(o_.dist2, "--dist2")));
    } else if (name == "normal") {
      if (o_.params.size() != 4) throw UsageError("--params needs mu1,sigma1,mu2,sigma2");
      reports.push_back(normal_family_experiment(o_.params[0], o_.params[1], o_.params[2], o_.params[3]));
    } else if (name == "st-sweep") {
      reports.push_back(st_dominance_sweep(default_sweep_corpus()));
    } else {
      throw UsageError("unknown experiment " + name);
    }
    std::vector<std::string> violations = lemma_violations(reports);
    bool ok = violations.empty();
    json arr = json::array();
    for (const auto& r : reports) {
      ok = ok && r.ok();
      arr.push_back(to_json(r));
    }
    emit_json({{"reports", arr}, {"lemma_violations", violations}, {"ok", ok}});
    return ok ? kExitOk : kExitAssertion;
  }

  int counterexample_cmd() {
    CounterexampleResult r = counterexample_reproduction({}, grid(1000));
    std::string csv_text = counterexample_csv(r.curves);
    std::string json_text = dump_json(envelope(to_json(r)));
    namespace fs = std::filesystem;
    if (!o_.out.empty() && (o_.out.back() == '/' || fs::is_directory(o_.out))) {
      fs::path dir(o_.out);
      atomic_write((dir / "counterexample.json").string(), json_text);
      atomic_write((dir / "counterexample_curves.csv").string(), csv_text);
    } else {
      emit(csv() ? csv_text : json_text, "counterexample");
    }
    return r.ok() ? kExitOk : kExitAssertion;
  }

  int poa_cmd() {
    require_json();
    if (o_.n < 1) throw ParameterDomainError("n must be at least 1");
    json result = {{"poa", poa(o_.n)}};
    std::optional<double> r = o_.r_star;
    if (!r && !o_.dist.empty()) r = solve_wholesale_price(load_dist(o_.dist, "--dist"), solver_options()).r_star;
    if (r) {
      result["r_star"] = *r;
      result["empirical_poa"] = empirical_poa(*r, o_.n, approach_grid(*r, grid(60)));
    }
    emit_json(result);
    return kExitOk;
  }

  const Options& o_;
  const Command& cmd_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Wholesale price equilibria under demand uncertainty", "mrleq");
  app.require_subcommand(1);
  Options o;
  std::vector<std::unique_ptr<Command>> commands;
  auto add = [&](const std::string& name, const std::string& help, std::set<std::string> keys) {
    commands.push_back(std::make_unique<Command>(app, name, help, std::move(keys)));
    commands.back()->register_options(o);
  };
  add("solve", "optimal wholesale price r* = m(r*)", {"dist", "tol", "n", "alpha", "c"});
  add("fundamentals", "quantities, prices and profits at a realized demand",
      {"dist", "tol", "n", "alpha", "r_star"});
  add("profile", "mean residual life, generalized mrl, hazard and gfr curves", {"dist", "grid_points"});
  add("check-property", "certify DMRL / DGMRL / IFR / IGFR on a grid",
      {"dist", "property", "strict", "grid_points"});
  add("check-order", "certify a stochastic order between two distributions",
      {"dist", "dist2", "order", "grid_points"});
  add("oracle", "brute-force profit maximization and Monte Carlo cross-check",
      {"dist", "tol", "n", "alpha", "grid_points", "samples", "seed"});
  add("experiment", "comparative statics experiments",
      {"name", "dist", "dist2", "z", "map", "c", "p", "params"});
  add("counterexample", "stochastically larger demand with a lower price", {"grid_points"});
  add("poa", "price of anarchy", {"dist", "tol", "n", "r_star", "grid_points"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  Command* active = nullptr;
  for (const auto& c : commands)
    if (c->sub()->parsed()) active = c.get();
  if (!active) {
    err << "error: no command given\n";
    return kExitUsage;
  }

  try {
    if (!o.config.empty()) active->apply_config(parse_json_arg(o.config, "--config"));
    if (o.n < 1) throw ParameterDomainError("--n must be at least 1");
    if (o.grid_points <= 0) {
      static const std::map<std::string, int> defaults = {{"profile", 2000},     {"check-property", 2000},
                                                          {"check-order", 2000}, {"oracle", 4000},
                                                          {"counterexample", 1000}, {"poa", 60}};
      auto it = defaults.find(active->name());
      if (it != defaults.end()) o.grid_points = it->second;
    }
    Runner runner(o, *active, out);
    return runner.dispatch();
  } catch (const SpecError& e) {
    err << "parse error at " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterDomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace mrleq::cli
