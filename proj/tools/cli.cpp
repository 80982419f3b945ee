#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ordopt/ordopt.hpp"

namespace ordopt::cli {
namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int workers_from_env() {
  const char* env = std::getenv("ORDOPT_WORKERS");
  if (env == nullptr || *env == '\0') return 0;
  const std::string_view text(env);
  int w = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), w);
  if (ec != std::errc() || end != text.data() + text.size() || w < 0)
    throw UsageError("ORDOPT_WORKERS must be a non-negative integer");
  return w;
}

struct ProblemArgs {
  std::int64_t n = 100;
  std::int64_t m = 5;
  double alpha = 0.05;
  std::optional<double> rho;
  std::optional<double> xi2;
};

void add_rho_options(CLI::App* app, ProblemArgs& a) {
  auto* rho = app->add_option("--rho", a.rho, "copula correlation in (0, 1]");
  auto* xi2 = app->add_option("--xi2", a.xi2, "noise-to-signal ratio, instead of --rho");
  rho->excludes(xi2);
}

double resolve_rho(const ProblemArgs& a) {
  if (a.rho) return *a.rho;
  if (a.xi2) return noise_to_copula(*a.xi2);
  throw UsageError("one of --rho or --xi2 is required");
}

Json problem_params(const ProblemArgs& a, bool with_m = true) {
  Json p;
  p["n"] = a.n;
  if (with_m) p["m"] = a.m;
  p["alpha"] = a.alpha;
  p["rho"] = resolve_rho(a);
  if (a.xi2) p["xi2"] = *a.xi2;
  return p;
}

Json record(std::string method, Json params) {
  Json r;
  r["method"] = std::move(method);
  r["params"] = std::move(params);
  r["value"] = nullptr;
  return r;
}

// Output records ------------------------------------------------------------

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_float()) return csv_number(v.get<double>());
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

Json flatten(const Json& r) {
  Json flat;
  for (const auto& [key, value] : r.items()) {
    if (key == "params") {
      for (const auto& [pk, pv] : value.items()) flat[pk] = pv;
    } else {
      flat[key] = value;
    }
  }
  return flat;
}

void write_csv(const std::vector<Json>& records, std::ostream& out) {
  std::vector<Json> rows;
  std::vector<std::string> header;
  for (const auto& r : records) {
    rows.push_back(flatten(r));
    for (const auto& [key, value] : rows.back().items())
      if (std::find(header.begin(), header.end(), key) == header.end()) header.push_back(key);
  }
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out << ',';
      if (row.contains(header[i])) out << csv_cell(row[header[i]]);
    }
    out << '\n';
  }
}

void write_json(const std::vector<Json>& records, std::ostream& out) {
  for (const auto& r : records) out << r.dump() << '\n';
}

// Methods -------------------------------------------------------------------

struct Settings {
  int workers = 0;
  std::uint64_t seed = 0;
  bool has_seed = false;
  QuadratureConfig quad;
  double target_error = 1e-4;
  DensityReading reading = DensityReading::standard;
  std::int64_t replications = 20000;
  McSampler sampler = McSampler::automatic;
  std::optional<double> theta;
};

Json run_exact(const ProblemArgs& a, const Settings& s) {
  const auto spec = make_problem(a.n, a.m, a.alpha, resolve_rho(a));
  const auto r = exact_success_probability(spec, s.quad, s.workers);
  Json j = record("exact", problem_params(a));
  j["value"] = r.value;
  j["error_estimate"] = r.error_estimate;
  j["terms_evaluated"] = r.terms_evaluated;
  return j;
}

Json run_approx(const ProblemArgs& a, const Settings& s) {
  const auto spec = make_problem(a.n, a.m, a.alpha, resolve_rho(a));
  ApproxOptions opt;
  opt.mvn.target_abs_error = s.target_error;
  opt.mvn.workers = s.workers;
  opt.reading = s.reading;
  const auto r = approx_success_probability(spec, s.seed, opt);
  Json j = record("approx", problem_params(a));
  j["value"] = r.value;
  j["error_estimate"] = r.error_estimate;
  j["seed"] = s.seed;
  return j;
}

Json run_bound(const ProblemArgs& a, const Settings& s) {
  const double rho = resolve_rho(a);
  const auto r = s.theta ? lower_bound(a.n, a.alpha, rho, *s.theta)
                         : optimised_lower_bound(a.n, a.alpha, rho);
  Json j = record(std::string("bound_") + std::string(to_string(r.method)),
                  problem_params(a, false));
  j["value"] = r.value;
  j["theta"] = r.theta_used ? Json(*r.theta_used) : Json(nullptr);
  j["feasible"] = r.feasible;
  return j;
}

Json run_distfree(const ProblemArgs& a) {
  const auto b = dist_free_bounds(a.n, a.m, a.alpha);
  Json p;
  p["n"] = a.n;
  p["m"] = a.m;
  p["alpha"] = a.alpha;
  Json j = record("distfree", std::move(p));
  j["value"] = b.lower;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  return j;
}

Json run_simulate(const ProblemArgs& a, const Settings& s) {
  if (!s.has_seed) throw UsageError("simulate requires --seed");
  const auto spec = make_problem(a.n, a.m, a.alpha, resolve_rho(a));
  McConfig cfg;
  cfg.replications = s.replications;
  cfg.seed = s.seed;
  cfg.workers = s.workers;
  cfg.sampler = s.sampler;
  const auto e = mc_estimate(spec, cfg);
  Json j = record("simulate", problem_params(a));
  j["value"] = e.p_hat;
  j["error_estimate"] = e.std_err;
  j["seed"] = s.seed;
  j["ci95_lower"] = e.ci95.lower;
  j["ci95_upper"] = e.ci95.upper;
  j["replications"] = e.replications;
  j["successes"] = e.successes;
  return j;
}

Json run_plan(double alpha, double rho, double delta, std::optional<double> xi2) {
  const auto p = plan_sample_size(alpha, rho, delta);
  Json params;
  params["alpha"] = alpha;
  params["rho"] = rho;
  if (xi2) params["xi2"] = *xi2;
  params["delta"] = delta;
  Json j = record("plan", std::move(params));
  j["value"] = p.n_exact ? Json(*p.n_exact) : Json(nullptr);
  j["log_n"] = p.log_n;
  j["log10_n"] = p.log10_n();
  j["n_scientific"] = p.scientific();
  j["theta"] = p.theta_used;
  j["certified"] = p.certified;
  return j;
}

// Sweeps --------------------------------------------------------------------

struct SweepArgs {
  std::string vary;
  std::vector<double> values;
  std::optional<double> start, stop;
  int steps = 10;
  std::string scale = "linear";
  std::string method = "all";
};

std::vector<double> sweep_values(const SweepArgs& w) {
  std::vector<double> v = w.values;
  if (v.empty()) {
    if (!w.start || !w.stop) throw UsageError("sweep needs --values or --start and --stop");
    if (w.steps < 1) throw OutOfRange("steps", "must be at least 1");
    const bool log_scale = w.scale == "log";
    if (log_scale && !(*w.start > 0 && *w.stop > 0))
      throw OutOfRange("start", "log scale needs positive end points");
    for (int i = 0; i < w.steps; ++i) {
      const double t = w.steps == 1 ? 0.0 : static_cast<double>(i) / (w.steps - 1);
      v.push_back(log_scale ? std::exp(std::log(*w.start) + t * (std::log(*w.stop) - std::log(*w.start)))
                            : *w.start + t * (*w.stop - *w.start));
    }
  }
  if (w.vary == "n" || w.vary == "m") {
    std::vector<double> rounded;
    for (double x : v) {
      const double r = std::round(x);
      if (rounded.empty() || rounded.back() != r) rounded.push_back(r);
    }
    v = rounded;
  }
  return v;
}

std::vector<Json> run_sweep(const ProblemArgs& base, const SweepArgs& w, const Settings& s) {
  static const std::vector<std::string> all = {"exact", "approx", "bound", "distfree", "simulate"};
  std::vector<std::string> methods;
  if (w.method == "all") {
    methods = all;
  } else {
    methods = {w.method};
  }
  const bool simulate = std::find(methods.begin(), methods.end(), "simulate") != methods.end();
  if (simulate && !s.has_seed) throw UsageError("sweeps that simulate require --seed");

  std::vector<ProblemArgs> points;
  for (double x : sweep_values(w)) {
    ProblemArgs p = base;
    if (w.vary == "n") p.n = static_cast<std::int64_t>(x);
    if (w.vary == "m") p.m = static_cast<std::int64_t>(x);
    if (w.vary == "alpha") p.alpha = x;
    if (w.vary == "rho") {
      p.rho = x;
      p.xi2.reset();
    }
    make_problem(p.n, p.m, p.alpha, resolve_rho(p));
    points.push_back(p);
  }

  std::vector<Json> out;
  for (const auto& p : points) {
    for (const auto& m : methods) {
      if (m == "exact") out.push_back(run_exact(p, s));
      if (m == "bound") out.push_back(run_bound(p, s));
      if (m == "distfree") out.push_back(run_distfree(p));
      if (m == "simulate") out.push_back(run_simulate(p, s));
      if (m == "approx") {
        if (p.m == p.n && w.method == "all") {
          Json j = record("approx", problem_params(p));
          j["note"] = "undefined for m = n";
          out.push_back(j);
        } else {
          out.push_back(run_approx(p, s));
        }
      }
    }
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Success probabilities for ordinal optimisation under a Gaussian copula", "ordopt"};
  app.require_subcommand(1);
  app.fallthrough();

  bool csv = false;
  bool json = false;
  Settings s;
  auto* csv_flag = app.add_flag("--csv", csv, "CSV output");
  auto* json_flag = app.add_flag("--json", json, "JSON lines output (default)");
  csv_flag->excludes(json_flag);
  auto* workers_opt = app.add_option("--workers", s.workers, "threads, 0 = all cores (env ORDOPT_WORKERS)")
                          ->check(CLI::NonNegativeNumber);

  ProblemArgs a;
  double delta = 0.01;
  SweepArgs sweep;
  std::string reading = "standard";
  std::string sampler = "auto";

  auto add_n = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("-n", a.n, "sample size");
    if (required) o->required();
  };
  auto add_m = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("-m", a.m, "selection size");
    if (required) o->required();
  };
  auto add_alpha = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--alpha", a.alpha, "acceptable fraction");
    if (required) o->required();
  };
  auto add_seed = [&](CLI::App* c) {
    return c->add_option("--seed", s.seed, "random seed");
  };

  auto* exact = app.add_subcommand("exact", "exact success probability");
  add_n(exact, true);
  add_m(exact, true);
  add_alpha(exact, true);
  add_rho_options(exact, a);
  exact->add_option("--abs-tol", s.quad.abs_tol, "quadrature absolute tolerance");
  exact->add_option("--rel-tol", s.quad.rel_tol, "quadrature relative tolerance");
  exact->add_option("--max-subdivisions", s.quad.max_subdivisions, "quadrature panel cap");

  auto* approx = app.add_subcommand("approx", "Gaussian surrogate approximation");
  add_n(approx, true);
  add_m(approx, true);
  add_alpha(approx, true);
  add_rho_options(approx, a);
  add_seed(approx);
  approx->add_option("--target-error", s.target_error, "MVN CDF absolute error target");
  approx->add_option("--reading", reading, "covariance density reading")
      ->check(CLI::IsMember({"standard", "noise_scaled"}));

  auto* bound = app.add_subcommand("bound", "lower bound valid for every m");
  add_n(bound, true);
  add_alpha(bound, true);
  add_rho_options(bound, a);
  bound->add_option("--theta", s.theta, "fixed angle; optimised over theta when absent");

  auto* distfree = app.add_subcommand("distfree", "distribution-free bounds");
  add_n(distfree, true);
  add_m(distfree, true);
  add_alpha(distfree, true);

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo estimate");
  add_n(simulate, true);
  add_m(simulate, true);
  add_alpha(simulate, true);
  add_rho_options(simulate, a);
  add_seed(simulate)->required();
  simulate->add_option("--replications", s.replications, "number of replications");
  simulate->add_option("--sampler", sampler, "auto, full or order_statistics")
      ->check(CLI::IsMember({"auto", "full", "order_statistics"}));

  auto* plan = app.add_subcommand("plan", "sample size guaranteeing success >= 1 - delta");
  add_alpha(plan, true);
  add_rho_options(plan, a);
  plan->add_option("--delta", delta, "allowed failure probability")->required();

  auto* sw = app.add_subcommand("sweep", "evaluate methods while varying one parameter");
  add_n(sw, false);
  add_m(sw, false);
  add_alpha(sw, false);
  add_rho_options(sw, a);
  sw->add_option("--vary", sweep.vary, "parameter to vary")
      ->required()
      ->check(CLI::IsMember({"n", "m", "alpha", "rho"}));
  sw->add_option("--values", sweep.values, "explicit values")->delimiter(',');
  sw->add_option("--start", sweep.start, "first value");
  sw->add_option("--stop", sweep.stop, "last value");
  sw->add_option("--steps", sweep.steps, "number of values");
  sw->add_option("--scale", sweep.scale, "linear or log")->check(CLI::IsMember({"linear", "log"}));
  sw->add_option("--method", sweep.method, "method or all")
      ->check(CLI::IsMember({"exact", "approx", "bound", "distfree", "simulate", "all"}));
  add_seed(sw);
  sw->add_option("--replications", s.replications, "replications for simulate");
  sw->add_option("--theta", s.theta, "fixed angle for bound");

  auto* table1 = app.add_subcommand("table1", "sample sizes over the rho x delta grid");
  table1->add_option("--alpha", a.alpha, "acceptable fraction")->default_val(0.01);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "ordopt: " << e.what() << '\n';
    return 2;
  }

  try {
    if (workers_opt->count() == 0) s.workers = workers_from_env();
    s.has_seed = false;
    for (auto* c : {approx, simulate, sw})
      if (c->parsed() && c->count("--seed") > 0) s.has_seed = true;
    s.reading = reading == "noise_scaled" ? DensityReading::noise_scaled : DensityReading::standard;
    s.sampler = sampler == "full"               ? McSampler::full
                : sampler == "order_statistics" ? McSampler::order_statistics
                                                : McSampler::automatic;
    if (sw->parsed() && !a.rho && !a.xi2) a.rho = 0.6;

    std::vector<Json> records;
    if (exact->parsed()) records.push_back(run_exact(a, s));
    if (approx->parsed()) records.push_back(run_approx(a, s));
    if (bound->parsed()) records.push_back(run_bound(a, s));
    if (distfree->parsed()) records.push_back(run_distfree(a));
    if (simulate->parsed()) records.push_back(run_simulate(a, s));
    if (plan->parsed()) records.push_back(run_plan(a.alpha, resolve_rho(a), delta, a.xi2));
    if (sw->parsed()) records = run_sweep(a, sweep, s);
    if (table1->parsed()) {
      for (double rho : {0.01, 0.3, 0.6, 0.9, 0.99})
        for (double d : {0.01, 0.05, 0.1}) records.push_back(run_plan(a.alpha, rho, d, std::nullopt));
    }

    if (csv) {
      write_csv(records, out);
    } else {
      write_json(records, out);
    }
    return 0;
  } catch (const UsageError& e) {
    err << "ordopt: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "ordopt: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "ordopt: numerical failure: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace ordopt::cli
