#include "liouville/acceptance.hpp"
#include "liouville/carnot.hpp"
#include "liouville/comparison.hpp"
#include "liouville/comparison_instances.hpp"
#include "liouville/errors.hpp"
#include "liouville/gh_transform.hpp"
#include "liouville/json_io.hpp"
#include "liouville/ko_conditions.hpp"
#include "liouville/radial_ode.hpp"
#include "liouville/verdict.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace liouville;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInconclusive = 2;
constexpr int kExitConfig = 3;
constexpr int kExitNumerical = 4;

struct Globals {
  std::string output;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
};

struct Emitted {
  std::string text;
  int code = kExitOk;
};

Json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

void require_format(const Globals& g, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (g.format == f) return;
  std::string list;
  for (const char* f : allowed) list += std::string(list.empty() ? "" : ", ") + f;
  throw ConfigError("--format: '" + g.format + "' is not available here (use " + list + ")");
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + shortest(row[i]);
    out += '\n';
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

DiffusionCoeff coefficient_flag(const std::string& spec, const std::string& flag) {
  if (spec == "mean_curvature") return DiffusionCoeff(MeanCurvature{});
  if (spec == "log_diffusion") return DiffusionCoeff(LogDiffusion{});
  if (spec.rfind("p_laplacian:", 0) == 0) {
    double p = 0;
    try {
      p = std::stod(spec.substr(12));
    } catch (const std::exception&) {
      throw ConfigError(flag + ": expected p_laplacian:<p>");
    }
    if (!(p > 1)) throw ConfigError(flag + ": p must exceed 1, got " + shortest(p));
    return DiffusionCoeff(PLaplacian{p});
  }
  try {
    return DiffusionCoeff::parse(spec);
  } catch (const Error& e) {
    throw ConfigError(flag + ": " + e.what());
  }
}

ScalarFunc function_flag(const std::string& src, const std::string& flag) {
  try {
    return ScalarFunc::parse(src);
  } catch (const Error& e) {
    throw ConfigError(flag + ": " + e.what());
  }
}

// ko-check ------------------------------------------------------------------

struct KOArgs {
  std::string config;
  std::string f;
  std::optional<double> p;
  std::string A;
  double alpha = -1.0;
  std::optional<double> beta;
};

Emitted run_ko_check(const KOArgs& in, const Globals& g) {
  require_format(g, {"json", "csv"});
  KOArgs a = in;
  std::optional<ScalarFunc> f;
  std::optional<DiffusionCoeff> A;
  if (!a.config.empty()) {
    const Json doc = read_config(a.config);
    ConfigReader r(doc, "");
    f = scalar_func_from_json(r.at("f"), "/f");
    if (r.has("A")) A = diffusion_from_json(r.at("A"), "/A");
    a.p = r.optional_number("p");
    a.alpha = r.number_or("alpha", -1.0);
    a.beta = r.optional_number("beta");
    if (a.p && !(*a.p > 1)) throw ConfigError("/p: p must exceed 1, got " + shortest(*a.p));
    r.finish();
  } else {
    if (a.f.empty()) throw ConfigError("--f: required unless --config is given");
    f = function_flag(a.f, "--f");
    if (!a.A.empty()) A = coefficient_flag(a.A, "--A");
    if (a.p && !(*a.p > 1)) throw ConfigError("--p: p must exceed 1, got " + shortest(*a.p));
  }
  if (A && a.p) throw ConfigError("--p: give either p or a general coefficient A, not both");
  if (!A && !a.p) throw ConfigError("--p: required unless a general coefficient A is given");
  if (a.beta && *a.beta < a.alpha) throw ConfigError("--beta: beta must not be below alpha");

  KOOptions opts;
  if (g.rel_tol) opts.quadrature.rel_tol = *g.rel_tol;
  if (g.abs_tol) opts.quadrature.abs_tol = *g.abs_tol;
  auto classify = [&](const ScalarFunc& fn, double at) {
    return A ? ko_classify_general(fn, *A, at, opts) : ko_classify(fn, *a.p, at, opts);
  };
  std::vector<std::pair<std::string, KOReport>> reports;
  reports.emplace_back("left", classify(*f, a.alpha));
  if (a.beta) reports.emplace_back("right", classify(f->mirrored(), -*a.beta));

  int code = kExitOk;
  for (const auto& [side, r] : reports)
    if (r.classification == KOClass::Inconclusive) code = kExitInconclusive;

  if (g.format == "csv") {
    std::vector<std::vector<double>> rows;
    for (std::size_t s = 0; s < reports.size(); ++s) {
      const auto& r = reports[s].second;
      for (std::size_t k = 0; k < r.segments.size(); ++k) {
        const auto& seg = r.segments[k];
        rows.push_back({static_cast<double>(s), static_cast<double>(k), seg.lo, seg.hi, seg.sum, seg.error});
      }
    }
    return {csv({"side", "k", "lo", "hi", "sum", "error"}, rows), code};
  }
  Json body;
  body["f"] = f->describe();
  if (A)
    body["A"] = A->describe();
  else
    body["p"] = *a.p;
  body["alpha"] = a.alpha;
  body["beta"] = a.beta ? json_number(*a.beta) : Json(nullptr);
  body["classification"] = std::string(to_string(reports.front().second.classification));
  for (const auto& [side, r] : reports) body[side] = to_json(r);
  return {dump(envelope("ko-check", body)), code};
}

// gh ------------------------------------------------------------------------

struct GHArgs {
  std::string A = "p_laplacian:2";
  std::vector<double> T;
};

Emitted run_gh(const GHArgs& a, const Globals& g) {
  require_format(g, {"json", "csv"});
  const DiffusionCoeff A = coefficient_flag(a.A, "--A");
  std::vector<double> T = a.T;
  if (T.empty())
    for (int k = -3; k <= 3; ++k) T.push_back(std::pow(10.0, k));
  for (std::size_t i = 0; i < T.size(); ++i)
    if (!(T[i] > 0)) throw ConfigError("--T: values must be positive, got " + shortest(T[i]));
  std::vector<std::vector<double>> rows;
  for (double t : T) {
    const double H = invert_H(A, t);
    rows.push_back({t, H, compute_G(A, H)});
  }
  if (g.format == "csv") return {csv({"T", "H", "G_of_H"}, rows), kExitOk};
  Json table = Json::array();
  for (const auto& r : rows) table.push_back({{"T", r[0]}, {"H", r[1]}, {"G_of_H", r[2]}});
  Json body;
  body["A"] = A.describe();
  body["values"] = table;
  try {
    const SlopeFit fit = h_slope_fit(A);
    body["h_slope"] = {{"slope", json_number(fit.slope)}, {"residual", json_number(fit.residual)}};
  } catch (const Error& e) {
    body["h_slope"] = {{"error", e.what()}};
  }
  return {dump(envelope("gh", body)), kExitOk};
}

// blowup --------------------------------------------------------------------

void apply_tolerances(BlowupOptions& o, const Globals& g) {
  if (g.rel_tol) o.rel_tol = *g.rel_tol;
  if (g.abs_tol) o.abs_tol = *g.abs_tol;
}

Json problem_json(const RadialProblem& p) {
  return {{"A", p.A.describe()}, {"D", p.D}, {"g", p.g.describe()}, {"a", p.a}};
}

Emitted run_blowup(const std::string& config, const Globals& g) {
  require_format(g, {"json", "csv"});
  if (config.empty()) throw ConfigError("--config: required");
  BlowupConfig cfg = blowup_config_from_json(read_config(config));
  apply_tolerances(cfg.options, g);
  if (g.format == "csv") cfg.options.record_trajectory = true;
  try {
    validate(cfg.problem);
  } catch (const InvalidProblem& e) {
    throw ConfigError(std::string("/g: ") + e.what());
  }
  const BlowupResult r = integrate_blowup(cfg.problem, cfg.options);
  const int code = r.status == BlowupStatus::Inconclusive ? kExitInconclusive : kExitOk;
  if (g.format == "csv") {
    std::vector<std::vector<double>> rows;
    for (const auto& pt : r.trajectory) rows.push_back({pt.r, pt.phi, pt.dphi, pt.w});
    return {csv({"r", "phi", "dphi", "w"}, rows), code};
  }
  Json body;
  body["problem"] = problem_json(cfg.problem);
  const Json result = to_json(r, cfg.options.record_trajectory);
  for (auto it = result.begin(); it != result.end(); ++it) body[it.key()] = it.value();
  return {dump(envelope("blowup", body)), code};
}

Emitted run_blowup_sweep(const std::string& config, unsigned threads, const Globals& g) {
  require_format(g, {"json", "csv"});
  if (config.empty()) throw ConfigError("--config: required");
  Json doc = read_config(config);
  if (!doc.is_object()) throw ConfigError("/: expected a JSON object");
  if (!doc.contains("a_values")) throw ConfigError("/a_values: missing required field");
  const Json values = doc["a_values"];
  if (!values.is_array() || values.empty()) throw ConfigError("/a_values: expected a non-empty array of numbers");
  std::vector<double> as;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string where = "/a_values/" + std::to_string(i);
    if (!values[i].is_number()) throw ConfigError(where + ": expected a number");
    const double a = values[i].get<double>();
    if (!(a > 0)) throw ConfigError(where + ": a must be positive, got " + shortest(a));
    as.push_back(a);
  }
  if (doc.contains("a")) throw ConfigError("/a: use a_values in a sweep");
  doc.erase("a_values");
  doc["a"] = as.front();
  BlowupConfig cfg = blowup_config_from_json(doc);
  apply_tolerances(cfg.options, g);
  cfg.options.record_trajectory = false;
  try {
    validate(cfg.problem);
  } catch (const InvalidProblem& e) {
    throw ConfigError(std::string("/g: ") + e.what());
  }
  const auto sweep = blowup_radius_curve(cfg.problem, as, cfg.options, threads);
  int code = kExitOk;
  for (const auto& e : sweep)
    if (!e.result || e.result->status == BlowupStatus::Inconclusive) code = kExitInconclusive;
  if (g.format == "csv") {
    std::string out = "a,status,R,r_end,phi_end\n";
    for (const auto& e : sweep) {
      out += shortest(e.a) + ",";
      if (e.result)
        out += std::string(to_string(e.result->status)) + "," + shortest(e.result->R) + "," +
               shortest(e.result->r_end) + "," + shortest(e.result->phi_end) + "\n";
      else
        out += "error,nan,nan,nan\n";
    }
    return {out, code};
  }
  Json entries = Json::array();
  for (const auto& e : sweep) {
    Json entry;
    entry["a"] = e.a;
    if (e.result) {
      const Json r = to_json(*e.result);
      for (auto it = r.begin(); it != r.end(); ++it) entry[it.key()] = it.value();
    } else {
      entry["error"] = e.error;
    }
    entries.push_back(entry);
  }
  Json body;
  body["problem"] = problem_json(cfg.problem);
  body["results"] = entries;
  return {dump(envelope("blowup-sweep", body)), code};
}

// compare -------------------------------------------------------------------

Eigen::VectorXd vector_field(ConfigReader& r, const std::string& key) {
  const Json& v = r.at(key);
  if (!v.is_array()) throw ConfigError(r.pointer(key) + ": expected an array of numbers");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(r.pointer(key) + "/" + std::to_string(i) + ": expected a number");
    out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  }
  return out;
}

Emitted run_compare(const std::string& config, const Globals& g) {
  require_format(g, {"json"});
  if (config.empty()) throw ConfigError("--config: required");
  const Json doc = read_config(config);
  ConfigReader r(doc, "");
  ComparisonOptions opts;
  opts.seed = g.seed;
  std::optional<ComparisonInstance> inst;
  std::optional<ScalarFunc> g2;
  const std::string kind = r.string_or("instance", "explicit");
  if (kind == "random") {
    inst = random_comparison_instance(static_cast<std::uint64_t>(r.number_or("instance_seed", 0)));
  } else if (kind == "barrier") {
    inst = blowup_barrier_instance(r.number_or("r_b", 0.9), r.number_or("shift", 0.25),
                                   static_cast<int>(r.number_or("cells", 2000)), r.number_or("lift", 1e-4));
  } else if (kind == "explicit") {
    ComparisonInstance e;
    e.A = diffusion_from_json(r.at("A"), "/A");
    const double D = r.number_or("D", 1.0);
    if (!(D >= 1.0)) throw ConfigError("/D: D must be at least 1, got " + shortest(D));
    const Eigen::VectorXd grid = vector_field(r, "r");
    e.u = DiscreteField{grid, vector_field(r, "u"), D};
    e.v = DiscreteField{grid, vector_field(r, "v"), D};
    e.g = scalar_func_from_json(r.at("g1"), "/g1");
    if (r.has("g2")) g2 = scalar_func_from_json(r.at("g2"), "/g2");
    try {
      validate(e.u);
      validate(e.v);
    } catch (const InvalidProblem& ex) {
      throw ConfigError(std::string("/u: ") + ex.what());
    }
    e.description = "explicit fields";
    inst = std::move(e);
  } else {
    throw ConfigError("/instance: expected \"explicit\", \"random\" or \"barrier\"");
  }
  if (auto eps = r.optional_number("epsilon")) opts.epsilon = *eps;
  opts.random_pairs = static_cast<int>(r.number_or("random_pairs", opts.random_pairs));
  if (opts.random_pairs < 0) throw ConfigError("/random_pairs: must be non-negative");
  r.finish();
  const auto cert = discrete_comparison_check(inst->A, inst->u, inst->v, inst->g, g2 ? *g2 : inst->g, opts);
  Json body;
  body["instance"] = inst->description;
  body["A"] = inst->A.describe();
  body["D"] = inst->u.D;
  body["nodes"] = static_cast<long long>(inst->u.size());
  const Json c = to_json(cert);
  for (auto it = c.begin(); it != c.end(); ++it) body[it.key()] = it.value();
  return {dump(envelope("compare", body)), cert.pass ? kExitOk : kExitInconclusive};
}

// carnot verify --------------------------------------------------------------

std::vector<HPointd> read_points(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open points file");
  std::vector<HPointd> pts;
  std::string line;
  int lineno = 0;
  const int width = 2 * n + 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (lineno == 1) continue;  // header row
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected numbers");
    }
    if (static_cast<int>(vals.size()) != width)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(width) +
                        " columns (x..., y..., t)");
    HPointd p = HPointd::identity(n);
    for (int k = 0; k < width; ++k) p.coord(k) = vals[k];
    pts.push_back(p);
  }
  if (pts.empty()) throw ConfigError(path + ": no points");
  return pts;
}

struct CarnotArgs {
  int n = 1;
  std::string points;
};

Emitted run_carnot_verify(const CarnotArgs& a, const Globals& g) {
  require_format(g, {"json"});
  if (a.n < 1) throw ConfigError("--n: must be at least 1");
  CarnotSuiteOptions opts;
  opts.n = a.n;
  opts.seed = g.seed;
  CarnotSuiteReport report = run_carnot_suite(opts);
  Json body = to_json(report);
  if (!a.points.empty()) {
    const auto pts = read_points(a.points, a.n);
    const auto extra = radial_identity_suites(pts, opts.sublaplacian);
    CarnotSuiteReport supplied{a.n, 2 * a.n + 2, g.seed, report.psi_sup, extra};
    body["supplied_points"] = to_json(supplied)["suites"];
    report.suites.insert(report.suites.end(), extra.begin(), extra.end());
    body["pass"] = report.pass();
  }
  return {dump(envelope("carnot-verify", body)), report.pass() ? kExitOk : kExitInconclusive};
}

// decide --------------------------------------------------------------------

struct DecideArgs {
  std::string config;
  std::optional<double> alpha;
  std::optional<double> beta;
};

Emitted run_decide(const DecideArgs& a, const Globals& g) {
  require_format(g, {"json", "text"});
  if (a.config.empty()) throw ConfigError("--config: required");
  DecideConfig cfg = decide_config_from_json(read_config(a.config));
  if (a.alpha) cfg.alpha = a.alpha;
  if (a.beta) cfg.beta = a.beta;
  if (cfg.alpha && cfg.beta && *cfg.alpha > *cfg.beta) throw ConfigError("--alpha: alpha exceeds beta");
  const Verdict v = decide(cfg.spec, cfg.alpha, cfg.beta);
  const int code = v.conclusion == Conclusion::NoConclusion ? kExitInconclusive : kExitOk;
  if (g.format == "text") return {justification_text(v), code};
  return {dump(envelope("verdict", to_json(v))), code};
}

// selftest ------------------------------------------------------------------

Emitted run_selftest(const Globals& g) {
  require_format(g, {"json", "text"});
  const AcceptanceReport report = run_acceptance(g.seed);
  const int code = report.pass() ? kExitOk : kExitNumerical;
  if (g.format == "json") return {acceptance_json(report), code};
  return {acceptance_table(report), code};
}

int emit(const Emitted& e, const Globals& g) {
  if (g.output.empty()) {
    std::cout << e.text;
  } else {
    std::ofstream out(g.output, std::ios::binary);
    if (!out) throw ConfigError("--output: cannot write " + g.output);
    out << e.text;
  }
  return e.code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keller-Osserman conditions, radial blow-up, comparison, Heisenberg calculus and verdicts"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("-o,--output", g.output, "write the report to this file instead of standard output");
  app.add_option("--format", g.format, "json, csv or text (per subcommand)");
  app.add_option("--seed", g.seed, "seed of all randomized suites");
  app.add_option("--rel-tol", g.rel_tol, "relative tolerance override (integrator and quadrature)")
      ->check(CLI::PositiveNumber);
  app.add_option("--abs-tol", g.abs_tol, "absolute tolerance override (integrator and quadrature)")
      ->check(CLI::PositiveNumber);

  KOArgs ko;
  auto* ko_cmd = app.add_subcommand("ko-check", "classify the Keller-Osserman integral of f");
  ko_cmd->add_option("--config", ko.config, "JSON with f, p or A, alpha, beta");
  ko_cmd->add_option("--f", ko.f, "nonlinearity f(t) as an expression");
  ko_cmd->add_option("--p", ko.p, "p-Laplacian exponent");
  ko_cmd->add_option("--A", ko.A, "general coefficient: mean_curvature, log_diffusion, p_laplacian:<p> or A(t)");
  ko_cmd->add_option("--alpha", ko.alpha, "left level (default -1)");
  ko_cmd->add_option("--beta", ko.beta, "right level; adds the right-hand integral");

  GHArgs gh;
  auto* gh_cmd = app.add_subcommand("gh", "tabulate H = G^{-1} and its asymptotic slope");
  gh_cmd->add_option("--A", gh.A, "coefficient: mean_curvature, log_diffusion, p_laplacian:<p> or A(t)");
  gh_cmd->add_option("--T", gh.T, "values of T (default 1e-3 ... 1e3)")->delimiter(',');

  std::string blowup_config;
  auto* blowup_cmd = app.add_subcommand("blowup", "integrate the radial problem from phi(0) = a");
  blowup_cmd->add_option("--config", blowup_config, "JSON with A, D, g, a and integrator settings");

  std::string sweep_config;
  unsigned threads = 0;
  auto* sweep_cmd = app.add_subcommand("blowup-sweep", "blow-up radius for each a in a_values");
  sweep_cmd->add_option("--config", sweep_config, "JSON with A, D, g, a_values and integrator settings");
  sweep_cmd->add_option("--threads", threads, "worker threads (0: hardware concurrency)");

  std::string compare_config;
  auto* compare_cmd = app.add_subcommand("compare", "discrete comparison certificate for u <= v");
  compare_cmd->add_option("--config", compare_config, "JSON with an explicit, random or barrier instance");

  CarnotArgs carnot_args;
  auto add_carnot_options = [&](CLI::App* cmd) {
    cmd->add_option("--n", carnot_args.n, "Heisenberg group H^n");
    cmd->add_option("--points", carnot_args.points, "CSV of extra points, columns x..., y..., t");
  };
  auto* carnot_verify_cmd = app.add_subcommand("carnot-verify", "Heisenberg property suites");
  add_carnot_options(carnot_verify_cmd);
  auto* carnot_cmd = app.add_subcommand("carnot", "Heisenberg group tools");
  carnot_cmd->require_subcommand(1);
  auto* carnot_verify_sub = carnot_cmd->add_subcommand("verify", "Heisenberg property suites");
  add_carnot_options(carnot_verify_sub);

  DecideArgs decide_args;
  auto* decide_cmd = app.add_subcommand("decide", "strongest conclusion licensed for a problem");
  decide_cmd->add_option("--config", decide_args.config, "problem JSON");
  decide_cmd->add_option("--alpha", decide_args.alpha, "left level for (cond:fodd)");
  decide_cmd->add_option("--beta", decide_args.beta, "right level for (cond:fodd)");

  auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");

  for (auto* cmd : {ko_cmd, gh_cmd, blowup_cmd, sweep_cmd, compare_cmd, carnot_verify_cmd, carnot_cmd,
                    carnot_verify_sub, decide_cmd, selftest_cmd})
    cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    Emitted out;
    if (*ko_cmd)
      out = run_ko_check(ko, g);
    else if (*gh_cmd)
      out = run_gh(gh, g);
    else if (*blowup_cmd)
      out = run_blowup(blowup_config, g);
    else if (*sweep_cmd)
      out = run_blowup_sweep(sweep_config, threads, g);
    else if (*compare_cmd)
      out = run_compare(compare_config, g);
    else if (*carnot_verify_cmd || *carnot_verify_sub)
      out = run_carnot_verify(carnot_args, g);
    else if (*decide_cmd)
      out = run_decide(decide_args, g);
    else if (*selftest_cmd)
      out = run_selftest(g);
    return emit(out, g);
  } catch (const ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidProblem& e) {
    std::cerr << "invalid problem: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FluxMismatch& e) {
    std::cerr << "invalid problem: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidInterval& e) {
    std::cerr << "invalid problem: " << e.what() << '\n';
    return kExitConfig;
  } catch (const GridMismatch& e) {
    std::cerr << "invalid problem: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Inconclusive& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kExitInconclusive;
  } catch (const HypothesisViolation& e) {
    std::cerr << "invalid problem: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
