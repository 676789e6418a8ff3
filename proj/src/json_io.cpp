#include "liouville/json_io.hpp"

#include "liouville/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace liouville {

std::string shortest(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json json_number(double v) {
  if (std::isfinite(v)) return v;
  return shortest(v);
}

Json envelope(const std::string& kind, const Json& body) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["report"] = kind;
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

Json to_json(const HypothesisCheck& c) {
  Json j;
  j["id"] = c.id;
  j["status"] = std::string(to_string(c.status));
  j["witness"] = c.witness ? json_number(*c.witness) : Json(nullptr);
  j["note"] = c.note;
  return j;
}

Json to_json(const HypothesisReport& r) {
  Json j;
  j["passed"] = r.passed();
  j["sampled"] = r.sampled;
  j["grid"] = r.grid;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  return j;
}

Json to_json(const KOReport& r, bool with_segments) {
  Json j;
  j["classification"] = std::string(to_string(r.classification));
  j["value"] = json_number(r.value);
  j["error_estimate"] = json_number(r.error_estimate);
  j["tail_estimate"] = json_number(r.tail_estimate);
  j["tail_model"] = r.tail_model;
  j["tail_exponent"] = json_number(r.tail_exponent);
  j["tail_classification"] = std::string(to_string(r.tail_classification));
  j["endpoint"] = std::string(to_string(r.endpoint));
  j["endpoint_value"] = json_number(r.endpoint_value);
  j["segments_used"] = r.segments_used;
  j["integrand"] = r.integrand;
  j["note"] = r.note;
  if (with_segments) {
    auto segs = [](const std::vector<KOSegment>& list) {
      Json a = Json::array();
      for (const auto& s : list)
        a.push_back({{"lo", json_number(s.lo)}, {"hi", json_number(s.hi)}, {"sum", json_number(s.sum)},
                     {"error", json_number(s.error)}});
      return a;
    };
    j["segments"] = segs(r.segments);
    j["endpoint_segments"] = segs(r.endpoint_segments);
  }
  return j;
}

Json to_json(const FluxClass& f) {
  Json j;
  j["class"] = f.bounded() ? "bounded" : "unbounded";
  j["limit"] = json_number(f.limit);
  j["samples"] = f.samples;
  return j;
}

namespace {

Json trajectory_json(const std::vector<TrajectoryPoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts)
    a.push_back({{"r", json_number(p.r)}, {"phi", json_number(p.phi)}, {"dphi", json_number(p.dphi)},
                 {"w", json_number(p.w)}});
  return a;
}

} // namespace

Json to_json(const BlowupResult& r, bool with_trajectory) {
  Json j;
  j["status"] = std::string(to_string(r.status));
  j["R"] = json_number(r.R);
  j["R_error"] = json_number(r.R_error);
  j["r_end"] = json_number(r.r_end);
  j["phi_end"] = json_number(r.phi_end);
  j["reason"] = r.reason;
  Json crossings = Json::array();
  for (const auto& [k, rr] : r.crossings) crossings.push_back({{"k", k}, {"r", json_number(rr)}});
  j["crossings"] = crossings;
  Json ex = Json::array();
  for (double e : r.extrapolants) ex.push_back(json_number(e));
  j["extrapolants"] = ex;
  j["steps_taken"] = r.steps_taken;
  j["steps_rejected"] = r.steps_rejected;
  j["samples"] = trajectory_json(r.samples);
  if (with_trajectory) j["trajectory"] = trajectory_json(r.trajectory);
  return j;
}

Json to_json(const ComparisonCertificate& c) {
  Json j;
  j["pass"] = c.pass;
  j["hypotheses_hold"] = c.hypotheses_hold;
  j["conclusion_holds"] = c.conclusion_holds;
  j["g_case"] = c.g_case;
  j["epsilon"] = json_number(c.epsilon);
  j["residual_tol"] = json_number(c.residual_tol);
  j["sub_defect"] = json_number(c.sub_defect);
  j["super_excess"] = json_number(c.super_excess);
  j["max_gap"] = json_number(c.max_gap);
  if (c.witness_node) {
    j["witness_node"] = static_cast<long long>(*c.witness_node);
    j["witness_r"] = json_number(c.witness_r);
    j["violation"] = json_number(c.violation);
  } else {
    j["witness_node"] = nullptr;
  }
  j["hypotheses"] = to_json(c.hypotheses);
  return j;
}

Json to_json(const CarnotSuiteReport& r) {
  Json j;
  j["pass"] = r.pass();
  j["n"] = r.n;
  j["Q"] = r.Q;
  j["seed"] = r.seed;
  j["psi_sup"] = json_number(r.psi_sup);
  Json suites = Json::array();
  for (const auto& s : r.suites)
    suites.push_back({{"name", s.name},
                      {"pass", s.pass},
                      {"worst", json_number(s.worst)},
                      {"tolerance", json_number(s.tolerance)},
                      {"samples", s.samples},
                      {"excluded", s.excluded},
                      {"detail", s.detail}});
  j["suites"] = suites;
  return j;
}

Json to_json(const TheoremEvaluation& e) {
  Json j;
  j["theorem"] = e.id;
  j["applied_to"] = e.applied_to;
  j["statement"] = e.statement;
  j["passed"] = e.passed;
  if (e.passed) {
    j["licensed"] = std::string(to_string(e.licensed));
    j["lo"] = json_number(e.lo);
    j["hi"] = json_number(e.hi);
  }
  const HypothesisCheck* fail = e.first_failure();
  j["first_failure"] = fail ? to_json(*fail) : Json(nullptr);
  j["hypotheses"] = to_json(e.checks);
  Json refinements = Json::array();
  for (const auto& c : e.refinements) refinements.push_back(to_json(c));
  j["refinements"] = refinements;
  j["side_conditions"] = e.side_conditions;
  Json ko = Json::array();
  for (const auto& k : e.ko) {
    Json r = to_json(k.report);
    Json entry;
    entry["label"] = k.label;
    for (auto it = r.begin(); it != r.end(); ++it) entry[it.key()] = it.value();
    ko.push_back(entry);
  }
  j["ko_reports"] = ko;
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["conclusion"] = std::string(to_string(v.conclusion));
  j["description"] = v.description;
  j["lo"] = json_number(v.lo);
  j["hi"] = json_number(v.hi);
  j["cited"] = v.cited;
  j["conditional_on_sampled_hypotheses"] = v.sampled;
  j["caveat"] = v.caveat;
  j["alpha"] = v.alpha ? json_number(*v.alpha) : Json(nullptr);
  j["beta"] = v.beta ? json_number(*v.beta) : Json(nullptr);
  j["alpha_beta_auto_detected"] = v.alpha_beta_auto;
  Json flux = v.flux ? to_json(*v.flux) : Json{{"class", "inconclusive"}};
  flux["note"] = v.flux_note;
  j["flux"] = flux;
  Json chain = Json::array();
  for (const auto& e : v.justification) chain.push_back(to_json(e));
  j["justification"] = chain;
  return j;
}

std::string justification_text(const Verdict& v) {
  std::ostringstream os;
  os << "conclusion: " << to_string(v.conclusion) << " (" << v.description << ")\n";
  os << "cited:";
  if (v.cited.empty()) os << " none";
  for (const auto& id : v.cited) os << ' ' << id;
  os << "\ncaveat: " << v.caveat << '\n';
  os << "flux: " << (v.flux ? (v.flux->bounded() ? "bounded" : "unbounded") : "inconclusive") << " ("
     << v.flux_note << ")\n";
  if (v.alpha && v.beta)
    os << "alpha = " << shortest(*v.alpha) << ", beta = " << shortest(*v.beta)
       << (v.alpha_beta_auto ? " (auto-detected from sampled zeros)" : " (supplied)") << '\n';
  for (const auto& e : v.justification) {
    os << "\ntheorem " << e.id << " applied to " << e.applied_to << ": ";
    if (e.passed) {
      os << "hypotheses hold, licenses " << to_string(e.licensed) << " (" << e.statement << ")\n";
    } else {
      const HypothesisCheck* fail = e.first_failure();
      os << "not applicable, first failed hypothesis " << (fail ? fail->id : "?");
      if (fail && !fail->note.empty()) os << " (" << fail->note << ")";
      os << '\n';
    }
    for (const auto& c : e.checks.checks) {
      os << "  " << to_string(c.status) << "  " << c.id;
      if (!c.note.empty()) os << "  " << c.note;
      os << '\n';
    }
    for (const auto& c : e.refinements)
      os << "  refinement " << to_string(c.status) << "  " << c.id << '\n';
    for (const auto& s : e.side_conditions) os << "  unverified  " << s << '\n';
    for (const auto& k : e.ko) {
      os << "  KO " << k.label << ": " << to_string(k.report.classification);
      if (k.report.classification == KOClass::Converges) os << ", value " << shortest(k.report.value);
      os << ", endpoint " << to_string(k.report.endpoint);
      if (!k.report.tail_model.empty()) os << ", tail " << k.report.tail_model;
      os << '\n';
    }
  }
  return os.str();
}

JustificationReport justification_report(const Verdict& v) {
  return JustificationReport{to_json(v).dump(2), justification_text(v)};
}

// ---------------------------------------------------------------------------
// Config readers

ConfigReader::ConfigReader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {
  if (!node_.is_object()) throw ConfigError((path_.empty() ? "/" : path_) + ": expected a JSON object");
}

bool ConfigReader::has(const std::string& key) const { return node_.contains(key); }

const Json& ConfigReader::at(const std::string& key) {
  if (!node_.contains(key)) throw ConfigError(pointer(key) + ": missing required field");
  used_.insert(key);
  return node_.at(key);
}

double ConfigReader::number(const std::string& key) {
  const Json& v = at(key);
  if (!v.is_number()) throw ConfigError(pointer(key) + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(pointer(key) + ": expected a finite number");
  return d;
}

double ConfigReader::number_or(const std::string& key, double fallback) {
  return has(key) ? number(key) : fallback;
}

std::optional<double> ConfigReader::optional_number(const std::string& key) {
  if (!has(key) || node_.at(key).is_null()) {
    used_.insert(key);
    return std::nullopt;
  }
  return number(key);
}

std::string ConfigReader::string(const std::string& key) {
  const Json& v = at(key);
  if (!v.is_string()) throw ConfigError(pointer(key) + ": expected a string");
  return v.get<std::string>();
}

std::string ConfigReader::string_or(const std::string& key, const std::string& fallback) {
  return has(key) ? string(key) : fallback;
}

bool ConfigReader::boolean_or(const std::string& key, bool fallback) {
  if (!has(key)) return fallback;
  const Json& v = at(key);
  if (!v.is_boolean()) throw ConfigError(pointer(key) + ": expected true or false");
  return v.get<bool>();
}

void ConfigReader::finish() const {
  for (auto it = node_.begin(); it != node_.end(); ++it)
    if (!used_.count(it.key())) throw ConfigError(pointer(it.key()) + ": unknown key");
}

namespace {

ScalarFunc parse_function(const std::string& src, const std::string& path) {
  try {
    return ScalarFunc::parse(src);
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

} // namespace

ScalarFunc scalar_func_from_json(const Json& node, const std::string& path) {
  if (node.is_string()) return parse_function(node.get<std::string>(), path);
  ConfigReader r(node, path);
  const std::string kind = r.string("kind");
  ScalarFunc f = ScalarFunc(Constant{0.0});
  if (kind == "power_sign") {
    f = ScalarFunc(PowerSign{r.number_or("c", 1.0), r.number("q")});
  } else if (kind == "power") {
    f = ScalarFunc(Power{r.number_or("c", 1.0), r.number("q")});
  } else if (kind == "log_power") {
    f = ScalarFunc(LogPower{r.number_or("c", 1.0), r.number("q")});
  } else if (kind == "constant") {
    f = ScalarFunc(Constant{r.number("c")});
  } else if (kind == "expr") {
    f = parse_function(r.string("expr"), r.pointer("expr"));
  } else {
    throw ConfigError(r.pointer("kind") + ": unknown function kind '" + kind + "'");
  }
  r.finish();
  return f;
}

namespace {

double read_p(ConfigReader& r) {
  const double p = r.number("p");
  if (!(p > 1.0)) throw ConfigError(r.pointer("p") + ": p must exceed 1, got " + shortest(p));
  return p;
}

DiffusionCoeff parse_coefficient(const std::string& src, const std::string& path) {
  try {
    return DiffusionCoeff::parse(src);
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

} // namespace

DiffusionCoeff diffusion_from_json(const Json& node, const std::string& path) {
  if (node.is_string()) return parse_coefficient(node.get<std::string>(), path);
  ConfigReader r(node, path);
  const std::string kind = r.string("kind");
  std::optional<DiffusionCoeff> A;
  if (kind == "p_laplacian")
    A = DiffusionCoeff(PLaplacian{read_p(r)});
  else if (kind == "mean_curvature")
    A = DiffusionCoeff(MeanCurvature{});
  else if (kind == "log_diffusion")
    A = DiffusionCoeff(LogDiffusion{});
  else if (kind == "expr")
    A = parse_coefficient(r.string("A"), r.pointer("A"));
  else
    throw ConfigError(r.pointer("kind") + ": unknown coefficient kind '" + kind + "'");
  r.finish();
  return *A;
}

DecideConfig decide_config_from_json(const Json& node) {
  ConfigReader r(node, "");
  DecideConfig cfg;
  ProblemSpec& spec = cfg.spec;

  ConfigReader op(r.at("operator"), "/operator");
  const std::string kind = op.string("kind");
  if (kind == "p_laplacian") {
    spec.op = ProblemSpec::Operator::PLaplacian;
    spec.p = read_p(op);
  } else if (kind == "mean_curvature") {
    spec.op = ProblemSpec::Operator::MeanCurvature;
  } else if (kind == "general") {
    spec.op = ProblemSpec::Operator::General;
    spec.A = diffusion_from_json(op.at("A"), op.pointer("A"));
  } else {
    throw ConfigError(op.pointer("kind") + ": unknown operator kind '" + kind + "'");
  }
  op.finish();

  spec.f = scalar_func_from_json(r.at("f"), "/f");

  ConfigReader setting(r.at("setting"), "/setting");
  const std::string skind = setting.string("kind");
  std::string dim_key;
  if (skind == "euclidean") {
    spec.setting = ProblemSpec::Setting::Euclidean;
    dim_key = "N";
  } else if (skind == "carnot") {
    spec.setting = ProblemSpec::Setting::Carnot;
    dim_key = "Q";
  } else {
    throw ConfigError(setting.pointer("kind") + ": unknown setting '" + skind + "'");
  }
  spec.dim = setting.number(dim_key);
  if (!(spec.dim > 1.0))
    throw ConfigError(setting.pointer(dim_key) + ": " + dim_key + " must exceed 1, got " + shortest(spec.dim));
  setting.finish();

  const std::string relation = r.string_or("relation", "inequality");
  if (relation == "inequality")
    spec.relation = ProblemSpec::Relation::Inequality;
  else if (relation == "equation")
    spec.relation = ProblemSpec::Relation::Equation;
  else
    throw ConfigError(r.pointer("relation") + ": expected \"inequality\" or \"equation\"");

  cfg.alpha = r.optional_number("alpha");
  cfg.beta = r.optional_number("beta");
  if (cfg.alpha && cfg.beta && *cfg.alpha > *cfg.beta) throw ConfigError("/alpha: alpha exceeds beta");
  r.finish();
  return cfg;
}

BlowupConfig blowup_config_from_json(const Json& node) {
  ConfigReader r(node, "");
  BlowupConfig cfg;
  RadialProblem& prob = cfg.problem;
  prob.A = diffusion_from_json(r.at("A"), "/A");
  prob.D = r.number("D");
  if (!(prob.D > 1.0)) throw ConfigError("/D: D must exceed 1, got " + shortest(prob.D));
  prob.g = scalar_func_from_json(r.at("g"), "/g");
  prob.a = r.number("a");
  if (!(prob.a > 0.0)) throw ConfigError("/a: a must be positive, got " + shortest(prob.a));
  BlowupOptions& o = cfg.options;
  o.r0 = r.number_or("r0", o.r0);
  o.rel_tol = r.number_or("rel_tol", o.rel_tol);
  o.abs_tol = r.number_or("abs_tol", o.abs_tol);
  o.cap = r.number_or("cap", o.cap);
  o.r_max = r.number_or("r_max", o.r_max);
  o.record_trajectory = r.boolean_or("trajectory", false);
  if (r.has("sample_radii")) {
    const Json& s = r.at("sample_radii");
    if (!s.is_array()) throw ConfigError("/sample_radii: expected an array of numbers");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s[i].is_number()) throw ConfigError("/sample_radii/" + std::to_string(i) + ": expected a number");
      o.sample_radii.push_back(s[i].get<double>());
    }
  }
  if (!(o.r0 > 0.0)) throw ConfigError("/r0: r0 must be positive");
  if (!(o.rel_tol > 0.0)) throw ConfigError("/rel_tol: rel_tol must be positive");
  if (!(o.abs_tol > 0.0)) throw ConfigError("/abs_tol: abs_tol must be positive");
  if (!(o.r_max > o.r0)) throw ConfigError("/r_max: r_max must exceed r0");
  r.finish();
  return cfg;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(source + ": malformed JSON: " + e.what());
  }
}

} // namespace liouville
