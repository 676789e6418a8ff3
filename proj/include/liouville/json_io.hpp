#pragma once

// JSON rendering of every report type, strict config readers (unknown keys are
// rejected with a JSON pointer to the offending field) and shortest
// round-trip number formatting for CSV output.

#include "liouville/carnot.hpp"
#include "liouville/comparison.hpp"
#include "liouville/ko_conditions.hpp"
#include "liouville/radial_ode.hpp"
#include "liouville/verdict.hpp"

#include <json.hpp>

#include <optional>
#include <set>
#include <string>

namespace liouville {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// Shortest decimal string that reads back to exactly v; "inf", "-inf", "nan" otherwise.
std::string shortest(double v);

/// Finite values as numbers, non-finite ones as the strings of `shortest`.
Json json_number(double v);

/// {"schema_version": "1", "report": kind} followed by the members of body.
Json envelope(const std::string& kind, const Json& body);

Json to_json(const HypothesisCheck& c);
Json to_json(const HypothesisReport& r);
Json to_json(const KOReport& r, bool with_segments = false);
Json to_json(const FluxClass& f);
Json to_json(const BlowupResult& r, bool with_trajectory = false);
Json to_json(const ComparisonCertificate& c);
Json to_json(const CarnotSuiteReport& r);
Json to_json(const TheoremEvaluation& e);
Json to_json(const Verdict& v);

std::string justification_text(const Verdict& v);

/// Read-only view of a JSON object that remembers which keys were consumed.
class ConfigReader {
public:
  ConfigReader(const Json& node, std::string path);

  bool has(const std::string& key) const;
  const Json& at(const std::string& key);
  double number(const std::string& key);
  double number_or(const std::string& key, double fallback);
  std::optional<double> optional_number(const std::string& key);
  std::string string(const std::string& key);
  std::string string_or(const std::string& key, const std::string& fallback);
  bool boolean_or(const std::string& key, bool fallback);
  std::string pointer(const std::string& key) const { return path_ + "/" + key; }
  const std::string& path() const { return path_; }

  /// ConfigError naming the first key that was never read.
  void finish() const;

private:
  const Json& node_;
  std::string path_;
  std::set<std::string> used_;
};

/// "expression" or {"kind": "power_sign"|"power"|"log_power"|"constant", "c", "q"}.
ScalarFunc scalar_func_from_json(const Json& node, const std::string& path);
/// {"kind": "p_laplacian", "p"} | {"kind": "mean_curvature"} | {"kind": "log_diffusion"}
/// | {"kind": "expr", "A": "expression"}, or a bare expression string.
DiffusionCoeff diffusion_from_json(const Json& node, const std::string& path);

struct DecideConfig {
  ProblemSpec spec;
  std::optional<double> alpha;
  std::optional<double> beta;
};
/// {"operator": {"kind": "p_laplacian", "p"} | {"kind": "mean_curvature"} |
///  {"kind": "general", "A": coefficient}, "f": function,
///  "setting": {"kind": "euclidean", "N"} | {"kind": "carnot", "Q"},
///  "relation": "inequality" | "equation", "alpha"?, "beta"?}
DecideConfig decide_config_from_json(const Json& node);

/// {"A": coefficient, "D", "g": function, "a"} plus optional integrator settings.
struct BlowupConfig {
  RadialProblem problem;
  BlowupOptions options;
};
BlowupConfig blowup_config_from_json(const Json& node);

/// Parses text as JSON; ConfigError with the parser message on malformed input.
Json parse_json(const std::string& text, const std::string& source);

} // namespace liouville
