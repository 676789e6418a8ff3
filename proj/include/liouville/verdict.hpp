#pragma once

// Decision engine: runs the hypothesis audits and integral classifications of
// every applicable positivity / Liouville theorem for a problem
//
//   -div(A(|grad u|) grad u) >= f(u)   or   = f(u)   on R^N (or a Carnot group),
//
// and reports the strongest conclusion licensed by a theorem whose sampled
// hypotheses all passed.

#include "liouville/ko_conditions.hpp"
#include "liouville/nonlinearity.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace liouville {

struct ProblemSpec {
  enum class Operator { PLaplacian, MeanCurvature, General };
  enum class Setting { Euclidean, Carnot };
  enum class Relation { Inequality, Equation };

  Operator op = Operator::PLaplacian;
  double p = 2.0;                   ///< PLaplacian only
  std::optional<DiffusionCoeff> A;  ///< General only
  ScalarFunc f = ScalarFunc(Constant{0.0});
  Setting setting = Setting::Euclidean;
  double dim = 3.0;                 ///< N (Euclidean) or Q (Carnot)
  Relation relation = Relation::Inequality;
};

/// Throws InvalidProblem when p <= 1, dim <= 1 or a General operator has no A.
void validate(const ProblemSpec& spec);

enum class Conclusion {
  NoSolutions,
  ZeroOnly,
  ConstantOnly,
  BoundedIn,
  NonnegativeAndPositiveOrZero,
  Nonnegative,
  NoConclusion
};

std::string_view to_string(Conclusion c);
/// 0 for NoSolutions up to 6 for NoConclusion.
int strength_rank(Conclusion c);

struct LabelledKO {
  std::string label;
  KOReport report;
};

struct TheoremEvaluation {
  std::string id;
  std::string applied_to = "f";  ///< "f" or "-f(-t)" (v = -u solves the reflected equation)
  std::string statement;         ///< conclusion the theorem yields when its hypotheses hold
  HypothesisReport checks;
  std::vector<LabelledKO> ko;
  std::vector<std::string> side_conditions;  ///< hypotheses the engine cannot verify
  /// Optional checks that strengthen the conclusion when they pass; they never
  /// disqualify the theorem.
  std::vector<HypothesisCheck> refinements;
  bool passed = false;
  Conclusion licensed = Conclusion::NoConclusion;  ///< already mapped back to u
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  const HypothesisCheck* first_failure() const { return checks.first_failure(); }
};

struct Verdict {
  Conclusion conclusion = Conclusion::NoConclusion;
  /// BoundedIn: lo <= u <= hi.  ConstantOnly: u = const with the constant in [lo, hi]
  /// among the zeros of f.  Infinite ends mean one-sided information.
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  std::string description;
  std::vector<std::string> cited;  ///< theorem ids licensing the conclusion
  std::vector<TheoremEvaluation> justification;
  std::optional<FluxClass> flux;
  std::string flux_note;
  std::optional<double> alpha;
  std::optional<double> beta;
  bool alpha_beta_auto = false;
  bool sampled = true;
  std::string caveat = "conditional on sampled hypotheses";
};

/// alpha, beta are the (cond:fodd) levels; when absent they are auto-detected
/// as the outermost sampled zeros of f.
Verdict decide(const ProblemSpec& spec, std::optional<double> alpha = std::nullopt,
               std::optional<double> beta = std::nullopt);

struct JustificationReport {
  std::string json;  ///< machine-readable, pretty printed
  std::string text;  ///< human-readable theorem chain
};

JustificationReport justification_report(const Verdict& v);

/// Reference problems with the conclusion and theorem id each must produce.
struct VerdictScenario {
  std::string name;
  ProblemSpec spec;
  Conclusion expected = Conclusion::NoConclusion;
  std::string theorem;  ///< empty for NoConclusion
};

std::vector<VerdictScenario> golden_verdict_scenarios();

} // namespace liouville
