#include <doctest.h>

#include "liouville/errors.hpp"
#include "liouville/json_io.hpp"
#include "liouville/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <string>

using namespace liouville;

namespace {

ProblemSpec plap(double p, ScalarFunc f, double N, ProblemSpec::Relation rel) {
  ProblemSpec s;
  s.p = p;
  s.f = std::move(f);
  s.dim = N;
  s.relation = rel;
  return s;
}

ProblemSpec mean_equation(ScalarFunc f) {
  ProblemSpec s;
  s.op = ProblemSpec::Operator::MeanCurvature;
  s.f = std::move(f);
  s.dim = 3;
  s.relation = ProblemSpec::Relation::Equation;
  return s;
}

bool cites(const Verdict& v, const std::string& id) {
  return std::find(v.cited.begin(), v.cited.end(), id) != v.cited.end();
}

const TheoremEvaluation* find_eval(const Verdict& v, const std::string& id, const std::string& applied = "f") {
  for (const auto& e : v.justification)
    if (e.id == id && e.applied_to == applied) return &e;
  return nullptr;
}

void check_mirrored(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) {
    CHECK(a == -b);
  } else {
    CHECK(a == doctest::Approx(-b).epsilon(1e-9).scale(1.0));
  }
}

} // namespace

TEST_CASE("golden scenarios produce the expected conclusion and theorem") {
  for (const auto& sc : golden_verdict_scenarios()) {
    CAPTURE(sc.name);
    const Verdict v = decide(sc.spec);
    CHECK(to_string(v.conclusion) == to_string(sc.expected));
    if (!sc.theorem.empty()) CHECK(cites(v, sc.theorem));
    CHECK(v.sampled);
    if (v.conclusion != Conclusion::NoConclusion) {
      REQUIRE_FALSE(v.cited.empty());
      for (const auto& id : v.cited) {
        bool some_passed = false;
        for (const auto& e : v.justification)
          if (e.id == id && e.passed && e.checks.passed()) some_passed = true;
        CHECK(some_passed);
      }
    }
  }
}

TEST_CASE("zero-only report carries two converging integral reports") {
  const Verdict v = decide(plap(2, ScalarFunc(PowerSign{-1, 3}), 3, ProblemSpec::Relation::Equation));
  REQUIRE(v.conclusion == Conclusion::ZeroOnly);
  const TheoremEvaluation* e = find_eval(v, "th:eqp");
  REQUIRE(e != nullptr);
  CHECK(e->passed);
  REQUIRE(e->ko.size() == 2);
  for (const auto& k : e->ko) CHECK(k.report.classification == KOClass::Converges);
  const auto report = justification_report(v);
  const Json j = Json::parse(report.json);
  CHECK(j["conclusion"] == "ZeroOnly");
  CHECK(j["conditional_on_sampled_hypotheses"] == true);
  CHECK(report.text.find("theorem th:eqp applied to f: hypotheses hold") != std::string::npos);
}

TEST_CASE("no-conclusion report names the first failed hypothesis of every candidate") {
  const Verdict v = decide(plap(3, ScalarFunc::parse("max(-t, 0)^2"), 3, ProblemSpec::Relation::Inequality));
  REQUIRE(v.conclusion == Conclusion::NoConclusion);
  CHECK(v.cited.empty());
  REQUIRE(v.justification.size() == 3);
  for (const auto& e : v.justification) {
    CAPTURE(e.id);
    CHECK_FALSE(e.passed);
    REQUIRE(e.first_failure() != nullptr);
  }
  CHECK(find_eval(v, "th:disp")->first_failure()->id == "f/positive");
  CHECK(find_eval(v, "th:main")->first_failure()->id == "dis:naiusa/left of -1");
  const auto text = justification_report(v).text;
  CHECK(text.find("first failed hypothesis dis:naiusa/left of -1") != std::string::npos);
}

TEST_CASE("constant-only report cites cor:liouv and shows p and N") {
  const Verdict v = decide(plap(3, ScalarFunc::parse("max(-t, 0)^3"), 2, ProblemSpec::Relation::Inequality));
  REQUIRE(v.conclusion == Conclusion::ConstantOnly);
  CHECK(cites(v, "cor:liouv"));
  CHECK(v.lo == 0.0);
  CHECK(std::isinf(v.hi));
  const auto text = justification_report(v).text;
  CHECK(text.find("p>=N  p = 3, N = 2") != std::string::npos);
}

TEST_CASE("positive right half-line turns the Liouville case into nonexistence") {
  const Verdict v = decide(plap(3, ScalarFunc::parse("max(-t, 0)^3 + 1"), 2, ProblemSpec::Relation::Inequality));
  CHECK(v.conclusion == Conclusion::NoSolutions);
  CHECK(cites(v, "cor:liouv"));
}

TEST_CASE("monotone strength over a positive non-increasing family") {
  double previous = INFINITY;
  for (double c : {0.25, 1.0, 4.0, 16.0}) {
    CAPTURE(c);
    const ScalarFunc f = ScalarFunc::parse("max(-t, 0)^2");
    const ScalarFunc fc = ScalarFunc::from_callable([f, c](double t) { return c + f(t); }, "c + max(-t, 0)^2");
    const Verdict v = decide(plap(2, fc, 3, ProblemSpec::Relation::Inequality));
    CHECK(v.conclusion == Conclusion::NoSolutions);
    CHECK(cites(v, "th:disp"));
    const TheoremEvaluation* e = find_eval(v, "th:disp");
    REQUIRE(e != nullptr);
    REQUIRE(e->ko.size() == 1);
    CHECK(e->ko[0].report.value < previous);
    previous = e->ko[0].report.value;
  }
}

TEST_CASE("reflection duality for the mean curvature equation") {
  const char* family[] = {
      "max(-1 - t, 0) - max(t - 1, 0)",  // zeros on [-1, 1]
      "1 - t",
      "exp(-t) - 2",
      "3*max(0, 1 - abs(t)) - t",        // not monotone, one zero
      "1",
      "-1",
      "max(-t, 0)",                      // zeros on [0, inf)
      "t",
  };
  for (const char* src : family) {
    CAPTURE(src);
    const ScalarFunc f = ScalarFunc::parse(src);
    const Verdict v = decide(mean_equation(f));
    const Verdict w = decide(mean_equation(f.mirrored()));
    CHECK(to_string(v.conclusion) == to_string(w.conclusion));
    if (v.conclusion == Conclusion::BoundedIn || v.conclusion == Conclusion::ConstantOnly) {
      check_mirrored(v.lo, w.hi);
      check_mirrored(v.hi, w.lo);
    }
  }
}

TEST_CASE("mean curvature equation outcomes") {
  CHECK(decide(mean_equation(ScalarFunc::parse("1 - t"))).conclusion == Conclusion::ConstantOnly);
  const Verdict none = decide(mean_equation(ScalarFunc(Constant{-1})));
  CHECK(none.conclusion == Conclusion::NoSolutions);
  CHECK(cites(none, "th:meaneq"));
  const Verdict open = decide(mean_equation(ScalarFunc::parse("t")));
  CHECK(open.conclusion == Conclusion::NoConclusion);
  const TheoremEvaluation* meaneq = find_eval(open, "th:meaneq");
  REQUIRE(meaneq != nullptr);
  CHECK_FALSE(meaneq->side_conditions.empty());
}

TEST_CASE("two-sided bound from auto-detected and supplied levels") {
  const ScalarFunc f = ScalarFunc::parse("max(-1 - t, 0)^3 - max(t - 1, 0)^3");
  const Verdict v = decide(plap(2, f, 3, ProblemSpec::Relation::Equation));
  CHECK(v.conclusion == Conclusion::BoundedIn);
  CHECK(cites(v, "th:eqpbd"));
  CHECK(v.alpha_beta_auto);
  CHECK(v.lo == doctest::Approx(-1));
  CHECK(v.hi == doctest::Approx(1));

  const Verdict s = decide(plap(2, f, 3, ProblemSpec::Relation::Equation), -2.0, 1.5);
  CHECK(s.conclusion == Conclusion::BoundedIn);
  CHECK_FALSE(s.alpha_beta_auto);
  CHECK(s.lo == -2.0);
  CHECK(s.hi == 1.5);

  const Verdict bad = decide(plap(2, f, 3, ProblemSpec::Relation::Equation), 0.0, 1.0);
  const TheoremEvaluation* e = find_eval(bad, "th:eqpbd");
  REQUIRE(e != nullptr);
  CHECK_FALSE(e->passed);
}

TEST_CASE("general coefficients split by flux class") {
  ProblemSpec s;
  s.op = ProblemSpec::Operator::General;
  s.A = DiffusionCoeff(LogDiffusion{});
  s.f = ScalarFunc::parse("max(-t, 0)^3");
  s.dim = 3;
  const Verdict v = decide(s);
  CHECK(v.conclusion == Conclusion::Nonnegative);
  CHECK(cites(v, "th:maingen"));
  REQUIRE(v.flux.has_value());
  CHECK_FALSE(v.flux->bounded());

  s.A = DiffusionCoeff::parse("1/sqrt(1 + t^2)");
  s.f = ScalarFunc(Constant{1});
  const Verdict b = decide(s);
  CHECK(b.conclusion == Conclusion::NoSolutions);
  CHECK(cites(b, "th:eqmeanbdA"));
  REQUIRE(b.flux.has_value());
  CHECK(b.flux->bounded());
}

TEST_CASE("bounded flux needs no integral condition for the sign conclusion") {
  ProblemSpec s;
  s.op = ProblemSpec::Operator::MeanCurvature;
  s.f = ScalarFunc::parse("max(-t, 0)^0.5 - max(t, 0)");
  s.dim = 3;
  const Verdict v = decide(s);
  CHECK(cites(v, "th:euclmean"));
  CHECK(v.conclusion == Conclusion::Nonnegative);
}

TEST_CASE("Heisenberg setting covers the p-Laplacian only") {
  ProblemSpec s;
  s.op = ProblemSpec::Operator::MeanCurvature;
  s.setting = ProblemSpec::Setting::Carnot;
  s.dim = 4;
  s.f = ScalarFunc(Constant{1});
  const Verdict v = decide(s);
  CHECK(v.conclusion == Conclusion::NoConclusion);
  CHECK(v.justification.empty());
  CHECK(v.description.find("Carnot") != std::string::npos);
}

TEST_CASE("invalid problems are rejected") {
  CHECK_THROWS_AS(decide(plap(1.0, ScalarFunc(Constant{1}), 3, ProblemSpec::Relation::Inequality)),
                  InvalidProblem);
  CHECK_THROWS_AS(decide(plap(2.0, ScalarFunc(Constant{1}), 1, ProblemSpec::Relation::Inequality)),
                  InvalidProblem);
  ProblemSpec s;
  s.op = ProblemSpec::Operator::General;
  CHECK_THROWS_AS(decide(s), InvalidProblem);
}

TEST_CASE("strength ranks follow the declared order") {
  CHECK(strength_rank(Conclusion::NoSolutions) < strength_rank(Conclusion::ZeroOnly));
  CHECK(strength_rank(Conclusion::ZeroOnly) < strength_rank(Conclusion::ConstantOnly));
  CHECK(strength_rank(Conclusion::ConstantOnly) < strength_rank(Conclusion::BoundedIn));
  CHECK(strength_rank(Conclusion::BoundedIn) < strength_rank(Conclusion::NonnegativeAndPositiveOrZero));
  CHECK(strength_rank(Conclusion::NonnegativeAndPositiveOrZero) < strength_rank(Conclusion::Nonnegative));
  CHECK(strength_rank(Conclusion::Nonnegative) < strength_rank(Conclusion::NoConclusion));
}
