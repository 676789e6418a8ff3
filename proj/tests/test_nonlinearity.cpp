#include <doctest.h>

#include "liouville/errors.hpp"
#include "liouville/nonlinearity.hpp"

#include <cmath>

using namespace liouville;

TEST_CASE("builtin scalar functions") {
  CHECK(ScalarFunc(PowerSign{2, 3})(-2) == -16);
  CHECK(ScalarFunc(PowerSign{2, 3})(0) == 0);
  CHECK(ScalarFunc(Power{1, 2})(-3) == 9);
  CHECK(ScalarFunc(LogPower{1, 2})(-(std::exp(1.0) - 1)) == doctest::Approx(1));
  CHECK(ScalarFunc(Constant{4})(123) == 4);
}

TEST_CASE("affine views compose") {
  const ScalarFunc f = ScalarFunc::parse("t + t^2");
  CHECK(f.reflected()(2) == f(-2));
  CHECK(f.mirrored()(2) == -f(-2));
  CHECK(f.scaled(3)(1.5) == 3 * f(1.5));
  CHECK(f.shifted(1)(2) == f(3));
  CHECK(f.mirrored().mirrored()(1.25) == f(1.25));
  CHECK(f.reflected().shifted(1)(2) == f(-3));
}

TEST_CASE("condition (cond:f) audits") {
  CHECK(check_condition_f(ScalarFunc::parse("-t")).passed());
  CHECK(check_condition_f(ScalarFunc::parse("abs(t)^2")).passed());
  CHECK(check_condition_f(ScalarFunc::parse("exp(-t)")).passed());

  CHECK(check_condition_f(ScalarFunc(Constant{1})).passed());
  CHECK_FALSE(check_condition_f(ScalarFunc::parse("max(-t - 3, 0)")).passed());

  const auto sine = check_condition_f(ScalarFunc::from_callable([](double t) { return std::sin(t); }, "sin(t)"));
  CHECK_FALSE(sine.passed());
  const HypothesisCheck* failure = sine.first_failure();
  REQUIRE(failure != nullptr);
  REQUIRE(failure->witness.has_value());
  CHECK(*failure->witness == doctest::Approx(-M_PI).epsilon(2e-3));
}

TEST_CASE("reflection relates (cond:f) to a right half-line check") {
  for (const char* src : {"-t", "abs(t)^2", "exp(-t)", "1 + t"}) {
    const ScalarFunc f = ScalarFunc::parse(src);
    const ScalarFunc g = f.reflected();
    const auto right = right_of(0.0);
    const bool direct = check_condition_f(f).passed();
    const bool via_g = check_sign(g, right, SignRequirement::Positive, 0.0, "g").status == CheckStatus::Pass &&
                       check_non_decreasing(g, right, 0.0, "g").status == CheckStatus::Pass;
    CHECK(direct == via_g);
  }
}

TEST_CASE("condition (cond:fodd) audits") {
  CHECK(check_condition_fodd(ScalarFunc(PowerSign{-1, 2}), 0, 0).passed());
  CHECK(check_condition_fodd(ScalarFunc::parse("-t"), -1, 1).passed());
  const auto constant = check_condition_fodd(ScalarFunc(Constant{1}), -1, 1);
  CHECK_FALSE(constant.passed());
  CHECK(constant.first_failure()->id == "cond:fodd/right-negative");
  CHECK(constant.first_failure()->witness.has_value());
  CHECK_THROWS_AS(check_condition_fodd(ScalarFunc::parse("-t"), 1, -1), InvalidInterval);
}

TEST_CASE("every fail carries a witness") {
  for (const char* src : {"t", "t^2", "1 + sign(t + 5)", "min(t + 2, 0)"}) {
    const auto report = check_condition_f(ScalarFunc::parse(src));
    for (const auto& c : report.checks)
      if (c.status == CheckStatus::Fail) CHECK(c.witness.has_value());
  }
}

TEST_CASE("diffusion coefficients and their fluxes") {
  const DiffusionCoeff plap{PLaplacian{3}};
  CHECK(plap(2) == 2);
  CHECK(plap.flux(-2) == -4);
  CHECK(plap.flux_inverse(4) == doctest::Approx(2));
  CHECK(plap.flux_derivative(2) == doctest::Approx(4));

  const DiffusionCoeff mc{MeanCurvature{}};
  CHECK(mc.flux_inverse(mc.flux(3.5)) == doctest::Approx(3.5).epsilon(1e-12));
  CHECK_THROWS_AS(mc.flux_inverse(1.0), DomainError);

  const DiffusionCoeff logd{LogDiffusion{}};
  CHECK(logd(0) == 1);
  CHECK(logd.flux(1) == doctest::Approx(std::log(2.0)));
  CHECK(logd.flux_inverse(std::log(2.0)) == doctest::Approx(1));

  const DiffusionCoeff expr = DiffusionCoeff::parse("1/sqrt(1+t^2)");
  for (double y : {1e-6, 0.3, 0.9, 0.999}) CHECK(expr.flux_inverse(y) == doctest::Approx(mc.flux_inverse(y)).epsilon(1e-10));
  CHECK(expr.flux_derivative(1.0) == doctest::Approx(mc.flux_derivative(1.0)).epsilon(1e-6));
  CHECK_THROWS_AS(DiffusionCoeff(PLaplacian{1.0}), InvalidProblem);
}

TEST_CASE("builtin coefficients satisfy condition (A)") {
  for (double p : {1.1, 1.5, 2.0, 3.0, 5.0}) CHECK(check_condition_A(DiffusionCoeff(PLaplacian{p})).passed());
  CHECK(check_condition_A(DiffusionCoeff(MeanCurvature{})).passed());
  CHECK(check_condition_A(DiffusionCoeff(LogDiffusion{})).passed());
  CHECK_FALSE(check_condition_A(DiffusionCoeff::parse("1/t^2")).passed());
}

TEST_CASE("flux classification") {
  const FluxClass mc = classify_flux(DiffusionCoeff(MeanCurvature{}));
  CHECK(mc.bounded());
  CHECK(mc.limit == doctest::Approx(1).epsilon(1e-9));
  for (double p : {1.1, 1.5, 2.0, 3.0, 5.0}) CHECK_FALSE(classify_flux(DiffusionCoeff(PLaplacian{p})).bounded());
  CHECK_FALSE(classify_flux(DiffusionCoeff(LogDiffusion{})).bounded());
  const FluxClass two = classify_flux(DiffusionCoeff::parse("2/(1+t)"));
  CHECK(two.bounded());
  CHECK(two.limit == doctest::Approx(2).epsilon(1e-8));
}

TEST_CASE("continuity audit") {
  CHECK(check_continuity(ScalarFunc::parse("max(-t, 0)^2")).passed());
  CHECK(check_continuity(ScalarFunc::parse("exp(t)")).passed());
  const auto jump = check_continuity(ScalarFunc::parse("sign(t - 0.5)"));
  CHECK_FALSE(jump.passed());
  CHECK(*jump.first_failure()->witness == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_FALSE(check_continuity(ScalarFunc::parse("ln(t)")).passed());
}

TEST_CASE("zero sets and tail signs") {
  const auto zs = find_zero_set(ScalarFunc::parse("max(-1-t, 0) - max(t-1, 0)"));
  CHECK_FALSE(zs.empty);
  CHECK(zs.first == doctest::Approx(-1));
  CHECK(zs.last == doctest::Approx(1));
  CHECK(find_zero_set(ScalarFunc(Constant{1})).empty);
  const auto cubic = find_zero_set(ScalarFunc::parse("t^3 - 2"));
  CHECK(cubic.first == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));

  CHECK(check_tail_sign(ScalarFunc(Constant{1}), -1, "x").status == CheckStatus::Pass);
  CHECK(check_tail_sign(ScalarFunc::parse("-t"), +1, "x").status == CheckStatus::Pass);
  CHECK(check_tail_sign(ScalarFunc::parse("1 + 1/abs(t)"), -1, "x").status == CheckStatus::Pass);
  CHECK(check_tail_sign(ScalarFunc::parse("1/(1+t^2)"), -1, "x").status == CheckStatus::Fail);
  CHECK(check_tail_sign(ScalarFunc::parse("1/ln(1+abs(t))"), -1, "x").status == CheckStatus::Fail);
  CHECK(check_tail_sign(ScalarFunc(Constant{1}), +1, "x").status == CheckStatus::Fail);
}
