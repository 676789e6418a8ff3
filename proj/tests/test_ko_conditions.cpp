#include <doctest.h>

#include "liouville/errors.hpp"
#include "liouville/ko_conditions.hpp"

#include <chrono>
#include <cmath>
#include <random>

using namespace liouville;

namespace {

ScalarFunc power(double q) { return ScalarFunc(Power{1, q}); }

} // namespace

TEST_CASE("inner integral against antiderivatives") {
  CHECK(inner_integral(ScalarFunc::parse("abs(t)"), -3, -1) == doctest::Approx(4).epsilon(1e-12));
  CHECK(inner_integral(ScalarFunc::parse("abs(t)^2"), -2, -1) == doctest::Approx(7.0 / 3).epsilon(1e-12));
  CHECK(inner_integral(ScalarFunc::parse("exp(-t)"), -1, 0) == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-12));
  CHECK_THROWS_AS(inner_integral(power(1), 0, -1), InvalidInterval);
}

TEST_CASE("one-sided examples") {
  const KOReport quad = ko_classify(power(2), 2, -1);
  CHECK(quad.classification == KOClass::Converges);
  CHECK(quad.error_estimate <= 1e-6 * quad.value);
  CHECK(ko_classify(power(1), 2, -1).classification == KOClass::Diverges);
  const KOReport ex = ko_classify(ScalarFunc::parse("exp(-t)"), 2, -1);
  CHECK(ex.classification == KOClass::Converges);
  CHECK(std::isfinite(ex.value));
}

TEST_CASE("closed-form value for f = |t|^3, p = 2") {
  // int_{-inf}^{-1} ((t^4 - 1)/4)^{-1/2} dt = 2 int_1^inf (x^4 - 1)^{-1/2} dx = 2 K(1/sqrt 2)/sqrt 2.
  const KOReport r = ko_classify(power(3), 2, -1);
  REQUIRE(r.classification == KOClass::Converges);
  const double k = 1.8540746773013719;  // K(1/sqrt 2)
  CHECK(r.value == doctest::Approx(2 * k / std::sqrt(2.0)).epsilon(1e-7));
}

TEST_CASE("power-law boundary law q > p - 1") {
  for (double p : {1.5, 2.0, 3.0}) {
    for (double dq : {-0.2, 0.0, 0.2}) {
      const double q = p - 1 + dq;
      const auto start = std::chrono::steady_clock::now();
      const KOReport r = ko_classify(power(q), p, -1);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      INFO("p=" << p << " q=" << q << " note=" << r.note);
      CHECK(r.classification == (dq > 0 ? KOClass::Converges : KOClass::Diverges));
      CHECK(secs < 1.0);
      if (dq == 0) CHECK(r.tail_exponent == doctest::Approx(-1).epsilon(1e-6));
    }
  }
}

TEST_CASE("margins of 0.05 around the boundary") {
  for (double p : {1.5, 2.0, 3.0}) {
    CHECK(ko_classify(power(p - 1 + 0.05), p, -1).classification == KOClass::Converges);
    CHECK(ko_classify(power(p - 1 - 0.05), p, -1).classification == KOClass::Diverges);
  }
}

TEST_CASE("diverging reports end on non-decreasing sums") {
  for (double q : {0.5, 1.0}) {
    const KOReport r = ko_classify(power(q), 2, -1);
    REQUIRE(r.classification == KOClass::Diverges);
    const auto& s = r.segments;
    REQUIRE(s.size() >= 8);
    for (std::size_t j = s.size() - 7; j < s.size(); ++j) CHECK(s[j].sum >= s[j - 1].sum * (1 - 1e-12));
  }
}

TEST_CASE("scaling f by c scales the value by c^(-1/p)") {
  for (double c : {0.25, 3.0, 40.0}) {
    const KOReport base = ko_classify(power(2.5), 2, -1);
    const KOReport scaled = ko_classify(power(2.5).scaled(c), 2, -1);
    CHECK(base.classification == scaled.classification);
    CHECK(scaled.value / base.value == doctest::Approx(std::pow(c, -0.5)).epsilon(1e-6));
  }
  const KOReport d1 = ko_classify(power(1), 2, -1);
  const KOReport d2 = ko_classify(power(1).scaled(7), 2, -1);
  CHECK(d1.classification == d2.classification);
}

TEST_CASE("pointwise larger f gives a smaller value") {
  const KOReport small = ko_classify(power(2), 2, -1);
  const KOReport large = ko_classify(ScalarFunc::parse("abs(t)^2 + abs(t)^3"), 2, -1);
  REQUIRE(small.classification == KOClass::Converges);
  REQUIRE(large.classification == KOClass::Converges);
  CHECK(large.value <= small.value + 1e-9);
}

TEST_CASE("hypothesis violations") {
  CHECK_THROWS_AS(ko_classify(ScalarFunc::parse("t + 3"), 2, -1), HypothesisViolation);
  CHECK_THROWS_AS(ko_classify(power(2), 1.0, -1), InvalidProblem);
}

TEST_CASE("two-sided classification") {
  {
    const auto [left, right] = ko_classify_two_sided(ScalarFunc::parse("-t"), 2, 0, 0);
    CHECK(left.classification == KOClass::Diverges);
    CHECK(right.classification == KOClass::Diverges);
  }
  for (double q : {2.0, 3.0}) {
    // At alpha = beta = 0 the inner integral vanishes like |t|^(q+1), so the integrand is not
    // integrable at the endpoint; the tails at infinity converge.
    const auto [left, right] = ko_classify_two_sided(ScalarFunc(PowerSign{-1, q}), 2, 0, 0);
    CHECK(left.tail_classification == KOClass::Converges);
    CHECK(right.tail_classification == KOClass::Converges);
    CHECK(left.endpoint == EndpointBehavior::NonIntegrable);
    CHECK(left.classification == KOClass::Diverges);
  }
  {
    const auto [left, right] = ko_classify_two_sided(ScalarFunc(PowerSign{-1, 3}), 2, -1, 1);
    CHECK(left.classification == KOClass::Converges);
    CHECK(right.classification == KOClass::Converges);
    CHECK(left.value == doctest::Approx(right.value).epsilon(1e-9));
  }
  CHECK_THROWS_AS(ko_classify_two_sided(ScalarFunc::parse("-t"), 2, 1, -1), InvalidInterval);
}

TEST_CASE("endpoint with integrable singularity when f(alpha) = 0") {
  // f = max(-t, 0)^(1/2) near alpha = 0: F ~ d^(3/2), F^(-1/2) ~ d^(-3/4), integrable.
  const KOReport r = ko_classify(ScalarFunc::parse("abs(t)^0.5 + abs(t)^3"), 2, 0);
  CHECK(r.endpoint == EndpointBehavior::Integrable);
  CHECK(r.classification == KOClass::Converges);
}

TEST_CASE("right report matches an independent summation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uq(0.3, 3.5), up(1.3, 3.0), uc(0.5, 2.0), ub(0.5, 2.0);
  // 16-point Gauss-Legendre nodes/weights on [-1, 1] from the table below (positive half).
  const double x[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
                       0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
  const double w[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
                       0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
  for (int i = 0; i < 20; ++i) {
    const double q = uq(rng), p = up(rng), c = uc(rng), beta = ub(rng);
    const ScalarFunc f(PowerSign{-c, q});
    const auto [left, right] = ko_classify_two_sided(f, p, -beta, beta);
    // Direct: int_beta^inf (c (t^(q+1) - beta^(q+1)) / (q+1))^(-1/p) dt over [beta + 2^k, beta + 2^(k+1)].
    auto integrand = [&](double t) {
      return std::pow(c * (std::pow(t, q + 1) - std::pow(beta, q + 1)) / (q + 1), -1 / p);
    };
    INFO("q=" << q << " p=" << p << " c=" << c << " beta=" << beta);
    const std::size_t n = std::min<std::size_t>(right.segments.size(), 12);
    for (std::size_t k = 0; k < n; ++k) {
      const double a = beta + std::ldexp(1.0, static_cast<int>(k)), b = 2 * a - beta;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      double sum = 0;
      for (int j = 0; j < 8; ++j) sum += w[j] * (integrand(mid - half * x[j]) + integrand(mid + half * x[j]));
      CHECK(right.segments[k].sum == doctest::Approx(half * sum).epsilon(1e-8));
    }
    if (std::abs(q - (p - 1)) >= 0.05)
      CHECK(right.classification == (q > p - 1 ? KOClass::Converges : KOClass::Diverges));
  }
}

TEST_CASE("general A") {
  for (double p : {1.5, 2.0, 3.0}) {
    for (double q : {p - 1 - 0.2, p - 1 + 0.3}) {
      const KOReport direct = ko_classify(power(q), p, -1);
      const KOReport general = ko_classify_general(power(q), DiffusionCoeff(PLaplacian{p}), -1);
      CHECK(direct.classification == general.classification);
      if (direct.classification == KOClass::Converges)
        CHECK(general.value == doctest::Approx(direct.value * std::pow((p - 1) / p, 1 / p)).epsilon(1e-6));
    }
  }
  const DiffusionCoeff logd{LogDiffusion{}};
  CHECK(ko_classify_general(power(2), logd, -1).classification == KOClass::Converges);
  const KOReport lp = ko_classify_general(ScalarFunc(LogPower{1, 2}), logd, -1);
  CHECK(lp.classification == KOClass::Converges);
  CHECK(lp.tail_model == "algebraic");
  CHECK(ko_classify_general(ScalarFunc(LogPower{1, 0.5}), logd, -1).classification == KOClass::Diverges);
  CHECK_THROWS_AS(ko_classify_general(power(2), DiffusionCoeff(MeanCurvature{}), -1), FluxMismatch);
}

TEST_CASE("porous-medium variant") {
  for (double q : {0.8, 1.0, 1.5, 2.5}) {
    const KOReport porous = ko_classify_porous(power(q), 1, -1);
    const KOReport plain = ko_classify(power(q), 2, -1);
    CHECK(porous.classification == plain.classification);
  }
  CHECK(ko_classify_porous(power(3), 2, -1).classification == KOClass::Converges);
  CHECK(ko_classify_porous(power(2), 2, -1).classification == KOClass::Diverges);
  CHECK_THROWS_AS(ko_classify_porous(power(2), 0.5, -1), InvalidProblem);
}
