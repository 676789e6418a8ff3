#include <doctest.h>

#include "liouville/errors.hpp"
#include "liouville/expr.hpp"

#include <cmath>
#include <random>

using namespace liouville;
using K = Expr::Kind;

TEST_CASE("parse builds the expected trees") {
  const Expr t = Expr::variable();
  CHECK(parse_expr("abs(t)^2") == Expr::binary(K::Pow, Expr::unary(K::Abs, t), Expr::literal(2)));

  const Expr inner = Expr::binary(K::Add, Expr::literal(1), Expr::unary(K::Abs, t));
  CHECK(parse_expr("ln(1+abs(t))^2.5") ==
        Expr::binary(K::Pow, Expr::unary(K::Ln, inner), Expr::literal(2.5)));

  CHECK(parse_expr("2^3^2") ==
        Expr::binary(K::Pow, Expr::literal(2), Expr::binary(K::Pow, Expr::literal(3), Expr::literal(2))));
  CHECK(parse_expr("max(t, -t)") == Expr::binary(K::Max, t, Expr::unary(K::Neg, t)));
  CHECK(parse_expr("1.5e-3") == Expr::literal(1.5e-3));
}

TEST_CASE("syntax errors report offset and hint") {
  try {
    parse_expr("t +");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 3);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse_expr("(t"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("t t"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("min(t)"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("0x10"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("1e"), SyntaxError);
  CHECK_THROWS_AS(parse_expr(""), SyntaxError);
}

TEST_CASE("unknown identifiers are rejected") {
  try {
    parse_expr("2*sin(t)");
    FAIL("expected UnknownIdentifier");
  } catch (const UnknownIdentifier& e) {
    CHECK(e.offset() == 2);
    CHECK(e.name() == "sin");
  }
  CHECK_THROWS_AS(parse_expr("x + 1"), UnknownIdentifier);
}

TEST_CASE("evaluation") {
  CHECK(eval_expr(parse_expr("abs(t)^2"), -3) == 9);
  CHECK(eval_expr(parse_expr("sign(t)"), 0) == 0);
  CHECK(eval_expr(parse_expr("sign(t)"), -2) == -1);
  CHECK(eval_expr(parse_expr("2+3*2"), 0) == 8);
  CHECK(eval_expr(parse_expr("-t^2"), 1) == -1);
  CHECK(eval_expr(parse_expr("(-t)^2"), 1) == 1);
  CHECK(eval_expr(parse_expr("t^3"), -2) == -8);
  CHECK(eval_expr(parse_expr("min(t, 1) + max(t, 1)"), 5) == 6);
  CHECK(eval_expr(parse_expr("exp(ln(t))"), 2) == doctest::Approx(2).epsilon(1e-15));
  CHECK(eval_expr(parse_expr("8/2/2"), 0) == 2);
  CHECK(eval_expr(parse_expr("2-3-4"), 0) == -5);
}

TEST_CASE("domain errors name the subexpression") {
  try {
    eval_expr(parse_expr("1 + ln(t)"), -1);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.subexpression() == "ln(t)");
  }
  CHECK_THROWS_AS(eval_expr(parse_expr("sqrt(t)"), -1), DomainError);
  CHECK_THROWS_AS(eval_expr(parse_expr("1/t"), 0), DomainError);
  CHECK_THROWS_AS(eval_expr(parse_expr("t^0.5"), -4), DomainError);
  CHECK_THROWS_AS(eval_expr(parse_expr("t^-1"), 0), DomainError);
  CHECK_THROWS_AS(eval_expr(parse_expr("exp(t) - exp(t)"), 1000), DomainError);
  CHECK(std::isinf(eval_expr(parse_expr("exp(t)"), 1000)));
}

namespace {

Expr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 14);
  const int choice = depth <= 0 ? pick(rng) % 2 : pick(rng);
  switch (choice) {
  case 0: {
    std::uniform_real_distribution<double> mag(0.0, 5.0);
    const double v = std::round(mag(rng) * 1000) / 1000;
    return Expr::literal(v);
  }
  case 1:
    return Expr::variable();
  case 2:
    return Expr::unary(K::Neg, random_expr(rng, depth - 1));
  case 3:
    return Expr::unary(K::Abs, random_expr(rng, depth - 1));
  case 4:
    return Expr::unary(K::Ln, random_expr(rng, depth - 1));
  case 5:
    return Expr::unary(K::Exp, random_expr(rng, depth - 1));
  case 6:
    return Expr::unary(K::Sqrt, random_expr(rng, depth - 1));
  case 7:
    return Expr::unary(K::Sign, random_expr(rng, depth - 1));
  default: {
    static constexpr K kinds[] = {K::Add, K::Sub, K::Mul, K::Div, K::Pow, K::Min, K::Max};
    return Expr::binary(kinds[choice - 8], random_expr(rng, depth - 1), random_expr(rng, depth - 1));
  }
  }
}

} // namespace

TEST_CASE("print then parse round-trips generated trees") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Expr e = random_expr(rng, 5);
    const std::string printed = to_string(e);
    INFO(printed);
    const Expr back = parse_expr(printed);
    CHECK(back == e);
    CHECK(to_string(back) == printed);
  }
}

TEST_CASE("evaluation is deterministic") {
  const Expr e = parse_expr("ln(1+abs(t))^2.5*exp(-t/3) + sqrt(abs(t))");
  for (double t : {-7.25, -0.1, 0.0, 3.5}) CHECK(eval_expr(e, t) == eval_expr(e, t));
}
