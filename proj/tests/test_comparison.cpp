#include <doctest.h>

#include "liouville/comparison.hpp"
#include "liouville/comparison_instances.hpp"
#include "liouville/errors.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace liouville;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

DiscreteField uniform_field(double lo, double hi, int cells, double D, double (*fn)(double)) {
  DiscreteField f{Eigen::VectorXd::LinSpaced(cells + 1, lo, hi), Eigen::VectorXd(cells + 1), D};
  for (int i = 0; i <= cells; ++i) f.values[i] = fn(f.r[i]);
  return f;
}

std::vector<DiffusionCoeff> builtins() {
  return {DiffusionCoeff(PLaplacian{1.5}), DiffusionCoeff(PLaplacian{2}), DiffusionCoeff(PLaplacian{3}),
          DiffusionCoeff(MeanCurvature{}), DiffusionCoeff(LogDiffusion{})};
}

} // namespace

TEST_CASE("monotone pairing examples") {
  const DiffusionCoeff lap(PLaplacian{2});
  const DiffusionCoeff p3(PLaplacian{3});
  CHECK(monotone_pairing(lap, vec({1, 0}), vec({0, 1})) == doctest::Approx(2).epsilon(1e-15));
  CHECK(monotone_pairing(p3, vec({2, 0}), vec({1, 0})) == doctest::Approx(3).epsilon(1e-15));
  for (const auto& A : builtins()) {
    CHECK(monotone_pairing(A, vec({0.3, -2, 5}), vec({0.3, -2, 5})) == 0.0);
    CHECK(monotone_pairing(A, vec({0, 0}), vec({0, 0})) == 0.0);
  }
  // A(0) 0 := 0 even where A(0) is infinite.
  const DiffusionCoeff singular(PLaplacian{1.5});
  CHECK(monotone_pairing(singular, vec({0, 0}), vec({4, 0})) == doctest::Approx(std::pow(4.0, 1.5)).epsilon(1e-14));
}

TEST_CASE("pairing errors") {
  const DiffusionCoeff lap(PLaplacian{2});
  CHECK_THROWS_AS(monotone_pairing(lap, vec({1, 0}), vec({1, 0, 0})), DimensionMismatch);
  const DiffusionCoeff bad = DiffusionCoeff::parse("ln(t - 1)");
  CHECK_THROWS_AS(monotone_pairing(bad, vec({0.5}), vec({3})), DomainError);
}

TEST_CASE("decomposition I1 + I2") {
  const DiffusionCoeff lap(PLaplacian{2});
  auto d = decompose_pairing(lap, vec({1, 2}), vec({1, 2}));
  CHECK(d.I1 == 0.0);
  CHECK(d.I2 == 0.0);

  d = decompose_pairing(DiffusionCoeff(MeanCurvature{}), vec({1, 2}), vec({3, 6}));
  CHECK(d.I2 == doctest::Approx(0).scale(1e-15));
  CHECK(d.I1 > 0);

  d = decompose_pairing(DiffusionCoeff(PLaplacian{3}), vec({3, 4}), vec({5, 0}));
  CHECK(d.I1 == doctest::Approx(0).scale(1e-14));
  CHECK(d.I2 > 0);
}

TEST_CASE("pairing is non-negative on random pairs for every builtin A") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> comp(-10, 10);
  for (const auto& A : builtins()) {
    int bad_sum = 0, bad_i1 = 0, bad_i2 = 0, bad_split = 0;
    for (int k = 0; k < 100000; ++k) {
      const int dim = 1 + static_cast<int>(rng() % 8);
      Eigen::VectorXd xi(dim), eta(dim);
      for (int j = 0; j < dim; ++j) {
        xi[j] = comp(rng);
        eta[j] = comp(rng);
      }
      const double scale = pairing_scale(A, xi, eta);
      const double m = monotone_pairing(A, xi, eta);
      const auto d = decompose_pairing(A, xi, eta);
      bad_sum += m < -1e-12 * scale;
      bad_i1 += d.I1 < -1e-12 * scale;
      bad_i2 += d.I2 < -1e-12 * scale;
      bad_split += std::abs(d.I1 + d.I2 - m) > 1e-12 * scale;
    }
    INFO(A.describe());
    CHECK(bad_sum == 0);
    CHECK(bad_i1 == 0);
    CHECK(bad_i2 == 0);
    CHECK(bad_split == 0);
  }
}

TEST_CASE("parallel equal-norm pairs give exactly zero") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> comp(-10, 10);
  for (const auto& A : builtins()) {
    for (int k = 0; k < 1000; ++k) {
      Eigen::VectorXd xi(3);
      for (int j = 0; j < 3; ++j) xi[j] = comp(rng);
      const Eigen::VectorXd eta = -(-xi);
      CHECK(monotone_pairing(A, xi, eta) == 0.0);
    }
  }
}

TEST_CASE("finite-volume operator") {
  const DiffusionCoeff lap(PLaplacian{2});

  const auto sq = uniform_field(0, 1, 10, 1.0, [](double x) { return x * x; });
  const auto L = discrete_radial_operator(lap, sq);
  CHECK(L.first == 1);
  CHECK(L.last == 9);
  CHECK(std::isnan(L.values[0]));
  CHECK(std::isnan(L.values[10]));
  for (Eigen::Index i = L.first; i <= L.last; ++i) CHECK(L.values[i] == doctest::Approx(2).epsilon(1e-12));

  // exact for quadratics on any grid
  DiscreteField rough{vec({-1, -0.7, -0.1, 0.05, 0.6, 2}), Eigen::VectorXd(6), 1.0};
  for (int i = 0; i < 6; ++i) rough.values[i] = rough.r[i] * rough.r[i];
  const auto Lr = discrete_radial_operator(lap, rough);
  for (Eigen::Index i = Lr.first; i <= Lr.last; ++i) CHECK(Lr.values[i] == doctest::Approx(2).epsilon(1e-12));

  for (double r0 : {0.0, 0.3}) {
    const auto ball = uniform_field(r0, 2, 40, 3.0, [](double r) { return 1 + r * r / 6; });
    const auto Lb = discrete_radial_operator(lap, ball);
    CHECK(Lb.first == (r0 == 0 ? 0 : 1));
    for (Eigen::Index i = Lb.first; i <= Lb.last; ++i) CHECK(Lb.values[i] == doctest::Approx(1).epsilon(1e-12));
  }

  for (const auto& A : builtins()) {
    const auto flat = uniform_field(0, 1, 8, 2.5, [](double) { return 3.0; });
    const auto Lf = discrete_radial_operator(A, flat);
    for (Eigen::Index i = Lf.first; i <= Lf.last; ++i) CHECK(Lf.values[i] == 0.0);
  }

  CHECK_THROWS_AS(discrete_radial_operator(lap, uniform_field(0, 1, 1, 1.0, [](double x) { return x; })),
                  GridTooCoarse);
  DiscreteField unordered{vec({0, 0.5, 0.4}), vec({0, 0, 0}), 1.0};
  CHECK_THROWS_AS(discrete_radial_operator(lap, unordered), InvalidProblem);
}

TEST_CASE("convex function below its chord") {
  const DiffusionCoeff lap(PLaplacian{2});
  const auto u = uniform_field(0, 1, 50, 1.0, [](double x) { return x * x - x; });
  const auto v = uniform_field(0, 1, 50, 1.0, [](double) { return 0.0; });
  const ScalarFunc zero(Constant{0});
  const auto cert = discrete_comparison_check(lap, u, v, zero, zero);
  CHECK(cert.pass);
  CHECK(cert.g_case == "b");
  CHECK(cert.hypotheses.sampled);
  CHECK_FALSE(cert.witness_node.has_value());
  CHECK(cert.epsilon == doctest::Approx(1e-8));
  CHECK_NOTHROW(require_hypotheses(cert));

  // swapping the roles breaks the supersolution residual and the conclusion
  const auto swapped = discrete_comparison_check(lap, v, u, zero, zero);
  CHECK_FALSE(swapped.pass);
  CHECK_FALSE(swapped.hypotheses_hold);
  CHECK_FALSE(swapped.conclusion_holds);
  REQUIRE(swapped.witness_node.has_value());
  CHECK(*swapped.witness_node == 1);
  CHECK(swapped.violation > 0);
  CHECK_THROWS_AS(require_hypotheses(swapped), HypothesisViolation);
}

TEST_CASE("reflexive case u = v") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto inst = random_comparison_instance(seed);
    const auto cert = discrete_comparison_check(inst.A, inst.u, inst.u, inst.g, inst.g);
    INFO(inst.description);
    CHECK(cert.pass);
    CHECK(cert.max_gap == 0.0);
  }
}

TEST_CASE("hypothesis failures are reported, not thrown") {
  const DiffusionCoeff lap(PLaplacian{2});
  const auto u = uniform_field(0, 1, 20, 1.0, [](double x) { return 1 + x; });
  const auto v = uniform_field(0, 1, 20, 1.0, [](double x) { return x; });
  const ScalarFunc zero(Constant{0});
  const auto cert = discrete_comparison_check(lap, u, v, zero, zero);
  CHECK_FALSE(cert.pass);
  const HypothesisCheck* first = cert.hypotheses.first_failure();
  REQUIRE(first != nullptr);
  CHECK(first->id == "H3/left-boundary");
  CHECK(first->witness == doctest::Approx(0.0));
  REQUIRE(cert.witness_node.has_value());
}

TEST_CASE("case (a) and case-(b)-only labels") {
  const DiffusionCoeff lap(PLaplacian{2});
  const ScalarFunc square = ScalarFunc::parse("t^2");
  // L(u) = 2 >= u^2 for u in [0.2, 0.45]; t^2 decreases below 0, so only case (a) applies
  const auto u = uniform_field(0, 0.5, 20, 1.0, [](double x) { return 0.2 + x * x; });
  const auto v = uniform_field(0, 0.5, 20, 1.0, [](double) { return 0.5; });
  const auto pos = discrete_comparison_check(lap, u, v, square, square);
  CHECK(pos.g_case == "a");
  CHECK(pos.hypotheses_hold);
  CHECK(pos.pass);

  auto u2 = u;
  u2.values.array() -= 0.5;
  auto v2 = v;
  v2.values.array() -= 0.5;
  const auto mixed = discrete_comparison_check(lap, u2, v2, square, square);
  CHECK(mixed.g_case == "b-only");
  CHECK_FALSE(mixed.hypotheses_hold);
}

TEST_CASE("grid mismatch") {
  const DiffusionCoeff lap(PLaplacian{2});
  const auto u = uniform_field(0, 1, 10, 1.0, [](double x) { return x; });
  const auto v = uniform_field(0, 1.1, 10, 1.0, [](double x) { return x; });
  const ScalarFunc zero(Constant{0});
  CHECK_THROWS_AS(discrete_comparison_check(lap, u, v, zero, zero), GridMismatch);
  auto w = u;
  w.D = 2.0;
  CHECK_THROWS_AS(discrete_comparison_check(lap, u, w, zero, zero), GridMismatch);
}

TEST_CASE("200 randomized instances respect the conclusion") {
  int violations = 0;
  int hypotheses_failed = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = random_comparison_instance(seed);
    ComparisonOptions opts;
    opts.seed = seed;
    const auto cert = discrete_comparison_check(inst.A, inst.u, inst.v, inst.g, inst.g, opts);
    hypotheses_failed += !cert.hypotheses_hold;
    violations += cert.max_gap > 1e-10;
  }
  CHECK(hypotheses_failed == 0);
  CHECK(violations == 0);
}

TEST_CASE("blow-up barrier instance") {
  const auto inst = blowup_barrier_instance();
  const auto cert = discrete_comparison_check(inst.A, inst.u, inst.v, inst.g, inst.g);
  INFO(inst.description);
  CHECK(cert.hypotheses_hold);
  CHECK(cert.pass);
  CHECK(inst.u.values[0] <= inst.v.values[0]);
  CHECK(inst.v.values[0] == doctest::Approx(1.0001).epsilon(1e-12));
}
