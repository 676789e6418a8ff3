#include <doctest.h>

#include "liouville/carnot.hpp"
#include "liouville/errors.hpp"

#include <cmath>
#include <random>

using namespace liouville;

namespace {

HPointd h1(double x, double y, double t) {
  return HPointd(Eigen::VectorXd::Constant(1, x), Eigen::VectorXd::Constant(1, y), t);
}

double quartic(const HPointd& q) {
  const double z2 = h_horizontal_sq(q);
  return z2 * z2 + q.t * q.t;
}

} // namespace

TEST_CASE("group law") {
  const HPointd a = h1(0.3, -1.2, 2.5);
  const HPointd e = HPointd::identity(1);
  CHECK(h_mul(a, e) == a);
  CHECK(h_mul(e, a) == a);
  CHECK(h_mul(a, h_inverse(a)) == e);
  // 2 (x'y - x y') with (x, y) = (1, 0), (x', y') = (0, 1) is -2
  CHECK(h_mul(h1(1, 0, 0), h1(0, 1, 0)) == h1(1, 1, -2));
  CHECK(h_mul(h1(0, 1, 0), h1(1, 0, 0)) == h1(1, 1, 2));

  HGroup g{3};
  CHECK(g.Q() == 8);
  CHECK(g.horizontal_dim() == 6);
  CHECK_THROWS_AS(h_mul(a, HPointd::identity(2)), DimensionMismatch);
}

TEST_CASE("dilations") {
  const HPointd a = h1(0.3, -1.2, 2.5);
  CHECK(h_dilate(a, 1.0) == a);
  CHECK(h_dilate(h1(1, 0, 1), 2.0) == h1(2, 0, 4));
  const HPointd ab = h_dilate(h_dilate(a, 3.0), 0.5);
  const HPointd direct = h_dilate(a, 1.5);
  CHECK(ab.x[0] == doctest::Approx(direct.x[0]).epsilon(1e-15));
  CHECK(ab.t == doctest::Approx(direct.t).epsilon(1e-15));
  CHECK_THROWS_AS(h_dilate(a, 0.0), NonpositiveScale);
  CHECK_THROWS_AS(h_dilate(a, -1.0), NonpositiveScale);
}

TEST_CASE("quartic gauge") {
  CHECK(h_norm(HPointd::identity(2)) == 0.0);
  CHECK(h_norm(h1(1, 0, 0)) == 1.0);
  CHECK(h_norm(h1(0, 0, 4)) == doctest::Approx(2.0).epsilon(1e-15));
  const HPointd a = h1(0.7, 0.2, -1.3);
  for (double R : {0.5, 2.0, 10.0})
    CHECK(h_norm(h_dilate(a, R)) == doctest::Approx(R * h_norm(a)).epsilon(1e-12));
  CHECK(h_norm(h_inverse(a)) == h_norm(a));
}

TEST_CASE("templated on the scalar type") {
  using HPointl = HPoint<long double>;
  const HPointl a(HPointl::Vector::Constant(1, 1.0L), HPointl::Vector::Zero(1), 0.0L);
  const HPointl b(HPointl::Vector::Zero(1), HPointl::Vector::Constant(1, 1.0L), 0.0L);
  CHECK(h_mul(a, b).t == -2.0L);
  CHECK(h_norm(h_dilate(a, 2.0L)) == 2.0L);
}

TEST_CASE("horizontal gradient") {
  const HPointd a = h1(0.4, -0.9, 1.7);
  auto x1 = [](const HPointd& q) { return q.x[0]; };
  Eigen::VectorXd g = h_grad_apply(x1, a);
  CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(g[1]) <= 1e-10);

  auto tcoord = [](const HPointd& q) { return q.t; };
  g = h_grad_apply(tcoord, a);
  CHECK(std::abs(g[0] - 2 * a.y[0]) <= 1e-10);
  CHECK(std::abs(g[1] + 2 * a.x[0]) <= 1e-10);

  // X_1 F = 4 |z|^2 x + 4 t y, Y_1 F = 4 |z|^2 y - 4 t x
  g = h_grad_apply(quartic, h1(1, 0, 0));
  CHECK(g[0] == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(std::abs(g[1]) <= 1e-9);
  g = h_grad_apply(quartic, h1(1, 0, 1));
  CHECK(g[0] == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(g[1] == doctest::Approx(-4.0).epsilon(1e-9));

  HPointd two(Eigen::Vector2d(0.3, -0.5), Eigen::Vector2d(1.1, 0.2), -0.4);
  g = h_grad_apply(quartic, two);
  const double z2 = h_horizontal_sq(two);
  for (int i = 0; i < 2; ++i) {
    CHECK(g[i] == doctest::Approx(4 * z2 * two.x[i] + 4 * two.t * two.y[i]).epsilon(1e-9));
    CHECK(g[2 + i] == doctest::Approx(4 * z2 * two.y[i] - 4 * two.t * two.x[i]).epsilon(1e-9));
  }
  CHECK_THROWS_AS(h_grad_apply(quartic, a, 0.0), InvalidProblem);
}

TEST_CASE("psi") {
  CHECK(h_psi(h1(1, 0, 0)) == 1.0);
  CHECK(h_psi(h1(0, 0, 1)) == 0.0);
  CHECK_THROWS_AS(h_psi(HPointd::identity(1)), OriginSingularity);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(-3, 3);
  for (int k = 0; k < 200; ++k) {
    const HPointd a = h1(c(rng), c(rng), c(rng));
    if (std::abs(a.x[0]) + std::abs(a.y[0]) < 0.1) continue;
    const double psi = h_psi(a);
    CHECK(psi >= 0.0);
    CHECK(psi <= 1.0);
    const Eigen::VectorXd g = h_grad_apply([](const HPointd& q) { return h_norm(q); }, a);
    CHECK(g.norm() == doctest::Approx(psi).epsilon(1e-6));
    CHECK(h_psi(h_dilate(a, 2.0)) == doctest::Approx(psi).epsilon(1e-10));
  }
}

TEST_CASE("radial sub-Laplacian examples") {
  const ScalarFunc r2(Power{1, 2});
  auto c = radial_sublaplacian_check(r2, 2.0, h1(1, 0, 0));
  CHECK(c.radial == doctest::Approx(2 + 3 * 2).epsilon(1e-9));
  CHECK(c.rel_err <= 1e-6);
  CHECK(c.flux_rel_err <= 1e-9);

  c = radial_sublaplacian_check(ScalarFunc(Constant{3}), 2.0, h1(0.5, 1, 2));
  CHECK(c.direct == 0.0);
  CHECK(c.radial == 0.0);
  CHECK(c.rel_err == 0.0);

  c = radial_sublaplacian_check(ScalarFunc::parse("t"), 2.0, h1(1, 1, 0));
  CHECK(c.rel_err <= 1e-6);

  c = radial_sublaplacian_check(ScalarFunc(Power{1, 3}), 3.0, HPointd(Eigen::Vector2d(0.3, 1), Eigen::Vector2d(-0.4, 0.1), 1.5));
  CHECK(c.rel_err <= 1e-6);
  CHECK(c.flux_rel_err <= 1e-9);
}

TEST_CASE("radial sub-Laplacian errors") {
  const ScalarFunc r2(Power{1, 2});
  CHECK_THROWS_AS(radial_sublaplacian_check(r2, 1.5, h1(0, 0, 1)), AxisDegeneracy);
  CHECK_THROWS_AS(radial_sublaplacian_check(r2, 2.0, HPointd::identity(1)), OriginSingularity);
  SublaplacianOptions wide;
  wide.h_outer = 0.2;
  CHECK_THROWS_AS(radial_sublaplacian_check(r2, 2.0, h1(1, 0, 0), wide), StencilFailure);
  CHECK_THROWS_AS(radial_sublaplacian_check(ScalarFunc::from_callable([](double t) { return std::sin(1000 * t); }, "sin(1000 t)"), 2.0, h1(1, 0.5, 0)), StencilFailure);
  CHECK_THROWS_AS(radial_sublaplacian_check(r2, 1.0, h1(1, 0, 0)), InvalidProblem);
}

TEST_CASE("property suites") {
  const CarnotSuiteReport rep = run_carnot_suite();
  CHECK(rep.Q == 4);
  for (const auto& s : rep.suites) {
    INFO(s.name << ": worst " << s.worst << " (" << s.detail << ")");
    CHECK(s.pass);
  }
  CHECK(rep.pass());
  CHECK(rep.psi_sup <= 1.0);

  CarnotSuiteOptions two;
  two.n = 2;
  two.seed = 5;
  two.psi_points = 1000;
  two.radial_points = 20;
  CHECK(run_carnot_suite(two).pass());
}
