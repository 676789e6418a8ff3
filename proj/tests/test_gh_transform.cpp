#include <doctest.h>

#include "liouville/errors.hpp"
#include "liouville/gh_transform.hpp"

#include <cmath>
#include <random>

using namespace liouville;

TEST_CASE("G closed forms") {
  CHECK(compute_G(DiffusionCoeff(PLaplacian{2}), 2) == doctest::Approx(2));
  CHECK(compute_G(DiffusionCoeff(LogDiffusion{}), 1) == doctest::Approx(1 - std::log(2.0)).epsilon(1e-15));
  for (const DiffusionCoeff& A : {DiffusionCoeff(PLaplacian{3}), DiffusionCoeff(MeanCurvature{}),
                                  DiffusionCoeff(LogDiffusion{}), DiffusionCoeff::parse("1 + t")})
    CHECK(compute_G(A, 0) == 0);
  CHECK_THROWS_AS(compute_G(DiffusionCoeff(PLaplacian{2}), -1), DomainError);
}

TEST_CASE("log-diffusion G matches t - ln(1+t) on [0, 100]") {
  const DiffusionCoeff A{LogDiffusion{}};
  for (int i = 0; i <= 10000; ++i) {
    const double t = i * 0.01;
    CHECK(std::abs(compute_G(A, t) - (t - std::log1p(t))) <= 1e-10);
  }
  CHECK(compute_G(A, 1e-6) == doctest::Approx(0.5e-12 - 1e-18 / 3).epsilon(1e-14));
}

TEST_CASE("closed forms agree with the quadrature path") {
  for (const DiffusionCoeff& A : {DiffusionCoeff(PLaplacian{1.5}), DiffusionCoeff(PLaplacian{2}),
                                  DiffusionCoeff(PLaplacian{3}), DiffusionCoeff(MeanCurvature{}),
                                  DiffusionCoeff(LogDiffusion{})}) {
    for (double t = 1e-3; t <= 1e3; t *= 3.7) {
      INFO(A.describe() << " t=" << t);
      CHECK(compute_G_quadrature(A, t) == doctest::Approx(compute_G(A, t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("H of the p-Laplacian") {
  CHECK(invert_H(DiffusionCoeff(PLaplacian{2}), 2) == doctest::Approx(2));
  for (double p : {1.5, 2.0, 3.0}) {
    const DiffusionCoeff A{PLaplacian{p}};
    for (double T = 1e-3; T <= 1e3 * 1.0001; T *= 10) {
      const double exact = std::pow(p / (p - 1), 1 / p) * std::pow(T, 1 / p);
      CHECK(std::abs(invert_H(A, T) - exact) <= 1e-8 * exact);
    }
  }
}

TEST_CASE("H round trip and monotonicity") {
  std::vector<DiffusionCoeff> coeffs{DiffusionCoeff(PLaplacian{1.5}), DiffusionCoeff(PLaplacian{3}),
                                     DiffusionCoeff(LogDiffusion{})};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pexp(1.2, 3.5);
  std::uniform_real_distribution<double> coef(0.5, 2.0);
  for (int i = 0; i < 5; ++i) {
    // (c + t)^(p-2) * (1 + t)... kept admissible: t A(t) = t (c + t^(p-2)) is increasing for p > 1.
    const std::string src = std::to_string(coef(rng)) + " + t^" + std::to_string(pexp(rng) - 2);
    coeffs.push_back(DiffusionCoeff::parse(src));
  }
  for (const auto& A : coeffs) {
    std::optional<GHTable> table;
    if (!A.is_builtin()) table.emplace(A);
    double prev = 0.0;
    for (double T = 1e-6; T <= 1e6 * 1.0001; T *= std::sqrt(10.0)) {
      const double H = table ? table->invert(T) : invert_H(A, T);
      INFO(A.describe() << " T=" << T << " H=" << H);
      CHECK(std::abs(compute_G(A, H) - T) <= std::max(1e-12, 1e-10 * T));
      CHECK(H > prev);
      prev = H;
    }
  }
  CHECK(invert_H(DiffusionCoeff(LogDiffusion{}), 1 - std::log(2.0)) == doctest::Approx(1).epsilon(1e-9));
  CHECK(invert_H(DiffusionCoeff(LogDiffusion{}), 0) == 0);
}

TEST_CASE("bounded flux refuses inversion") {
  CHECK_THROWS_AS(invert_H(DiffusionCoeff(MeanCurvature{}), 0.5), FluxMismatch);
  CHECK_THROWS_AS(invert_H(DiffusionCoeff::parse("1/sqrt(1+t^2)"), 0.5), FluxMismatch);
}

TEST_CASE("asymptotic slope of H") {
  CHECK(h_asymptotic_slope(DiffusionCoeff(LogDiffusion{})) == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(h_asymptotic_slope(DiffusionCoeff(PLaplacian{2})) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(h_asymptotic_slope(DiffusionCoeff(PLaplacian{3})) == doctest::Approx(1.0 / 3).epsilon(1e-3));
  CHECK(h_asymptotic_slope(DiffusionCoeff::parse("t")) == doctest::Approx(1.0 / 3).epsilon(1e-3));
}
