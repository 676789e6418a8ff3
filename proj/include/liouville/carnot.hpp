#pragma once

// Heisenberg group H^n = R^(2n+1) with the law
//
//   (x, y, t) o (x', y', t') = (x + x', y + y', t + t' + 2 sum(x'_i y_i - x_i y'_i)),
//
// dilations delta_R(x, y, t) = (R x, R y, R^2 t), the quartic gauge
// N = ((|x|^2 + |y|^2)^2 + t^2)^(1/4) and the horizontal fields
// X_i = d/dx_i + 2 y_i d/dt, Y_i = d/dy_i - 2 x_i d/dt.

#include "liouville/errors.hpp"
#include "liouville/nonlinearity.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace liouville {

template <class Scalar>
struct HPoint {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector x;
  Vector y;
  Scalar t = Scalar(0);

  HPoint() = default;
  HPoint(Vector x_, Vector y_, Scalar t_) : x(std::move(x_)), y(std::move(y_)), t(t_) {
    if (x.size() != y.size()) throw DimensionMismatch("HPoint needs x and y of equal length");
  }

  static HPoint identity(Eigen::Index n) { return HPoint(Vector::Zero(n), Vector::Zero(n), Scalar(0)); }

  Eigen::Index n() const { return x.size(); }

  /// Coordinate k of (x_1..x_n, y_1..y_n, t).
  Scalar& coord(Eigen::Index k) { return k < n() ? x[k] : k < 2 * n() ? y[k - n()] : t; }
  Scalar coord(Eigen::Index k) const { return k < n() ? x[k] : k < 2 * n() ? y[k - n()] : t; }

  bool operator==(const HPoint& o) const { return x == o.x && y == o.y && t == o.t; }
};

using HPointd = HPoint<double>;

struct HGroup {
  int n = 1;

  int Q() const { return 2 * n + 2; }
  int horizontal_dim() const { return 2 * n; }
};

template <class Scalar>
HPoint<Scalar> h_mul(const HPoint<Scalar>& a, const HPoint<Scalar>& b) {
  if (a.n() != b.n())
    throw DimensionMismatch("h_mul of points in H^" + std::to_string(a.n()) + " and H^" + std::to_string(b.n()));
  const Scalar twist = b.x.dot(a.y) - a.x.dot(b.y);
  return HPoint<Scalar>(a.x + b.x, a.y + b.y, a.t + b.t + Scalar(2) * twist);
}

template <class Scalar>
HPoint<Scalar> h_inverse(const HPoint<Scalar>& a) {
  return HPoint<Scalar>(-a.x, -a.y, -a.t);
}

template <class Scalar>
HPoint<Scalar> h_dilate(const HPoint<Scalar>& a, Scalar R) {
  if (!(R > Scalar(0))) throw NonpositiveScale("dilation factor must be positive");
  return HPoint<Scalar>(R * a.x, R * a.y, R * R * a.t);
}

/// |x|^2 + |y|^2
template <class Scalar>
Scalar h_horizontal_sq(const HPoint<Scalar>& a) {
  return a.x.squaredNorm() + a.y.squaredNorm();
}

template <class Scalar>
Scalar h_norm(const HPoint<Scalar>& a) {
  using std::sqrt;
  const Scalar z2 = h_horizontal_sq(a);
  return sqrt(sqrt(z2 * z2 + a.t * a.t));
}

/// |grad_H N| = sqrt(|x|^2 + |y|^2) / N.
template <class Scalar>
Scalar h_psi(const HPoint<Scalar>& a) {
  using std::sqrt;
  const Scalar N = h_norm(a);
  if (N == Scalar(0)) throw OriginSingularity("psi is undefined at the group identity");
  return sqrt(h_horizontal_sq(a)) / N;
}

/// (X_1 F, ..., X_n F, Y_1 F, ..., Y_n F) at a from 4th-order central
/// differences with step h along each coordinate.
template <class F>
Eigen::VectorXd h_grad_apply(F&& fn, const HPointd& a, double h = 1e-4) {
  if (!(h > 0.0)) throw InvalidProblem("finite-difference step must be positive");
  const Eigen::Index n = a.n();
  Eigen::VectorXd partial(2 * n + 1);
  HPointd q = a;
  for (Eigen::Index k = 0; k <= 2 * n; ++k) {
    const double c = a.coord(k);
    auto at = [&](double s) {
      q.coord(k) = c + s;
      const double v = fn(static_cast<const HPointd&>(q));
      if (std::isnan(v)) throw DomainError("function not evaluable near the stencil point");
      return v;
    };
    partial[k] = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
    q.coord(k) = c;
  }
  Eigen::VectorXd grad(2 * n);
  const double dt = partial[2 * n];
  grad.head(n) = partial.head(n) + 2.0 * a.y * dt;
  grad.tail(n) = partial.segment(n, n) - 2.0 * a.x * dt;
  return grad;
}

struct SublaplacianOptions {
  double h_inner = 1e-4;  ///< step of the inner horizontal gradient
  double h_outer = 1e-3;  ///< step of the outer divergence
  double gradient_floor = 1e-12;
};

struct SublaplacianCheck {
  double direct = 0.0;     ///< divergence-form Delta_{H,p}(zeta o N) by nested differences
  double radial = 0.0;     ///< (p-1) psi^p |z'|^(p-2) (z'' + (Q-1)/(p-1) z'/r) at r = N
  double flux_form = 0.0;  ///< psi^p N^(1-Q) (r^(Q-1) |z'|^(p-2) z')' at r = N
  double rel_err = 0.0;    ///< |direct - radial| / max(|radial|, 1e-300), 0 when both vanish
  double flux_rel_err = 0.0;
  double psi = 0.0;
  double N = 0.0;
  bool regularized = false;  ///< the gradient floor was active (p < 2)
};

/// Compares the direct and radial forms of the horizontal p-Laplacian of
/// zeta(N(.)) at a.  Throws AxisDegeneracy (psi ~ 0 with p < 2), OriginSingularity
/// and StencilFailure (stencil reaching the centre axis or unresolved derivatives).
SublaplacianCheck radial_sublaplacian_check(const ScalarFunc& zeta, double p, const HPointd& a,
                                            const SublaplacianOptions& opts = {});

// Property suites over seeded random points.

struct CarnotSuiteOptions {
  int n = 1;
  std::uint64_t seed = 0;
  int group_triples = 1000;
  int psi_points = 10000;
  int radial_points = 100;
  SublaplacianOptions sublaplacian;
};

struct CarnotSuiteResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;      ///< worst observed deviation (metric named in `detail`)
  double tolerance = 0.0;
  int samples = 0;
  int excluded = 0;
  std::string detail;
};

struct CarnotSuiteReport {
  int n = 1;
  int Q = 4;
  std::uint64_t seed = 0;
  double psi_sup = 0.0;  ///< measured sup of psi; psi^p <= psi_sup^p is the constant C
  std::vector<CarnotSuiteResult> suites;

  bool pass() const;
};

CarnotSuiteReport run_carnot_suite(const CarnotSuiteOptions& opts = {});

/// Radial identity at caller-supplied points for zeta in {r^2, r^3, exp(r)} and
/// p in {2, 3}: direct vs radial (rel 1e-6), then radial vs flux form (rel 1e-9).
std::vector<CarnotSuiteResult> radial_identity_suites(const std::vector<HPointd>& points,
                                                      const SublaplacianOptions& opts = {});

} // namespace liouville
