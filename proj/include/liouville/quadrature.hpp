#pragma once

// Adaptive Gauss-Kronrod (G7-K15) integration and Gauss-Legendre rules.

#include "liouville/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace liouville {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_intervals = 10000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the nodes kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

} // namespace detail

/// Integrates f over [a, b] to max(abs_tol, rel_tol*|I|).  An infinite panel value
/// short-circuits to an infinite result; NaN or an exhausted interval budget raises
/// QuadratureFailure.
template <class F>
QuadratureResult integrate_gk(F&& f, double a, double b, const QuadratureOptions& opts = {}) {
  if (a == b) return {};
  if (b < a) {
    QuadratureResult r = integrate_gk(f, b, a, opts);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<detail::Panel> panels;
  panels.push(detail::gk15(f, a, b));
  double total = panels.top().value;
  double error = panels.top().error;
  int count = 1;
  for (;;) {
    if (std::isnan(total)) throw QuadratureFailure("integrand produced NaN");
    if (std::isinf(total)) return {total, 0.0, count};
    if (error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) break;
    if (count >= opts.max_intervals)
      throw QuadratureFailure("tolerance not met within " + std::to_string(opts.max_intervals) +
                              " intervals");
    const detail::Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be split further in double precision; accept what we have.
      break;
    }
    panels.pop();
    const detail::Panel left = detail::gk15(f, worst.a, mid);
    const detail::Panel right = detail::gk15(f, mid, worst.b);
    panels.push(left);
    panels.push(right);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    ++count;
    // Periodically re-sum to keep the running totals free of drift.
    if (count % 64 == 0) {
      auto copy = panels;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, error, count};
}

struct GaussRule {
  Eigen::VectorXd nodes;   ///< on [-1, 1], ascending
  Eigen::VectorXd weights;
};

/// n-point Gauss-Legendre rule from the Golub-Welsch eigenproblem.
GaussRule gauss_legendre(int n);

/// Fixed-rule integral of f over [a, b].
template <class F>
double integrate_fixed(const GaussRule& rule, F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(center + half * rule.nodes[i]);
  return half * sum;
}

} // namespace liouville
