#pragma once

// Finite-difference derivatives: fixed 4th-order central stencils and
// Ridders' extrapolated central differences.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace liouville {

template <class F>
double central_diff4(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

template <class F>
double second_diff4(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

struct DerivativeEstimate {
  double value = 0.0;
  double error = std::numeric_limits<double>::infinity();
};

/// Ridders' method: Neville extrapolation of central differences (first or
/// second derivative) towards h -> 0.
template <class F>
DerivativeEstimate ridders(F&& f, double x, double h, int order = 1) {
  constexpr int kTable = 10;
  constexpr double kShrink = 1.4;
  constexpr double kShrink2 = kShrink * kShrink;
  constexpr double kSafe = 2.0;

  auto stencil = [&](double step) {
    if (order == 1) return (f(x + step) - f(x - step)) / (2 * step);
    return (f(x + step) - 2 * f(x) + f(x - step)) / (step * step);
  };

  std::array<std::array<double, kTable>, kTable> a{};
  DerivativeEstimate best;
  a[0][0] = stencil(h);
  for (int i = 1; i < kTable; ++i) {
    h /= kShrink;
    a[0][i] = stencil(h);
    double factor = kShrink2;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * factor - a[j - 1][i - 1]) / (factor - 1);
      factor *= kShrink2;
      const double err = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
      if (err <= best.error) {
        best.error = err;
        best.value = a[j][i];
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= kSafe * best.error) break;
  }
  return best;
}

} // namespace liouville
