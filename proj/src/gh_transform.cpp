#include "liouville/gh_transform.hpp"

#include "liouville/errors.hpp"
#include "liouville/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace liouville {

namespace {

// t - ln(1+t) without cancellation for small t.
double log_diffusion_G(double t) {
  if (t < 1e-2) {
    double term = t * t;
    double sum = 0.0;
    for (int k = 2; k <= 24; ++k) {
      sum += (k % 2 == 0 ? 1.0 : -1.0) * term / k;
      term *= t;
    }
    return sum;
  }
  return t - std::log1p(t);
}

bool within(double G, double T) { return std::abs(G - T) <= std::max(1e-12, 1e-10 * T); }

// Root of an increasing g on [lo, hi] with g(lo) <= T <= g(hi): Newton steps
// that stay inside the bracket, bisection otherwise.
template <class G, class D>
double solve_increasing(G&& g, D&& dg, double T, double lo, double hi) {
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 400; ++it) {
    const double r = g(x) - T;
    if (within(r + T, T)) return x;
    if (r < 0)
      lo = x;
    else
      hi = x;
    if (hi - lo <= 1e-16 * hi) return x;
    const double d = dg(x);
    double next = d > 0 ? x - r / d : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

double upper_bracket(const DiffusionCoeff& A, double T, double start) {
  double hi = start;
  while (compute_G(A, hi) < T) {
    hi *= 2;
    if (!std::isfinite(hi)) throw DomainError("G never reaches the requested value");
  }
  return hi;
}

} // namespace

double compute_G(const DiffusionCoeff& A, double t) {
  if (t < 0 || std::isnan(t)) throw DomainError("G is defined for t >= 0 only");
  if (t == 0) return 0.0;
  if (const auto* b = A.p_laplacian()) return (b->p - 1) / b->p * std::pow(t, b->p);
  if (A.is_log_diffusion()) return log_diffusion_G(t);
  if (A.is_mean_curvature()) {
    const double s = std::hypot(1.0, t);
    return t * t / (s * (s + 1));
  }
  return compute_G_quadrature(A, t);
}

double compute_G_quadrature(const DiffusionCoeff& A, double t) {
  if (t < 0 || std::isnan(t)) throw DomainError("G is defined for t >= 0 only");
  if (t == 0) return 0.0;
  const double top = A.flux(t);
  const QuadratureOptions opts{1e-12, 1e-15 * t * std::abs(top), 10000};
  return integrate_gk([&](double s) { return top - A.flux(s); }, 0.0, t, opts).value;
}

double compute_G_derivative(const DiffusionCoeff& A, double t) {
  if (A.is_builtin()) return t * A.flux_derivative(t);
  const double h = std::max(1e-6, 1e-8 * t);
  const double lo = std::max(0.0, t - h);
  return (compute_G(A, t + h) - compute_G(A, lo)) / (t + h - lo);
}

GHTable::GHTable(DiffusionCoeff A) : A_(std::move(A)) {
  unbounded_ = !classify_flux(A_).bounded();
  for (int k = -160; k <= 240; ++k) {
    const double t = std::exp2(k / 4.0);
    t_.push_back(t);
    G_.push_back(compute_G(A_, t));
  }
  double prev = 0.0;
  for (double g : G_) {
    if (!(g > prev)) certified_ = false;
    prev = g;
  }
}

double GHTable::invert(double T) const {
  if (T < 0 || std::isnan(T)) throw DomainError("H is defined for T >= 0 only");
  if (!unbounded_)
    throw FluxMismatch("H is only used for unbounded flux; t A(t) is bounded for " + A_.describe());
  if (!certified_) throw NonMonotone("G is not strictly increasing on the sample grid for " + A_.describe());
  if (T == 0) return 0.0;
  if (A_.is_builtin()) return invert_H(A_, T);

  const auto it = std::lower_bound(G_.begin(), G_.end(), T);
  double lo = 0.0;
  double hi = 0.0;
  if (it == G_.end()) {
    lo = t_.back();
    hi = upper_bracket(A_, T, 2 * lo);
  } else {
    const auto i = static_cast<std::size_t>(it - G_.begin());
    if (*it == T) return t_[i];
    hi = t_[i];
    lo = i == 0 ? 0.0 : t_[i - 1];
  }
  while (hi - lo > 1e-14 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (compute_G(A_, mid) < T)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  const double residual = compute_G(A_, x) - T;
  const double slope = compute_G_derivative(A_, x);
  if (slope > 0) {
    const double polished = x - residual / slope;
    if (polished > 0 && std::abs(compute_G(A_, polished) - T) < std::abs(residual)) x = polished;
  }
  return x;
}

double invert_H(const DiffusionCoeff& A, double T) {
  if (T < 0 || std::isnan(T)) throw DomainError("H is defined for T >= 0 only");
  if (A.is_mean_curvature())
    throw FluxMismatch("H is only used for unbounded flux; t A(t) is bounded for mean_curvature");
  if (T == 0) return 0.0;
  if (const auto* b = A.p_laplacian()) return std::pow(b->p * T / (b->p - 1), 1.0 / b->p);
  if (A.is_log_diffusion()) {
    const double hi = upper_bracket(A, T, std::max(1.0, T));
    return solve_increasing([](double t) { return log_diffusion_G(t); },
                            [](double t) { return t / (1 + t); }, T, 0.0, hi);
  }
  return GHTable(A).invert(T);
}

SlopeFit h_slope_fit(const DiffusionCoeff& A) {
  std::vector<double> x, y;
  if (A.is_builtin()) {
    for (int k = 2; k <= 8; ++k) {
      x.push_back(k * std::log(10.0));
      y.push_back(std::log(invert_H(A, std::pow(10.0, k))));
    }
  } else {
    const GHTable table(A);
    for (int k = 2; k <= 8; ++k) {
      x.push_back(k * std::log(10.0));
      y.push_back(std::log(table.invert(std::pow(10.0, k))));
    }
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (my + fit.slope * (x[i] - mx));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n) / (x.back() - x.front());
  return fit;
}

double h_asymptotic_slope(const DiffusionCoeff& A) {
  const SlopeFit fit = h_slope_fit(A);
  if (fit.residual > 1e-3)
    throw Inconclusive("ln H(T) is not linear in ln T over 1e2..1e8 (normalized residual " +
                       std::to_string(fit.residual) + ")");
  return fit.slope;
}

} // namespace liouville
