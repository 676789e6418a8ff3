#include "liouville/comparison_instances.hpp"

#include "liouville/errors.hpp"
#include "liouville/radial_ode.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace liouville {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

double cell_volume(double a, double b, double D) {
  if (D == 1.0) return b - a;
  if (a <= 0.0) return std::pow(b, D) / D;
  return std::pow(a, D) * std::expm1(D * std::log(b / a)) / D;
}

Eigen::VectorXd residual(const DiffusionCoeff& A, const DiscreteField& f, const MonotoneSource& g,
                         const Eigen::VectorXd& s, Eigen::Index first, Eigen::Index last) {
  const DiscreteResidual L = discrete_radial_operator(A, f);
  Eigen::VectorXd F = Eigen::VectorXd::Zero(f.size());
  for (Eigen::Index i = first; i <= last; ++i) F[i] = L.values[i] - g.g(f.values[i]) + s[i];
  return F;
}

// Magnitude of the terms entering F, so the stopping test sits above rounding.
double residual_scale(const DiffusionCoeff& A, const DiscreteField& f, const MonotoneSource& g,
                      const Eigen::VectorXd& weight, const Eigen::VectorXd& vol, Eigen::Index first,
                      Eigen::Index last) {
  double scale = 1.0;
  for (Eigen::Index i = first; i <= last; ++i) {
    double flux = weight[i] * std::abs(A.flux((f.values[i + 1] - f.values[i]) / (f.r[i + 1] - f.r[i])));
    if (i > 0) flux += weight[i - 1] * std::abs(A.flux((f.values[i] - f.values[i - 1]) / (f.r[i] - f.r[i - 1])));
    scale = std::max({scale, std::abs(g.g(f.values[i])), flux / vol[i]});
  }
  return scale;
}

} // namespace

DiscreteField solve_discrete(const DiffusionCoeff& A, const DiscreteField& initial, const MonotoneSource& g,
                             const Eigen::VectorXd& source, double tol) {
  DiscreteField f = initial;
  const Eigen::Index n = f.size();
  const Eigen::VectorXd& r = f.r;
  const double D = f.D;
  const Eigen::Index first = (D > 1.0 && r[0] == 0.0) ? 0 : 1;
  const Eigen::Index last = n - 2;

  Eigen::VectorXd mid(n - 1), weight(n - 1);
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    mid[j] = 0.5 * (r[j] + r[j + 1]);
    weight[j] = D == 1.0 ? 1.0 : std::pow(mid[j], D - 1.0);
  }
  Eigen::VectorXd vol(n);
  if (first == 0) vol[0] = cell_volume(0.0, mid[0], D);
  for (Eigen::Index i = 1; i + 1 < n; ++i) vol[i] = cell_volume(mid[i - 1], mid[i], D);

  Eigen::VectorXd F = residual(A, f, g, source, first, last);
  for (int iter = 0; iter < 200; ++iter) {
    if (F.lpNorm<Eigen::Infinity>() <= tol * residual_scale(A, f, g, weight, vol, first, last)) return f;

    // Tridiagonal Jacobian of F in the interior unknowns.
    Eigen::VectorXd c(n - 1);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
      const double h = r[j + 1] - r[j];
      c[j] = weight[j] * A.flux_derivative((f.values[j + 1] - f.values[j]) / h) / h;
    }
    const Eigen::Index m = last - first + 1;
    Eigen::VectorXd lower = Eigen::VectorXd::Zero(m), diag(m), upper = Eigen::VectorXd::Zero(m), rhs(m);
    for (Eigen::Index k = 0; k < m; ++k) {
      const Eigen::Index i = first + k;
      const double cl = i > 0 ? c[i - 1] : 0.0;
      diag[k] = -(c[i] + cl) / vol[i] - g.dg(f.values[i]);
      if (k > 0) lower[k] = cl / vol[i];
      if (k + 1 < m) upper[k] = c[i] / vol[i];
      rhs[k] = -F[i];
    }
    for (Eigen::Index k = 1; k < m; ++k) {
      const double w = lower[k] / diag[k - 1];
      diag[k] -= w * upper[k - 1];
      rhs[k] -= w * rhs[k - 1];
    }
    Eigen::VectorXd step(m);
    step[m - 1] = rhs[m - 1] / diag[m - 1];
    for (Eigen::Index k = m - 2; k >= 0; --k) step[k] = (rhs[k] - upper[k] * step[k + 1]) / diag[k];
    if (!step.allFinite()) break;

    const double norm0 = F.lpNorm<Eigen::Infinity>();
    double lambda = 1.0;
    bool accepted = false;
    for (int back = 0; back < 40; ++back, lambda *= 0.5) {
      DiscreteField trial = f;
      trial.values.segment(first, m) += lambda * step;
      const Eigen::VectorXd Ft = residual(A, trial, g, source, first, last);
      if (Ft.allFinite() && Ft.lpNorm<Eigen::Infinity>() < (1.0 - 1e-4 * lambda) * norm0) {
        f = std::move(trial);
        F = Ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  // A stalled line search at rounding level still counts as converged.
  const double scale = residual_scale(A, f, g, weight, vol, first, last);
  if (F.lpNorm<Eigen::Infinity>() <= std::max(tol, 1e-10) * scale) return f;
  std::ostringstream os;
  os << "discrete Newton solve did not converge (residual " << F.lpNorm<Eigen::Infinity>() << ", scale " << scale
     << ")";
  throw StencilFailure(os.str());
}

ComparisonInstance random_comparison_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ComparisonInstance inst;
  const int a_kind = static_cast<int>(rng() % 4);
  switch (a_kind) {
    case 0: inst.A = DiffusionCoeff(PLaplacian{2.0}); break;
    case 1: inst.A = DiffusionCoeff(PLaplacian{3.0}); break;
    case 2: inst.A = DiffusionCoeff(MeanCurvature{}); break;
    default: inst.A = DiffusionCoeff(LogDiffusion{}); break;
  }
  static const double dims[] = {1.0, 2.0, 3.0, 4.0, 2.5};
  const double D = dims[rng() % 5];
  const bool centred = D > 1.0 && rng() % 2 == 0;
  const int cells = 20 + static_cast<int>(rng() % 61);

  Eigen::VectorXd r(cells + 1);
  r[0] = centred ? 0.0 : (D > 1.0 ? uniform(rng, 0.1, 1.0) : uniform(rng, -1.0, 1.0));
  for (int i = 1; i <= cells; ++i) r[i] = r[i - 1] + uniform(rng, 0.5, 1.5);
  const double length = uniform(rng, 0.5, 2.0);
  for (int i = 1; i <= cells; ++i) r[i] = r[0] + (r[i] - r[0]) * length / (r[cells] - r[0]);

  const double b = uniform(rng, 0.1, 2.0);
  const double c3 = uniform(rng, 0.0, 1.0);
  const double d = uniform(rng, -1.0, 1.0);
  MonotoneSource g{[=](double t) { return b * t + c3 * t * t * t + d; },
                   [=](double t) { return b + 3.0 * c3 * t * t; }, {}};
  std::ostringstream desc;
  desc.precision(17);
  desc << b << "*t + " << c3 << "*t^3 + " << d;
  g.description = desc.str();
  inst.g = g.as_scalar_func();

  const double ul = uniform(rng, -1.0, 1.0);
  const double ur = uniform(rng, -1.0, 1.0);
  const bool lift = rng() % 2 == 0;
  const double vl = ul + (lift ? uniform(rng, 0.0, 0.5) : 0.0);
  const double vr = ur + (lift ? uniform(rng, 0.0, 0.5) : 0.0);

  auto guess = [&](double left, double right) {
    DiscreteField f{r, Eigen::VectorXd(cells + 1), D};
    for (int i = 0; i <= cells; ++i) f.values[i] = left + (right - left) * (r[i] - r[0]) / (r[cells] - r[0]);
    return f;
  };
  Eigen::VectorXd s(cells + 1);
  for (int i = 0; i <= cells; ++i) s[i] = rng() % 4 == 0 ? 0.0 : uniform(rng, 0.0, 2.0);

  inst.u = solve_discrete(inst.A, guess(ul, ur), g, Eigen::VectorXd::Zero(cells + 1));
  inst.v = solve_discrete(inst.A, guess(vl, vr), g, s);

  std::ostringstream os;
  os << "seed " << seed << ": A = " << inst.A.describe() << ", D = " << D << (centred ? " (centred)" : "")
     << ", M = " << cells << ", g = " << g.description;
  inst.description = os.str();
  return inst;
}

ComparisonInstance blowup_barrier_instance(double r_b, double shift, int cells, double lift) {
  if (!(r_b > 0.0 && r_b < 1.0)) throw InvalidProblem("barrier instance needs 0 < r_b < 1");
  if (cells < 2) throw GridTooCoarse("barrier instance needs at least 2 cells");
  ComparisonInstance inst;
  inst.A = DiffusionCoeff(PLaplacian{2.0});
  inst.g = ScalarFunc::parse("8*max(t, 0)^3");

  Eigen::VectorXd r(cells + 1);
  for (int i = 0; i <= cells; ++i) r[i] = r_b * i / cells;

  RadialProblem prob{4.0, inst.A, ScalarFunc::parse("8*t^3"), 1.0};
  BlowupOptions opts;
  opts.record_trajectory = false;
  opts.sample_radii.assign(r.data(), r.data() + r.size());
  const BlowupResult traj = integrate_blowup(prob, opts);
  if (traj.samples.size() != static_cast<std::size_t>(cells + 1))
    throw StencilFailure("blow-up trajectory does not cover the barrier grid");

  inst.v = DiscreteField{r, Eigen::VectorXd(cells + 1), 4.0};
  inst.u = DiscreteField{r, Eigen::VectorXd(cells + 1), 4.0};
  for (int i = 0; i <= cells; ++i) {
    inst.v.values[i] = (i == 0 ? prob.a : traj.samples[i].phi) + lift;
    inst.u.values[i] = 1.0 / (1.0 - r[i] * r[i]) - shift;
  }
  std::ostringstream os;
  os << "D = 4, p = 2, g = 8 max(t,0)^3, U = 1/(1-r^2) - " << shift << " against the blow-up profile with a = 1 (lifted by "
     << lift << ") on [0, " << r_b << "], M = " << cells;
  inst.description = os.str();
  return inst;
}

} // namespace liouville
