#include "liouville/radial_ode.hpp"

#include "liouville/errors.hpp"
#include "liouville/quadrature.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace liouville {

std::string_view to_string(BlowupStatus s) {
  switch (s) {
  case BlowupStatus::FiniteBlowup:
    return "finite_blowup";
  case BlowupStatus::GlobalExistence:
    return "global_existence";
  case BlowupStatus::GradientBlowup:
    return "gradient_blowup";
  case BlowupStatus::Inconclusive:
    return "inconclusive";
  }
  return "?";
}

void validate(const RadialProblem& prob) {
  if (!(prob.D > 1)) throw InvalidProblem("D must exceed 1");
  if (!(prob.a > 0)) throw InvalidProblem("a must be positive");
  if (!(prob.g(prob.a) > 0)) throw InvalidProblem("g(a) must be positive");
  const auto right = right_of(0.0);
  const HypothesisCheck positive = check_sign(prob.g, right, SignRequirement::Positive, 0.0, "g>0");
  if (positive.status == CheckStatus::Fail)
    throw InvalidProblem("g must be positive on (0, inf): " + positive.note);
  const HypothesisCheck monotone = check_non_decreasing(prob.g, right, 0.0, "g non-decreasing");
  if (monotone.status == CheckStatus::Fail)
    throw InvalidProblem("g must be non-decreasing on (0, inf): " + monotone.note);
}

std::pair<double, double> series_start(const RadialProblem& prob, double r0) {
  const double ga = prob.g(prob.a);
  if (!(ga > 0)) throw InvalidProblem("g(a) must be positive");
  if (r0 == 0) return {prob.a, 0.0};
  static const GaussRule rule = gauss_legendre(16);
  const double c = ga / prob.D;
  const double dphi = prob.A.flux_inverse(c * r0);
  const double rise = integrate_fixed(rule, [&](double s) { return prob.A.flux_inverse(c * s); }, 0.0, r0);
  return {prob.a + rise, dphi};
}

namespace {

using State = Eigen::Vector2d;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

struct Dense {
  State y0, y1, c3v, c4v, c5v;
  double r0 = 0, h = 0;

  State at(double r) const {
    const double th = (r - r0) / h;
    const double th1 = 1 - th;
    const State c2v = y1 - y0;
    return y0 + th * (c2v + th1 * (c3v + th * (c4v + th1 * c5v)));
  }
};

class Integrator {
public:
  Integrator(const RadialProblem& prob, const BlowupOptions& opts) : prob_(prob), opts_(opts) {
    const FluxClass fc = classify_flux(prob.A);
    bounded_ = fc.bounded();
    L_ = fc.limit;
  }

  BlowupResult run();

private:
  const RadialProblem& prob_;
  const BlowupOptions& opts_;
  bool bounded_ = false;
  double L_ = 0.0;

  double weight(double r) const { return std::pow(r, prob_.D - 1); }

  double dphi(double r, double w) const { return prob_.A.flux_inverse(w / weight(r)); }

  bool rhs(double r, const State& y, State& out) const {
    try {
      out[0] = dphi(r, y[1]);
      out[1] = weight(r) * prob_.g(y[0]);
    } catch (const DomainError&) {
      return false;
    }
    return std::isfinite(out[0]) && std::isfinite(out[1]);
  }

  TrajectoryPoint point(double r, const State& y) const {
    double d = std::numeric_limits<double>::quiet_NaN();
    try {
      d = dphi(r, y[1]);
    } catch (const DomainError&) {
    }
    return {r, y[0], d, y[1]};
  }

  double crossing(const Dense& dense, double level) const {
    double lo = dense.r0, hi = dense.r0 + dense.h;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      if (dense.at(mid)[0] < level)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }
};

struct BlowupAnalysis {
  bool contracting = false;
  double R = 0.0;
  double spread = std::numeric_limits<double>::infinity();
  std::vector<double> extrapolants;
};

BlowupAnalysis analyse_crossings(const std::vector<std::pair<int, double>>& crossings) {
  BlowupAnalysis out;
  const std::size_t n = crossings.size();
  if (n < 5) return out;
  // Increments of the last four crossing radii must shrink.
  out.contracting = true;
  for (std::size_t i = n - 3; i < n; ++i) {
    const double inc = crossings[i].second - crossings[i - 1].second;
    const double prev = crossings[i - 1].second - crossings[i - 2].second;
    if (!(inc < 0.9 * prev)) out.contracting = false;
  }
  for (std::size_t i = 2; i < n; ++i) {
    const double r0 = crossings[i - 2].second, r1 = crossings[i - 1].second, r2 = crossings[i].second;
    const double d1 = r1 - r0, d2 = r2 - r1;
    out.extrapolants.push_back(d2 == d1 ? r2 : r2 - d2 * d2 / (d2 - d1));
  }
  out.R = out.extrapolants.back();
  const auto [lo, hi] = std::minmax_element(out.extrapolants.end() - 3, out.extrapolants.end());
  out.spread = *hi - *lo;
  return out;
}

BlowupResult Integrator::run() {
  BlowupResult res;
  double r = opts_.r0;
  State y(series_start(prob_, r).first, prob_.g(prob_.a) * std::pow(r, prob_.D) / prob_.D);
  if (opts_.record_trajectory) res.trajectory.push_back(point(r, y));

  std::vector<double> samples = opts_.sample_radii;
  std::sort(samples.begin(), samples.end());
  std::size_t next_sample = 0;
  while (next_sample < samples.size() && samples[next_sample] <= r) {
    res.samples.push_back(point(samples[next_sample], y));
    ++next_sample;
  }

  int next_decade = std::max(4, static_cast<int>(std::floor(std::log10(std::max(y[0], 1.0)))) + 1);
  const double floor_err = 100 * opts_.rel_tol;

  auto finish = [&](BlowupStatus status, std::string reason) {
    res.status = status;
    res.reason = std::move(reason);
    res.r_end = r;
    res.phi_end = y[0];
    return res;
  };
  auto try_blowup = [&](bool forced) -> bool {
    if (y[0] < opts_.cap) return false;
    const BlowupAnalysis an = analyse_crossings(res.crossings);
    res.extrapolants = an.extrapolants;
    if (!an.contracting) return false;
    if (an.spread <= 1e-6 * an.R || (forced && an.spread <= 1e-3 * an.R)) {
      res.R = an.R;
      res.R_error = std::max(an.spread, floor_err * an.R);
      return true;
    }
    return false;
  };

  State k1;
  if (!rhs(r, y, k1)) throw InvalidProblem("right-hand side not evaluable at the start radius");
  double h = std::min(opts_.r0, opts_.r_max - r);

  for (;;) {
    if (res.steps_taken + res.steps_rejected >= opts_.max_steps)
      return finish(BlowupStatus::Inconclusive, "step budget exhausted");
    if (r >= opts_.r_max) {
      return finish(BlowupStatus::GlobalExistence, "reached r_max with phi below the cap");
    }
    h = std::min(h, opts_.r_max - r);
    if (h < 1e-14 * r) {
      if (try_blowup(true))
        return finish(BlowupStatus::FiniteBlowup, "step size underflow past the cap; crossing radii contract");
      if (bounded_ && y[1] / weight(r) >= L_ * (1 - 1e-6))
        return finish(BlowupStatus::GradientBlowup, "flux reached its bound (step size underflow)");
      std::ostringstream why;
      why << "step size underflow below 1e-14 r";
      if (std::isinf(std::abs(k1[0])) || std::abs(k1[0]) > 1e300) why << " (phi' overflows)";
      if (y[0] < opts_.cap) why << "; phi = " << y[0] << " is still below the cap";
      return finish(BlowupStatus::Inconclusive, why.str());
    }

    State k2, k3, k4, k5, k6, k7;
    const State y2 = y + h * (a21 * k1);
    bool ok = rhs(r + c2 * h, y2, k2);
    const State y3 = y + h * (a31 * k1 + a32 * k2);
    ok = ok && rhs(r + c3 * h, y3, k3);
    const State y4 = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    ok = ok && rhs(r + c4 * h, y4, k4);
    const State y5 = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    ok = ok && rhs(r + c5 * h, y5, k5);
    const State y6 = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    ok = ok && rhs(r + h, y6, k6);
    State y1 = y;
    if (ok) {
      y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      ok = rhs(r + h, y1, k7);
    }
    if (!ok) {
      h /= 4;
      ++res.steps_rejected;
      continue;
    }

    const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    // w is scaled by r^(D-1) so that the error is controlled on Phi(phi') itself.
    const double wscale = std::max(weight(r + h), 1e-300);
    const double s0 = opts_.abs_tol + opts_.rel_tol * std::max(std::abs(y[0]), std::abs(y1[0]));
    const double s1 = opts_.abs_tol * wscale + opts_.rel_tol * std::max(std::abs(y[1]), std::abs(y1[1]));
    const double en = std::sqrt(0.5 * (std::pow(err[0] / s0, 2) + std::pow(err[1] / s1, 2)));
    if (!(en <= 1.0)) {
      h *= std::isfinite(en) ? std::max(0.2, 0.9 * std::pow(en, -0.2)) : 0.25;
      ++res.steps_rejected;
      continue;
    }
    if (y1[0] < y[0] || k7[0] < 0) {
      h /= 2;
      ++res.steps_rejected;
      continue;
    }

    Dense dense;
    dense.r0 = r;
    dense.h = h;
    dense.y0 = y;
    dense.y1 = y1;
    dense.c3v = h * k1 - (y1 - y);
    dense.c4v = (y1 - y) - h * k7 - dense.c3v;
    dense.c5v = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

    while (next_decade <= 300 && y1[0] >= std::pow(10.0, next_decade)) {
      res.crossings.emplace_back(next_decade, crossing(dense, std::pow(10.0, next_decade)));
      ++next_decade;
    }
    while (next_sample < samples.size() && samples[next_sample] <= r + h) {
      res.samples.push_back(point(samples[next_sample], dense.at(samples[next_sample])));
      ++next_sample;
    }

    r += h;
    y = y1;
    k1 = k7;
    ++res.steps_taken;
    if (opts_.record_trajectory) res.trajectory.push_back(point(r, y));
    h *= en == 0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(en, -0.2)));

    if (bounded_ && y[1] / weight(r) >= L_ * (1 - 1e-9))
      return finish(BlowupStatus::GradientBlowup, "flux r^(1-D) w reached its bound L(1 - 1e-9)");
    if (try_blowup(false))
      return finish(BlowupStatus::FiniteBlowup, "phi passed the cap; Aitken extrapolation of crossing radii");
    if (y[0] >= opts_.value_guard) {
      if (try_blowup(true))
        return finish(BlowupStatus::FiniteBlowup, "phi passed the value guard; crossing radii contract");
      return finish(BlowupStatus::GlobalExistence,
                    "phi exceeded the value guard at finite r but the crossing radii do not contract "
                    "(growth without finite-radius blow-up)");
    }
  }
}

} // namespace

BlowupResult integrate_blowup(const RadialProblem& prob, const BlowupOptions& opts) {
  validate(prob);
  if (!(opts.r0 > 0) || opts.r0 > 1e-6) throw InvalidProblem("r0 must lie in (0, 1e-6]");
  if (!(opts.r_max > opts.r0)) throw InvalidProblem("r_max must exceed r0");
  return Integrator(prob, opts).run();
}

std::vector<SweepEntry> blowup_radius_curve(const RadialProblem& prob_template, const std::vector<double>& a_values,
                                            const BlowupOptions& opts, unsigned threads) {
  std::vector<SweepEntry> out(a_values.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, a_values.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < a_values.size(); i = next++) {
      SweepEntry& e = out[i];
      e.a = a_values[i];
      try {
        RadialProblem prob = prob_template;
        prob.a = a_values[i];
        e.result = integrate_blowup(prob, opts);
      } catch (const Error& err) {
        e.error = err.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

} // namespace liouville
