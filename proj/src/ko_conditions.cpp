#include "liouville/ko_conditions.hpp"

#include "liouville/errors.hpp"
#include "liouville/gh_transform.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace liouville {

std::string_view to_string(KOClass c) {
  switch (c) {
  case KOClass::Converges:
    return "converges";
  case KOClass::Diverges:
    return "diverges";
  case KOClass::Inconclusive:
    return "inconclusive";
  }
  return "?";
}

std::string_view to_string(EndpointBehavior e) {
  switch (e) {
  case EndpointBehavior::Integrable:
    return "integrable";
  case EndpointBehavior::NonIntegrable:
    return "non-integrable";
  case EndpointBehavior::Undetermined:
    return "undetermined";
  }
  return "?";
}

double inner_integral(const ScalarFunc& f, double t, double alpha) {
  if (!(t < alpha)) throw InvalidInterval("inner integral needs t < alpha");
  return integrate_gk([&](double s) { return f(s); }, t, alpha, {1e-10, 1e-14, 10000}).value;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SeriesDecision {
  KOClass cls = KOClass::Inconclusive;
  double tail = 0.0;
  std::string model;
  double exponent = std::numeric_limits<double>::quiet_NaN();
};

double ratio(double num, double den) {
  if (den == 0) return num == 0 ? 0.0 : kInf;
  return num / den;
}

// True when 1 - s_j/s_{j-1} decays like 1/scale_j (algebraic sums) rather than staying
// constant (geometric sums), judged over the last 50 ratios.
template <class Scale>
bool ratios_drift_to_one(const std::vector<double>& s, Scale scale) {
  const int n = static_cast<int>(s.size());
  const int fit = std::min(50, n / 2);
  std::vector<double> x, y;
  for (int j = n - fit; j < n; ++j) {
    const double gap = 1 - ratio(s[j], s[j - 1]);
    if (!(gap > 0) || !std::isfinite(gap)) return false;
    x.push_back(std::log(scale(j)));
    y.push_back(std::log(gap));
  }
  if (x.size() < 3) return false;
  const double m = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / m;
    my += y[i] / m;
  }
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx < -0.5;
}

// Decision on a series of positive segment sums; `final` requests a verdict at the end of
// the budget.  `scale(j)` is ln of the segment's distance scale, used by the algebraic fit.
template <class Scale>
SeriesDecision decide(const std::vector<double>& s, double total, bool final, const KOOptions& opts,
                      Scale scale) {
  SeriesDecision d;
  const int n = static_cast<int>(s.size());
  const int k = n - 1;
  if (n == 0) return d;
  if (std::isinf(s[k])) {
    d.cls = KOClass::Diverges;
    d.exponent = kInf;
    return d;
  }
  if (n >= 2) {
    const double r = ratio(s[k], s[k - 1]);
    if (r > 0 && std::isfinite(r)) d.exponent = std::log2(r) - 1;
  }
  if (n >= 2 && s[k] == 0 && s[k - 1] == 0) {
    d.cls = KOClass::Converges;
    d.model = "negligible";
    return d;
  }
  if (n < opts.min_segments) return d;

  const int window = std::min(opts.ratio_window, n - 1);
  double rmax = 0.0, rmin = kInf;
  for (int j = n - window; j < n; ++j) {
    const double r = ratio(s[j], s[j - 1]);
    rmax = std::max(rmax, r);
    rmin = std::min(rmin, r);
  }
  const double rlast = ratio(s[k], s[k - 1]);
  auto geometric_tail = [&](double r) { return s[k] * r / (1 - r); };

  if (rmax <= opts.converge_ratio) {
    const double tail = geometric_tail(rlast);
    const double spread = std::abs(geometric_tail(rmax) - geometric_tail(rmin));
    if (spread <= opts.tail_rel_tol * (total + tail) || (final && !ratios_drift_to_one(s, scale))) {
      d.cls = KOClass::Converges;
      d.tail = tail;
      d.model = "geometric";
      return d;
    }
  }

  if (n > opts.diverge_persistence) {
    bool sustained = true;
    for (int j = n - opts.diverge_persistence; j < n; ++j)
      if (ratio(s[j], s[j - 1]) < opts.diverge_ratio) sustained = false;
    bool flat = true;
    for (int j = std::max(1, n - opts.flat_window + 1); j < n; ++j)
      if (s[j] < s[j - 1] * (1 - 1e-12)) flat = false;
    if (sustained && flat) {
      d.cls = KOClass::Diverges;
      return d;
    }
  }

  if (!final) return d;

  // Algebraic-in-scale tail: s_j ~ (ln distance)^(-m), summable iff m > 1.
  const int fit = std::min(50, n / 2);
  double mx = 0, my = 0;
  int used = 0;
  for (int j = n - fit; j < n; ++j) {
    if (!(s[j] > 0)) return d;
    mx += std::log(scale(j));
    my += std::log(s[j]);
    ++used;
  }
  mx /= used;
  my /= used;
  double sxx = 0, sxy = 0;
  for (int j = n - fit; j < n; ++j) {
    const double x = std::log(scale(j)) - mx;
    sxx += x * x;
    sxy += x * (std::log(s[j]) - my);
  }
  const double m = -sxy / sxx;
  if (m >= opts.algebraic_converge) {
    d.cls = KOClass::Converges;
    d.model = "algebraic";
    // sum_{j>k} s_k (scale_j/scale_k)^(-m) with scale linear in j.
    const double slope = scale(k) - scale(k - 1);
    d.tail = s[k] * scale(k) / slope / (m - 1);
  } else if (m <= opts.algebraic_diverge) {
    d.cls = KOClass::Diverges;
    d.model = "algebraic";
  }
  return d;
}

struct Context {
  const KOIntegrand& problem;
  double alpha;
  const KOOptions& opts;

  double rho(double u) const { return problem.density(alpha - u); }

  // int_a^b rho(alpha - u) du; relative tolerance only, the values may be tiny.
  double F_between(double a, double b) const {
    if (a == b) return 0.0;
    return integrate_gk([&](double u) { return rho(u); }, a, b,
                        {opts.quadrature.rel_tol, 0.0, opts.quadrature.max_intervals})
        .value;
  }

  double outer(double d, double F) const {
    const double T = problem.transform(F);
    if (T == 0) return 0.0;
    return problem.weight(alpha - d) * T;
  }

  QuadratureResult segment(double a, double b, double Fa) const {
    const QuadratureOptions o{opts.quadrature.rel_tol, 0.0, opts.quadrature.max_intervals};
    return integrate_gk([&](double d) { return outer(d, Fa + F_between(a, d)); }, a, b, o);
  }
};

} // namespace

KOReport ko_classify_integrand(const KOIntegrand& problem, double alpha, const KOOptions& opts) {
  const Context ctx{problem, alpha, opts};
  KOReport report;
  report.integrand = problem.description;

  // Endpoint [alpha - 1, alpha].
  double quad_error = 0.0;
  const double rho_alpha = ctx.rho(0.0);
  if (rho_alpha > 0) {
    const QuadratureOptions o{opts.quadrature.rel_tol, 0.0, opts.quadrature.max_intervals};
    const QuadratureResult r = integrate_gk(
        [&](double x) {
          const double d = x * x;
          return 2 * x * ctx.outer(d, ctx.F_between(0.0, d));
        },
        0.0, 1.0, o);
    report.endpoint_value = r.value;
    quad_error += r.error;
    report.endpoint = std::isinf(r.value) ? EndpointBehavior::NonIntegrable : EndpointBehavior::Integrable;
  } else {
    std::vector<double> sums;
    double total = 0.0;
    SeriesDecision dec;
    for (int j = 0; j < opts.endpoint_levels; ++j) {
      const double hi = std::ldexp(1.0, -j);
      const double lo = hi / 2;
      const QuadratureResult r = ctx.segment(lo, hi, ctx.F_between(0.0, lo));
      report.endpoint_segments.push_back({alpha - hi, alpha - lo, r.value, r.error});
      sums.push_back(r.value);
      total += r.value;
      quad_error += r.error;
      dec = decide(sums, total, j + 1 == opts.endpoint_levels, opts,
                   [](int i) { return (i + 1.5) * std::log(2.0); });
      if (dec.cls != KOClass::Inconclusive) break;
    }
    report.endpoint_value = total + dec.tail;
    report.endpoint = dec.cls == KOClass::Converges   ? EndpointBehavior::Integrable
                      : dec.cls == KOClass::Diverges ? EndpointBehavior::NonIntegrable
                                                     : EndpointBehavior::Undetermined;
  }

  // Far segments [alpha - 2^(k+1), alpha - 2^k].
  std::vector<double> sums;
  double total = 0.0;
  double F = ctx.F_between(0.0, 1.0);
  SeriesDecision dec;
  for (int k = 0; k <= opts.k_max; ++k) {
    const double lo = std::ldexp(1.0, k);
    const double hi = 2 * lo;
    const QuadratureResult r = ctx.segment(lo, hi, F);
    F += ctx.F_between(lo, hi);
    report.segments.push_back({alpha - hi, alpha - lo, r.value, r.error});
    sums.push_back(r.value);
    total += r.value;
    quad_error += r.error;
    dec = decide(sums, total, k == opts.k_max, opts, [](int j) { return (j + 0.585) * std::log(2.0); });
    if (dec.cls != KOClass::Inconclusive) break;
  }
  report.segments_used = static_cast<int>(report.segments.size());
  report.tail_classification = dec.cls;
  report.tail_model = dec.model;
  report.tail_exponent = dec.exponent;
  report.error_estimate = quad_error;

  std::ostringstream note;
  switch (report.endpoint) {
  case EndpointBehavior::NonIntegrable:
    report.classification = KOClass::Diverges;
    note << "integrand is not integrable at t = alpha; ";
    break;
  case EndpointBehavior::Undetermined:
    report.classification =
        dec.cls == KOClass::Diverges ? KOClass::Diverges : KOClass::Inconclusive;
    note << "endpoint behaviour at t = alpha not resolved; ";
    break;
  case EndpointBehavior::Integrable:
    report.classification = dec.cls;
    break;
  }
  if (dec.cls == KOClass::Converges) {
    report.tail_estimate = dec.tail;
    if (report.classification == KOClass::Converges) report.value = report.endpoint_value + total + dec.tail;
  }
  if (dec.cls == KOClass::Inconclusive) note << "segment sums neither decay geometrically nor persist; ";
  note << "dyadic segments used: " << report.segments_used;
  report.note = note.str();
  return report;
}

namespace {

void require_positive_left(const ScalarFunc& f, double alpha) {
  const HypothesisCheck check = check_sign(f, left_of(alpha), SignRequirement::Positive, alpha, "f>0 left of alpha");
  if (check.status == CheckStatus::Fail)
    throw HypothesisViolation("f <= 0 on (-inf, alpha): " + check.note, *check.witness);
}

} // namespace

KOReport ko_classify(const ScalarFunc& f, double p, double alpha, const KOOptions& opts) {
  if (!(p > 1)) throw InvalidProblem("p must exceed 1");
  require_positive_left(f, alpha);
  const double e = -1.0 / p;
  KOIntegrand problem{[&f](double s) { return f(s); }, [](double) { return 1.0; },
                      [e](double F) { return std::pow(F, e); },
                      "(int_t^alpha f)^(-1/p), f = " + f.describe()};
  return ko_classify_integrand(problem, alpha, opts);
}

std::pair<KOReport, KOReport> ko_classify_two_sided(const ScalarFunc& f, double p, double alpha, double beta,
                                                    const KOOptions& opts) {
  if (alpha > beta) throw InvalidInterval("alpha exceeds beta");
  KOReport left = ko_classify(f, p, alpha, opts);
  KOReport right = ko_classify(f.mirrored(), p, -beta, opts);
  return {std::move(left), std::move(right)};
}

KOReport ko_classify_general(const ScalarFunc& f, const DiffusionCoeff& A, double alpha, const KOOptions& opts) {
  if (classify_flux(A).bounded())
    throw FluxMismatch("the integral condition with H applies to unbounded flux only; " + A.describe() +
                       " has bounded flux");
  require_positive_left(f, alpha);
  std::shared_ptr<const GHTable> table;
  if (!A.is_builtin()) table = std::make_shared<const GHTable>(A);
  KOIntegrand problem{[&f](double s) { return f(s); }, [](double) { return 1.0; },
                      [&A, table](double F) {
                        if (std::isinf(F)) return 0.0;
                        const double H = table ? table->invert(F) : invert_H(A, F);
                        return 1.0 / H;
                      },
                      "1/H(int_t^alpha f), f = " + f.describe() + ", A = " + A.describe()};
  return ko_classify_integrand(problem, alpha, opts);
}

KOReport ko_classify_porous(const ScalarFunc& f, double gamma, double alpha, const KOOptions& opts) {
  if (!(gamma >= 1)) throw InvalidProblem("gamma must be at least 1");
  require_positive_left(f, alpha);
  const double w = gamma - 1;
  KOIntegrand problem{[&f, w](double s) { return f(s) * std::pow(std::abs(s), w); },
                      [w](double t) { return std::pow(std::abs(t), w); },
                      [](double F) { return 1.0 / std::sqrt(F); },
                      "|t|^(gamma-1) (int_t^alpha f |s|^(gamma-1))^(-1/2), f = " + f.describe()};
  return ko_classify_integrand(problem, alpha, opts);
}

} // namespace liouville
