#include "liouville/nonlinearity.hpp"

#include "liouville/derivative.hpp"
#include "liouville/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace liouville {

namespace {

std::string number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

} // namespace

// ---------------------------------------------------------------------------
// ScalarFunc

ScalarFunc::ScalarFunc(Expr body, Interval domain) : body_(std::move(body)), domain_(domain) {}
ScalarFunc::ScalarFunc(PowerSign body) : body_(body) {}
ScalarFunc::ScalarFunc(Power body) : body_(body) {}
ScalarFunc::ScalarFunc(LogPower body) : body_(body) {}
ScalarFunc::ScalarFunc(Constant body) : body_(body) {}

ScalarFunc ScalarFunc::parse(std::string_view src, Interval domain) {
  return ScalarFunc(parse_expr(src), domain);
}

ScalarFunc ScalarFunc::from_callable(std::function<double(double)> fn, std::string description) {
  return ScalarFunc(Body(Callable{std::move(fn), std::move(description)}), Interval{});
}

double ScalarFunc::operator()(double t) const {
  struct Visitor {
    double t;
    double operator()(const Expr& e) const { return eval_expr(e, t); }
    double operator()(const PowerSign& b) const {
      const double s = t > 0 ? 1.0 : t < 0 ? -1.0 : 0.0;
      return s == 0 ? 0.0 : b.c * std::pow(std::abs(t), b.q) * s;
    }
    double operator()(const Power& b) const { return b.c * std::pow(std::abs(t), b.q); }
    double operator()(const LogPower& b) const { return b.c * std::pow(std::log1p(std::abs(t)), b.q); }
    double operator()(const Constant& b) const { return b.c; }
    double operator()(const Affine& b) const {
      return b.outer_scale * (*b.inner)(b.inner_scale * t + b.shift);
    }
    double operator()(const Callable& b) const { return b.fn(t); }
  };
  return std::visit(Visitor{t}, body_);
}

std::string ScalarFunc::describe() const {
  struct Visitor {
    std::string operator()(const Expr& e) const { return to_string(e); }
    std::string operator()(const PowerSign& b) const {
      return number(b.c) + "*abs(t)^" + number(b.q) + "*sign(t)";
    }
    std::string operator()(const Power& b) const { return number(b.c) + "*abs(t)^" + number(b.q); }
    std::string operator()(const LogPower& b) const {
      return number(b.c) + "*ln(1 + abs(t))^" + number(b.q);
    }
    std::string operator()(const Constant& b) const { return number(b.c); }
    std::string operator()(const Affine& b) const {
      std::string arg = b.inner_scale == 1 ? "t" : b.inner_scale == -1 ? "-t" : number(b.inner_scale) + "*t";
      if (b.shift != 0) arg += (b.shift > 0 ? " + " : " - ") + number(std::abs(b.shift));
      std::string outer = b.outer_scale == 1 ? "" : b.outer_scale == -1 ? "-" : number(b.outer_scale) + "*";
      return outer + "[" + b.inner->describe() + "](" + arg + ")";
    }
    std::string operator()(const Callable& b) const { return b.description; }
  };
  return std::visit(Visitor{}, body_);
}

ScalarFunc ScalarFunc::affine(double outer, double inner, double shift) const {
  if (const auto* a = std::get_if<Affine>(&body_)) {
    // Fold nested affine maps: outer*a.outer*h(a.inner*(inner*t + shift) + a.shift).
    return ScalarFunc(Body(Affine{a->inner, outer * a->outer_scale, a->inner_scale * inner,
                                  a->inner_scale * shift + a->shift}),
                      Interval{});
  }
  return ScalarFunc(Body(Affine{std::make_shared<const ScalarFunc>(*this), outer, inner, shift}),
                    Interval{});
}

ScalarFunc ScalarFunc::reflected() const { return affine(1.0, -1.0, 0.0); }
ScalarFunc ScalarFunc::mirrored() const { return affine(-1.0, -1.0, 0.0); }
ScalarFunc ScalarFunc::scaled(double c) const { return affine(c, 1.0, 0.0); }
ScalarFunc ScalarFunc::shifted(double s) const { return affine(1.0, 1.0, s); }

// ---------------------------------------------------------------------------
// DiffusionCoeff

DiffusionCoeff::DiffusionCoeff(PLaplacian body) : body_(body) {
  if (!(body.p > 1)) throw InvalidProblem("p-Laplacian requires p > 1, got " + number(body.p));
}
DiffusionCoeff::DiffusionCoeff(MeanCurvature body) : body_(body) {}
DiffusionCoeff::DiffusionCoeff(LogDiffusion body) : body_(body) {}
DiffusionCoeff::DiffusionCoeff(Expr body) : body_(std::move(body)) {}

double DiffusionCoeff::operator()(double t) const {
  t = std::abs(t);
  struct Visitor {
    double t;
    double operator()(const PLaplacian& b) const { return std::pow(t, b.p - 2); }
    double operator()(const MeanCurvature&) const { return 1.0 / std::sqrt(1.0 + t * t); }
    double operator()(const LogDiffusion&) const { return t == 0 ? 1.0 : std::log1p(t) / t; }
    double operator()(const Expr& e) const { return eval_expr(e, t); }
  };
  return std::visit(Visitor{t}, body_);
}

double DiffusionCoeff::flux(double s) const {
  if (s == 0) return 0.0;
  const double m = std::abs(s);
  const double sign = s > 0 ? 1.0 : -1.0;
  struct Visitor {
    double m;
    double operator()(const PLaplacian& b) const { return std::pow(m, b.p - 1); }
    double operator()(const MeanCurvature&) const { return m / std::sqrt(1.0 + m * m); }
    double operator()(const LogDiffusion&) const { return std::log1p(m); }
    double operator()(const Expr& e) const { return m * eval_expr(e, m); }
  };
  return sign * std::visit(Visitor{m}, body_);
}

double DiffusionCoeff::flux_derivative(double s) const {
  const double m = std::abs(s);
  struct Visitor {
    const DiffusionCoeff& self;
    double m;
    double operator()(const PLaplacian& b) const { return (b.p - 1) * std::pow(m, b.p - 2); }
    double operator()(const MeanCurvature&) const { return std::pow(1.0 + m * m, -1.5); }
    double operator()(const LogDiffusion&) const { return 1.0 / (1.0 + m); }
    double operator()(const Expr&) const {
      const double h = std::max(1e-6, 1e-8 * m);
      const double lo = std::max(0.0, m - h);
      return (self.flux(m + h) - self.flux(lo)) / (m + h - lo);
    }
  };
  return std::visit(Visitor{*this, m}, body_);
}

double DiffusionCoeff::flux_inverse(double y) const {
  if (y == 0) return 0.0;
  if (y < 0) return -flux_inverse(-y);
  if (const auto* b = p_laplacian()) return std::pow(y, 1.0 / (b->p - 1));
  if (is_mean_curvature()) {
    if (y >= 1) throw DomainError("flux value outside the range (-1, 1) of t/sqrt(1+t^2)");
    return y / std::sqrt((1 - y) * (1 + y));
  }
  if (is_log_diffusion()) return std::expm1(y);

  double hi = 1.0;
  while (flux(hi) < y) {
    hi *= 2;
    if (hi > 1e300) throw DomainError("flux value " + number(y) + " outside the range of t A(t)");
  }
  double lo = 0.0;
  if (hi > 1) lo = hi / 2;
  for (int it = 0; it < 2000 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (flux(mid) < y)
      lo = mid;
    else
      hi = mid;
    if (hi < 1e-300) break;
  }
  return 0.5 * (lo + hi);
}

std::string DiffusionCoeff::describe() const {
  struct Visitor {
    std::string operator()(const PLaplacian& b) const { return "p_laplacian(p=" + number(b.p) + ")"; }
    std::string operator()(const MeanCurvature&) const { return "mean_curvature"; }
    std::string operator()(const LogDiffusion&) const { return "log_diffusion"; }
    std::string operator()(const Expr& e) const { return to_string(e); }
  };
  return std::visit(Visitor{}, body_);
}

// ---------------------------------------------------------------------------
// Hypothesis reports

std::string_view to_string(CheckStatus status) {
  switch (status) {
  case CheckStatus::Pass:
    return "pass";
  case CheckStatus::Fail:
    return "fail";
  case CheckStatus::Inconclusive:
    return "inconclusive";
  }
  return "?";
}

bool HypothesisReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const HypothesisCheck& c) { return c.status == CheckStatus::Pass; });
}

const HypothesisCheck* HypothesisReport::first_failure() const {
  for (const auto& c : checks)
    if (c.status != CheckStatus::Pass) return &c;
  return nullptr;
}

void HypothesisReport::append(const HypothesisReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  if (grid.empty()) grid = other.grid;
}

const std::vector<double>& sample_offsets() {
  static const std::vector<double> offsets = [] {
    std::vector<double> d;
    for (int k = -40; k <= 40; ++k)
      for (int j = 0; j < 16; ++j) d.push_back(std::ldexp(1.0 + j / 16.0, k));
    for (int i = 1; i <= 10000; ++i) d.push_back(i * 1e-3);
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
  }();
  return offsets;
}

std::string sample_grid_description() {
  return "offsets 2^k(1+j/16), k=-40..40, j=0..15, plus uniform step 1e-3 up to 10 (sampled, not a proof)";
}

std::vector<double> left_of(double alpha) {
  const auto& d = sample_offsets();
  std::vector<double> pts;
  pts.reserve(d.size());
  for (auto it = d.rbegin(); it != d.rend(); ++it) pts.push_back(alpha - *it);
  return pts;
}

std::vector<double> right_of(double beta) {
  const auto& d = sample_offsets();
  std::vector<double> pts;
  pts.reserve(d.size());
  for (double x : d) pts.push_back(beta + x);
  return pts;
}

std::vector<double> whole_line() {
  std::vector<double> pts = left_of(0.0);
  pts.push_back(0.0);
  const auto right = right_of(0.0);
  pts.insert(pts.end(), right.begin(), right.end());
  return pts;
}

namespace {

bool sign_ok(double v, SignRequirement sign) {
  switch (sign) {
  case SignRequirement::Positive:
    return v > 0;
  case SignRequirement::Negative:
    return v < 0;
  case SignRequirement::NonNegative:
    return v >= 0;
  case SignRequirement::NonPositive:
    return v <= 0;
  }
  return false;
}

std::vector<double> evaluate(const ScalarFunc& f, const std::vector<double>& pts) {
  std::vector<double> v(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) v[i] = f(pts[i]);
  return v;
}

// Index of the violation closest to `anchor`, then extended away from it while
// neighbours also violate.
template <class Bad>
std::optional<std::size_t> outermost_near(const std::vector<double>& pts, double anchor, Bad bad) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!bad(i)) continue;
    if (!best || std::abs(pts[i] - anchor) < std::abs(pts[*best] - anchor)) best = i;
  }
  if (!best) return best;
  std::size_t i = *best;
  if (pts[i] <= anchor) {
    while (i > 0 && bad(i - 1)) --i;
  } else {
    while (i + 1 < pts.size() && bad(i + 1)) ++i;
  }
  return i;
}

HypothesisCheck check_monotone(const ScalarFunc& f, const std::vector<double>& pts, double anchor,
                               std::string id, int direction) {
  HypothesisCheck check{std::move(id), CheckStatus::Pass, std::nullopt, {}};
  if (pts.size() < 2) return check;
  const auto v = evaluate(f, pts);
  // direction = -1: non-increasing, +1: non-decreasing, on ascending points.
  auto bad = [&](std::size_t i) {
    if (i + 1 >= pts.size()) return false;
    const double step = v[i + 1] - v[i];
    if (std::isinf(v[i]) && v[i] == v[i + 1]) return false;
    return direction < 0 ? step > kMonotoneTol : step < -kMonotoneTol;
  };
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!bad(i)) continue;
    if (!best || std::abs(pts[i] - anchor) < std::abs(pts[*best] - anchor)) best = i;
  }
  if (best) {
    check.status = CheckStatus::Fail;
    check.witness = pts[*best + 1];
    check.note = std::string(direction < 0 ? "increases" : "decreases") + " between t = " +
                 number(pts[*best]) + " and t = " + number(pts[*best + 1]);
  }
  return check;
}

} // namespace

HypothesisCheck check_sign(const ScalarFunc& f, const std::vector<double>& points, SignRequirement sign,
                           double anchor, std::string id) {
  HypothesisCheck check{std::move(id), CheckStatus::Pass, std::nullopt, {}};
  const auto v = evaluate(f, points);
  const auto hit = outermost_near(points, anchor, [&](std::size_t i) { return !sign_ok(v[i], sign); });
  if (hit) {
    check.status = CheckStatus::Fail;
    check.witness = points[*hit];
    check.note = "f(" + number(points[*hit]) + ") = " + number(v[*hit]);
  }
  return check;
}

HypothesisCheck check_non_increasing(const ScalarFunc& f, const std::vector<double>& points,
                                     double anchor, std::string id) {
  return check_monotone(f, points, anchor, std::move(id), -1);
}

HypothesisCheck check_non_decreasing(const ScalarFunc& f, const std::vector<double>& points,
                                     double anchor, std::string id) {
  return check_monotone(f, points, anchor, std::move(id), +1);
}

HypothesisReport check_condition_f(const ScalarFunc& f) {
  const auto pts = left_of(0.0);
  HypothesisReport report;
  report.grid = sample_grid_description();
  report.checks.push_back(check_sign(f, pts, SignRequirement::Positive, 0.0, "cond:f/positive"));
  report.checks.push_back(check_non_increasing(f, pts, 0.0, "cond:f/non-increasing"));
  return report;
}

HypothesisReport check_condition_fodd(const ScalarFunc& f, double alpha, double beta) {
  if (alpha > beta) throw InvalidInterval("alpha = " + number(alpha) + " exceeds beta = " + number(beta));
  const auto left = left_of(alpha);
  const auto right = right_of(beta);
  HypothesisReport report;
  report.grid = sample_grid_description();
  report.checks.push_back(check_sign(f, left, SignRequirement::Positive, alpha, "cond:fodd/left-positive"));
  report.checks.push_back(check_non_increasing(f, left, alpha, "cond:fodd/left-non-increasing"));
  report.checks.push_back(check_sign(f, right, SignRequirement::Negative, beta, "cond:fodd/right-negative"));
  report.checks.push_back(check_non_increasing(f, right, beta, "cond:fodd/right-non-increasing"));
  return report;
}

HypothesisReport check_condition_A(const DiffusionCoeff& A) {
  const auto& d = sample_offsets();
  HypothesisReport report;
  report.grid = sample_grid_description();

  HypothesisCheck positive{"A/positive", CheckStatus::Pass, std::nullopt, {}};
  HypothesisCheck increasing{"A/flux-increasing", CheckStatus::Pass, std::nullopt,
                             "t A(t) non-decreasing to 1e-12 relative; strictness is not resolvable "
                             "in double precision where the flux saturates"};
  double prev = 0.0;
  for (double t : d) {
    const double a = A(t);
    if (!(a > 0) && positive.status == CheckStatus::Pass) {
      positive.status = CheckStatus::Fail;
      positive.witness = t;
      positive.note = "A(" + number(t) + ") = " + number(a);
    }
    const double phi = A.flux(t);
    if (phi < prev - 1e-12 * std::max(1.0, std::abs(prev)) && increasing.status == CheckStatus::Pass) {
      increasing.status = CheckStatus::Fail;
      increasing.witness = t;
      increasing.note = "t A(t) decreases before t = " + number(t);
    }
    prev = phi;
  }
  report.checks.push_back(positive);
  report.checks.push_back(increasing);
  return report;
}

HypothesisReport check_continuity(const ScalarFunc& f) {
  HypothesisReport report;
  report.grid = "uniform step 1e-3 on [-10, 10] within the declared domain, jump refinement by bisection";
  HypothesisCheck evaluable{"f/evaluable", CheckStatus::Pass, std::nullopt, {}};
  HypothesisCheck continuous{"f/continuous", CheckStatus::Pass, std::nullopt, {}};
  const Interval& dom = f.domain();

  std::vector<double> ts;
  std::vector<double> vs;
  for (int i = -10000; i <= 10000; ++i) {
    const double t = i * 1e-3;
    if (!dom.contains(t)) continue;
    try {
      const double v = f(t);
      ts.push_back(t);
      vs.push_back(v);
    } catch (const DomainError& e) {
      if (evaluable.status == CheckStatus::Pass) {
        evaluable.status = CheckStatus::Fail;
        evaluable.witness = t;
        evaluable.note = e.what();
      }
    }
  }
  for (std::size_t i = 0; i + 1 < ts.size() && continuous.status == CheckStatus::Pass; ++i) {
    const double scale = 1 + std::max(std::abs(vs[i]), std::abs(vs[i + 1]));
    if (!(std::abs(vs[i + 1] - vs[i]) > 1e-2 * scale)) continue;
    double lo = ts[i], hi = ts[i + 1], flo = vs[i], fhi = vs[i + 1];
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      const double fm = f(mid);
      if (std::abs(fm - flo) >= std::abs(fhi - fm)) {
        hi = mid;
        fhi = fm;
      } else {
        lo = mid;
        flo = fm;
      }
    }
    if (std::abs(fhi - flo) > 1e-6 * (1 + std::max(std::abs(flo), std::abs(fhi)))) {
      continuous.status = CheckStatus::Fail;
      continuous.witness = 0.5 * (lo + hi);
      continuous.note = "jump of " + number(fhi - flo);
    }
  }
  report.checks.push_back(evaluable);
  report.checks.push_back(continuous);
  return report;
}

FluxClass classify_flux(const DiffusionCoeff& A) {
  constexpr int kMax = 60;
  constexpr int kWindow = 10;
  std::vector<double> s;
  for (int k = 0; k <= kMax; ++k) {
    s.push_back(A.flux(std::ldexp(1.0, k)));
    if (s.back() > 1e12) return {FluxClass::Kind::Unbounded, std::numeric_limits<double>::infinity(), k + 1};
    if (k < kWindow + 1) continue;

    bool growing = true;
    double ratio_max = 0.0;
    for (int j = k - kWindow + 1; j <= k; ++j) {
      const double d1 = s[j] - s[j - 1];
      const double d0 = s[j - 1] - s[j - 2];
      if (d1 < 0 || d0 < 0) {
        growing = false;
        ratio_max = 1.0;
        break;
      }
      const double r = d0 == 0 ? (d1 == 0 ? 0.0 : 2.0) : d1 / d0;
      ratio_max = std::max(ratio_max, r);
      if (!(d1 > 0 && r >= 1 - 1e-3)) growing = false;
    }
    if (growing) return {FluxClass::Kind::Unbounded, std::numeric_limits<double>::infinity(), k + 1};
    if (ratio_max <= 0.9) {
      const double last = s[k] - s[k - 1];
      const double tail = ratio_max == 0 ? 0.0 : last * ratio_max / (1 - ratio_max);
      if (tail <= 1e-9 * std::abs(s[k])) return {FluxClass::Kind::Bounded, s[k] + tail, k + 1};
    }
  }
  throw Inconclusive("asymptotic regime of t A(t) not resolved up to t = 2^60 for A = " + A.describe());
}

ZeroSet find_zero_set(const ScalarFunc& f) {
  const auto pts = whole_line();
  const auto v = evaluate(f, pts);
  ZeroSet zs;
  auto note = [&](double z) {
    if (zs.empty) {
      zs.empty = false;
      zs.first = zs.last = z;
    } else {
      zs.first = std::min(zs.first, z);
      zs.last = std::max(zs.last, z);
    }
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (v[i] == 0) note(pts[i]);
    if (i + 1 < pts.size() && v[i] != 0 && v[i + 1] != 0 && std::signbit(v[i]) != std::signbit(v[i + 1])) {
      double lo = pts[i], hi = pts[i + 1];
      const bool lo_neg = v[i] < 0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        const double fm = f(mid);
        if (fm == 0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0) == lo_neg)
          lo = mid;
        else
          hi = mid;
      }
      note(0.5 * (lo + hi));
    }
  }
  return zs;
}

HypothesisCheck check_tail_sign(const ScalarFunc& f, int side, std::string id) {
  HypothesisCheck check{std::move(id), CheckStatus::Pass, std::nullopt,
                        "dyadic samples |t| = 2^k, k = 20..40 (sampled)"};
  std::vector<double> v;
  for (int k = 20; k <= 40; ++k) {
    const double t = side * std::ldexp(1.0, k);
    const double value = -side * f(t);  // positive when the required sign holds
    if (!(value > 0)) {
      check.status = CheckStatus::Fail;
      check.witness = t;
      check.note = "f(" + number(t) + ") = " + number(-side * value);
      return check;
    }
    v.push_back(value);
  }
  const double v20 = v.front(), v30 = v[10], v40 = v.back();
  const bool non_decaying = v40 >= v30 * (1 - 1e-9);
  bool positive_limit = false;
  const double d1 = v30 - v20, d2 = v40 - v30;
  if (d2 != d1 && std::isfinite(v40)) {
    const double limit = v40 - d2 * d2 / (d2 - d1);
    positive_limit = limit >= 0.9 * v40;
  }
  if (!non_decaying && !positive_limit) {
    check.status = CheckStatus::Fail;
    check.witness = side * std::ldexp(1.0, 40);
    check.note = "tail values decay towards zero";
  }
  return check;
}

} // namespace liouville
