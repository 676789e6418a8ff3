#include "liouville/verdict.hpp"

#include "liouville/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

namespace liouville {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

HypothesisCheck make_check(std::string id, bool ok, std::string note) {
  return HypothesisCheck{std::move(id), ok ? CheckStatus::Pass : CheckStatus::Fail, std::nullopt, std::move(note)};
}

HypothesisCheck inconclusive(std::string id, const std::string& why) {
  return HypothesisCheck{std::move(id), CheckStatus::Inconclusive, std::nullopt, why};
}

HypothesisCheck guarded(const std::string& id, const std::function<HypothesisCheck()>& run) {
  try {
    return run();
  } catch (const HypothesisViolation& e) {
    return HypothesisCheck{id, CheckStatus::Fail, e.witness(), e.what()};
  } catch (const Error& e) {
    return inconclusive(id, e.what());
  }
}

HypothesisReport guarded_report(const std::string& id, const std::function<HypothesisReport()>& run) {
  try {
    return run();
  } catch (const Error& e) {
    HypothesisReport r;
    r.checks.push_back(inconclusive(id, e.what()));
    return r;
  }
}

enum class Family { PLaplacian, Bounded, Unbounded };

struct KOOutcome {
  std::optional<KOReport> report;
  HypothesisCheck check;
};

// Lazily computed audits of one nonlinearity g (either f or -f(-t)).
struct Audit {
  explicit Audit(ScalarFunc fn) : g(std::move(fn)) {}

  ScalarFunc g;
  std::optional<HypothesisReport> continuity_, cond_f_;
  std::optional<HypothesisCheck> positive_, non_increasing_, nonnegative_, nonnegative_right_, positive_right_,
      tail_left_, tail_right_, not_zero_, odd_left_, odd_right_;
  std::optional<ZeroSet> zeros_;

  const HypothesisReport& continuity() {
    if (!continuity_) continuity_ = guarded_report("f/continuous", [&] { return check_continuity(g); });
    return *continuity_;
  }
  const HypothesisReport& cond_f() {
    if (!cond_f_) cond_f_ = guarded_report("cond:f", [&] { return check_condition_f(g); });
    return *cond_f_;
  }
  const HypothesisCheck& cached(std::optional<HypothesisCheck>& slot, const std::string& id,
                                const std::function<HypothesisCheck()>& run) {
    if (!slot) slot = guarded(id, run);
    return *slot;
  }
  const HypothesisCheck& positive() {
    return cached(positive_, "f/positive", [&] {
      return check_sign(g, whole_line(), SignRequirement::Positive, 0.0, "f/positive");
    });
  }
  const HypothesisCheck& non_increasing() {
    return cached(non_increasing_, "f/non-increasing",
                  [&] { return check_non_increasing(g, whole_line(), 0.0, "f/non-increasing"); });
  }
  const HypothesisCheck& nonnegative() {
    return cached(nonnegative_, "f/nonnegative", [&] {
      return check_sign(g, whole_line(), SignRequirement::NonNegative, 0.0, "f/nonnegative");
    });
  }
  std::vector<double> closed_right() {
    std::vector<double> pts{0.0};
    const auto r = right_of(0.0);
    pts.insert(pts.end(), r.begin(), r.end());
    return pts;
  }
  const HypothesisCheck& nonnegative_right() {
    return cached(nonnegative_right_, "f/nonnegative-on-[0,inf)", [&] {
      return check_sign(g, closed_right(), SignRequirement::NonNegative, 0.0, "f/nonnegative-on-[0,inf)");
    });
  }
  const HypothesisCheck& positive_right() {
    return cached(positive_right_, "f/positive-on-[0,inf)", [&] {
      return check_sign(g, closed_right(), SignRequirement::Positive, 0.0, "f/positive-on-[0,inf)");
    });
  }
  const HypothesisCheck& tail_left() {
    return cached(tail_left_, "f/liminf-at-minus-inf-positive",
                  [&] { return check_tail_sign(g, -1, "f/liminf-at-minus-inf-positive"); });
  }
  const HypothesisCheck& tail_right() {
    return cached(tail_right_, "f/limsup-at-plus-inf-negative",
                  [&] { return check_tail_sign(g, +1, "f/limsup-at-plus-inf-negative"); });
  }
  const HypothesisCheck& odd_left() {
    return cached(odd_left_, "cond:odd/positive-on-(-inf,0)", [&] {
      return check_sign(g, left_of(0.0), SignRequirement::Positive, 0.0, "cond:odd/positive-on-(-inf,0)");
    });
  }
  const HypothesisCheck& odd_right() {
    return cached(odd_right_, "cond:odd/negative-on-(0,inf)", [&] {
      return check_sign(g, right_of(0.0), SignRequirement::Negative, 0.0, "cond:odd/negative-on-(0,inf)");
    });
  }
  const HypothesisCheck& not_identically_zero() {
    return cached(not_zero_, "f/not-identically-zero", [&] {
      for (double t : whole_line())
        if (g(t) != 0.0) return make_check("f/not-identically-zero", true, "f(" + number(t) + ") != 0");
      return make_check("f/not-identically-zero", false, "f vanishes at every sample");
    });
  }
  std::optional<ZeroSet> zeros() {
    if (!zeros_) {
      try {
        zeros_ = find_zero_set(g);
      } catch (const Error&) {
        return std::nullopt;
      }
    }
    return zeros_;
  }
};

/// Hull of the sampled zero set with ends at the grid extremes read as unbounded.
std::pair<double, double> zero_hull(const ZeroSet& zs) {
  const auto& line = whole_line();
  const double lo = zs.first <= line.front() ? -kInf : zs.first;
  const double hi = zs.last >= line.back() ? kInf : zs.last;
  return {lo, hi};
}

std::string interval_text(double lo, double hi) {
  return std::string(std::isinf(lo) ? "(" : "[") + number(lo) + ", " + number(hi) + (std::isinf(hi) ? ")" : "]");
}

class Engine {
public:
  Engine(const ProblemSpec& spec, std::optional<double> alpha, std::optional<double> beta)
      : spec_(spec), alpha_(alpha), beta_(beta), audits_{Audit(spec.f), Audit(spec.f.mirrored())} {
    switch (spec.op) {
      case ProblemSpec::Operator::PLaplacian: A_ = DiffusionCoeff(PLaplacian{spec.p}); break;
      case ProblemSpec::Operator::MeanCurvature: A_ = DiffusionCoeff(MeanCurvature{}); break;
      case ProblemSpec::Operator::General: A_ = *spec.A; break;
    }
  }

  Verdict run();

private:
  bool carnot() const { return spec_.setting == ProblemSpec::Setting::Carnot; }
  bool general() const { return spec_.op == ProblemSpec::Operator::General; }

  const char* tag(const char* euclidean, const char* heisenberg, const char* general_id) const {
    if (general()) return general_id;
    return carnot() ? heisenberg : euclidean;
  }

  TheoremEvaluation start(std::string id, int side, std::string statement);
  void add_common(TheoremEvaluation& ev, int side, Family family);
  void add(TheoremEvaluation& ev, const HypothesisCheck& c) { ev.checks.checks.push_back(c); }
  void add(TheoremEvaluation& ev, const HypothesisReport& r) { ev.checks.append(r); }
  void add_ko(TheoremEvaluation& ev, int side, double alpha, const std::string& label);
  const KOOutcome& ko(int side, double alpha);
  void finish(TheoremEvaluation ev, Conclusion licensed, double lo = -kInf, double hi = kInf);

  // One-sided theorems, valid for inequalities and (through v = -u) equations.
  void disp(int side, Family family);
  void liouville_power(int side);
  void main_sign(int side, Family family);
  void mean_lower_bound(int side);
  void mean_positive(int side);
  void liouville_mean(int side);
  void bounded_sign(int side);
  // Equation theorems.
  void zero_only(Family family);
  void two_sided_bound(Family family);
  void mean_two_sided();
  void mean_constant();

  void one_sided(int side);
  Verdict combine();

  const ProblemSpec& spec_;
  std::optional<double> alpha_, beta_;
  Audit audits_[2];
  DiffusionCoeff A_ = DiffusionCoeff(PLaplacian{2.0});
  std::optional<FluxClass> flux_;
  std::string flux_note_;
  std::map<std::tuple<int, double>, KOOutcome> ko_cache_;
  std::vector<TheoremEvaluation> evals_;
  bool alpha_beta_auto_ = false;
  std::optional<double> used_alpha_, used_beta_;
};

TheoremEvaluation Engine::start(std::string id, int side, std::string statement) {
  TheoremEvaluation ev;
  ev.id = std::move(id);
  ev.applied_to = side == 0 ? "f" : "-f(-t)";
  ev.statement = std::move(statement);
  ev.checks.grid = sample_grid_description();
  return ev;
}

void Engine::add_common(TheoremEvaluation& ev, int side, Family family) {
  add(ev, audits_[side].continuity());
  if (!general()) return;
  add(ev, guarded_report("cond:A", [&] { return check_condition_A(A_); }));
  const bool want_bounded = family == Family::Bounded;
  const std::string id = want_bounded ? "A/flux-bounded" : "A/flux-unbounded";
  if (!flux_)
    add(ev, inconclusive(id, flux_note_));
  else
    add(ev, make_check(id, flux_->bounded() == want_bounded,
                       flux_->bounded() ? "lim t A(t) = " + number(flux_->limit) : "t A(t) unbounded"));
}

const KOOutcome& Engine::ko(int side, double alpha) {
  const auto key = std::make_tuple(side, alpha);
  auto it = ko_cache_.find(key);
  if (it != ko_cache_.end()) return it->second;
  const ScalarFunc& g = audits_[side].g;
  const bool use_general = general();
  const std::string id = use_general ? "dis:naiusagen" : "dis:naiusa";
  KOOutcome out{std::nullopt, HypothesisCheck{id, CheckStatus::Inconclusive, std::nullopt, ""}};
  try {
    KOReport r = use_general ? ko_classify_general(g, A_, alpha) : ko_classify(g, spec_.p, alpha);
    out.check.status = r.classification == KOClass::Converges  ? CheckStatus::Pass
                       : r.classification == KOClass::Diverges ? CheckStatus::Fail
                                                               : CheckStatus::Inconclusive;
    out.check.note = std::string(to_string(r.classification)) + ", endpoint " + std::string(to_string(r.endpoint));
    if (!std::isnan(r.tail_exponent)) out.check.note += ", tail exponent " + number(r.tail_exponent);
    out.report = std::move(r);
  } catch (const HypothesisViolation& e) {
    out.check.status = CheckStatus::Fail;
    out.check.witness = e.witness();
    out.check.note = e.what();
  } catch (const Error& e) {
    out.check.note = e.what();
  }
  return ko_cache_.emplace(key, std::move(out)).first->second;
}

void Engine::add_ko(TheoremEvaluation& ev, int side, double alpha, const std::string& label) {
  const KOOutcome& o = ko(side, alpha);
  HypothesisCheck c = o.check;
  c.id = c.id + "/" + label;
  add(ev, c);
  if (o.report) ev.ko.push_back({label, *o.report});
}

void Engine::finish(TheoremEvaluation ev, Conclusion licensed, double lo, double hi) {
  ev.passed = ev.checks.passed();
  if (ev.passed) {
    ev.licensed = licensed;
    ev.lo = lo;
    ev.hi = hi;
    if (ev.applied_to != "f") {
      // v = -u: bounds and level sets of v map to their negatives for u.
      switch (licensed) {
        case Conclusion::Nonnegative:
        case Conclusion::NonnegativeAndPositiveOrZero:
          ev.licensed = Conclusion::BoundedIn;
          ev.lo = -kInf;
          ev.hi = 0.0;
          break;
        case Conclusion::BoundedIn:
        case Conclusion::ConstantOnly:
          ev.lo = -hi;
          ev.hi = -lo;
          break;
        default: break;
      }
    }
  }
  evals_.push_back(std::move(ev));
}

// Positive non-increasing f with the integral condition: no solutions.
void Engine::disp(int side, Family family) {
  auto ev = start(tag("th:disp", "th:dispG", "th:dispA"), side, "no solutions");
  add_common(ev, side, family);
  add(ev, audits_[side].positive());
  add(ev, audits_[side].non_increasing());
  add_ko(ev, side, -1.0, "left of -1");
  finish(std::move(ev), Conclusion::NoSolutions);
}

// p >= N (or Q), f >= 0, (cond:f) and the integral condition: u is constant.
void Engine::liouville_power(int side) {
  auto ev = start(carnot() ? "cor:liouvG" : "cor:liouv", side,
                  "u is a constant alpha >= 0 with f(alpha) = 0; no solutions when f > 0 on [0, inf)");
  add_common(ev, side, Family::PLaplacian);
  const char* dim_name = carnot() ? "Q" : "N";
  add(ev, make_check(std::string("p>=") + dim_name, spec_.p >= spec_.dim,
                     "p = " + number(spec_.p) + ", " + dim_name + " = " + number(spec_.dim)));
  add(ev, audits_[side].cond_f());
  add(ev, audits_[side].nonnegative());
  add_ko(ev, side, -1.0, "left of -1");
  const HypothesisCheck& positive_right = audits_[side].positive_right();
  ev.refinements.push_back(positive_right);
  if (positive_right.status == CheckStatus::Pass) {
    finish(std::move(ev), Conclusion::NoSolutions);
    return;
  }
  const auto zs = audits_[side].zeros();
  if (!zs || zs->empty) {
    add(ev, inconclusive("f/zero-set", "no sampled zero of f although f > 0 fails on [0, inf)"));
    finish(std::move(ev), Conclusion::NoConclusion);
    return;
  }
  auto [lo, hi] = zero_hull(*zs);
  finish(std::move(ev), Conclusion::ConstantOnly, std::max(lo, 0.0), hi);
}

// (cond:f) and the integral condition: u >= 0, and u = 0 or u > 0 when f >= 0 on [0, inf).
void Engine::main_sign(int side, Family family) {
  const bool general_id = family == Family::Unbounded;
  auto ev = start(tag("th:main", "th:mainG", "th:maingen"), side,
                  general_id ? "u >= 0" : "u >= 0; either u = 0 or u > 0 when f >= 0 on [0, inf)");
  add_common(ev, side, family);
  add(ev, audits_[side].cond_f());
  add_ko(ev, side, -1.0, "left of -1");
  Conclusion c = Conclusion::Nonnegative;
  if (!general_id) {
    const HypothesisCheck& right = audits_[side].nonnegative_right();
    ev.refinements.push_back(right);
    if (right.status == CheckStatus::Pass) c = Conclusion::NonnegativeAndPositiveOrZero;
  }
  finish(std::move(ev), c, 0.0, kInf);
}

// Bounded flux and liminf f > 0 at -inf: u >= first zero of f, no solutions without zeros.
void Engine::mean_lower_bound(int side) {
  auto ev = start(general() ? "th:eqmeanbdA" : "th:eqmeanbd", side,
                  "u >= alpha, the smallest zero of f; no solutions when f has no zero");
  add_common(ev, side, Family::Bounded);
  add(ev, audits_[side].tail_left());
  const auto zs = audits_[side].zeros();
  if (!zs) {
    add(ev, inconclusive("f/zero-set", "zero set could not be sampled"));
    finish(std::move(ev), Conclusion::NoConclusion);
  } else if (zs->empty) {
    finish(std::move(ev), Conclusion::NoSolutions);
  } else {
    finish(std::move(ev), Conclusion::BoundedIn, zero_hull(*zs).first, kInf);
  }
}

// Bounded flux, f non-increasing and positive: the inequality has no solutions.
void Engine::mean_positive(int side) {
  auto ev = start(general() ? "th:meaneqA" : "th:meaneq", side, "no solutions (f positive)");
  add_common(ev, side, Family::Bounded);
  if (!general()) ev.side_conditions.push_back("u in C^2(R^N): regularity of solutions is assumed, not verified");
  add(ev, audits_[side].non_increasing());
  add(ev, audits_[side].positive());
  finish(std::move(ev), Conclusion::NoSolutions);
}

// Mean curvature on R^2 with f >= 0 and (cond:f): u is constant.
void Engine::liouville_mean(int side) {
  auto ev = start("cor:liouvmean", side,
                  "u is a constant alpha >= 0 with f(alpha) = 0; no solutions when f > 0 on [0, inf)");
  add_common(ev, side, Family::Bounded);
  add(ev, make_check("N=2", spec_.dim == 2.0, "N = " + number(spec_.dim)));
  add(ev, audits_[side].cond_f());
  add(ev, audits_[side].nonnegative());
  const HypothesisCheck& positive_right = audits_[side].positive_right();
  ev.refinements.push_back(positive_right);
  if (positive_right.status == CheckStatus::Pass) {
    finish(std::move(ev), Conclusion::NoSolutions);
    return;
  }
  const auto zs = audits_[side].zeros();
  if (!zs || zs->empty) {
    add(ev, inconclusive("f/zero-set", "no sampled zero of f although f > 0 fails on [0, inf)"));
    finish(std::move(ev), Conclusion::NoConclusion);
    return;
  }
  auto [lo, hi] = zero_hull(*zs);
  finish(std::move(ev), Conclusion::ConstantOnly, std::max(lo, 0.0), hi);
}

// Bounded flux with (cond:f), no integral condition needed: u >= 0.
void Engine::bounded_sign(int side) {
  auto ev = start(general() ? "th:boundedflux" : "th:euclmean", side, "u >= 0");
  add_common(ev, side, Family::Bounded);
  add(ev, audits_[side].cond_f());
  finish(std::move(ev), Conclusion::Nonnegative, 0.0, kInf);
}

// Non-increasing f with t f(t) < 0 and both one-sided integral conditions at -1, 1: u = 0.
void Engine::zero_only(Family family) {
  auto ev = start(tag("th:eqp", "th:eqpG", "th:eqpA"), 0, "u = 0");
  add_common(ev, 0, family);
  add(ev, audits_[0].non_increasing());
  add(ev, audits_[0].odd_left());
  add(ev, audits_[0].odd_right());
  add_ko(ev, 0, -1.0, "left of -1");
  add_ko(ev, 1, -1.0, "right of 1");
  finish(std::move(ev), Conclusion::ZeroOnly);
}

// (cond:fodd) at alpha <= beta with both one-sided integral conditions: alpha <= u <= beta.
void Engine::two_sided_bound(Family family) {
  auto ev = start(tag("th:eqpbd", "th:eqpG", "th:eqpbdA"), 0, "alpha <= u <= beta");
  add_common(ev, 0, family);
  std::optional<double> a = alpha_, b = beta_;
  if (!a || !b) {
    const auto zs = audits_[0].zeros();
    if (!zs || zs->empty) {
      add(ev, make_check("alpha-beta/auto-detected", false, "f has no sampled zero"));
      finish(std::move(ev), Conclusion::NoConclusion);
      return;
    }
    auto [lo, hi] = zero_hull(*zs);
    if (!a) a = lo;
    if (!b) b = hi;
    alpha_beta_auto_ = true;
    add(ev, make_check("alpha-beta/auto-detected", std::isfinite(*a) && std::isfinite(*b),
                       "outermost sampled zeros alpha = " + number(*a) + ", beta = " + number(*b)));
  } else {
    add(ev, make_check("alpha-beta/supplied", *a <= *b, "alpha = " + number(*a) + ", beta = " + number(*b)));
  }
  used_alpha_ = a;
  used_beta_ = b;
  if (!ev.checks.passed()) {
    finish(std::move(ev), Conclusion::NoConclusion);
    return;
  }
  add(ev, guarded_report("cond:fodd", [&] { return check_condition_fodd(spec_.f, *a, *b); }));
  // Auto-detected ends are zeros of f: the integral conditions are taken at
  // alpha - 1 and beta + 1 and the bound is the limit over alpha' < alpha, beta' > beta.
  const double left_at = alpha_ ? *a : *a - 1.0;
  const double right_at = beta_ ? *b : *b + 1.0;
  if (!alpha_ || !beta_) ev.statement += " (limit of the bounds at alpha' < alpha and beta' > beta)";
  add_ko(ev, 0, left_at, alpha_ ? "left of alpha" : "left of alpha-1");
  add_ko(ev, 1, -right_at, beta_ ? "right of beta" : "right of beta+1");
  finish(std::move(ev), Conclusion::BoundedIn, *a, *b);
}

// Bounded flux, liminf f > 0 at -inf and limsup f < 0 at +inf: alpha <= u <= beta.
void Engine::mean_two_sided() {
  auto ev = start(general() ? "th:eqmeanbdA" : "th:eqmeanbd", 0,
                  "alpha <= u <= beta, the smallest and largest zeros of f");
  add_common(ev, 0, Family::Bounded);
  add(ev, audits_[0].tail_left());
  add(ev, audits_[0].tail_right());
  const auto zs = audits_[0].zeros();
  if (!zs) {
    add(ev, inconclusive("f/zero-set", "zero set could not be sampled"));
    finish(std::move(ev), Conclusion::NoConclusion);
  } else if (zs->empty) {
    finish(std::move(ev), Conclusion::NoSolutions);
  } else {
    auto [lo, hi] = zero_hull(*zs);
    finish(std::move(ev), Conclusion::BoundedIn, lo, hi);
  }
}

// Bounded flux, f non-increasing, f not identically zero: u takes values in the
// zero set S of f; for the mean curvature operator u is constant.
void Engine::mean_constant() {
  const bool mean = !general();
  auto ev = start(mean ? "th:meaneq" : "th:meaneqA", 0,
                  mean ? "u is a constant alpha with f(alpha) = 0; no solutions when f has no zero"
                       : "u takes values in the zero set S of f; constant when S is a point");
  add_common(ev, 0, Family::Bounded);
  if (mean) ev.side_conditions.push_back("u in C^2(R^N): regularity of solutions is assumed, not verified");
  add(ev, audits_[0].non_increasing());
  add(ev, audits_[0].not_identically_zero());
  const auto zs = audits_[0].zeros();
  if (!zs) {
    add(ev, inconclusive("f/zero-set", "zero set could not be sampled"));
    finish(std::move(ev), Conclusion::NoConclusion);
    return;
  }
  if (zs->empty) {
    finish(std::move(ev), Conclusion::NoSolutions);
    return;
  }
  auto [lo, hi] = zero_hull(*zs);
  const Conclusion c = mean || lo == hi ? Conclusion::ConstantOnly : Conclusion::BoundedIn;
  finish(std::move(ev), c, lo, hi);
}

void Engine::one_sided(int side) {
  if (spec_.op == ProblemSpec::Operator::PLaplacian) {
    disp(side, Family::PLaplacian);
    liouville_power(side);
    main_sign(side, Family::PLaplacian);
    return;
  }
  if (spec_.op == ProblemSpec::Operator::MeanCurvature) {
    mean_lower_bound(side);
    mean_positive(side);
    if (spec_.dim == 2.0) liouville_mean(side);
    bounded_sign(side);
    return;
  }
  mean_lower_bound(side);
  mean_positive(side);
  bounded_sign(side);
  disp(side, Family::Unbounded);
  main_sign(side, Family::Unbounded);
}

Verdict Engine::run() {
  try {
    flux_ = classify_flux(A_);
    flux_note_ = flux_->bounded() ? "bounded, lim t A(t) = " + number(flux_->limit) : "unbounded";
  } catch (const Error& e) {
    flux_note_ = e.what();
  }

  const bool covered = !carnot() || spec_.op == ProblemSpec::Operator::PLaplacian;
  if (covered) {
    const bool equation = spec_.relation == ProblemSpec::Relation::Equation;
    one_sided(0);
    if (equation) {
      if (spec_.op == ProblemSpec::Operator::PLaplacian) {
        zero_only(Family::PLaplacian);
        two_sided_bound(Family::PLaplacian);
      } else if (spec_.op == ProblemSpec::Operator::MeanCurvature) {
        mean_two_sided();
        mean_constant();
      } else {
        mean_two_sided();
        mean_constant();
        zero_only(Family::Unbounded);
        two_sided_bound(Family::Unbounded);
      }
      one_sided(1);
    }
  }

  Verdict v = combine();
  if (!covered)
    v.description = "no theorem covers this operator on a Carnot group; only the p-Laplacian is supported there";
  v.flux = flux_;
  v.flux_note = flux_note_;
  v.alpha = used_alpha_;
  v.beta = used_beta_;
  v.alpha_beta_auto = alpha_beta_auto_;
  return v;
}

std::string describe(Conclusion c, double lo, double hi) {
  switch (c) {
    case Conclusion::NoSolutions: return "no solutions";
    case Conclusion::ZeroOnly: return "u = 0 is the only solution";
    case Conclusion::ConstantOnly:
      if (lo == hi) return "u = " + number(lo);
      return "u is constant, u = alpha with f(alpha) = 0 and alpha in the sampled zero set " + interval_text(lo, hi);
    case Conclusion::BoundedIn:
      if (std::isinf(hi)) return "u >= " + number(lo);
      if (std::isinf(lo)) return "u <= " + number(hi);
      return number(lo) + " <= u <= " + number(hi);
    case Conclusion::NonnegativeAndPositiveOrZero: return "u >= 0, and either u = 0 or u > 0";
    case Conclusion::Nonnegative: return "u >= 0";
    case Conclusion::NoConclusion: return "no theorem's sampled hypotheses all hold";
  }
  return {};
}

void cite(Verdict& v, const std::string& id) {
  if (std::find(v.cited.begin(), v.cited.end(), id) == v.cited.end()) v.cited.push_back(id);
}

Verdict Engine::combine() {
  Verdict v;
  auto passed_with = [&](Conclusion c) {
    std::vector<const TheoremEvaluation*> out;
    for (const auto& ev : evals_)
      if (ev.passed && ev.licensed == c) out.push_back(&ev);
    return out;
  };
  auto settle = [&](Conclusion c, double lo, double hi) {
    v.conclusion = c;
    v.lo = lo;
    v.hi = hi;
    v.description = describe(c, lo, hi);
  };

  if (auto none = passed_with(Conclusion::NoSolutions); !none.empty()) {
    for (auto* ev : none) cite(v, ev->id);
    settle(Conclusion::NoSolutions, -kInf, kInf);
  } else if (auto zero = passed_with(Conclusion::ZeroOnly); !zero.empty()) {
    for (auto* ev : zero) cite(v, ev->id);
    settle(Conclusion::ZeroOnly, 0.0, 0.0);
  } else if (auto constant = passed_with(Conclusion::ConstantOnly); !constant.empty()) {
    double lo = -kInf, hi = kInf;
    for (auto* ev : constant) {
      cite(v, ev->id);
      lo = std::max(lo, ev->lo);
      hi = std::min(hi, ev->hi);
    }
    settle(Conclusion::ConstantOnly, lo, hi);
  } else {
    double lo = -kInf, hi = kInf;
    bool positive_or_zero = false;
    for (const auto& ev : evals_) {
      if (!ev.passed || ev.licensed == Conclusion::NoConclusion) continue;
      lo = std::max(lo, ev.lo);
      hi = std::min(hi, ev.hi);
    }
    for (const auto& ev : evals_) {
      if (!ev.passed || ev.licensed == Conclusion::NoConclusion) continue;
      if ((std::isfinite(lo) && ev.lo == lo) || (std::isfinite(hi) && ev.hi == hi)) cite(v, ev.id);
      if (ev.licensed == Conclusion::NonnegativeAndPositiveOrZero) positive_or_zero = true;
    }
    const bool has_lo = std::isfinite(lo), has_hi = std::isfinite(hi);
    if (has_lo && has_hi) {
      if (lo > hi)
        settle(Conclusion::NoSolutions, -kInf, kInf);
      else if (lo == 0.0 && hi == 0.0)
        settle(Conclusion::ZeroOnly, 0.0, 0.0);
      else if (lo == hi)
        settle(Conclusion::ConstantOnly, lo, hi);
      else
        settle(Conclusion::BoundedIn, lo, hi);
    } else if (has_lo && lo == 0.0) {
      settle(positive_or_zero ? Conclusion::NonnegativeAndPositiveOrZero : Conclusion::Nonnegative, 0.0, kInf);
    } else if (has_lo || has_hi) {
      settle(Conclusion::BoundedIn, lo, hi);
    } else {
      settle(Conclusion::NoConclusion, -kInf, kInf);
    }
  }
  v.justification = std::move(evals_);
  return v;
}

} // namespace

void validate(const ProblemSpec& spec) {
  if (spec.op == ProblemSpec::Operator::PLaplacian && !(spec.p > 1.0))
    throw InvalidProblem("p must exceed 1, got " + number(spec.p));
  if (spec.op == ProblemSpec::Operator::General && !spec.A)
    throw InvalidProblem("a general operator needs a diffusion coefficient A");
  if (!(spec.dim > 1.0))
    throw InvalidProblem(std::string(spec.setting == ProblemSpec::Setting::Carnot ? "Q" : "N") +
                         " must exceed 1, got " + number(spec.dim));
}

std::string_view to_string(Conclusion c) {
  switch (c) {
    case Conclusion::NoSolutions: return "NoSolutions";
    case Conclusion::ZeroOnly: return "ZeroOnly";
    case Conclusion::ConstantOnly: return "ConstantOnly";
    case Conclusion::BoundedIn: return "BoundedIn";
    case Conclusion::NonnegativeAndPositiveOrZero: return "NonnegativeAndPositiveOrZero";
    case Conclusion::Nonnegative: return "Nonnegative";
    case Conclusion::NoConclusion: return "NoConclusion";
  }
  return "NoConclusion";
}

int strength_rank(Conclusion c) { return static_cast<int>(c); }

Verdict decide(const ProblemSpec& spec, std::optional<double> alpha, std::optional<double> beta) {
  validate(spec);
  return Engine(spec, alpha, beta).run();
}

namespace {

ProblemSpec problem(ProblemSpec::Operator op, double p, ScalarFunc f, ProblemSpec::Setting setting, double dim,
                    ProblemSpec::Relation relation) {
  ProblemSpec s;
  s.op = op;
  s.p = p;
  s.f = std::move(f);
  s.setting = setting;
  s.dim = dim;
  s.relation = relation;
  return s;
}

} // namespace

std::vector<VerdictScenario> golden_verdict_scenarios() {
  using Op = ProblemSpec::Operator;
  using Set = ProblemSpec::Setting;
  using Rel = ProblemSpec::Relation;
  const ScalarFunc cubic_odd(PowerSign{-1.0, 3.0});
  return {
      {"(a) p=2, f=-sign(t)|t|^3, equation, N=3",
       problem(Op::PLaplacian, 2.0, cubic_odd, Set::Euclidean, 3.0, Rel::Equation), Conclusion::ZeroOnly,
       "th:eqp"},
      {"(b) mean curvature, f=1, inequality, N=3",
       problem(Op::MeanCurvature, 2.0, ScalarFunc(Constant{1.0}), Set::Euclidean, 3.0, Rel::Inequality),
       Conclusion::NoSolutions, "th:eqmeanbd"},
      {"(c) p=2, f=|t|^2 on t<0 and 0 on t>=0, inequality, N=3",
       problem(Op::PLaplacian, 2.0, ScalarFunc::parse("max(-t, 0)^2"), Set::Euclidean, 3.0, Rel::Inequality),
       Conclusion::NonnegativeAndPositiveOrZero, "th:main"},
      {"(d) mean curvature, f non-increasing with zeros on [-1, 1], equation, N=3",
       problem(Op::MeanCurvature, 2.0, ScalarFunc::parse("max(-1 - t, 0) - max(t - 1, 0)"), Set::Euclidean, 3.0,
               Rel::Equation),
       Conclusion::ConstantOnly, "th:meaneq"},
      {"(e) p=3, N=2, f=|t|^3 on t<0 and 0 on t>=0, inequality",
       problem(Op::PLaplacian, 3.0, ScalarFunc::parse("max(-t, 0)^3"), Set::Euclidean, 2.0, Rel::Inequality),
       Conclusion::ConstantOnly, "cor:liouv"},
      {"(f) p=2, f=1+|t|^2 on t<0 and 1 on t>=0, inequality, N=3",
       problem(Op::PLaplacian, 2.0, ScalarFunc::parse("1 + max(-t, 0)^2"), Set::Euclidean, 3.0, Rel::Inequality),
       Conclusion::NoSolutions, "th:disp"},
      {"(g) p=3, f=|t|^2 on t<0 and 0 on t>=0 (q = p-1), inequality, N=3",
       problem(Op::PLaplacian, 3.0, ScalarFunc::parse("max(-t, 0)^2"), Set::Euclidean, 3.0, Rel::Inequality),
       Conclusion::NoConclusion, ""},
      {"(h) Heisenberg Q=4, p=2, f=-sign(t)|t|^3, equation",
       problem(Op::PLaplacian, 2.0, cubic_odd, Set::Carnot, 4.0, Rel::Equation), Conclusion::ZeroOnly, "th:eqpG"},
  };
}

} // namespace liouville
