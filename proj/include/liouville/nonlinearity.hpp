#pragma once

// Scalar nonlinearities f, g, zeta and diffusion coefficients A, plus the
// sampled hypothesis audits the positivity theorems rely on.  Every audit is
// evidence on a finite grid, never a proof, and reports say so.

#include "liouville/expr.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace liouville {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return t >= lo && t <= hi; }
};

// Builtin scalar function shapes.
struct PowerSign {  ///< c |t|^q sign(t)
  double c = 1.0;
  double q = 1.0;
};
struct Power {  ///< c |t|^q
  double c = 1.0;
  double q = 1.0;
};
struct LogPower {  ///< c ln(1+|t|)^q
  double c = 1.0;
  double q = 1.0;
};
struct Constant {
  double c = 0.0;
};

class ScalarFunc {
public:
  explicit ScalarFunc(Expr body, Interval domain = {});
  ScalarFunc(PowerSign body);
  ScalarFunc(Power body);
  ScalarFunc(LogPower body);
  ScalarFunc(Constant body);

  static ScalarFunc parse(std::string_view src, Interval domain = {});
  static ScalarFunc from_callable(std::function<double(double)> fn, std::string description);

  double operator()(double t) const;
  std::string describe() const;
  const Interval& domain() const { return domain_; }

  /// t -> f(-t)
  ScalarFunc reflected() const;
  /// t -> -f(-t)
  ScalarFunc mirrored() const;
  /// t -> c f(t)
  ScalarFunc scaled(double c) const;
  /// t -> f(t + s)
  ScalarFunc shifted(double s) const;

  const Expr* expr() const { return std::get_if<Expr>(&body_); }

private:
  struct Affine {
    std::shared_ptr<const ScalarFunc> inner;
    double outer_scale;
    double inner_scale;
    double shift;
  };
  struct Callable {
    std::function<double(double)> fn;
    std::string description;
  };

  using Body = std::variant<Expr, PowerSign, Power, LogPower, Constant, Affine, Callable>;
  ScalarFunc(Body body, Interval domain) : body_(std::move(body)), domain_(domain) {}
  ScalarFunc affine(double outer, double inner, double shift) const;

  Body body_;
  Interval domain_;
};

// Builtin diffusion coefficients A(t).
struct PLaplacian {  ///< A(t) = t^(p-2)
  double p = 2.0;
};
struct MeanCurvature {};  ///< A(t) = 1/sqrt(1+t^2)
struct LogDiffusion {};   ///< A(t) = ln(1+t)/t, A(0) = 1

/// A(t) together with the flux Phi(s) = A(|s|) s.  Builtins have closed-form
/// Phi, Phi' and Phi^{-1}; expression coefficients fall back to numerics.
class DiffusionCoeff {
public:
  DiffusionCoeff(PLaplacian body);
  DiffusionCoeff(MeanCurvature body);
  DiffusionCoeff(LogDiffusion body);
  explicit DiffusionCoeff(Expr body);

  static DiffusionCoeff parse(std::string_view src) { return DiffusionCoeff(parse_expr(src)); }

  double operator()(double t) const;
  double flux(double s) const;
  double flux_derivative(double s) const;
  /// Solves flux(s) = y; DomainError if y is outside the range of the flux.
  double flux_inverse(double y) const;

  bool is_builtin() const { return !std::holds_alternative<Expr>(body_); }
  const PLaplacian* p_laplacian() const { return std::get_if<PLaplacian>(&body_); }
  bool is_mean_curvature() const { return std::holds_alternative<MeanCurvature>(body_); }
  bool is_log_diffusion() const { return std::holds_alternative<LogDiffusion>(body_); }
  const Expr* expr() const { return std::get_if<Expr>(&body_); }

  std::string describe() const;

private:
  std::variant<PLaplacian, MeanCurvature, LogDiffusion, Expr> body_;
};

enum class CheckStatus { Pass, Fail, Inconclusive };

std::string_view to_string(CheckStatus status);

struct HypothesisCheck {
  std::string id;
  CheckStatus status = CheckStatus::Pass;
  std::optional<double> witness;
  std::string note;
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;
  std::string grid;
  bool sampled = true;

  bool passed() const;
  const HypothesisCheck* first_failure() const;
  void append(const HypothesisReport& other);
};

/// Positive offsets 2^k (1 + j/16), k = -40..40, j = 0..15, merged with the
/// uniform grid 1e-3, 2e-3, ..., 10; ascending and de-duplicated.
const std::vector<double>& sample_offsets();
std::string sample_grid_description();

/// Absolute tolerance for sampled monotonicity comparisons.
inline constexpr double kMonotoneTol = 1e-12;

enum class SignRequirement { Positive, Negative, NonNegative, NonPositive };

/// Sign audit over `points` (ascending).  A failing report carries the
/// outermost node of the violating run nearest `anchor`.
HypothesisCheck check_sign(const ScalarFunc& f, const std::vector<double>& points, SignRequirement sign,
                           double anchor, std::string id);
HypothesisCheck check_non_increasing(const ScalarFunc& f, const std::vector<double>& points,
                                     double anchor, std::string id);
HypothesisCheck check_non_decreasing(const ScalarFunc& f, const std::vector<double>& points,
                                     double anchor, std::string id);

/// Points alpha - d for the sample offsets d, ascending.
std::vector<double> left_of(double alpha);
/// Points beta + d for the sample offsets d, ascending.
std::vector<double> right_of(double beta);
/// Whole-line grid: left_of(0), 0, right_of(0).
std::vector<double> whole_line();

/// f(t) > 0 and f non-increasing for t < 0.
HypothesisReport check_condition_f(const ScalarFunc& f);
/// f positive non-increasing on (-inf, alpha), negative non-increasing on (beta, inf).
HypothesisReport check_condition_fodd(const ScalarFunc& f, double alpha, double beta);
/// A(t) > 0 and t A(t) increasing for t > 0.
HypothesisReport check_condition_A(const DiffusionCoeff& A);
/// Evaluability on the declared domain plus a jump detector on [-10, 10].
HypothesisReport check_continuity(const ScalarFunc& f);

struct FluxClass {
  enum class Kind { Bounded, Unbounded };
  Kind kind = Kind::Unbounded;
  double limit = std::numeric_limits<double>::infinity();  ///< lim t A(t) when Bounded
  int samples = 0;

  bool bounded() const { return kind == Kind::Bounded; }
};

/// Classifies lim_{t->inf} t A(t) from the samples t = 2^k, k <= 60.
/// Throws Inconclusive when neither regime is resolved.
FluxClass classify_flux(const DiffusionCoeff& A);

/// Sampled zero set of f on the whole-line grid, refined by bisection at sign changes.
struct ZeroSet {
  bool empty = true;
  double first = 0.0;
  double last = 0.0;
};
ZeroSet find_zero_set(const ScalarFunc& f);

/// liminf_{t->-inf} f > 0 (side = -1) or limsup_{t->+inf} f < 0 (side = +1) on dyadic samples.
HypothesisCheck check_tail_sign(const ScalarFunc& f, int side, std::string id);

} // namespace liouville
