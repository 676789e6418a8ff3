#pragma once

// Generated sub/supersolution pairs for exercising discrete_comparison_check:
// exact discrete solutions obtained by damped Newton iteration, and the
// blow-up barrier instance behind the positivity argument.

#include "liouville/comparison.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace liouville {

/// Non-decreasing source term g with its derivative (used for the Newton Jacobian).
struct MonotoneSource {
  std::function<double(double)> g;
  std::function<double(double)> dg;
  std::string description;

  ScalarFunc as_scalar_func() const { return ScalarFunc::from_callable(g, description); }
};

/// Solves L(u)_i = g(u_i) - s_i at interior nodes with u fixed at boundary
/// nodes to the entries of `initial`.  Interior entries of `initial` are the
/// starting guess.  Throws StencilFailure when Newton does not converge.
DiscreteField solve_discrete(const DiffusionCoeff& A, const DiscreteField& initial, const MonotoneSource& g,
                             const Eigen::VectorXd& source, double tol = 1e-12);

struct ComparisonInstance {
  DiffusionCoeff A = DiffusionCoeff(PLaplacian{2.0});
  DiscreteField u;
  DiscreteField v;
  ScalarFunc g = ScalarFunc(Constant{0.0});
  std::string description;
};

/// Random admissible instance: random builtin A, dimension, nonuniform grid,
/// increasing g; u solves L(u) = g(u), v solves L(v) = g(v) - s with s >= 0
/// and boundary values of v at or above those of u.
ComparisonInstance random_comparison_instance(std::uint64_t seed);

/// D = 4, p = 2, g(t) = 8 max(t, 0)^3 on [0, r_b]: the subsolution
/// 1/(1 - r^2) - shift against the numerically integrated blow-up profile with
/// phi(0) = 1 sampled on an M-cell grid.  The profile is lifted by `lift`
/// (v + epsilon), so that g(v + lift) - g(v) absorbs the O(h^2) truncation
/// error of the sampled profile.
ComparisonInstance blowup_barrier_instance(double r_b = 0.9, double shift = 0.25, int cells = 2000,
                                           double lift = 1e-4);

} // namespace liouville
