#pragma once

// The flux transform G(t) = t^2 A(t) - int_0^t s A(s) ds and its inverse H.

#include "liouville/nonlinearity.hpp"

#include <vector>

namespace liouville {

/// G(t), closed form for builtins and adaptive quadrature (rel 1e-10) otherwise.
double compute_G(const DiffusionCoeff& A, double t);

/// Quadrature path of G for any coefficient, written as int_0^t (Phi(t) - Phi(s)) ds.
double compute_G_quadrature(const DiffusionCoeff& A, double t);

/// G'(t) = t Phi'(t).
double compute_G_derivative(const DiffusionCoeff& A, double t);

/// Sampled nodes (t_i, G(t_i)) on a geometric grid together with a strict
/// monotonicity certificate.  Immutable after construction.
class GHTable {
public:
  explicit GHTable(DiffusionCoeff A);

  const DiffusionCoeff& coefficient() const { return A_; }
  const std::vector<double>& t() const { return t_; }
  const std::vector<double>& G() const { return G_; }
  bool certified() const { return certified_; }
  bool unbounded() const { return unbounded_; }

  /// H(T); FluxMismatch for bounded flux, NonMonotone without a certificate.
  double invert(double T) const;

private:
  DiffusionCoeff A_;
  std::vector<double> t_;
  std::vector<double> G_;
  bool certified_ = true;
  bool unbounded_ = true;
};

/// H(T) with |G(H(T)) - T| <= max(1e-12, 1e-10 T).
double invert_H(const DiffusionCoeff& A, double T);

struct SlopeFit {
  double slope = 0.0;
  double residual = 0.0;  ///< RMS residual of the log-log fit divided by the ln T range
};

/// Least-squares fit of ln H(T) against ln T for T = 10^2, ..., 10^8.
SlopeFit h_slope_fit(const DiffusionCoeff& A);

/// Slope of h_slope_fit; Inconclusive when its residual exceeds 1e-3.
double h_asymptotic_slope(const DiffusionCoeff& A);

} // namespace liouville
