#pragma once

// Comparison of a subsolution u and a supersolution v of
//
//   div(A(|grad w|) grad w) = g(w)
//
// at two levels: the pointwise monotonicity of xi -> A(|xi|) xi, and a
// discrete verifier on radial (or flat 1D) finite-volume grids.

#include "liouville/nonlinearity.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace liouville {

/// (A(|xi|) xi - A(|eta|) eta) . (xi - eta), with A(0) 0 := 0.
double monotone_pairing(const DiffusionCoeff& A, const Eigen::VectorXd& xi, const Eigen::VectorXd& eta);

struct PairingDecomposition {
  double I1 = 0.0;  ///< (Phi(|xi|) - Phi(|eta|)) (|xi| - |eta|)
  double I2 = 0.0;  ///< (A(|xi|) + A(|eta|)) (|xi||eta| - xi.eta)
};

PairingDecomposition decompose_pairing(const DiffusionCoeff& A, const Eigen::VectorXd& xi,
                                       const Eigen::VectorXd& eta);

/// (1 + |xi| + |eta|)(1 + Phi(|xi|) + Phi(|eta|)), the magnitude the pairing
/// tolerances are measured against.
double pairing_scale(const DiffusionCoeff& A, const Eigen::VectorXd& xi, const Eigen::VectorXd& eta);

/// Node values on r_0 < ... < r_M.  D = 1 is the flat operator; D > 1 is
/// radial with weight r^(D-1) and needs r_0 >= 0.
struct DiscreteField {
  Eigen::VectorXd r;
  Eigen::VectorXd values;
  double D = 1.0;

  Eigen::Index size() const { return r.size(); }
};

/// Throws InvalidProblem on non-increasing grids, non-finite values or size mismatch.
void validate(const DiscreteField& field);

/// Residual of the conservative finite-volume operator.  `values` has one entry
/// per node; entries outside [first, last] are boundary nodes and hold NaN.
struct DiscreteResidual {
  Eigen::VectorXd values;
  Eigen::Index first = 0;
  Eigen::Index last = -1;
};

/// L_i = (w_{i+1/2} - w_{i-1/2}) / vol_i, w_{i+1/2} = r_{i+1/2}^(D-1) Phi(du/dr).
/// For D > 1 with r_0 = 0 the centre node is interior with zero flux through r = 0.
DiscreteResidual discrete_radial_operator(const DiffusionCoeff& A, const DiscreteField& field);

struct ComparisonOptions {
  double epsilon = std::numeric_limits<double>::quiet_NaN();  ///< NaN: 1e-8 (1 + max|v|)
  int random_pairs = 1000;
  std::uint64_t seed = 0;
};

struct ComparisonCertificate {
  HypothesisReport hypotheses;  ///< H1/*, H2 (A/*), H3/*, S/*
  std::string g_case;           ///< "b", "a" or "b-only" (case (a) unusable, case (b) failed)
  bool hypotheses_hold = false;
  bool conclusion_holds = false;
  bool pass = false;
  double epsilon = 0.0;
  double residual_tol = 0.0;
  double sub_defect = 0.0;    ///< max_i (g1(u_i) - L(u)_i), the subsolution budget used
  double super_excess = 0.0;  ///< max_i (L(v)_i - g2(v_i))
  double max_gap = 0.0;       ///< max_i (u_i - v_i)
  std::optional<Eigen::Index> witness_node;  ///< set whenever pass is false
  double witness_r = 0.0;
  double violation = 0.0;     ///< u - v - epsilon at the first violating node
};

/// Runs the hypothesis audit and the conclusion check u <= v + epsilon.
/// Throws GridMismatch when u and v live on different grids.
ComparisonCertificate discrete_comparison_check(const DiffusionCoeff& A, const DiscreteField& u,
                                                const DiscreteField& v, const ScalarFunc& g1,
                                                const ScalarFunc& g2, const ComparisonOptions& opts = {});

/// Throws HypothesisViolation naming every failed hypothesis of the certificate.
void require_hypotheses(const ComparisonCertificate& cert);

} // namespace liouville
