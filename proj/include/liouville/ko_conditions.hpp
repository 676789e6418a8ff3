#pragma once

// Convergence classification of Keller-Osserman type integrals
//
//   int_{-inf}^{alpha} w(t) T( int_t^alpha rho(s) ds ) dt
//
// by dyadic segmentation of the far range and a regularizing substitution at
// the endpoint t = alpha.

#include "liouville/nonlinearity.hpp"
#include "liouville/quadrature.hpp"

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace liouville {

enum class KOClass { Converges, Diverges, Inconclusive };

std::string_view to_string(KOClass c);

struct KOOptions {
  int k_max = 200;                  ///< last far segment [alpha - 2^(k+1), alpha - 2^k]
  int endpoint_levels = 60;         ///< dyadic levels towards alpha when rho(alpha) = 0
  int min_segments = 6;
  int ratio_window = 10;            ///< window for the geometric-tail ratio
  double converge_ratio = 0.99;
  double tail_rel_tol = 1e-6;
  int diverge_persistence = 20;
  double diverge_ratio = 1 - 1e-6;
  int flat_window = 8;              ///< Diverges also needs these many non-decreasing sums
  double algebraic_converge = 1.2;  ///< slope thresholds of the log-log tail fit at k_max
  double algebraic_diverge = 0.75;
  QuadratureOptions quadrature{1e-10, 1e-14, 10000};
};

struct KOSegment {
  double lo = 0.0;  ///< segment in t
  double hi = 0.0;
  double sum = 0.0;
  double error = 0.0;
};

enum class EndpointBehavior { Integrable, NonIntegrable, Undetermined };

std::string_view to_string(EndpointBehavior e);

struct KOReport {
  KOClass classification = KOClass::Inconclusive;
  double value = std::numeric_limits<double>::quiet_NaN();  ///< integral when Converges
  double error_estimate = 0.0;  ///< accumulated quadrature error
  double tail_estimate = 0.0;   ///< extrapolated contribution beyond the last segment
  std::string tail_model;       ///< "geometric", "algebraic", "negligible" or empty
  double tail_exponent = std::numeric_limits<double>::quiet_NaN();  ///< e with integrand ~ |t|^e
  KOClass tail_classification = KOClass::Inconclusive;
  EndpointBehavior endpoint = EndpointBehavior::Integrable;
  double endpoint_value = 0.0;  ///< integral over [alpha - 1, alpha]
  int segments_used = 0;
  std::vector<KOSegment> segments;     ///< far segments, k = 0, 1, ...
  std::vector<KOSegment> endpoint_segments;  ///< only when rho(alpha) = 0
  std::string integrand;
  std::string note;
};

/// int_t^alpha f(s) ds by adaptive Gauss-Kronrod (rel 1e-10, abs 1e-14).
double inner_integral(const ScalarFunc& f, double t, double alpha);

/// Generic problem description consumed by the classification engine.
struct KOIntegrand {
  std::function<double(double)> density;    ///< rho(s), inner integrand
  std::function<double(double)> weight;     ///< w(t), outer weight
  std::function<double(double)> transform;  ///< T(F), decreasing with T(0) = inf
  std::string description;
};

KOReport ko_classify_integrand(const KOIntegrand& problem, double alpha, const KOOptions& opts = {});

/// int_{-inf}^{alpha} (int_t^alpha f)^{-1/p} dt.
KOReport ko_classify(const ScalarFunc& f, double p, double alpha, const KOOptions& opts = {});

/// Left report for (-inf, alpha); right report for int_beta^inf (int_beta^t -f)^{-1/p} dt,
/// computed as ko_classify(-f(-t), p, -beta).
std::pair<KOReport, KOReport> ko_classify_two_sided(const ScalarFunc& f, double p, double alpha, double beta,
                                                    const KOOptions& opts = {});

/// int_{-inf}^{alpha} dt / H(int_t^alpha f); FluxMismatch when t A(t) is bounded.
KOReport ko_classify_general(const ScalarFunc& f, const DiffusionCoeff& A, double alpha,
                             const KOOptions& opts = {});

/// int_{-inf}^{alpha} |t|^(gamma-1) (int_t^alpha f(s) |s|^(gamma-1) ds)^{-1/2} dt.
KOReport ko_classify_porous(const ScalarFunc& f, double gamma, double alpha, const KOOptions& opts = {});

} // namespace liouville
