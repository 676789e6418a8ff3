#pragma once

// The singular radial problem
//
//   (r^(D-1) Phi(phi'))' = r^(D-1) g(phi),   phi(0) = a,  phi'(0) = 0,
//
// integrated in the flux form (phi, w = r^(D-1) Phi(phi')) with an embedded
// Dormand-Prince 5(4) pair and dense output.

#include "liouville/nonlinearity.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace liouville {

struct RadialProblem {
  double D = 2.0;
  DiffusionCoeff A = DiffusionCoeff(PLaplacian{2.0});
  ScalarFunc g = ScalarFunc(Constant{1.0});
  double a = 1.0;
};

/// Throws InvalidProblem unless D > 1, a > 0, g(a) > 0 and g is positive and
/// non-decreasing on the sampled half-line (0, inf).
void validate(const RadialProblem& prob);

/// (phi(r0), phi'(r0)) from the leading-order balance r^(D-1) Phi(phi') = g(a) r^D / D.
std::pair<double, double> series_start(const RadialProblem& prob, double r0);

struct BlowupOptions {
  double r0 = 1e-6;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double cap = 1e10;          ///< phi level that triggers the blow-up analysis
  double r_max = 1e3;
  double value_guard = 1e300; ///< integration stops when phi exceeds this
  long max_steps = 2'000'000;
  bool record_trajectory = true;
  std::vector<double> sample_radii;  ///< extra dense-output samples
};

enum class BlowupStatus { FiniteBlowup, GlobalExistence, GradientBlowup, Inconclusive };

std::string_view to_string(BlowupStatus s);

struct TrajectoryPoint {
  double r = 0.0;
  double phi = 0.0;
  double dphi = 0.0;
  double w = 0.0;
};

struct BlowupResult {
  BlowupStatus status = BlowupStatus::Inconclusive;
  double R = 0.0;        ///< blow-up radius (FiniteBlowup)
  double R_error = 0.0;
  double r_end = 0.0;    ///< r_max, r_star or the last accepted radius
  double phi_end = 0.0;  ///< phi at r_end
  std::string reason;
  std::vector<std::pair<int, double>> crossings;  ///< (k, r) with phi(r) = 10^k
  std::vector<double> extrapolants;               ///< Aitken estimates of R
  std::vector<TrajectoryPoint> trajectory;        ///< accepted steps
  std::vector<TrajectoryPoint> samples;           ///< at BlowupOptions::sample_radii
  long steps_taken = 0;
  long steps_rejected = 0;
};

BlowupResult integrate_blowup(const RadialProblem& prob, const BlowupOptions& opts = {});

struct SweepEntry {
  double a = 0.0;
  std::optional<BlowupResult> result;
  std::string error;  ///< set when the entry failed
};

/// integrate_blowup for each a, in parallel, results in input order.
std::vector<SweepEntry> blowup_radius_curve(const RadialProblem& prob_template, const std::vector<double>& a_values,
                                            const BlowupOptions& opts = {}, unsigned threads = 0);

} // namespace liouville
