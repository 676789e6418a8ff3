#include "liouville/comparison.hpp"

#include "liouville/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

namespace liouville {

namespace {

std::string number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_lengths(const Eigen::VectorXd& xi, const Eigen::VectorXd& eta) {
  if (xi.size() != eta.size())
    throw DimensionMismatch("pairing of vectors of length " + std::to_string(xi.size()) + " and " +
                            std::to_string(eta.size()));
  if (!xi.allFinite() || !eta.allFinite()) throw DomainError("pairing of non-finite vectors");
}

// A(|x|) for |x| > 0; the product A(0) * 0 is taken as 0, so the value at 0 is never needed.
double coefficient(const DiffusionCoeff& A, double norm) {
  if (norm == 0.0) return 0.0;
  const double a = A(norm);
  if (std::isnan(a)) throw DomainError("A is not evaluable at |xi| = " + number(norm), A.describe());
  return a;
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double cell_volume(double a, double b, double D) {
  if (D == 1.0) return b - a;
  if (a <= 0.0) return std::pow(b, D) / D;
  return std::pow(a, D) * std::expm1(D * std::log(b / a)) / D;
}

bool straddles_or_negative(const DiscreteField& u, const DiscreteField& v) {
  return u.values.minCoeff() < 0.0 || v.values.minCoeff() < 0.0;
}

struct GAudit {
  HypothesisCheck non_decreasing;
  HypothesisCheck dominates;
};

// g1 non-decreasing and g1(t) >= g2(s) for t >= s >= floor, over the sorted
// node values (exhaustive through a running maximum of g2) and random pairs
// drawn from the value range widened by its length (at least 1) on each side.
GAudit audit_g(const ScalarFunc& g1, const ScalarFunc& g2, std::vector<double> values, double floor,
               const ComparisonOptions& opts) {
  GAudit audit{{"H1/g1-non-decreasing", CheckStatus::Pass, std::nullopt, {}},
               {"H1/g1-dominates-g2", CheckStatus::Pass, std::nullopt, {}}};
  values.erase(std::remove_if(values.begin(), values.end(), [&](double t) { return t < floor; }), values.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.empty()) return audit;

  auto fail = [](HypothesisCheck& c, double t, std::string note) {
    if (c.status != CheckStatus::Pass) return;
    c.status = CheckStatus::Fail;
    c.witness = t;
    c.note = std::move(note);
  };
  auto below = [](double lhs, double rhs) { return lhs < rhs - kMonotoneTol * std::max(1.0, std::abs(rhs)); };

  double prev_g1 = -std::numeric_limits<double>::infinity();
  double max_g2 = -std::numeric_limits<double>::infinity();
  for (double t : values) {
    const double a = g1(t);
    max_g2 = std::max(max_g2, g2(t));
    if (below(a, prev_g1)) fail(audit.non_decreasing, t, "g1 decreases at node value t = " + number(t));
    if (below(a, max_g2)) fail(audit.dominates, t, "g1(t) < g2(s) for some node value s <= t = " + number(t));
    prev_g1 = std::max(prev_g1, a);
  }

  const double pad = std::max(1.0, values.back() - values.front());
  const double lo = std::max(floor, values.front() - pad);
  const double hi = values.back() + pad;
  std::mt19937_64 rng(opts.seed);
  for (int k = 0; k < opts.random_pairs && hi > lo; ++k) {
    double s = lo + (hi - lo) * unit(rng);
    double t = lo + (hi - lo) * unit(rng);
    if (s > t) std::swap(s, t);
    const double g1t = g1(t);
    if (below(g1t, g1(s))) fail(audit.non_decreasing, t, "g1(t) < g1(s) for sampled s = " + number(s));
    if (below(g1t, g2(s))) fail(audit.dominates, t, "g1(t) < g2(s) for sampled s = " + number(s));
  }
  const std::string grid = "node values plus " + std::to_string(opts.random_pairs) + " random pairs on [" +
                           number(lo) + ", " + number(hi) + "] (sampled)";
  for (HypothesisCheck* c : {&audit.non_decreasing, &audit.dominates})
    if (c->note.empty()) c->note = grid;
  return audit;
}

} // namespace

// ---------------------------------------------------------------------------
// Pointwise kernel

double monotone_pairing(const DiffusionCoeff& A, const Eigen::VectorXd& xi, const Eigen::VectorXd& eta) {
  check_lengths(xi, eta);
  const double a = xi.norm();
  const double b = eta.norm();
  const double Aa = coefficient(A, a);
  const double Ab = coefficient(A, b);
  const double dot = xi.dot(eta);
  if (Aa * a == Ab * b && dot == a * b) return 0.0;
  return (Aa * xi - Ab * eta).dot(xi - eta);
}

PairingDecomposition decompose_pairing(const DiffusionCoeff& A, const Eigen::VectorXd& xi,
                                       const Eigen::VectorXd& eta) {
  check_lengths(xi, eta);
  const double a = xi.norm();
  const double b = eta.norm();
  const double Aa = coefficient(A, a);
  const double Ab = coefficient(A, b);
  PairingDecomposition d;
  d.I1 = (Aa * a - Ab * b) * (a - b);
  // |xi||eta| - xi.eta = |xi||eta| |xi/|xi| - eta/|eta||^2 / 2, free of cancellation
  d.I2 = (a == 0.0 || b == 0.0) ? 0.0 : (Aa + Ab) * 0.5 * a * b * (xi / a - eta / b).squaredNorm();
  return d;
}

double pairing_scale(const DiffusionCoeff& A, const Eigen::VectorXd& xi, const Eigen::VectorXd& eta) {
  check_lengths(xi, eta);
  const double a = xi.norm();
  const double b = eta.norm();
  return (1.0 + a + b) * (1.0 + coefficient(A, a) * a + coefficient(A, b) * b);
}

// ---------------------------------------------------------------------------
// Discrete operator

void validate(const DiscreteField& field) {
  if (field.r.size() != field.values.size())
    throw InvalidProblem("field has " + std::to_string(field.r.size()) + " nodes but " +
                         std::to_string(field.values.size()) + " values");
  if (!(field.D >= 1.0) || !std::isfinite(field.D)) throw InvalidProblem("field dimension D must be >= 1");
  if (!field.r.allFinite() || !field.values.allFinite()) throw InvalidProblem("field grid and values must be finite");
  for (Eigen::Index i = 1; i < field.r.size(); ++i)
    if (!(field.r[i] > field.r[i - 1]))
      throw InvalidProblem("grid not strictly increasing at node " + std::to_string(i));
  if (field.D > 1.0 && field.r.size() > 0 && field.r[0] < 0.0)
    throw InvalidProblem("radial grid (D > 1) must start at r >= 0");
}

DiscreteResidual discrete_radial_operator(const DiffusionCoeff& A, const DiscreteField& field) {
  if (field.size() < 3)
    throw GridTooCoarse("finite-volume operator needs M >= 2, got M = " + std::to_string(field.size() - 1));
  validate(field);
  const Eigen::Index n = field.size();
  const Eigen::VectorXd& r = field.r;
  const Eigen::VectorXd& u = field.values;
  const double D = field.D;

  Eigen::VectorXd mid(n - 1);
  Eigen::VectorXd w(n - 1);
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    mid[j] = 0.5 * (r[j] + r[j + 1]);
    const double weight = D == 1.0 ? 1.0 : std::pow(mid[j], D - 1.0);
    w[j] = weight * A.flux((u[j + 1] - u[j]) / (r[j + 1] - r[j]));
  }

  DiscreteResidual res;
  res.values = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
  res.first = 1;
  res.last = n - 2;
  if (D > 1.0 && r[0] == 0.0) {
    res.first = 0;
    res.values[0] = w[0] / cell_volume(0.0, mid[0], D);
  }
  for (Eigen::Index i = 1; i + 1 < n; ++i) res.values[i] = (w[i] - w[i - 1]) / cell_volume(mid[i - 1], mid[i], D);
  return res;
}

// ---------------------------------------------------------------------------
// Verifier

ComparisonCertificate discrete_comparison_check(const DiffusionCoeff& A, const DiscreteField& u,
                                                const DiscreteField& v, const ScalarFunc& g1,
                                                const ScalarFunc& g2, const ComparisonOptions& opts) {
  validate(u);
  validate(v);
  if (u.size() != v.size() || u.D != v.D || (u.r - v.r).cwiseAbs().maxCoeff() != 0.0)
    throw GridMismatch("u and v must share grid and dimension");

  ComparisonCertificate cert;
  const Eigen::Index n = u.size();
  const double vmax = v.values.cwiseAbs().maxCoeff();
  cert.epsilon = std::isnan(opts.epsilon) ? 1e-8 * (1.0 + vmax) : opts.epsilon;
  if (!(cert.epsilon > 0.0)) throw InvalidProblem("comparison epsilon must be positive");

  HypothesisReport& rep = cert.hypotheses;
  rep.grid = "field nodes; g hypotheses on node values plus random pairs";
  rep.sampled = true;

  // (H1) structure of g1, g2.
  std::vector<double> all(u.values.data(), u.values.data() + n);
  all.insert(all.end(), v.values.data(), v.values.data() + n);
  GAudit b_case = audit_g(g1, g2, all, -std::numeric_limits<double>::infinity(), opts);
  if (b_case.non_decreasing.status == CheckStatus::Pass && b_case.dominates.status == CheckStatus::Pass) {
    cert.g_case = "b";
    rep.checks.push_back(b_case.non_decreasing);
    rep.checks.push_back(b_case.dominates);
  } else if (straddles_or_negative(u, v)) {
    cert.g_case = "b-only";
    b_case.non_decreasing.note += "; case (a) unusable because field values are negative or straddle 0";
    rep.checks.push_back(b_case.non_decreasing);
    rep.checks.push_back(b_case.dominates);
  } else {
    cert.g_case = "a";
    GAudit a_case = audit_g(g1, g2, all, 0.0, opts);
    rep.checks.push_back(a_case.non_decreasing);
    rep.checks.push_back(a_case.dominates);
    rep.checks.push_back({"H1/v-nonnegative", CheckStatus::Pass, std::nullopt, "all node values of v >= 0"});
  }

  // (H2) t A(t) increasing and positive.
  rep.append(check_condition_A(A));

  // (H3) boundary ordering.
  std::optional<Eigen::Index> hyp_node;
  const DiscreteResidual Lu = discrete_radial_operator(A, u);
  const DiscreteResidual Lv = discrete_radial_operator(A, v);
  auto boundary = [&](Eigen::Index i, std::string id) {
    HypothesisCheck c{std::move(id), CheckStatus::Pass, std::nullopt,
                      "u = " + number(u.values[i]) + ", v = " + number(v.values[i])};
    if (u.values[i] > v.values[i]) {
      c.status = CheckStatus::Fail;
      c.witness = u.r[i];
      if (!hyp_node) hyp_node = i;
    }
    rep.checks.push_back(std::move(c));
  };
  if (Lu.first > 0) boundary(0, "H3/left-boundary");
  boundary(n - 1, "H3/right-boundary");

  // (S) residual signs.
  double gmax = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) gmax = std::max({gmax, std::abs(g1(u.values[i])), std::abs(g2(v.values[i]))});
  cert.residual_tol = 1e-8 * (1.0 + gmax);
  HypothesisCheck sub{"S/subsolution", CheckStatus::Pass, std::nullopt, {}};
  HypothesisCheck super{"S/supersolution", CheckStatus::Pass, std::nullopt, {}};
  cert.sub_defect = -std::numeric_limits<double>::infinity();
  cert.super_excess = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = Lu.first; i <= Lu.last; ++i) {
    const double d_sub = g1(u.values[i]) - Lu.values[i];
    const double d_super = Lv.values[i] - g2(v.values[i]);
    cert.sub_defect = std::max(cert.sub_defect, d_sub);
    cert.super_excess = std::max(cert.super_excess, d_super);
    if (!(d_sub <= cert.residual_tol) && sub.status == CheckStatus::Pass) {
      sub.status = CheckStatus::Fail;
      sub.witness = u.r[i];
      sub.note = "L(u) < g1(u) - tol by " + number(d_sub) + " at node " + std::to_string(i);
      if (!hyp_node) hyp_node = i;
    }
    if (!(d_super <= cert.residual_tol) && super.status == CheckStatus::Pass) {
      super.status = CheckStatus::Fail;
      super.witness = v.r[i];
      super.note = "L(v) > g2(v) + tol by " + number(d_super) + " at node " + std::to_string(i);
      if (!hyp_node) hyp_node = i;
    }
  }
  if (sub.note.empty()) sub.note = "max defect " + number(cert.sub_defect) + ", tol " + number(cert.residual_tol);
  if (super.note.empty())
    super.note = "max excess " + number(cert.super_excess) + ", tol " + number(cert.residual_tol);
  rep.checks.push_back(std::move(sub));
  rep.checks.push_back(std::move(super));

  // Conclusion u <= v + epsilon.
  const Eigen::VectorXd gap = u.values - v.values;
  Eigen::Index argmax = 0;
  cert.max_gap = gap.maxCoeff(&argmax);
  cert.conclusion_holds = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (gap[i] > cert.epsilon) {
      cert.conclusion_holds = false;
      cert.witness_node = i;
      cert.violation = gap[i] - cert.epsilon;
      break;
    }
  }
  cert.hypotheses_hold = rep.passed();
  cert.pass = cert.hypotheses_hold && cert.conclusion_holds;
  if (!cert.pass && !cert.witness_node) cert.witness_node = hyp_node ? *hyp_node : argmax;
  if (cert.witness_node) cert.witness_r = u.r[*cert.witness_node];
  return cert;
}

void require_hypotheses(const ComparisonCertificate& cert) {
  if (cert.hypotheses_hold) return;
  std::string failed;
  double witness = cert.witness_r;
  for (const auto& c : cert.hypotheses.checks) {
    if (c.status == CheckStatus::Pass) continue;
    if (failed.empty() && c.witness) witness = *c.witness;
    failed += (failed.empty() ? "" : ", ") + c.id;
  }
  throw HypothesisViolation("comparison hypotheses failed: " + failed, witness);
}

} // namespace liouville
