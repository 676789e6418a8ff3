#include "liouville/carnot.hpp"

#include "liouville/derivative.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace liouville {

namespace {

std::string number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

double gaussian(std::mt19937_64& rng) {
  // Box-Muller on the portable uniform above
  const double u1 = 1.0 - unit(rng);
  const double u2 = unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

HPointd random_point(std::mt19937_64& rng, int n, double box) {
  HPointd a = HPointd::identity(n);
  for (int k = 0; k <= 2 * n; ++k) a.coord(k) = uniform(rng, -box, box);
  return a;
}

// Horizontal part uniform in direction with |z| in [zlo, zhi], t in [-tmax, tmax].
HPointd random_shell_point(std::mt19937_64& rng, int n, double zlo, double zhi, double tmax) {
  Eigen::VectorXd z(2 * n);
  do {
    for (int k = 0; k < 2 * n; ++k) z[k] = gaussian(rng);
  } while (z.norm() == 0.0);
  z *= uniform(rng, zlo, zhi) / z.norm();
  return HPointd(z.head(n), z.tail(n), uniform(rng, -tmax, tmax));
}

double max_coord_diff(const HPointd& a, const HPointd& b) {
  double d = std::abs(a.t - b.t);
  for (Eigen::Index k = 0; k < a.n(); ++k) d = std::max({d, std::abs(a.x[k] - b.x[k]), std::abs(a.y[k] - b.y[k])});
  return d;
}

double max_abs_coord(const HPointd& a) {
  double m = std::abs(a.t);
  if (a.n() > 0) m = std::max({m, a.x.cwiseAbs().maxCoeff(), a.y.cwiseAbs().maxCoeff()});
  return m;
}

double relative(double a, double b) {
  const double scale = std::abs(b);
  if (scale < 1e-300) return std::abs(a) <= 1e-12 ? 0.0 : std::abs(a);
  return std::abs(a - b) / scale;
}

} // namespace

SublaplacianCheck radial_sublaplacian_check(const ScalarFunc& zeta, double p, const HPointd& a,
                                            const SublaplacianOptions& opts) {
  if (!(p > 1.0)) throw InvalidProblem("p must exceed 1");
  if (!(opts.h_inner > 0.0) || !(opts.h_outer > 0.0)) throw InvalidProblem("finite-difference steps must be positive");
  SublaplacianCheck out;
  out.N = h_norm(a);
  if (out.N == 0.0) throw OriginSingularity("the radial identity is evaluated away from the group identity");
  out.psi = h_psi(a);
  if (out.psi < 1e-8 && p < 2.0)
    throw AxisDegeneracy("psi = " + number(out.psi) + " on the centre axis: the p < 2 operator degenerates");
  const double reach = 2.0 * (opts.h_inner + opts.h_outer);
  if (a.x.squaredNorm() + a.y.squaredNorm() + a.t * a.t <= std::pow(8.0 * reach, 2))
    throw StencilFailure("finite-difference stencil of radius " + number(reach) + " reaches the origin");

  const int n = static_cast<int>(a.n());
  const int Q = 2 * n + 2;

  // Direct divergence form: sum X_i(|grad_H v|^(p-2) X_i v) + Y_i(...).
  auto v = [&](const HPointd& q) { return zeta(h_norm(q)); };
  auto flux = [&](const HPointd& q) {
    Eigen::VectorXd g = h_grad_apply(v, q, opts.h_inner);
    if (p == 2.0) return g;
    double m = g.norm();
    if (p < 2.0 && m < opts.gradient_floor) {
      m = opts.gradient_floor;
      out.regularized = true;
    }
    return Eigen::VectorXd(std::pow(m, p - 2.0) * g);
  };
  const double h = opts.h_outer;
  Eigen::MatrixXd dflux(2 * n, 2 * n + 1);  // column k: d/d(coord k) of the flux vector
  HPointd q = a;
  for (int k = 0; k <= 2 * n; ++k) {
    const double c = a.coord(k);
    auto at = [&](double s) {
      q.coord(k) = c + s;
      return flux(q);
    };
    dflux.col(k) = (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
    q.coord(k) = c;
  }
  double div = 0.0;
  for (int i = 0; i < n; ++i) {
    div += dflux(i, i) + 2.0 * a.y[i] * dflux(i, 2 * n);
    div += dflux(n + i, n + i) - 2.0 * a.x[i] * dflux(n + i, 2 * n);
  }
  out.direct = div;

  // Radial forms at r = N.
  const double r = out.N;
  const double h0 = std::min(0.1 * r, 0.1);
  const DerivativeEstimate d1 = ridders(zeta, r, h0, 1);
  const DerivativeEstimate d2 = ridders(zeta, r, h0, 2);
  const double zscale = std::max({1.0, std::abs(zeta(r)), std::abs(d1.value), std::abs(d2.value)});
  if (!(d1.error <= 1e-6 * zscale) || !(d2.error <= 1e-6 * zscale))
    throw StencilFailure("derivatives of zeta at r = " + number(r) + " are not resolved by the stencil");

  const double psip = std::pow(out.psi, p);
  auto power = [&](double s) { return p == 2.0 ? 1.0 : std::pow(std::abs(s), p - 2.0); };
  out.radial = (p - 1.0) * psip * power(d1.value) * (d2.value + (Q - 1.0) / (p - 1.0) * d1.value / r);

  auto k_of = [&](double s) {
    const double z1 = ridders(zeta, s, std::min(0.1 * s, 0.1), 1).value;
    return std::pow(s, Q - 1.0) * power(z1) * z1;
  };
  const DerivativeEstimate dk = ridders(k_of, r, 0.5 * h0, 1);
  out.flux_form = psip * std::pow(r, 1.0 - Q) * dk.value;

  out.rel_err = relative(out.direct, out.radial);
  out.flux_rel_err = relative(out.flux_form, out.radial);
  return out;
}

// ---------------------------------------------------------------------------
// Suites

bool CarnotSuiteReport::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const CarnotSuiteResult& s) { return s.pass; });
}

std::vector<CarnotSuiteResult> radial_identity_suites(const std::vector<HPointd>& points,
                                                      const SublaplacianOptions& opts) {
  struct Profile {
    const char* name;
    ScalarFunc zeta;
  };
  const std::vector<Profile> profiles = {
      {"r^2", ScalarFunc(Power{1.0, 2.0})}, {"r^3", ScalarFunc(Power{1.0, 3.0})}, {"exp(r)", ScalarFunc::parse("exp(t)")}};

  CarnotSuiteResult identity{"radial-identity", true, 0.0, 1e-6, 0, 0, {}};
  CarnotSuiteResult flux{"radial-flux-form", true, 0.0, 1e-9, 0, 0, {}};
  std::string worst_where;
  std::string worst_flux_where;
  for (const auto& prof : profiles) {
    for (double p : {2.0, 3.0}) {
      for (std::size_t k = 0; k < points.size(); ++k) {
        SublaplacianCheck c;
        try {
          c = radial_sublaplacian_check(prof.zeta, p, points[k], opts);
        } catch (const Error& e) {
          identity.pass = false;
          flux.pass = false;
          identity.detail = std::string("point ") + std::to_string(k) + ": " + e.what();
          continue;
        }
        if (c.regularized) {
          ++identity.excluded;
          ++flux.excluded;
          continue;
        }
        ++identity.samples;
        ++flux.samples;
        if (c.rel_err > identity.worst) {
          identity.worst = c.rel_err;
          worst_where = std::string(prof.name) + ", p = " + number(p) + ", point " + std::to_string(k);
        }
        if (c.flux_rel_err > flux.worst) {
          flux.worst = c.flux_rel_err;
          worst_flux_where = std::string(prof.name) + ", p = " + number(p) + ", point " + std::to_string(k);
        }
      }
    }
  }
  identity.pass = identity.pass && identity.worst <= identity.tolerance;
  flux.pass = flux.pass && flux.worst <= flux.tolerance;
  if (identity.detail.empty()) identity.detail = "max relative |direct - radial|, worst at " + worst_where;
  if (flux.detail.empty()) flux.detail = "max relative |flux form - radial|, worst at " + worst_flux_where;
  return {identity, flux};
}

CarnotSuiteReport run_carnot_suite(const CarnotSuiteOptions& opts) {
  if (opts.n < 1) throw InvalidProblem("Heisenberg dimension n must be >= 1");
  CarnotSuiteReport rep;
  rep.n = opts.n;
  rep.Q = HGroup{opts.n}.Q();
  rep.seed = opts.seed;
  std::mt19937_64 rng(opts.seed);
  const int n = opts.n;

  {
    CarnotSuiteResult s{"group-axioms", true, 0.0, 1e-12, 0, 0, {}};
    int exact_failures = 0;
    const HPointd e = HPointd::identity(n);
    for (int k = 0; k < opts.group_triples; ++k) {
      const HPointd a = random_point(rng, n, 2.0);
      const HPointd b = random_point(rng, n, 2.0);
      const HPointd c = random_point(rng, n, 2.0);
      const HPointd left = h_mul(h_mul(a, b), c);
      const HPointd right = h_mul(a, h_mul(b, c));
      const double scale = std::max({1.0, max_abs_coord(left), max_abs_coord(right)});
      s.worst = std::max(s.worst, max_coord_diff(left, right) / scale);
      exact_failures += !(h_mul(a, e) == a) + !(h_mul(e, a) == a) + !(h_mul(a, h_inverse(a)) == e) +
                        !(h_mul(h_inverse(a), a) == e);
      ++s.samples;
    }
    s.pass = s.worst <= s.tolerance && exact_failures == 0;
    s.detail = "max relative associativity defect; identity/inverse inexact in " + std::to_string(exact_failures) +
               " cases";
    rep.suites.push_back(s);
  }

  std::vector<HPointd> pts;
  pts.reserve(opts.psi_points);
  for (int k = 0; k < opts.psi_points; ++k) pts.push_back(random_point(rng, n, 4.0));

  {
    CarnotSuiteResult hom{"norm-homogeneity", true, 0.0, 1e-12, 0, 0,
                          "max |N(delta_R a) - R N(a)| / (R N(a)), R in {0.5, 2, 10}"};
    CarnotSuiteResult sym{"norm-symmetry", true, 0.0, 0.0, 0, 0, "max |N(a^-1) - N(a)| (exact equality required)"};
    for (std::size_t k = 0; k < pts.size() && static_cast<int>(k) < opts.group_triples; ++k) {
      const HPointd& a = pts[k];
      const double N = h_norm(a);
      if (N == 0.0) continue;
      for (double R : {0.5, 2.0, 10.0}) hom.worst = std::max(hom.worst, std::abs(h_norm(h_dilate(a, R)) - R * N) / (R * N));
      sym.worst = std::max(sym.worst, std::abs(h_norm(h_inverse(a)) - N));
      ++hom.samples;
      ++sym.samples;
    }
    hom.pass = hom.worst <= hom.tolerance;
    sym.pass = sym.worst == 0.0;
    rep.suites.push_back(hom);
    rep.suites.push_back(sym);
  }

  {
    CarnotSuiteResult range{"psi-range", true, 0.0, 0.0, 0, 0, {}};
    CarnotSuiteResult hom{"psi-homogeneity", true, 0.0, 1e-10, 0, 0,
                          "max relative |psi(delta_R a) - psi(a)|, R in {0.5, 2, 10}"};
    double lo = 1.0;
    double hi = 0.0;
    for (const HPointd& a : pts) {
      if (h_norm(a) == 0.0) continue;
      const double psi = h_psi(a);
      lo = std::min(lo, psi);
      hi = std::max(hi, psi);
      ++range.samples;
      if (psi > 0.0) {
        for (double R : {0.5, 2.0, 10.0}) hom.worst = std::max(hom.worst, std::abs(h_psi(h_dilate(a, R)) - psi) / psi);
        ++hom.samples;
      }
    }
    range.pass = lo >= 0.0 && hi <= 1.0;
    range.worst = std::max(0.0, std::max(-lo, hi - 1.0));
    range.detail = "psi observed in [" + number(lo) + ", " + number(hi) + "]";
    rep.psi_sup = hi;
    hom.pass = hom.worst <= hom.tolerance;
    rep.suites.push_back(range);
    rep.suites.push_back(hom);
  }

  std::vector<HPointd> shell;
  shell.reserve(opts.radial_points);
  for (int k = 0; k < opts.radial_points; ++k) shell.push_back(random_shell_point(rng, n, 0.5, 2.0, 4.0));
  for (auto& s : radial_identity_suites(shell, opts.sublaplacian)) rep.suites.push_back(std::move(s));
  return rep;
}

} // namespace liouville
