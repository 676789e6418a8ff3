#include "liouville/acceptance.hpp"

#include "liouville/carnot.hpp"
#include "liouville/comparison.hpp"
#include "liouville/comparison_instances.hpp"
#include "liouville/errors.hpp"
#include "liouville/gh_transform.hpp"
#include "liouville/json_io.hpp"
#include "liouville/ko_conditions.hpp"
#include "liouville/radial_ode.hpp"
#include "liouville/verdict.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace liouville {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

CriterionResult ko_boundary_law() {
  CriterionResult c{1, "KO boundary law", true, "", 0};
  int correct = 0, total = 0;
  double slowest = 0;
  for (double p : {1.5, 2.0, 3.0}) {
    for (double dq : {-0.2, 0.0, 0.2}) {
      const double q = p - 1 + dq;
      const auto start = Clock::now();
      const KOReport r = ko_classify(ScalarFunc(Power{1.0, q}), p, -1.0);
      slowest = std::max(slowest, seconds_since(start));
      const KOClass want = dq > 0 ? KOClass::Converges : KOClass::Diverges;
      ++total;
      if (r.classification == want) {
        ++correct;
      } else {
        c.pass = false;
        c.detail += "p=" + shortest(p) + " q=" + shortest(q) + " gave " + std::string(to_string(r.classification)) +
                    "; ";
      }
    }
  }
  const bool fast = slowest < 1.0;
  c.pass = c.pass && fast;
  c.detail += std::to_string(correct) + "/" + std::to_string(total) + " classified as expected, each " +
              (fast ? "under 1 s" : "NOT under 1 s");
  return c;
}

CriterionResult h_closed_form() {
  CriterionResult c{2, "H closed form for the p-Laplacian", true, "", 0};
  double worst = 0;
  int points = 0;
  for (double p : {1.5, 2.0, 3.0}) {
    const DiffusionCoeff A(PLaplacian{p});
    for (int k = 0; k <= 60; ++k) {
      const double T = std::pow(10.0, -3.0 + 0.1 * k);
      const double exact = std::pow(p / (p - 1), 1 / p) * std::pow(T, 1 / p);
      worst = std::max(worst, std::abs(invert_H(A, T) - exact) / exact);
      ++points;
    }
  }
  c.pass = worst <= 1e-8;
  c.detail = "max rel err " + sci(worst) + " over " + std::to_string(points) + " points (bar 1e-8)";
  return c;
}

CriterionResult log_diffusion_G() {
  CriterionResult c{3, "log-diffusion G and H slope", true, "", 0};
  const DiffusionCoeff A(LogDiffusion{});
  double worst = 0;
  for (int k = 0; k <= 1000; ++k) {
    const double t = 0.1 * k;
    worst = std::max(worst, std::abs(compute_G(A, t) - (t - std::log1p(t))));
  }
  for (int k = 1; k <= 20; ++k) {
    const double t = std::pow(10.0, -k * 0.5);
    worst = std::max(worst, std::abs(compute_G(A, t) - (t - std::log1p(t))));
  }
  const double slope = h_asymptotic_slope(A);
  c.pass = worst <= 1e-10 && std::abs(slope - 1.0) <= 1e-2;
  c.detail = "max |G - (t - ln(1+t))| " + sci(worst) + " (bar 1e-10), H slope " + shortest(slope);
  return c;
}

CriterionResult blowup_radius() {
  CriterionResult c{4, "blow-up radius oracle", true, "", 0};
  const auto start = Clock::now();
  const RadialProblem prob{4.0, DiffusionCoeff(PLaplacian{2}), ScalarFunc::parse("8*t^3"), 1.0};
  BlowupOptions opts;
  opts.record_trajectory = false;
  const BlowupResult r = integrate_blowup(prob, opts);
  const double secs = seconds_since(start);
  c.pass = r.status == BlowupStatus::FiniteBlowup && std::abs(r.R - 1) <= 1e-3 && secs < 5.0;
  c.detail = std::string(to_string(r.status)) + ", |R - 1| = " + sci(std::abs(r.R - 1)) + " (bar 1e-3), " +
             (secs < 5.0 ? "under 5 s" : "NOT under 5 s");
  return c;
}

CriterionResult global_existence() {
  CriterionResult c{5, "global-existence oracle", true, "", 0};
  const RadialProblem prob{3.0, DiffusionCoeff(PLaplacian{2}), ScalarFunc(Constant{1}), 1.0};
  BlowupOptions opts;
  opts.r_max = 10;
  for (int i = 1; i <= 1000; ++i) opts.sample_radii.push_back(0.01 * i);
  const BlowupResult r = integrate_blowup(prob, opts);
  double worst = 0;
  for (const auto* list : {&r.samples, &r.trajectory})
    for (const auto& pt : *list) worst = std::max(worst, std::abs(pt.phi / (1 + pt.r * pt.r / 6) - 1));
  c.pass = r.status == BlowupStatus::GlobalExistence && worst <= 1e-6 && r.r_end >= 10;
  c.detail = std::string(to_string(r.status)) + " to r = " + shortest(r.r_end) + ", max rel dev from 1 + r^2/6 " +
             sci(worst) + " (bar 1e-6)";
  return c;
}

CriterionResult gradient_blowup() {
  CriterionResult c{6, "gradient blow-up oracle", true, "", 0};
  const RadialProblem prob{2.0, DiffusionCoeff(MeanCurvature{}), ScalarFunc(Constant{1}), 1.0};
  const BlowupResult r = integrate_blowup(prob);
  c.pass = r.status == BlowupStatus::GradientBlowup && std::abs(r.r_end - 2) <= 1e-3;
  c.detail = std::string(to_string(r.status)) + ", |r* - 2| = " + sci(std::abs(r.r_end - 2)) + " (bar 1e-3)";
  return c;
}

CriterionResult monotone_pairing_suite(std::uint64_t seed) {
  CriterionResult c{7, "monotone pairing", true, "", 0};
  const std::vector<DiffusionCoeff> builtins{DiffusionCoeff(PLaplacian{1.5}), DiffusionCoeff(PLaplacian{2}),
                                             DiffusionCoeff(PLaplacian{3}), DiffusionCoeff(MeanCurvature{}),
                                             DiffusionCoeff(LogDiffusion{})};
  std::mt19937_64 rng(seed);
  double worst = 0;  // most negative value relative to the scale
  int bad = 0;
  for (const auto& A : builtins) {
    for (int k = 0; k < 100000; ++k) {
      const int dim = 1 + static_cast<int>(rng() % 4);
      const double mag_xi = std::pow(10.0, -3 + 6 * unit(rng));
      const double mag_eta = std::pow(10.0, -3 + 6 * unit(rng));
      Eigen::VectorXd xi(dim), eta(dim);
      for (int j = 0; j < dim; ++j) {
        xi[j] = mag_xi * (2 * unit(rng) - 1);
        eta[j] = mag_eta * (2 * unit(rng) - 1);
      }
      const double scale = pairing_scale(A, xi, eta);
      const double m = monotone_pairing(A, xi, eta);
      const auto d = decompose_pairing(A, xi, eta);
      const double low = std::min({m, d.I1, d.I2}) / scale;
      worst = std::min(worst, low);
      bad += low < -1e-12;
    }
  }
  c.pass = bad == 0;
  c.detail = "5 builtins x 1e5 pairs, " + std::to_string(bad) + " below -1e-12 scale, min value/scale " +
             sci(worst);
  return c;
}

CriterionResult discrete_comparison(std::uint64_t seed) {
  CriterionResult c{8, "discrete comparison", true, "", 0};
  int violations = 0, hyp_failed = 0;
  double worst_gap = -INFINITY;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::uint64_t s = seed * 200 + i;
    const auto inst = random_comparison_instance(s);
    ComparisonOptions opts;
    opts.seed = s;
    const auto cert = discrete_comparison_check(inst.A, inst.u, inst.v, inst.g, inst.g, opts);
    hyp_failed += !cert.hypotheses_hold;
    violations += cert.max_gap > 1e-10;
    worst_gap = std::max(worst_gap, cert.max_gap);
  }
  const auto barrier = blowup_barrier_instance();
  const auto cert = discrete_comparison_check(barrier.A, barrier.u, barrier.v, barrier.g, barrier.g);
  c.pass = violations == 0 && hyp_failed == 0 && cert.pass;
  c.detail = "200 instances: " + std::to_string(violations) + " violations > 1e-10, " + std::to_string(hyp_failed) +
             " hypothesis failures, max(u - v) " + sci(worst_gap) + "; blow-up barrier " +
             (cert.pass ? "passes" : "FAILS");
  return c;
}

CriterionResult heisenberg(std::uint64_t seed) {
  CriterionResult c{9, "Heisenberg suite", true, "", 0};
  CarnotSuiteOptions opts;
  opts.seed = seed;
  const CarnotSuiteReport r = run_carnot_suite(opts);
  c.pass = r.pass();
  for (const auto& s : r.suites) {
    if (!c.detail.empty()) c.detail += ", ";
    c.detail += s.name + (s.pass ? " ok " : " FAIL ") + sci(s.worst);
  }
  return c;
}

CriterionResult verdict_golden() {
  CriterionResult c{10, "verdict golden table", true, "", 0};
  int ok = 0;
  const auto scenarios = golden_verdict_scenarios();
  for (const auto& sc : scenarios) {
    const Verdict v = decide(sc.spec);
    const bool cited = sc.theorem.empty() ||
                       std::find(v.cited.begin(), v.cited.end(), sc.theorem) != v.cited.end();
    const bool good = v.conclusion == sc.expected && cited;
    ok += good;
    if (!good)
      c.detail += sc.name.substr(0, 3) + " gave " + std::string(to_string(v.conclusion)) + "; ";
  }
  c.pass = ok == static_cast<int>(scenarios.size());
  c.detail += std::to_string(ok) + "/" + std::to_string(scenarios.size()) + " scenarios match conclusion and theorem";
  return c;
}

CriterionResult ko_blowup_consistency() {
  CriterionResult c{11, "KO and blow-up consistency", true, "", 0};
  for (double q : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    const RadialProblem prob{3.0, DiffusionCoeff(PLaplacian{2}), ScalarFunc(Power{1, q}), 1.0};
    BlowupOptions opts;
    opts.record_trajectory = false;
    const BlowupResult r = integrate_blowup(prob, opts);
    const KOReport ko = ko_classify(ScalarFunc(Power{1, q}), 2, -1);
    const bool agree = (r.status == BlowupStatus::FiniteBlowup) == (ko.classification == KOClass::Converges);
    c.pass = c.pass && agree;
    if (!c.detail.empty()) c.detail += ", ";
    c.detail += "q=" + shortest(q) + " " + std::string(to_string(r.status)) + "/" +
                std::string(to_string(ko.classification)) + (agree ? "" : " MISMATCH");
  }
  return c;
}

Json report_json(const AcceptanceReport& report) {
  Json criteria = Json::array();
  for (const auto& c : report.criteria)
    criteria.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}});
  return envelope("selftest", Json{{"seed", report.seed}, {"pass", report.pass()}, {"criteria", criteria}});
}

} // namespace

bool AcceptanceReport::pass() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  const auto start = Clock::now();
  CriterionResult c;
  try {
    switch (id) {
      case 1: c = ko_boundary_law(); break;
      case 2: c = h_closed_form(); break;
      case 3: c = log_diffusion_G(); break;
      case 4: c = blowup_radius(); break;
      case 5: c = global_existence(); break;
      case 6: c = gradient_blowup(); break;
      case 7: c = monotone_pairing_suite(seed); break;
      case 8: c = discrete_comparison(seed); break;
      case 9: c = heisenberg(seed); break;
      case 10: c = verdict_golden(); break;
      case 11: c = ko_blowup_consistency(); break;
      default: throw InvalidProblem("no acceptance criterion " + std::to_string(id));
    }
  } catch (const InvalidProblem&) {
    throw;
  } catch (const Error& e) {
    c.id = id;
    c.pass = false;
    c.detail = std::string("error: ") + e.what();
  }
  c.seconds = seconds_since(start);
  return c;
}

AcceptanceReport run_acceptance(std::uint64_t seed, bool check_determinism) {
  AcceptanceReport report{seed, {}};
  for (int id = 1; id <= 11; ++id) report.criteria.push_back(run_criterion(id, seed));
  if (check_determinism) {
    const auto start = Clock::now();
    AcceptanceReport again{seed, {}};
    for (int id = 1; id <= 11; ++id) again.criteria.push_back(run_criterion(id, seed));
    const std::string first = report_json(report).dump(2);
    const std::string second = report_json(again).dump(2);
    CriterionResult c{12, "determinism", first == second, "", 0};
    c.detail = first == second ? "two runs with seed " + std::to_string(seed) + " rendered byte-identical reports"
                               : "reports differ between two runs with seed " + std::to_string(seed);
    c.seconds = seconds_since(start);
    report.criteria.push_back(c);
  }
  return report;
}

std::string acceptance_json(const AcceptanceReport& report) { return report_json(report).dump(2) + "\n"; }

std::string acceptance_table(const AcceptanceReport& report) {
  std::ostringstream os;
  for (const auto& c : report.criteria)
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title << ": " << c.detail << '\n';
  os << (report.pass() ? "PASS" : "FAIL") << "  all criteria (seed " << report.seed << ")\n";
  return os.str();
}

} // namespace liouville
