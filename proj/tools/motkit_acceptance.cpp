// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any line fails.
#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "motkit/fixtures.hpp"
#include "motkit/legendre.hpp"
#include "motkit/measures.hpp"
#include "motkit/mot.hpp"
#include "motkit/motkit.h"
#include "motkit/paving.hpp"
#include "motkit/random.hpp"
#include "motkit/structure.hpp"

using namespace motkit;
namespace fx = motkit::fixtures;
using std::numbers::pi;

namespace {

int g_failed = 0;

struct Line {
  bool pass = true;
  std::ostringstream detail;
  std::string failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    failures += (pass ? "" : "; ") + what;
    pass = false;
  }
};

void report(const std::string& id, const std::string& title, Line& line) {
  std::printf("%-4s %s  %s  [%s]\n", id.c_str(), line.pass ? "PASS" : "FAIL", title.c_str(),
              line.detail.str().c_str());
  if (!line.pass) std::printf("       failed: %s\n", line.failures.c_str());
  std::fflush(stdout);
  if (!line.pass) ++g_failed;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Criterion 2 batch, reused by 6 and 7.
struct BatchRun {
  Instance in;
  MotResult res;
};

std::vector<BatchRun> g_batch;

Instance batch_instance(std::uint64_t s) {
  const std::size_t d = 1 + s % 3;
  const std::size_t nx = 5 + (7 * s) % 26;
  const std::size_t ny = 5 + (11 * s + 3) % 26;
  const Sense sense = (s / 3) % 2 ? Sense::kMaximize : Sense::kMinimize;
  return fx::random_spread(1000 + s, d, nx, ny, sense);
}

void criterion1() {
  Line line;
  const auto t0 = std::chrono::steady_clock::now();
  for (Sense s : {Sense::kMinimize, Sense::kMaximize}) {
    const auto in = fx::forced1d(s);
    const auto res = solve_mot(in.mu, in.nu, in.cost);
    line.require(std::abs(res.value - 1.0) <= 1e-9, std::string("forced value ") + to_string(s) + " " + fmt(res.value));
  }
  const auto id = fx::identity_grid(11);
  const auto cost = CostSpec::euclidean(Sense::kMinimize);
  const auto res = solve_mot(id.mu, id.nu, cost);
  line.require(std::abs(res.value) <= 1e-9, "mu = nu value " + fmt(res.value));
  line.require(res.coupling.entries() == Coupling::identity(id.mu).entries(), "mu = nu plan is not the identity");
  const double t = seconds_since(t0);
  line.require(t < 0.1, "runtime " + fmt(t) + " s");
  line.detail << "forced min/max = 1, identity plan, " << fmt(t) << " s";
  report("1", "forced instances", line);
}

void criterion2() {
  Line line;
  const auto t0 = std::chrono::steady_clock::now();
  double worst_gap = 0.0, worst_res = 0.0;
  std::size_t contact_fail = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto in = batch_instance(s);
    line.require(in.mu.size() <= 30 && in.nu.size() <= 30, "instance " + std::to_string(s) + " too large");
    auto res = solve_mot(in.mu, in.nu, in.cost);
    const auto t = recover_dual(in.mu, in.nu, in.cost, res.coupling);
    const double gap = std::abs(res.value - t.dual_value(in.mu, in.nu, 1e-9)) / (1.0 + std::abs(res.value));
    worst_gap = std::max(worst_gap, gap);
    worst_res = std::max(worst_res, res.coupling.residuals().max());
    if (!verify_contact_layer(SupportSet::of(res.coupling), t, in.mu.support(), in.nu.support(), in.cost).ok)
      ++contact_fail;
    g_batch.push_back({std::move(in), std::move(res)});
  }
  const double secs = seconds_since(t0);
  line.require(worst_gap <= 1e-6, "duality gap " + fmt(worst_gap));
  line.require(worst_res <= 1e-8, "residual " + fmt(worst_res));
  line.require(contact_fail == 0, std::to_string(contact_fail) + " contact checks");
  line.require(secs < 60.0, "runtime " + fmt(secs) + " s");
  line.detail << "100 instances, max rel gap " << fmt(worst_gap) << ", max residual " << fmt(worst_res) << ", "
              << fmt(secs) << " s";
  report("2", "strong duality on random instances", line);
}

double unit_pair_residual(const ShellCertificate& c) {
  Rng rng(2024);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Point x{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const double t = rng.uniform(0, 2 * pi);
    const Point y{x[0] + std::cos(t), x[1] + std::sin(t)};
    worst = std::max(worst, std::abs(c.slack(x, y)));
  }
  return worst;
}

void criterion3() {
  const auto shell = fx::shell2d();
  const auto res = solve_mot(shell.mu, shell.nu, shell.cost);
  const auto gamma = SupportSet::of(res.coupling);
  const auto r4 = fx::radial4();
  const auto& in4 = r4.instance;

  // shared part: solver value and the radial4 pair
  auto common = [&](Line& line) {
    line.require(std::abs(res.value - 1.0) <= 1e-6, "shell2d value " + fmt(res.value));
    line.require(r4.plan_a.entries() != r4.plan_b.entries(), "radial4 plans coincide");
    for (const auto* plan : {&r4.plan_a, &r4.plan_b}) {
      line.require(plan->is_martingale(1e-12), "radial4 plan not a martingale");
      line.require(std::abs(plan->cost(in4.cost) - 1.0) <= 1e-12, "radial4 plan value " + fmt(plan->cost(in4.cost)));
    }
    const double opt = solve_mot(in4.mu, in4.nu, in4.cost).value;
    line.require(std::abs(opt - 1.0) <= 1e-9, "radial4 optimum " + fmt(opt));
  };
  auto certify = [&](Line& line, const ShellCertificate& c) {
    const double worst = unit_pair_residual(c);
    line.require(worst <= 1e-12, "unit-pair residual " + fmt(worst));
    const auto t = c.tabulate(shell.mu.atoms(), shell.nu.atoms());
    const double dv = t.dual_value(shell.mu, shell.nu, 1e-9);
    line.require(std::abs(dv - res.value) <= 1e-6, "dual value " + fmt(dv) + " vs solver " + fmt(res.value));
    line.require(verify_contact_layer(gamma, t, shell.mu.support(), shell.nu.support(), shell.cost).ok,
                 "contact check on supp pi");
    line.detail << "unit-pair residual " << fmt(worst) << ", dual value " << fmt(dv) << ", solver " << fmt(res.value);
  };

  Line literal;
  certify(literal, shell_certificate_as_stated(1.0));
  common(literal);
  report("3", "shell certificate (|x|^2/2 - 1, x, |y|^2/2), shell2d, radial4", literal);

  Line corrected;
  certify(corrected, shell_certificate(1.0));
  common(corrected);
  corrected.detail << ", radial4 plans a != b both value 1";
  report("3*", "shell certificate with offset 1/2 (corrected constant), shell2d, radial4", corrected);
}

void criterion4() {
  Line line;
  double worst = 1e300, worst_span = 1e300;
  for (std::size_t n = 2; n <= 25; ++n) {
    const auto g = gamma_growth_check(n);
    worst = std::min(worst, g.min_increment);
    line.require(g.min_increment >= 2.0 - 1e-6, "n=" + std::to_string(n) + " increment " + fmt(g.min_increment));
    const double excess = g.span - (2.0 * static_cast<double>(n - 1) - 1e-4);
    worst_span = std::min(worst_span, excess);
    line.require(excess >= 0.0, "n=" + std::to_string(n) + " span " + fmt(g.span));
  }
  line.detail << "n = 2..25, min increment " << fmt(worst) << ", min span excess " << fmt(worst_span);
  report("4", "gamma growth on identity grids", line);
}

void criterion5() {
  Line line;
  std::vector<Point> xs;
  for (int k = 0; k <= 200; ++k) xs.push_back({-0.99 + 1.98 * k / 200.0});
  const double h = 1.98 / 200.0;
  const SampledFunction beta(1, {{-1.0}, {1.0}}, {0.0, 0.0});
  const auto cost = CostSpec::euclidean(Sense::kMinimize);
  const auto dual = legendre_dual(beta, xs, cost);
  double ea = 0.0, eg = 0.0, ecc = 0.0;
  const auto cc = double_transform(dual, xs, cost);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i][0];
    ea = std::max(ea, std::abs(dual.alpha[i] - (x * x - 1.0)));
    eg = std::max(eg, std::abs(dual.gamma[i][0] - x));
    ecc = std::max(ecc, std::abs(cc[i] - (x * x - 1.0)));
  }
  line.require(ea <= 1e-8, "alpha error " + fmt(ea));
  line.require(eg <= 1e-8, "gamma error " + fmt(eg));
  line.require(ecc <= 2 * h * h, "beta_cc error " + fmt(ecc));
  const auto idem = check_idempotent(beta, xs, xs, cost);
  line.require(idem.max_deviation <= 1e-6, "idempotence " + fmt(idem.max_deviation));
  const auto sw = check_sandwich(beta, xs, cost);
  line.require(sw.delta1 == 0.0 && std::abs(sw.delta2) <= 1e-12, "delta1/delta2 not zero");
  line.require(sw.ok, "sandwich inequalities");
  line.require(sw.max_gap <= 1e-6, "sandwich gap " + fmt(sw.max_gap));
  line.detail << "alpha " << fmt(ea) << ", gamma " << fmt(eg) << ", beta_cc " << fmt(ecc) << " <= " << fmt(2 * h * h)
              << ", idempotence " << fmt(idem.max_deviation) << ", sandwich gap " << fmt(sw.max_gap);
  report("5", "Legendre closed form on Y = {-1, 1}", line);
}

std::pair<double, double> interval(const PavingClass& c) {
  double lo = 1e300, hi = -1e300;
  for (const auto& g : c.generators) {
    lo = std::min(lo, g[0]);
    hi = std::max(hi, g[0]);
  }
  return {lo, hi};
}

void criterion6() {
  Line line;
  const auto two = fx::two_class_support();
  const auto p2 = build_paving(two);
  line.require(p2.classes.size() == 2, "two-class fixture gives " + std::to_string(p2.classes.size()) + " classes");
  if (p2.classes.size() == 2) {
    line.require(interval(p2.classes[0]) == std::pair<double, double>(-1.0, 1.0), "first hull");
    line.require(interval(p2.classes[1]) == std::pair<double, double>(4.0, 6.0), "second hull");
  }
  line.require(verify_paving(two, p2).ok(), "verify two-class");
  const auto one = fx::overlap_support();
  const auto p1 = build_paving(one);
  line.require(p1.classes.size() == 1, "overlap fixture gives " + std::to_string(p1.classes.size()) + " classes");
  if (p1.classes.size() == 1)
    line.require(interval(p1.classes[0]) == std::pair<double, double>(-1.0, 2.5), "overlap hull");
  line.require(verify_paving(one, p1).ok(), "verify overlap");
  const auto tr = fx::two_round_support();
  const auto pt = build_paving(tr);
  line.require(pt.iterations == 2, "two-round iterations " + std::to_string(pt.iterations));
  line.require(verify_paving(tr, pt).ok(), "verify two-round");

  std::size_t classes = 0, infeasible = 0, bad_paving = 0;
  for (const auto& run : g_batch) {
    const auto gamma = SupportSet::of(run.res.coupling);
    const auto p = build_paving(gamma);
    if (!verify_paving(gamma, p).ok()) ++bad_paving;
    const auto duals = component_duals(gamma, p, run.in.cost);
    classes += p.classes.size();
    infeasible += duals.infeasible.size();
  }
  line.require(bad_paving == 0, std::to_string(bad_paving) + " batch pavings fail verification");
  line.require(infeasible == 0, std::to_string(infeasible) + " classes without a contact triple");
  line.detail << "2 / 1 classes with hulls [-1,1],[4,6] / [-1,2.5], two-round " << pt.iterations
              << " iterations, " << classes << " batch classes all with contact triples";
  report("6", "convex paving", line);
}

void criterion7() {
  Line line;
  std::size_t mismatched = 0, components = 0;
  double worst_gap = 0.0, worst_res = 0.0;
  for (const auto& run : g_batch) {
    const auto gamma = SupportSet::of(run.res.coupling);
    const auto p = build_paving(gamma);
    const auto parts = disintegrate(run.res.coupling, gamma, p);
    components += parts.size();
    if (reaggregate(run.res.coupling, parts).entries() != run.res.coupling.entries()) ++mismatched;
    const auto opt = check_component_optimality(parts, run.in.cost);
    worst_gap = std::max(worst_gap, opt.max_gap);
    worst_res = std::max(worst_res, opt.max_residual);
  }
  line.require(mismatched == 0, std::to_string(mismatched) + " plans not reproduced");
  line.require(worst_res <= 1e-8, "component residual " + fmt(worst_res));
  line.require(worst_gap <= 1e-6, "component optimality gap " + fmt(worst_gap));
  line.detail << components << " components, exact reaggregation, max residual " << fmt(worst_res)
              << ", max optimality gap " << fmt(worst_gap);
  report("7", "disintegration", line);
}

void criterion8() {
  Line line;
  const auto t0 = std::chrono::steady_clock::now();
  double worst_min = 1.0, worst_max = 1.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (Sense s : {Sense::kMinimize, Sense::kMaximize}) {
      const auto in = fx::grid_spread_1d(seed, 50, 3, s);
      const auto res = solve_mot(in.mu, in.nu, in.cost);
      const auto rep = check_1d_structure(res.coupling, s);
      (s == Sense::kMinimize ? worst_min : worst_max) =
          std::min(s == Sense::kMinimize ? worst_min : worst_max, rep.pass_fraction);
    }
  }
  line.require(worst_min >= 0.95, "1D min fraction " + fmt(worst_min));
  line.require(worst_max >= 0.95, "1D max fraction " + fmt(worst_max));

  double worst_poly = 1.0, worst_ext = 1.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (Sense s : {Sense::kMinimize, Sense::kMaximize}) {
      const auto in = fx::pentagon_2d(seed, 20, s);
      const auto res = solve_mot(in.mu, in.nu, in.cost);
      worst_poly = std::min(worst_poly, check_polytope_support(res.coupling).pass_fraction);
      worst_ext = std::min(worst_ext, check_extremal_support(res.coupling).pass_fraction);
    }
  }
  line.require(worst_poly >= 0.95, "2D triangle fraction " + fmt(worst_poly));
  line.require(worst_ext >= 0.95, "2D extremal fraction " + fmt(worst_ext));
  const double secs = seconds_since(t0);
  line.require(secs < 300.0, "runtime " + fmt(secs) + " s");
  line.detail << "1D worst min/max " << fmt(worst_min) << "/" << fmt(worst_max) << ", 2D worst triangle "
              << fmt(worst_poly) << ", extremal " << fmt(worst_ext) << ", " << fmt(secs) << " s";
  report("8", "structure statistics", line);
}

void criterion9() {
  Line line;
  const auto mu = DiscreteMeasure::dirac({0.0, 0.0, 0.0});
  const auto pts = fx::fibonacci_sphere(2000);
  const auto nu = DiscreteMeasure::normalized(3, pts, std::vector<double>(pts.size(), 1.0));
  std::vector<Point> grid;
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b)
      for (int c = 0; c < 10; ++c) grid.push_back({-1.8 + 0.4 * a, -1.8 + 0.4 * b, -1.8 + 0.4 * c});
  Tolerances tol;
  tol.feas = 1e-3;
  const auto rep = subharmonic_order_report(mu, nu, grid, tol, 1e-3);
  double worst_oracle = 0.0, min_inner = 1e300;
  std::size_t inner = 0, missed = 0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double r = std::sqrt(grid[g][0] * grid[g][0] + grid[g][1] * grid[g][1] + grid[g][2] * grid[g][2]);
    // uniform unit shell: P = -1/(4 pi max(|x|, 1)); point mass: -1/(4 pi |x|)
    const double oracle = (1.0 / r - 1.0 / std::max(r, 1.0)) / (4.0 * pi);
    worst_oracle = std::max(worst_oracle, std::abs(rep.gap[g] - oracle));
    if (r <= 0.8) {
      ++inner;
      min_inner = std::min(min_inner, rep.gap[g]);
      if (!(rep.gap[g] > 1e-3) || !rep.in_u[g]) ++missed;
    }
  }
  line.require(rep.min_gap >= -1e-3, "min gap " + fmt(rep.min_gap));
  line.require(missed == 0, std::to_string(missed) + " interior points not in U");
  line.require(worst_oracle <= 1e-3, "oracle deviation " + fmt(worst_oracle));
  line.detail << "1000 grid points, min gap " << fmt(rep.min_gap) << ", " << inner << " points with |x| <= 0.8 (min gap "
              << fmt(min_inner) << "), max oracle deviation " << fmt(worst_oracle);
  report("9", "potentials of a point mass and a sphere shell", line);
}

// Flux of grad(x^T A x) through the sphere of radius R.
double flux(const Eigen::MatrixXd& a, double big) {
  auto q = [&](const Eigen::VectorXd& u) { return 2.0 * big * u.dot(a * u); };
  const int n = 400;
  double s = 0.0;
  if (a.rows() == 2) {
    for (int k = 0; k < n; ++k) {
      const double t = 2 * pi * k / n;
      Eigen::VectorXd u(2);
      u << std::cos(t), std::sin(t);
      s += q(u);
    }
    return s * (2 * pi / n) * big;
  }
  // two-point Gauss in cos(theta), exact for the quadratic integrand
  for (double z : {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)}) {
    const double rho = std::sqrt(1.0 - z * z);
    for (int k = 0; k < n; ++k) {
      const double t = 2 * pi * (k + 0.5) / n;
      Eigen::VectorXd u(3);
      u << rho * std::cos(t), rho * std::sin(t), z;
      s += q(u);
    }
  }
  return s * (2 * pi / n) * big * big;
}

void criterion10() {
  Line line;
  Rng rng(31);
  const double radii[3] = {0.5, 1.0, 2.0};
  double worst_lhs = 0.0, worst_rhs = 0.0;
  std::size_t failed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + trial % 2;
    const double r = radii[(trial / 2) % 3];
    Eigen::MatrixXd b(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) b(i, j) = rng.normal();
    const Eigen::MatrixXd a = b * b.transpose();
    std::vector<double> flat(a.data(), a.data() + d * d);
    const auto rep = convex_laplacian_bound_check(flat, d, r);
    if (!rep.pass) ++failed;
    const double lhs = flux(a, std::sqrt(2.0) * r);
    const double c0 = d == 2 ? 0.5 : pi / 12;
    const double lmax = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().maxCoeff();
    const double rhs = c0 * std::pow(r, static_cast<double>(d) - 2.0) * r * r * lmax;
    worst_lhs = std::max(worst_lhs, std::abs(rep.lhs - lhs) / std::max(1.0, std::abs(lhs)));
    worst_rhs = std::max(worst_rhs, std::abs(rep.rhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  line.require(failed == 0, std::to_string(failed) + " bounds fail");
  line.require(worst_lhs <= 1e-6, "lhs deviation " + fmt(worst_lhs));
  line.require(worst_rhs <= 1e-6, "rhs deviation " + fmt(worst_rhs));

  const auto fam = fx::tilted_family();
  const auto f = flattening_map(fam, fx::family_queries(fam, 400, 2), 1000, 3);
  line.require(f.ratio_min >= 0.95 * f.bound_lo, "ratio_min " + fmt(f.ratio_min) + " below " + fmt(f.bound_lo));
  line.require(f.ratio_max <= 1.05 * f.bound_hi, "ratio_max " + fmt(f.ratio_max) + " above " + fmt(f.bound_hi));
  line.detail << "50 quadratics, lhs/rhs deviation " << fmt(worst_lhs) << "/" << fmt(worst_rhs) << "; flattening ratios ["
              << fmt(f.ratio_min) << ", " << fmt(f.ratio_max) << "] within [" << fmt(f.bound_lo) << ", "
              << fmt(f.bound_hi) << "]";
  report("10", "Laplacian bound and flattening map", line);
}

// Runs the generator / solve / paving / verify pipeline through the C API and
// returns every JSON artifact in order.
std::vector<std::pair<std::string, std::string>> pipeline(unsigned threads) {
  std::vector<std::pair<std::string, std::string>> out;
  motkit_options o;
  motkit_options_init(&o);
  o.threads = threads;
  // call(&s) fills s; the artifact is recorded under name
  auto take = [&](const std::string& name, const std::function<motkit_status(char**)>& call) {
    char* s = nullptr;
    const motkit_status st = call(&s);
    out.emplace_back(name, st == MOTKIT_OK && s ? s : "status " + std::to_string(st) + ": " + motkit_last_error());
    motkit_string_free(s);
  };
  auto bundle = [&](const char* name, std::uint64_t seed, const char* params) {
    std::vector<std::pair<std::string, std::string>> files;
    motkit_bundle* b = nullptr;
    if (motkit_generate(name, seed, params, &b) != MOTKIT_OK) {
      out.emplace_back(name, std::string("generate failed: ") + motkit_last_error());
      return files;
    }
    for (std::size_t i = 0; i < motkit_bundle_size(b); ++i) files.emplace_back(motkit_bundle_name(b, i), motkit_bundle_text(b, i));
    motkit_bundle_free(b);
    out.insert(out.end(), files.begin(), files.end());
    return files;
  };
  auto solve = [&](const std::string& tag, const std::string& text) {
    motkit_instance* in = nullptr;
    motkit_solution* s = nullptr;
    std::string coupling;
    if (motkit_instance_parse(text.c_str(), &o, &in) == MOTKIT_OK && motkit_solve(in, &o, &s) == MOTKIT_OK) {
      take(tag + "/coupling", [&](char** c) { return motkit_solution_coupling_json(s, c); });
      coupling = out.back().second;
      take(tag + "/dual", [&](char** c) { return motkit_solution_dual_json(s, c); });
      take(tag + "/report", [&](char** c) { return motkit_solution_report_json(s, c); });
    } else {
      out.emplace_back(tag, std::string("solve failed: ") + motkit_last_error());
    }
    motkit_solution_free(s);
    motkit_instance_free(in);
    return coupling;
  };
  auto paving = [&](const std::string& tag, const std::string& text) {
    motkit_support* s = nullptr;
    motkit_paving* p = nullptr;
    if (motkit_support_parse(text.c_str(), &o, &s) == MOTKIT_OK && motkit_paving_build(s, &o, 1, &p) == MOTKIT_OK) {
      take(tag + "/paving", [&](char** c) { return motkit_paving_json(p, c); });
    } else {
      out.emplace_back(tag, std::string("paving failed: ") + motkit_last_error());
    }
    motkit_paving_free(p);
    motkit_support_free(s);
  };
  auto verify = [&](const std::string& property, const std::string& text) {
    int passed = 0;
    take("verify-" + property,
         [&](char** c) { return motkit_verify_property(property.c_str(), text.c_str(), &o, &passed, c); });
  };

  for (const char* n : {"forced1d", "three-point", "two-class", "nikodym-singletons", "overlap"}) bundle(n, 7, nullptr);
  const auto shell = bundle("shell2d", 7, nullptr);
  const auto radial = bundle("radial4", 7, nullptr);
  const auto round = bundle("two-round", 7, nullptr);
  const auto leg = bundle("legendre", 7, nullptr);
  const auto tilt = bundle("tilted-family", 7, nullptr);
  const auto grid = bundle("identity-grid", 7, "{\"n\": 11}");
  const auto pent = bundle("pentagon-2d", 3, "{\"side\": 12, \"sense\": \"max\"}");
  const auto rs = bundle("random-spread", 5, "{\"d\": 2, \"nx\": 12, \"ny\": 16}");
  if (!shell.empty()) solve("shell2d", shell[0].second);
  if (!radial.empty()) solve("radial4", radial[0].second);
  if (!grid.empty()) solve("identity-grid", grid[0].second);
  std::string pc, rc;
  if (!pent.empty()) pc = solve("pentagon-2d", pent[0].second);
  if (!rs.empty()) rc = solve("random-spread", rs[0].second);
  if (!rc.empty()) paving("random-spread", rc);
  for (const auto& [name, text] : round)
    if (name.find("support") != std::string::npos) paving("two-round", text);
  if (!pc.empty()) {
    verify("polytope", pc);
    verify("extremal", pc);
  }
  if (!leg.empty()) {
    verify("sandwich", leg[0].second);
    verify("idempotent", leg[0].second);
  }
  if (!tilt.empty()) verify("flatten", tilt[0].second);
  if (!grid.empty()) verify("gamma-growth", grid[0].second);
  return out;
}

void criterion11() {
  Line line;
  const auto one = pipeline(1);
  const auto eight = pipeline(8);
  line.require(one.size() == eight.size(), "artifact counts differ");
  std::size_t differ = 0, errors = 0;
  for (std::size_t k = 0; k < std::min(one.size(), eight.size()); ++k) {
    if (one[k] != eight[k]) ++differ;
    if (one[k].second.rfind("{", 0) != 0) {
      ++errors;
      std::fprintf(stderr, "%s: %.80s\n", one[k].first.c_str(), one[k].second.c_str());
    }
  }
  line.require(differ == 0, std::to_string(differ) + " artifacts differ");
  line.require(errors == 0, std::to_string(errors) + " steps did not produce JSON");
  line.detail << one.size() << " JSON artifacts byte-identical with 1 and 8 threads";
  report("11", "determinism across thread counts", line);
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                    criterion5, criterion6, criterion7, criterion8,
                                                    criterion9, criterion10, criterion11};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("     FAIL  exception: %s\n", e.what());
      ++g_failed;
    }
  }
  std::printf("%d line(s) failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
