#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "motkit/fixtures.hpp"
#include "motkit/random.hpp"
#include "motkit/structure.hpp"

using namespace motkit;
namespace fx = motkit::fixtures;
using std::numbers::pi;

namespace {

Coupling single_fiber(std::vector<double> ys, std::vector<double> w) {
  std::vector<Point> pts;
  for (double y : ys) pts.push_back({y});
  std::vector<CouplingEntry> e;
  for (std::size_t j = 0; j < ys.size(); ++j) e.push_back({0, j, w[j]});
  return Coupling(DiscreteMeasure::dirac({0.0}), DiscreteMeasure(1, pts, w), e);
}

// Flux of grad(x^T A x) through the sphere of radius R, by quadrature on the sphere.
double flux(const Eigen::MatrixXd& a, double big) {
  const auto d = a.rows();
  auto q = [&](const Eigen::VectorXd& u) { return 2.0 * big * u.dot(a * u); };  // grad . n at R u, times 1
  if (d == 2) {
    const int n = 400;
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      const double t = 2 * pi * k / n;
      Eigen::VectorXd u(2);
      u << std::cos(t), std::sin(t);
      s += q(u);
    }
    return s * (2 * pi / n) * big;
  }
  // d = 3: two-point Gauss in cos(theta) is exact for the quadratic integrand
  const int n = 400;
  double s = 0.0;
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

}  // namespace

TEST_CASE("extremal flag on single fibers") {
  const auto two = check_extremal_support(single_fiber({-1, 1}, {0.5, 0.5}));
  REQUIRE(two.fibers.size() == 1);
  CHECK(two.fibers[0].extremal);
  CHECK(two.extremal_fraction == 1.0);
  const auto three = check_extremal_support(single_fiber({-1, 0, 1}, {0.25, 0.5, 0.25}));
  CHECK_FALSE(three.fibers[0].extremal);
  CHECK(three.extremal_fraction == 0.0);
  CHECK(three.fibers[0].barycenter_residual <= 1e-15);
}

TEST_CASE("1D structure") {
  for (Sense s : {Sense::kMinimize, Sense::kMaximize}) {
    const auto in = fx::forced1d(s);
    const auto rep = check_1d_structure(solve_mot(in.mu, in.nu, in.cost).coupling, s);
    REQUIRE(rep.fibers.size() == 1);
    CHECK(rep.fibers[0].size == 2);
    CHECK(rep.pass_fraction == 1.0);

    const auto tp = fx::three_point(s);
    const auto r3 = check_1d_structure(solve_mot(tp.mu, tp.nu, tp.cost).coupling, s);
    for (const auto& f : r3.fibers) CHECK(f.size <= 2);
  }
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Sense s = seed % 2 ? Sense::kMaximize : Sense::kMinimize;
    const auto in = fx::grid_spread_1d(seed, 50, 3, s);
    const auto res = solve_mot(in.mu, in.nu, in.cost);
    const auto a = check_1d_structure(res.coupling, s);
    const auto b = check_1d_structure(res.coupling, s);
    CHECK(a.pass_fraction >= 0.95);
    CHECK(a.pass_fraction == b.pass_fraction);
  }
  const auto two_d = fx::random_spread(1, 2, 5, 8, Sense::kMinimize);
  CHECK_THROWS_AS(check_1d_structure(solve_mot(two_d.mu, two_d.nu, two_d.cost).coupling, Sense::kMinimize), Error);
}

TEST_CASE("polytope support and extremality in 2D") {
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    const auto in = fx::pentagon_2d(seed, 10, seed ? Sense::kMaximize : Sense::kMinimize);
    const auto res = solve_mot(in.mu, in.nu, in.cost);
    const auto poly = check_polytope_support(res.coupling, {}, 4);
    CHECK(poly.pass_fraction >= 0.95);
    const auto ext = check_extremal_support(res.coupling, {}, 4);
    CHECK(ext.extremal_fraction >= 0.95);
    CHECK(ext.full_dim_extremal <= ext.full_dim_fibers);
    // thread count does not change the report
    CHECK(fiber_report_csv(poly) == fiber_report_csv(check_polytope_support(res.coupling, {}, 1)));
  }
  // collinear targets cannot be full-dimensional: reported, not an error
  const DiscreteMeasure mu(2, {{0.0, 0.0}}, {1.0});
  const DiscreteMeasure nu(2, {{-1.0, 0.0}, {1.0, 0.0}}, {0.5, 0.5});
  const Coupling flat(mu, nu, {{0, 0, 0.5}, {0, 1, 0.5}});
  const auto rep = check_polytope_support(flat);
  CHECK(rep.pass_fraction == 0.0);
  CHECK(rep.low_dim_fraction == 1.0);
}

TEST_CASE("extremal flag is invariant under rigid motions") {
  const auto in = fx::random_spread(9, 2, 12, 16, Sense::kMaximize);
  const auto res = solve_mot(in.mu, in.nu, in.cost);
  auto move = [](const DiscreteMeasure& m) {
    std::vector<Point> pts;
    for (const auto& p : m.atoms()) pts.push_back({0.6 * p[0] - 0.8 * p[1] + 2.0, 0.8 * p[0] + 0.6 * p[1] - 1.0});
    return DiscreteMeasure(2, pts, m.weights());
  };
  const Coupling moved(move(in.mu), move(in.nu), res.coupling.entries());
  const auto a = check_extremal_support(res.coupling);
  const auto b = check_extremal_support(moved);
  REQUIRE(a.fibers.size() == b.fibers.size());
  for (std::size_t k = 0; k < a.fibers.size(); ++k) CHECK(a.fibers[k].extremal == b.fibers[k].extremal);
}

TEST_CASE("shell certificate") {
  const auto c = shell_certificate(1.0);
  Rng rng(5);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Point x{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const double t = rng.uniform(0, 2 * pi);
    const Point y{x[0] + std::cos(t), x[1] + std::sin(t)};
    worst = std::max(worst, std::abs(c.slack(x, y)));
  }
  CHECK(worst <= 1e-12);
  CHECK(c.slack(Point{0.3, 0.1}, Point{0.8, 0.1}) == doctest::Approx(0.125));
  // the printed constant misses the shell by 1/2
  CHECK(shell_certificate_as_stated(1.0).slack(Point{0.0, 0.0}, Point{1.0, 0.0}) == doctest::Approx(0.5));
  // eps-shell: slack (t - eps)^2 / (2 eps)
  for (double eps : {0.25, 0.7, 2.0})
    for (double t : {0.1, 0.5, 1.0, 3.0}) {
      const auto ce = shell_certificate(eps);
      CHECK(ce.slack(Point{0.2, -0.4}, Point{0.2 + t, -0.4}) == doctest::Approx((t - eps) * (t - eps) / (2 * eps)));
    }
  CHECK_THROWS_AS(shell_certificate(0.0), Error);

  const auto shell = fx::shell2d();
  const auto res = solve_mot(shell.mu, shell.nu, shell.cost);
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-6));
  const auto t = c.tabulate(shell.mu.atoms(), shell.nu.atoms());
  CHECK(t.dual_value(shell.mu, shell.nu, 1e-9) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(verify_contact_layer(SupportSet::of(res.coupling), t, shell.mu.support(), shell.nu.support(), shell.cost).ok);

  const auto r4 = fx::radial4();
  const auto& in = r4.instance;
  CHECK(r4.plan_a.is_martingale(1e-12));
  CHECK(r4.plan_b.is_martingale(1e-12));
  CHECK(r4.plan_a.entries() != r4.plan_b.entries());
  CHECK(r4.plan_a.cost(in.cost) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r4.plan_b.cost(in.cost) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(solve_mot(in.mu, in.nu, in.cost).value == doctest::Approx(1.0).epsilon(1e-9));
  const auto t4 = c.tabulate(in.mu.atoms(), in.nu.atoms());
  for (const auto* plan : {&r4.plan_a, &r4.plan_b})
    CHECK(verify_contact_layer(SupportSet::of(*plan), t4, in.mu.support(), in.nu.support(), in.cost).ok);
}

TEST_CASE("gamma growth") {
  for (std::size_t n : {2, 3, 5, 11, 20}) {
    const auto g = gamma_growth_check(n);
    REQUIRE(g.increments.size() == n - 1);
    CHECK(g.min_increment >= 2.0 - 1e-6);
    CHECK(g.span >= 2.0 * (n - 1) - 1e-4);
  }
  CHECK_THROWS_AS(gamma_growth_check(1), Error);
}

TEST_CASE("convex Laplacian bound") {
  const auto id2 = convex_laplacian_bound_check({1, 0, 0, 1}, 2, 1.0);
  CHECK(id2.lhs == doctest::Approx(8 * pi).epsilon(1e-12));
  CHECK(id2.c0 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(id2.rhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(id2.pass);
  const auto id3 = convex_laplacian_bound_check({1, 0, 0, 0, 1, 0, 0, 0, 1}, 3, 1.0);
  CHECK(id3.c0 == doctest::Approx(pi / 12).epsilon(1e-12));
  const auto zero = convex_laplacian_bound_check({0, 0, 0, 0}, 2, 1.0);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  CHECK(zero.pass);
  CHECK_THROWS_AS(convex_laplacian_bound_check({1, 0, 0, -1}, 2, 1.0), Error);
  CHECK_THROWS_AS(convex_laplacian_bound_check({1, 2, 0, 1}, 2, 1.0), Error);

  Rng rng(8);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t d = 2 + trial % 2;
    Eigen::MatrixXd b(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) b(i, j) = rng.normal();
    const Eigen::MatrixXd a = b * b.transpose();
    std::vector<double> flat(a.data(), a.data() + d * d);
    for (double r : {0.5, 1.0, 2.0}) {
      const auto rep = convex_laplacian_bound_check(flat, d, r);
      CHECK(rep.pass);
      const double oracle = flux(a, std::sqrt(2.0) * r);
      CHECK(rep.lhs == doctest::Approx(oracle).epsilon(1e-10));
      const double c0 = d == 2 ? 0.5 : pi / 12;
      const double lmax = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().maxCoeff();
      CHECK(rep.rhs == doctest::Approx(c0 * std::pow(r, d - 2.0) * r * r * lmax).epsilon(1e-10));
    }
  }
}

TEST_CASE("flattening map") {
  SegmentFamily flat;
  flat.big_r = 1.0;
  flat.r = 0.5;
  const auto q0 = fx::family_queries(flat, 60, 1);
  const auto f0 = flattening_map(flat, q0);
  CHECK(f0.ratio_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f0.ratio_max == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t k = 0; k < q0.size(); ++k) CHECK(f0.mapped[k] == q0[k]);

  const auto fam = fx::tilted_family();
  const auto q = fx::family_queries(fam, 400, 2);
  const auto f = flattening_map(fam, q, 1000, 3);
  CHECK(f.pairs == 1000);
  CHECK(f.ratio_min >= 0.95 * f.bound_lo);
  CHECK(f.ratio_max <= 1.05 * f.bound_hi);
  CHECK(f.ratio_min > 0.0);
  // F maps each query onto its own height
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double h = f.mapped[k][1];
    CHECK(q[k][1] == doctest::Approx(h + fam.slope(h) * q[k][0]).epsilon(1e-12));
  }

  CHECK_THROWS_AS(flattening_map(fam, {{1.2, 0.0}, {0.0, 0.0}}), Error);
  SegmentFamily crossing = fam;
  crossing.kappa = 1.0;
  CHECK_THROWS_AS(flattening_map(crossing, q), Error);
  SegmentFamily steep = fam;
  steep.eta = 0.2;
  CHECK_THROWS_AS(flattening_map(steep, q), Error);
}
