#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "motkit/measures.hpp"

using namespace motkit;

namespace {

DiscreteMeasure line(std::vector<double> xs, std::vector<double> w) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back({x});
  return DiscreteMeasure(1, pts, w);
}

// Fibonacci lattice on the unit sphere.
std::vector<Point> sphere(std::size_t n, double radius = 1.0) {
  std::vector<Point> pts;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(1.0 - z * z);
    pts.push_back({radius * r * std::cos(golden * k), radius * r * std::sin(golden * k), radius * z});
  }
  return pts;
}

DiscreteMeasure uniform(std::size_t dim, std::vector<Point> pts) {
  const double w = 1.0 / static_cast<double>(pts.size());
  return DiscreteMeasure::normalized(dim, std::move(pts), std::vector<double>(pts.size(), w));
}

}  // namespace

TEST_CASE("measure construction") {
  CHECK_THROWS_AS(DiscreteMeasure(1, {{0.0}, {1.0}}, {0.5, 0.4}), Error);
  CHECK_THROWS_AS(DiscreteMeasure(1, {{0.0}, {1.0}}, {1.0, 0.0}), Error);
  CHECK_THROWS_AS(DiscreteMeasure(1, {{0.0}, {0.0}}, {0.5, 0.5}), Error);
  CHECK_THROWS_AS(DiscreteMeasure(2, {{0.0}}, {1.0}), Error);

  std::string warning;
  const auto m = DiscreteMeasure::normalized(1, {{0.0}, {1.0}, {0.0}, {2.0}}, {1.0, 1.0, 1.0, 0.0}, 1e-9, &warning);
  CHECK_FALSE(warning.empty());
  REQUIRE(m.size() == 2);
  CHECK(m.weight(0) == doctest::Approx(2.0 / 3.0));
  CHECK(m.weight(1) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("barycenter") {
  CHECK(barycenter(line({-1, 1}, {0.5, 0.5}))[0] == doctest::Approx(0.0));
  CHECK(barycenter(DiscreteMeasure::dirac({2, 3})) == Point{2, 3});
  CHECK(barycenter(line({-1, 0, 1}, {0.25, 0.5, 0.25}))[0] == doctest::Approx(0.0));
}

TEST_CASE("common_mass") {
  const auto mu = line({0, 1}, {0.5, 0.5});
  const auto same = common_mass(mu, mu);
  CHECK(same.mass == doctest::Approx(1.0));
  CHECK(same.remainders_empty());

  const auto disjoint = common_mass(mu, line({2, 3}, {0.5, 0.5}));
  CHECK(disjoint.mass == 0.0);
  REQUIRE(disjoint.mu_rest);
  CHECK(disjoint.mu_rest->weights() == mu.weights());

  const auto cm = common_mass(mu, line({0, 1}, {0.25, 0.75}));
  CHECK(cm.mass == doctest::Approx(0.75));
  REQUIRE(cm.weights.size() == 2);
  CHECK(cm.weights[0] == doctest::Approx(0.25));
  CHECK(cm.weights[1] == doctest::Approx(0.5));
  REQUIRE(cm.mu_rest);
  // remainders: mu' = delta_0, nu' = delta_1 (each of mass 1/4 before rescaling)
  CHECK(cm.remainder_mass == doctest::Approx(0.25));
  CHECK(cm.mu_rest->atoms() == std::vector<Point>{{0.0}});
  CHECK(cm.nu_rest->atoms() == std::vector<Point>{{1.0}});
}

TEST_CASE("common_mass remainders are mutually singular") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_real_distribution<double> w(0.1, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> a, b;
    std::vector<double> wa, wb;
    for (int k = 0; k < 4; ++k) {
      a.push_back({static_cast<double>(pick(rng))});
      wa.push_back(w(rng));
      b.push_back({static_cast<double>(pick(rng))});
      wb.push_back(w(rng));
    }
    const auto mu = DiscreteMeasure::normalized(1, a, wa);
    const auto nu = DiscreteMeasure::normalized(1, b, wb);
    const auto cm = common_mass(mu, nu);
    if (cm.remainders_empty()) continue;
    for (const auto& p : cm.mu_rest->atoms()) CHECK_FALSE(cm.nu_rest->find(p).has_value());
    double total = 0.0;
    for (double v : cm.weights) total += v;
    CHECK(total == doctest::Approx(cm.mass));
  }
}

TEST_CASE("check_convex_order examples") {
  const auto dirac = DiscreteMeasure::dirac({0.0});
  const auto split = line({-1, 1}, {0.5, 0.5});

  const auto yes = check_convex_order(dirac, split);
  REQUIRE(yes.in_order);
  REQUIRE(yes.coupling->size() == 2);
  CHECK(yes.coupling->entries()[0].mass == doctest::Approx(0.5));
  CHECK(yes.coupling->entries()[1].mass == doctest::Approx(0.5));

  const auto no = check_convex_order(split, dirac);
  REQUIRE_FALSE(no.in_order);
  REQUIRE(no.witness);
  CHECK(no.witness->gap() > 1e-8);
  // the witness is convex along the line through the atoms and separates like |t|
  const auto& phi = *no.witness;
  CHECK(phi(Point{-1.0}) + phi(Point{1.0}) > 2.0 * phi(Point{0.0}));

  // 2D: the origin against the four corners of the unit square
  const auto corners = uniform(2, {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  const auto sq = check_convex_order(DiscreteMeasure::dirac({0, 0}), corners);
  REQUIRE(sq.in_order);
  for (const auto& e : sq.coupling->entries()) CHECK(e.mass == doctest::Approx(0.25));

  const auto self = check_convex_order(corners, corners);
  CHECK(self.in_order);
  CHECK(self.coupling->residuals().max() < 1e-12);
}

TEST_CASE("convex order implies equal means and ordered convex integrals") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.2, 1.0);
  int ordered = 0, violated = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 1 + trial % 3;
    std::vector<Point> xs, ys;
    std::vector<double> wx, wy;
    for (int i = 0; i < 5; ++i) {
      Point x(d);
      for (double& v : x) v = g(rng);
      xs.push_back(x);
      wx.push_back(u(rng));
    }
    if (trial % 2) {
      // mean-preserving spread: each atom splits symmetrically
      for (std::size_t i = 0; i < xs.size(); ++i) {
        Point s(d);
        for (double& v : s) v = g(rng);
        Point lo = xs[i], hi = xs[i];
        for (std::size_t k = 0; k < d; ++k) {
          lo[k] -= s[k];
          hi[k] += s[k];
        }
        ys.push_back(lo);
        ys.push_back(hi);
        wy.push_back(wx[i]);
        wy.push_back(wx[i]);
      }
    } else {
      for (int j = 0; j < 7; ++j) {
        Point y(d);
        for (double& v : y) v = 0.7 * g(rng);
        ys.push_back(y);
        wy.push_back(u(rng));
      }
    }
    const auto mu = DiscreteMeasure::normalized(d, xs, wx);
    const auto nu = DiscreteMeasure::normalized(d, ys, wy);
    const auto res = check_convex_order(mu, nu);
    if (!res.in_order) {
      ++violated;
      CHECK(res.witness->gap() > 0.0);
      continue;
    }
    ++ordered;
    const Point bm = barycenter(mu), bn = barycenter(nu);
    for (std::size_t k = 0; k < d; ++k) CHECK(bm[k] == doctest::Approx(bn[k]).epsilon(1e-8));
    CHECK(res.coupling->residuals().max() <= 1e-8);
    for (int t = 0; t < 20; ++t) {
      ConvexWitness phi;
      for (int piece = 0; piece < 4; ++piece) {
        Point s(d);
        for (double& v : s) v = g(rng);
        phi.anchors.push_back(Point(d, 0.0));
        phi.offsets.push_back(g(rng));
        phi.slopes.push_back(s);
      }
      double a = 0.0, b = 0.0;
      for (std::size_t i = 0; i < mu.size(); ++i) a += mu.weight(i) * phi(mu.atom(i));
      for (std::size_t j = 0; j < nu.size(); ++j) b += nu.weight(j) * phi(nu.atom(j));
      CHECK(a <= b + 1e-8);
    }
  }
  CHECK(ordered > 0);
  CHECK(violated > 0);
}

TEST_CASE("newtonian potential") {
  const auto delta = DiscreteMeasure::dirac({0, 0, 0});
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
  const double p = newtonian_potential(delta, Point{0, 1, 0});
  CHECK(p == doctest::Approx(-1.0 / (4.0 * std::numbers::pi)).epsilon(1e-14));
  CHECK(p == doctest::Approx(-0.0795775).epsilon(1e-6));

  CHECK_THROWS_AS(newtonian_potential(DiscreteMeasure::dirac({0, 0}), Point{1, 0}), Error);
  CHECK_THROWS_AS(newtonian_potential(delta, Point{0, 0, 0}), Error);

  // linearity in the measure
  const auto a = uniform(3, {{1, 0, 0}, {0, 2, 0}});
  const auto b = uniform(3, {{0, 0, 3}, {-1, -1, 0}});
  std::vector<Point> all = a.atoms();
  all.insert(all.end(), b.atoms().begin(), b.atoms().end());
  const auto mix = uniform(3, all);
  for (const Point& x : {Point{0.3, 0.2, 0.1}, Point{5, -2, 1}}) {
    const double lhs = newtonian_potential(mix, x);
    CHECK(lhs == doctest::Approx(0.5 * (newtonian_potential(a, x) + newtonian_potential(b, x))));
  }

  // negative, increasing towards zero along a ray
  double prev = -1e300;
  for (double r = 0.5; r < 100.0; r *= 1.7) {
    const double v = newtonian_potential(a, Point{r, r, r});
    CHECK(v < 0.0);
    if (r > 5.0) CHECK(v > prev);
    prev = v;
  }

  // shell theorem: outside a uniform shell the potential is that of a point mass
  const auto shell = uniform(3, sphere(1000));
  CHECK(newtonian_potential(shell, Point{0, 0, 2}) == doctest::Approx(-1.0 / (8.0 * std::numbers::pi)).epsilon(1e-3));
  CHECK(newtonian_potential(shell, Point{1.2, -1.1, 1.0}) ==
        doctest::Approx(-1.0 / (4.0 * std::numbers::pi * std::sqrt(1.44 + 1.21 + 1.0))).epsilon(1e-3));
}

TEST_CASE("subharmonic order report") {
  const auto delta = DiscreteMeasure::dirac({0, 0, 0});
  const auto shell = uniform(3, sphere(1000));
  std::vector<Point> grid{{0.1, 0.2, 0.0}, {0.0, 0.5, 0.3}, {0.2, 0.2, -0.6}, {2, 0, 0}, {0, 3, 1}};
  Tolerances tol;
  tol.feas = 1e-3;
  const auto rep = subharmonic_order_report(delta, shell, grid, tol, 1e-3);
  CHECK(rep.consistent);
  for (std::size_t g = 0; g < 3; ++g) {
    CHECK(rep.in_u[g]);
    // inside the shell P_nu = -1/(4 pi), so the gap is 1/(4 pi) (1/|x| - 1)
    const double r = norm(grid[g]);
    CHECK(rep.gap[g] == doctest::Approx((1.0 / r - 1.0) / (4.0 * std::numbers::pi)).epsilon(2e-3));
  }
  for (std::size_t g = 3; g < 5; ++g) {
    CHECK_FALSE(rep.in_u[g]);
    CHECK(std::abs(rep.gap[g]) < 1e-3);
  }

  const auto flat = subharmonic_order_report(shell, shell, grid);
  for (double v : flat.gap) CHECK(v == 0.0);
  CHECK(flat.consistent);

  const auto swapped = subharmonic_order_report(shell, delta, grid, tol, 1e-3);
  CHECK_FALSE(swapped.consistent);
  CHECK(swapped.min_gap < -1e-3);

  // thread count does not change the values
  const auto par = subharmonic_order_report(delta, shell, grid, tol, 1e-3, 4);
  CHECK(par.gap == rep.gap);
}
