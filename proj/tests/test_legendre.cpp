#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "motkit/fixtures.hpp"
#include "motkit/legendre.hpp"
#include "motkit/mot.hpp"
#include "motkit/random.hpp"

using namespace motkit;

namespace {

std::vector<Point> grid_1d(double lo, double hi, std::size_t n) {
  std::vector<Point> g;
  for (std::size_t i = 0; i < n; ++i) g.push_back({lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1)});
  return g;
}

SampledFunction two_point_zero() { return SampledFunction(1, {{-1.0}, {1.0}}, {0.0, 0.0}); }

}  // namespace

TEST_CASE("closed form on Y = {-1, 1}") {
  const auto xs = grid_1d(-0.99, 0.99, 201);
  const auto dual = legendre_dual(two_point_zero(), xs, CostSpec::euclidean());
  double ea = 0.0, eg = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i][0];
    ea = std::max(ea, std::abs(dual.alpha[i] - (x * x - 1.0)));
    eg = std::max(eg, std::abs(dual.gamma[i][0] - x));
    CHECK_FALSE(dual.degenerate[i]);
  }
  CHECK(ea <= 1e-8);
  CHECK(eg <= 1e-8);
  CHECK(dual.max_violation(two_point_zero(), CostSpec::euclidean()) <= 1e-12);

  // brute force over b in [-2, 2] at step 1e-3; for fixed b the least a is explicit
  for (double x : {-0.7, -0.25, 0.0, 0.4, 0.9}) {
    double best_a = 1e300, best_b = 0.0;
    for (int s = -2000; s <= 2000; ++s) {
      const double b = s * 1e-3;
      const double a = std::max(-std::abs(x - 1.0) - b * (1.0 - x), -std::abs(x + 1.0) - b * (-1.0 - x));
      if (a < best_a) {
        best_a = a;
        best_b = b;
      }
    }
    const auto one = legendre_dual(two_point_zero(), {{x}}, CostSpec::euclidean());
    CHECK(one.alpha[0] == doctest::Approx(best_a).epsilon(2e-3));
    CHECK(std::abs(one.gamma[0][0] - best_b) <= 1e-3);
  }

  // beta_cc = y^2 - 1 on the grid, and 0 at the generators
  const auto cc = double_transform(dual, xs, CostSpec::euclidean());
  const double h = 1.98 / 200.0;
  double ecc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) ecc = std::max(ecc, std::abs(cc[i] - (xs[i][0] * xs[i][0] - 1.0)));
  CHECK(ecc <= 2 * h * h);
  const auto ends = double_transform(dual, {{-1.0}, {1.0}}, CostSpec::euclidean());
  CHECK(std::abs(ends[0]) <= 1e-12);
  CHECK(std::abs(ends[1]) <= 1e-12);
}

TEST_CASE("zero cost: flat case and the concave envelope") {
  const auto xs = grid_1d(-0.95, 0.95, 39);
  const auto flat = legendre_dual(two_point_zero(), xs, CostSpec::zero());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(std::abs(flat.alpha[i]) <= 1e-12);
    CHECK(std::abs(flat.gamma[i][0]) <= 1e-12);
  }
  // least affine majorant of (0, 1, 0) on {-1, 0, 1}: the tent 1 - |y|
  const SampledFunction tent(1, {{-1.0}, {0.0}, {1.0}}, {0.0, 1.0, 0.0});
  const auto fine = grid_1d(-0.99, 0.99, 199);
  const auto dual = legendre_dual(tent, fine, CostSpec::zero());
  const auto eval = grid_1d(-1.0, 1.0, 81);
  const auto cc = double_transform(dual, eval, CostSpec::zero());
  for (std::size_t e = 0; e < eval.size(); ++e) CHECK(cc[e] == doctest::Approx(1.0 - std::abs(eval[e][0])).epsilon(1e-9));
  // gamma is pinned except at the kink
  for (std::size_t i = 0; i < fine.size(); ++i) CHECK(dual.degenerate[i] == (std::abs(fine[i][0]) < 1e-12));
  CHECK(check_idempotent(tent, fine, eval, CostSpec::zero()).max_deviation <= 1e-9);
}

TEST_CASE("affine equivariance") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 1 + trial % 2;
    std::vector<Point> ys;
    std::vector<double> vals;
    for (std::size_t k = 0; k < 8; ++k) {
      Point y(d);
      for (double& v : y) v = rng.uniform(-1.0, 1.0);
      ys.push_back(y);
      vals.push_back(rng.uniform(-1.0, 1.0));
    }
    // corners keep the evaluation points inside the hull
    for (double s : {-2.0, 2.0}) {
      ys.push_back(Point(d, s));
      vals.push_back(rng.uniform());
    }
    if (d == 2) {
      ys.push_back({-2.0, 2.0});
      vals.push_back(0.3);
      ys.push_back({2.0, -2.0});
      vals.push_back(-0.1);
    }
    const SampledFunction beta(d, ys, vals);
    Point grad(d);
    for (double& g : grad) g = rng.uniform(-2.0, 2.0);
    const double c0 = rng.uniform(-1.0, 1.0);
    auto affine = [&](const Point& p) { return c0 + dot(grad, p); };
    std::vector<double> shifted = vals;
    for (std::size_t k = 0; k < ys.size(); ++k) shifted[k] += affine(ys[k]);
    const SampledFunction beta2(d, ys, shifted);

    std::vector<Point> xs;
    for (int i = 0; i < 15; ++i) {
      Point x(d);
      for (double& v : x) v = rng.uniform(-1.5, 1.5);
      xs.push_back(x);
    }
    const auto cost = CostSpec::euclidean();
    const auto a = legendre_dual(beta, xs, cost);
    const auto b = legendre_dual(beta2, xs, cost);
    const auto cca = double_transform(a, ys, cost);
    const auto ccb = double_transform(b, ys, cost);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CHECK(b.alpha[i] == doctest::Approx(a.alpha[i] + affine(xs[i])).epsilon(1e-9));
      if (!a.degenerate[i])
        for (std::size_t c = 0; c < d; ++c) CHECK(b.gamma[i][c] == doctest::Approx(a.gamma[i][c] + grad[c]).epsilon(1e-8));
    }
    for (std::size_t k = 0; k < ys.size(); ++k) CHECK(ccb[k] == doctest::Approx(cca[k] + affine(ys[k])).epsilon(1e-9));
  }
}

TEST_CASE("sandwich") {
  const auto xs = grid_1d(-0.99, 0.99, 201);
  const auto e = check_sandwich(two_point_zero(), xs, CostSpec::euclidean());
  CHECK(e.delta1 == 0.0);
  CHECK(std::abs(e.delta2) <= 1e-12);
  CHECK(e.ok);
  CHECK(e.max_gap <= 1e-6);

  CostSpec neg = CostSpec::euclidean();
  neg.scale = -1.0;
  const auto n = check_sandwich(two_point_zero(), xs, neg);
  CHECK(n.ok);
  CHECK(n.delta2 <= 2.0 * 1.98 + 1e-12);

  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + trial % 2;
    std::vector<Point> ys;
    std::vector<double> vals;
    for (std::size_t k = 0; k < 10; ++k) {
      Point y(d);
      for (double& v : y) v = rng.uniform(-1.0, 1.0);
      ys.push_back(y);
      vals.push_back(rng.normal());
    }
    const SampledFunction beta(d, ys, vals);
    const PointSet hull(d, ys);
    std::vector<Point> xs2;
    while (xs2.size() < 12) {
      Point x(d);
      for (double& v : x) v = rng.uniform(-1.0, 1.0);
      if (rel_interior_contains(hull, x).inside) xs2.push_back(x);
    }
    for (Sense s : {Sense::kMinimize, Sense::kMaximize}) {
      for (double p : {1.0, 2.0}) {
        const auto rep = check_sandwich(beta, xs2, CostSpec::power(p, s));
        CHECK(rep.ok);
      }
    }
  }
}

TEST_CASE("idempotence") {
  Rng rng(29);
  const auto xs = grid_1d(-0.98, 0.98, 99);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Point> ys{{-1.0}, {1.0}};
    std::vector<double> vals{rng.normal(), rng.normal()};
    for (int k = 0; k < 6; ++k) {
      ys.push_back({rng.uniform(-0.9, 0.9)});
      vals.push_back(rng.normal());
    }
    const SampledFunction beta(1, ys, vals);
    const auto rep = check_idempotent(beta, xs, xs, CostSpec::euclidean());
    CHECK(rep.max_deviation <= 1e-6);
  }
  // a double transform is a fixed point
  const auto dual = legendre_dual(two_point_zero(), xs, CostSpec::euclidean());
  std::vector<Point> ys{{-1.0}, {1.0}};
  for (const auto& x : xs) ys.push_back(x);
  const SampledFunction cc(1, ys, double_transform(dual, ys, CostSpec::euclidean()));
  const auto again = legendre_dual(cc, xs, CostSpec::euclidean());
  const auto cccc = double_transform(again, ys, CostSpec::euclidean());
  for (std::size_t k = 0; k < ys.size(); ++k) CHECK(std::abs(cccc[k] - cc.values[k]) <= 1e-12);
}

TEST_CASE("monotonicity against admissible triples") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto in = fixtures::random_spread(seed, 1 + seed % 2, 8, 12, Sense::kMinimize);
    const auto res = solve_mot(in.mu, in.nu, in.cost);
    const auto t = recover_dual(in.mu, in.nu, in.cost, res.coupling);
    const SampledFunction beta(in.mu.dim(), t.ys, t.beta);
    const PointSet hull(in.mu.dim(), t.ys);
    std::vector<Point> xs;
    std::vector<double> alpha;
    for (std::size_t i = 0; i < t.xs.size(); ++i)
      if (rel_interior_contains(hull, t.xs[i]).inside) {
        xs.push_back(t.xs[i]);
        alpha.push_back(t.alpha[i]);
      }
    REQUIRE_FALSE(xs.empty());
    const auto dual = legendre_dual(beta, xs, in.cost);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(alpha[i] >= dual.alpha[i] - 1e-8);
    // (alpha_c, gamma_c, beta_cc) is again admissible on X x Y
    const auto cc = double_transform(dual, t.ys, in.cost);
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t k = 0; k < t.ys.size(); ++k) {
        double lhs = cc[k] - dual.alpha[i];
        for (std::size_t c = 0; c < xs[i].size(); ++c) lhs -= dual.gamma[i][c] * (t.ys[k][c] - xs[i][c]);
        CHECK(lhs <= in.cost(xs[i], t.ys[k]) + 1e-9);
      }
  }
}

TEST_CASE("maximization mirrors minimization of the negated data") {
  const auto xs = grid_1d(-0.9, 0.9, 19);
  const SampledFunction beta(1, {{-1.0}, {0.2}, {1.0}}, {0.5, -0.3, 0.1});
  const SampledFunction minus(1, beta.points, {-0.5, 0.3, -0.1});
  CostSpec neg = CostSpec::power(2.0);
  neg.scale = -1.0;
  const auto mx = legendre_dual(beta, xs, CostSpec::power(2.0, Sense::kMaximize));
  const auto mn = legendre_dual(minus, xs, neg);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(mx.alpha[i] == doctest::Approx(-mn.alpha[i]));
    CHECK(mx.gamma[i][0] == doctest::Approx(-mn.gamma[i][0]));
  }
  CHECK(mx.max_violation(beta, CostSpec::power(2.0, Sense::kMaximize)) <= 1e-12);
}

TEST_CASE("errors and threads") {
  CHECK_THROWS_AS(legendre_dual(two_point_zero(), {{1.0}}, CostSpec::euclidean()), Error);
  try {
    legendre_dual(two_point_zero(), {{1.5}}, CostSpec::euclidean());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDomain);
  }
  CHECK_THROWS_AS(SampledFunction(1, {{0.0}, {0.0}}, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(SampledFunction(1, {{0.0}}, {1.0, 2.0}), Error);

  const auto xs = grid_1d(-0.9, 0.9, 57);
  const auto a = legendre_dual(two_point_zero(), xs, CostSpec::euclidean(), {}, 1);
  const auto b = legendre_dual(two_point_zero(), xs, CostSpec::euclidean(), {}, 6);
  CHECK(a.alpha == b.alpha);
  CHECK(a.gamma == b.gamma);
}
