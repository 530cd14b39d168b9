#include "doctest.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "motkit/error.hpp"
#include "motkit/lp.hpp"

using namespace motkit::lp;

namespace {

// Brute force: every pair of constraint lines, keep feasible intersections.
double polygon_vertex_min(const std::vector<std::array<double, 3>>& halfplanes, double cx, double cy) {
  double best = kInf;
  for (std::size_t p = 0; p < halfplanes.size(); ++p) {
    for (std::size_t q = p + 1; q < halfplanes.size(); ++q) {
      const auto& [a1, b1, r1] = halfplanes[p];
      const auto& [a2, b2, r2] = halfplanes[q];
      const double det = a1 * b2 - a2 * b1;
      if (std::abs(det) < 1e-12) continue;
      const double x = (r1 * b2 - r2 * b1) / det;
      const double y = (a1 * r2 - a2 * r1) / det;
      bool feasible = true;
      for (const auto& [a, b, r] : halfplanes)
        if (a * x + b * y > r + 1e-9) feasible = false;
      if (feasible) best = std::min(best, cx * x + cy * y);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("max x subject to x <= 1") {
  LinearProgram lp(Direction::kMaximize);
  const auto x = lp.add_variable(1.0);
  lp.add_row({{x, 1.0}}, RowSense::kLessEqual, 1.0);
  const LpSolution sol = solve(lp);
  REQUIRE(sol.status == Status::kOptimal);
  CHECK(sol.primal[x] == doctest::Approx(1.0));
  CHECK(sol.objective == doctest::Approx(1.0));
  CHECK(sol.dual_objective == doctest::Approx(1.0));
  CHECK(sol.duals[0] == doctest::Approx(1.0));
}

TEST_CASE("contradictory equalities are infeasible with a Farkas certificate") {
  LinearProgram lp;
  const auto x = lp.add_variable(0.0);
  lp.add_row({{x, 1.0}}, RowSense::kEqual, 1.0);
  lp.add_row({{x, 1.0}}, RowSense::kEqual, 2.0);
  const LpSolution sol = solve(lp);
  REQUIRE(sol.status == Status::kInfeasible);
  REQUIRE(sol.farkas.size() == 2);
  // y^T b > 0 while y^T A <= 0 on x >= 0.
  CHECK(sol.farkas[0] * 1.0 + sol.farkas[1] * 2.0 > 1e-9);
  CHECK(sol.farkas[0] + sol.farkas[1] <= 1e-12);
}

TEST_CASE("unbounded program reports an improving ray") {
  LinearProgram lp(Direction::kMaximize);
  const auto x = lp.add_variable(1.0);
  const auto y = lp.add_variable(0.0);
  lp.add_row({{x, 1.0}, {y, -1.0}}, RowSense::kLessEqual, 1.0);
  const LpSolution sol = solve(lp);
  REQUIRE(sol.status == Status::kUnbounded);
  REQUIRE(sol.ray.size() == 2);
  CHECK(sol.ray[x] > 0.0);
  CHECK(sol.ray[x] - sol.ray[y] <= 1e-12);
}

TEST_CASE("random polygons match exhaustive vertex enumeration") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::array<double, 3>> hp;
    const int k = 3 + trial % 6;
    for (int i = 0; i < k; ++i) hp.push_back({unit(rng), unit(rng), 0.2 + std::abs(unit(rng))});
    // bounding box keeps the program bounded
    hp.push_back({1, 0, 3});
    hp.push_back({-1, 0, 3});
    hp.push_back({0, 1, 3});
    hp.push_back({0, -1, 3});
    const double cx = unit(rng), cy = unit(rng);

    LinearProgram lp;
    const auto x = lp.add_variable(cx, -kInf, kInf);
    const auto y = lp.add_variable(cy, -kInf, kInf);
    for (const auto& [a, b, r] : hp) lp.add_row({{x, a}, {y, b}}, RowSense::kLessEqual, r);
    const LpSolution sol = solve(lp);
    REQUIRE(sol.status == Status::kOptimal);
    CHECK(sol.objective == doctest::Approx(polygon_vertex_min(hp, cx, cy)).epsilon(1e-9));
    CHECK(std::abs(sol.objective - sol.dual_objective) <= 1e-6 * (1.0 + std::abs(sol.objective)));
  }
}

TEST_CASE("bounds of every kind are honoured") {
  // min x - y + 2z, 1 <= x <= 3, y <= 5, z free, x + y + z = 4, z >= -1 via row
  LinearProgram lp;
  const auto x = lp.add_variable(1.0, 1.0, 3.0);
  const auto y = lp.add_variable(-1.0, -kInf, 5.0);
  const auto z = lp.add_variable(2.0, -kInf, kInf);
  lp.add_row({{x, 1.0}, {y, 1.0}, {z, 1.0}}, RowSense::kEqual, 4.0);
  lp.add_row({{z, 1.0}}, RowSense::kGreaterEqual, -1.0);
  const LpSolution sol = solve(lp);
  REQUIRE(sol.status == Status::kOptimal);
  // y = 4 - x - z; objective = x - 4 + x + z + 2z = 2x + 3z - 4 -> x=1, z=-1, y=4
  CHECK(sol.primal[x] == doctest::Approx(1.0));
  CHECK(sol.primal[z] == doctest::Approx(-1.0));
  CHECK(sol.primal[y] == doctest::Approx(4.0));
  CHECK(sol.objective == doctest::Approx(-5.0));
  CHECK(sol.dual_objective == doctest::Approx(-5.0));
  CHECK(sol.primal_residual <= 1e-12);
}

TEST_CASE("fixed variables are substituted") {
  LinearProgram lp;
  const auto x = lp.add_variable(3.0, 2.0, 2.0);
  const auto y = lp.add_variable(1.0);
  lp.add_row({{x, 1.0}, {y, 1.0}}, RowSense::kGreaterEqual, 5.0);
  const LpSolution sol = solve(lp);
  REQUIRE(sol.status == Status::kOptimal);
  CHECK(sol.primal[x] == 2.0);
  CHECK(sol.primal[y] == doctest::Approx(3.0));
  CHECK(sol.objective == doctest::Approx(9.0));
  CHECK(sol.dual_objective == doctest::Approx(9.0));
}

TEST_CASE("malformed programs are rejected") {
  LinearProgram lp;
  lp.add_variable(1.0, 2.0, 1.0);
  CHECK_THROWS_AS(solve(lp), motkit::Error);
  LinearProgram lp2;
  lp2.add_variable(1.0);
  lp2.add_row({{3, 1.0}}, RowSense::kEqual, 1.0);
  CHECK_THROWS_AS(solve(lp2), motkit::Error);
}

TEST_CASE("transport-type programs: duality, basic support and rule agreement") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 5, m = 2 + trial % 4;
    std::vector<double> a(n), b(m);
    double sa = 0, sb = 0;
    for (auto& v : a) sa += (v = 0.1 + u01(rng));
    for (auto& v : b) sb += (v = 0.1 + u01(rng));
    for (auto& v : a) v /= sa;
    for (auto& v : b) v /= sb;
    std::vector<double> cost(n * m);
    for (auto& v : cost) v = u01(rng);

    auto build = [&](double scale) {
      LinearProgram lp;
      for (double c : cost) lp.add_variable(scale * c);
      for (std::size_t i = 0; i < n; ++i) {
        Row r;
        for (std::size_t j = 0; j < m; ++j) r.terms.emplace_back(i * m + j, 1.0);
        r.rhs = a[i];
        lp.add_row(r);
      }
      for (std::size_t j = 0; j < m; ++j) {
        Row r;
        for (std::size_t i = 0; i < n; ++i) r.terms.emplace_back(i * m + j, 1.0);
        r.rhs = b[j];
        lp.add_row(r);
      }
      return lp;
    };
    const LinearProgram lp = build(1.0);
    const LpSolution hybrid = solve(lp);
    SolverOptions bland_opts;
    bland_opts.rule = PivotRule::kBland;
    const LpSolution bland = solve(lp, bland_opts);
    REQUIRE(hybrid.status == Status::kOptimal);
    REQUIRE(bland.status == Status::kOptimal);
    CHECK(hybrid.objective == doctest::Approx(bland.objective).epsilon(1e-9));
    CHECK(std::abs(hybrid.objective - hybrid.dual_objective) <= 1e-6 * (1.0 + std::abs(hybrid.objective)));
    CHECK(hybrid.primal_residual <= 1e-8);

    std::size_t nonzero = 0;
    for (double v : hybrid.primal) nonzero += v > 1e-12;
    CHECK(nonzero <= lp.num_rows());

    for (double r : hybrid.reduced_costs) CHECK(r >= -1e-8);

    // positive scaling of the objective keeps the optimal vertex
    const LpSolution scaled = solve(build(7.5));
    for (std::size_t k = 0; k < hybrid.primal.size(); ++k)
      CHECK(scaled.primal[k] == doctest::Approx(hybrid.primal[k]).epsilon(1e-9));
  }
}

TEST_CASE("solves are deterministic") {
  LinearProgram lp;
  for (int j = 0; j < 12; ++j) lp.add_variable(std::sin(j + 1.0));
  for (int i = 0; i < 4; ++i) {
    Row r;
    for (int j = 0; j < 12; ++j) r.terms.emplace_back(j, std::cos(i * 12 + j) + 1.5);
    r.sense = RowSense::kEqual;
    r.rhs = 1.0 + i;
    lp.add_row(r);
  }
  const LpSolution s1 = solve(lp), s2 = solve(lp);
  CHECK(s1.primal == s2.primal);
  CHECK(s1.duals == s2.duals);
  CHECK(s1.basis == s2.basis);
}

TEST_CASE("feasibility_with_margin") {
  SUBCASE("midpoint of a segment") {
    MarginSystem sys{2, {0, 0}, {{-1.0, 1.0}}, {0.0}};
    const MarginResult r = feasibility_with_margin(sys);
    REQUIRE(r.feasible);
    CHECK(r.margin == doctest::Approx(0.5));
    CHECK(r.weights[0] == doctest::Approx(0.5));
  }
  SUBCASE("off-centre point") {
    MarginSystem sys{2, {0, 0}, {{-1.0, 1.0}}, {0.9}};
    const MarginResult r = feasibility_with_margin(sys);
    REQUIRE(r.feasible);
    CHECK(r.margin == doctest::Approx(0.05));
    CHECK(r.weights[1] == doctest::Approx(0.95));
  }
  SUBCASE("outside the hull") {
    MarginSystem sys{2, {0, 0}, {{-1.0, 1.0}}, {1.5}};
    const MarginResult r = feasibility_with_margin(sys);
    CHECK_FALSE(r.feasible);
    CHECK(r.margin == -kInf);
  }
  SUBCASE("random triangles: margin equals the smallest barycentric coordinate") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(-1.0, 1.0), w(0.05, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      double p[3][2];
      for (auto& q : p) q[0] = unit(rng), q[1] = unit(rng);
      const double area = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1]);
      if (std::abs(area) < 0.1) continue;
      double l[3] = {w(rng), w(rng), w(rng)};
      const double s = l[0] + l[1] + l[2];
      for (double& v : l) v /= s;
      const double x = l[0] * p[0][0] + l[1] * p[1][0] + l[2] * p[2][0];
      const double y = l[0] * p[0][1] + l[1] * p[1][1] + l[2] * p[2][1];
      // independent route: Cramer's rule barycentric coordinates
      const double b1 = ((x - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (y - p[0][1])) / area;
      const double b2 = ((p[1][0] - p[0][0]) * (y - p[0][1]) - (x - p[0][0]) * (p[1][1] - p[0][1])) / area;
      const double b0 = 1.0 - b1 - b2;
      MarginSystem sys{3, {0, 0, 0}, {{p[0][0], p[1][0], p[2][0]}, {p[0][1], p[1][1], p[2][1]}}, {x, y}};
      const MarginResult r = feasibility_with_margin(sys);
      REQUIRE(r.feasible);
      CHECK(r.margin == doctest::Approx(std::min({b0, b1, b2})).epsilon(1e-9));
    }
  }
}
