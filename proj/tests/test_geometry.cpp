#include "doctest.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "motkit/error.hpp"
#include "motkit/geometry.hpp"

using namespace motkit;

namespace {

PointSet line(std::vector<double> xs) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back({x});
  return PointSet(1, pts);
}

PointSet plane(std::vector<std::array<double, 2>> xs) {
  std::vector<Point> pts;
  for (auto [a, b] : xs) pts.push_back({a, b});
  return PointSet(2, pts);
}

// Barycentric coordinates of x in triangle (a, b, c) by Cramer's rule.
std::array<double, 3> barycentric(const Point& a, const Point& b, const Point& c, const Point& x) {
  const double det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
  const double l1 = ((x[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (x[1] - a[1])) / det;
  const double l2 = ((b[0] - a[0]) * (x[1] - a[1]) - (x[0] - a[0]) * (b[1] - a[1])) / det;
  return {1.0 - l1 - l2, l1, l2};
}

std::vector<Point> random_cloud(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::normal_distribution<double> g;
  std::vector<Point> pts(n, Point(d));
  for (auto& p : pts)
    for (double& v : p) v = g(rng);
  return pts;
}

}  // namespace

TEST_CASE("affine_span dimensions") {
  const auto s0 = affine_span(plane({{3, 4}}));
  CHECK(s0.dim == 0);
  CHECK(s0.base == Point{3, 4});

  const auto s1 = affine_span(plane({{0, 0}, {1, 0}}));
  REQUIRE(s1.dim == 1);
  CHECK(s1.basis[0][0] == doctest::Approx(1.0));
  CHECK(s1.basis[0][1] == doctest::Approx(0.0));

  CHECK(affine_span(plane({{0, 0}, {1, 0}, {0, 1}})).dim == 2);
  CHECK(affine_span(plane({{0, 0}, {1, 1}, {2, 2}, {-3, -3}})).dim == 1);
  CHECK_THROWS_AS(affine_span(PointSet(2, {})), Error);
}

TEST_CASE("affine_span is permutation and translation invariant") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 1 + trial % 4, n = 1 + trial % 5;
    auto pts = random_cloud(rng, n, d);
    // squash some clouds into a lower-dimensional slab
    if (trial % 3 == 0)
      for (auto& p : pts) p.back() = 0.0;
    const std::size_t dim = affine_span(PointSet(d, pts)).dim;
    auto shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (auto& p : shuffled)
      for (double& v : p) v += 10.0;
    CHECK(affine_span(PointSet(d, shuffled)).dim == dim);
    CHECK(dim <= std::min(d, n - 1));
  }
}

TEST_CASE("duplicate points collapse on construction") {
  const PointSet p = plane({{0, 0}, {1, 0}, {0, 0}, {1, 1e-12}});
  CHECK(p.size() == 2);
  CHECK_THROWS_AS(PointSet(2, {{1.0}}), Error);
}

TEST_CASE("rel_interior_contains") {
  const auto seg = line({-1, 1});
  const auto mid = rel_interior_contains(seg, Point{0.0});
  REQUIRE(mid.inside);
  CHECK(mid.weights[0] == doctest::Approx(0.5));
  CHECK(mid.weights[1] == doctest::Approx(0.5));
  CHECK_FALSE(rel_interior_contains(seg, Point{1.0}).inside);
  CHECK_FALSE(rel_interior_contains(seg, Point{1.5}).inside);

  const auto tri = plane({{0, 0}, {1, 0}, {0, 1}});
  const auto in = rel_interior_contains(tri, Point{0.2, 0.2});
  REQUIRE(in.inside);
  // the only representation is the barycentric one (0.6, 0.2, 0.2)
  const auto bc = barycentric(tri[0], tri[1], tri[2], {0.2, 0.2});
  for (int k = 0; k < 3; ++k) CHECK(in.weights[k] == doctest::Approx(bc[k]));
  CHECK(in.weights[0] == doctest::Approx(0.6));
  CHECK(in.margin == doctest::Approx(0.2));

  // a point off the affine hull of a segment in the plane
  CHECK_FALSE(rel_interior_contains(plane({{0, 0}, {1, 0}}), Point{0.5, 1e-3}).inside);
  CHECK(rel_interior_contains(plane({{0, 0}, {1, 0}}), Point{0.5, 0.0}).inside);
  // singleton convention
  CHECK(rel_interior_contains(plane({{2, 2}}), Point{2, 2}).inside);
  CHECK_FALSE(rel_interior_contains(plane({{2, 2}}), Point{2, 2.1}).inside);
  CHECK_THROWS_AS(rel_interior_contains(tri, Point{0.0}), Error);
}

TEST_CASE("positively weighted barycentres lie in the relative interior") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> w(0.05, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + trial % 3, n = 1 + trial % 6;
    const PointSet p(d, random_cloud(rng, n, d));
    std::vector<double> wt(p.size());
    double s = 0;
    for (double& v : wt) s += (v = w(rng));
    Point bc(d, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t k = 0; k < d; ++k) bc[k] += wt[i] / s * p[i][k];
    CHECK(rel_interior_contains(p, bc).inside);
  }
}

TEST_CASE("rel_interiors_intersect") {
  CHECK(rel_interiors_intersect(line({-1, 1}), line({0, 2})));
  CHECK_FALSE(rel_interiors_intersect(line({-1, 0}), line({0, 1})));
  const auto square = plane({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK_FALSE(rel_interiors_intersect(plane({{0, 0}, {1, 0}}), square));
  CHECK(rel_interiors_intersect(plane({{0, 0.5}, {1, 0.5}}), square));
  // crossing segments
  CHECK(rel_interiors_intersect(plane({{-1, 0}, {1, 0}}), plane({{0, -1}, {0, 1}})));
  // skew segments in R^3
  CHECK_FALSE(rel_interiors_intersect(PointSet(3, {{-1, 0, 0}, {1, 0, 0}}), PointSet(3, {{0, -1, 1}, {0, 1, 1}})));
  // singletons
  CHECK(rel_interiors_intersect(plane({{1, 2}}), plane({{1, 2}})));
  CHECK_FALSE(rel_interiors_intersect(plane({{1, 2}}), plane({{1, 2.5}})));
  CHECK(rel_interiors_intersect(plane({{0.5, 0.5}}), square));
}

TEST_CASE("rel_interiors_intersect is symmetric and reflexive") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const PointSet p(d, random_cloud(rng, 1 + trial % 4, d));
    const PointSet q(d, random_cloud(rng, 1 + (trial / 4) % 4, d));
    CHECK(rel_interiors_intersect(p, q) == rel_interiors_intersect(q, p));
    CHECK(rel_interiors_intersect(p, p));
  }
}

TEST_CASE("rel_interior_subset") {
  CHECK(rel_interior_subset(line({0}), line({-1, 1})));
  const auto tri = plane({{0, 0}, {1, 0}, {0, 1}});
  CHECK_FALSE(rel_interior_subset(plane({{0, 0}, {1, 0}}), tri));
  const Point centre{1.0 / 3.0, 1.0 / 3.0};
  const PointSet cv(2, {centre, {1, 0}});
  CHECK(rel_interior_subset(cv, tri));
  // oracle: every point of the half-open segment [centre, vertex) has strictly
  // positive barycentric coordinates
  for (int k = 0; k < 1000; ++k) {
    const double s = k / 1000.0;
    const Point x{centre[0] + s * (1.0 - centre[0]), centre[1] - s * centre[1]};
    const auto bc = barycentric(tri[0], tri[1], tri[2], x);
    CHECK(*std::min_element(bc.begin(), bc.end()) > 0.0);
  }
  CHECK_FALSE(rel_interior_subset(plane({{0.2, 0.2}, {2, 2}}), tri));
}

TEST_CASE("extreme_points") {
  const auto e1 = extreme_points(line({-1, 0, 1}));
  REQUIRE(e1.size() == 2);
  CHECK(e1[0] == Point{-1});
  CHECK(e1[1] == Point{1});

  const auto e2 = extreme_points(plane({{0, 0}, {1, 0}, {0, 1}, {1.0 / 3, 1.0 / 3}}));
  CHECK(e2.size() == 3);

  std::vector<Point> circle;
  for (double a : {0.3, 1.9, 3.4, 5.0}) circle.push_back({std::cos(a), std::sin(a)});
  const PointSet c4(2, circle);
  // oracle: no point is a convex combination of the other three (one triangle
  // and three segments per point, all checked by barycentric coordinates)
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Point> others;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) others.push_back(circle[j]);
    const auto bc = barycentric(others[0], others[1], others[2], circle[i]);
    CHECK(*std::min_element(bc.begin(), bc.end()) < 0.0);
  }
  CHECK(extreme_points(c4).size() == 4);
}

TEST_CASE("extreme_points is idempotent and reconstructs the hull") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const PointSet p(d, random_cloud(rng, 2 + trial % 9, d));
    const PointSet e = extreme_points(p);
    CHECK(extreme_points(e).size() == e.size());
    for (const auto& pt : p) CHECK(hull_contains(e, pt));
  }
}
