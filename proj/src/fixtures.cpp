#include "motkit/fixtures.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "motkit/error.hpp"
#include "motkit/random.hpp"

namespace motkit::fixtures {

namespace {

using std::numbers::pi;

DiscreteMeasure uniform_on(std::size_t d, std::vector<Point> pts) {
  std::vector<double> w(pts.size(), 1.0 / static_cast<double>(pts.size()));
  return DiscreteMeasure::normalized(d, std::move(pts), std::move(w));
}

// Accumulates weighted atoms, merging repeats.
struct Builder {
  std::size_t d;
  std::vector<Point> atoms;
  std::vector<double> weights;
  std::size_t add(const Point& p, double w) {
    for (std::size_t k = 0; k < atoms.size(); ++k)
      if (distance(atoms[k], p) <= 1e-9) {
        weights[k] += w;
        return k;
      }
    atoms.push_back(p);
    weights.push_back(w);
    return atoms.size() - 1;
  }
  DiscreteMeasure measure() const { return DiscreteMeasure::normalized(d, atoms, weights, 0.0); }
};

// Barycentric coordinates of x in the simplex `verts` (d + 1 points).
std::vector<double> barycentric(const std::vector<Point>& verts, const Point& x) {
  const std::size_t d = x.size();
  Eigen::MatrixXd a(d, d);
  Eigen::VectorXd b(d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t c = 0; c < d; ++c) a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) = verts[c + 1][k] - verts[0][k];
    b(static_cast<Eigen::Index>(k)) = x[k] - verts[0][k];
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  std::vector<double> lam(d + 1, -1.0);
  if (!lu.isInvertible()) return lam;
  const Eigen::VectorXd s = lu.solve(b);
  double rest = 1.0;
  for (std::size_t c = 0; c < d; ++c) {
    lam[c + 1] = s(static_cast<Eigen::Index>(c));
    rest -= lam[c + 1];
  }
  lam[0] = rest;
  return lam;
}

}  // namespace

Instance forced1d(Sense sense) {
  return {DiscreteMeasure::dirac({0.0}), DiscreteMeasure(1, {{-1.0}, {1.0}}, {0.5, 0.5}), CostSpec::euclidean(sense)};
}

Instance three_point(Sense sense) {
  return {DiscreteMeasure(1, {{-1.0}, {0.0}, {1.0}}, {0.25, 0.5, 0.25}), DiscreteMeasure(1, {{-1.0}, {1.0}}, {0.5, 0.5}),
          CostSpec::euclidean(sense)};
}

Instance shell2d() {
  std::vector<Point> xs;
  Builder nu{2, {}, {}};
  std::size_t k = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b, ++k) {
      const Point x{-0.2 + 0.1 * a, -0.2 + 0.1 * b};
      const double th = pi * static_cast<double>(k) / 25.0;
      xs.push_back(x);
      nu.add({x[0] + std::cos(th), x[1] + std::sin(th)}, 1.0 / 50.0);
      nu.add({x[0] - std::cos(th), x[1] - std::sin(th)}, 1.0 / 50.0);
    }
  return {uniform_on(2, xs), nu.measure(), CostSpec::euclidean(Sense::kMaximize)};
}

Radial4 radial4() {
  std::vector<Point> xs;
  for (int m = 0; m < 8; ++m) xs.push_back({std::cos(m * pi / 4), std::sin(m * pi / 4)});
  const double wa[4] = {0.25, 0.25, 0.25, 0.25};
  const double wb[4] = {0.125, 0.375, 0.125, 0.375};
  Builder nu{2, {}, {}};
  struct Raw {
    std::size_t i, j;
    double a, b;
  };
  std::vector<Raw> raw;
  for (int m = 0; m < 8; ++m)
    for (int k = 0; k < 4; ++k) {
      // rotate the diagonal offset z_k = e^{i(2k+1)pi/4} by the angle of x_m
      const double th = m * pi / 4 + (2 * k + 1) * pi / 4;
      const Point y{xs[m][0] + std::cos(th), xs[m][1] + std::sin(th)};
      const std::size_t j = nu.add(y, wa[k] / 8.0);
      raw.push_back({static_cast<std::size_t>(m), j, wa[k] / 8.0, wb[k] / 8.0});
    }
  Radial4 out;
  out.instance = {uniform_on(2, xs), nu.measure(), CostSpec::euclidean(Sense::kMaximize)};
  // plan b must have the same target law; the construction guarantees it
  std::vector<CouplingEntry> ea, eb;
  for (const auto& r : raw) {
    ea.push_back({r.i, r.j, r.a});
    eb.push_back({r.i, r.j, r.b});
  }
  out.plan_a = Coupling(out.instance.mu, out.instance.nu, std::move(ea));
  out.plan_b = Coupling(out.instance.mu, out.instance.nu, std::move(eb));
  return out;
}

Instance identity_grid(std::size_t n) {
  if (n < 2) throw argument_error("identity-grid: need at least 2 points");
  std::vector<Point> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back({static_cast<double>(i) / static_cast<double>(n - 1)});
  const auto m = uniform_on(1, xs);
  return {m, m, CostSpec::euclidean(Sense::kMaximize)};
}

SupportSet two_class_support() {
  SupportSet s(1);
  s.fibers = {{{0.0}, {{-1.0}, {1.0}}}, {{5.0}, {{4.0}, {6.0}}}};
  return s;
}

SupportSet overlap_support() {
  SupportSet s(1);
  s.fibers = {{{0.0}, {{-1.0}, {1.0}}}, {{1.5}, {{0.5}, {2.5}}}};
  return s;
}

Instance two_class_instance() {
  return {DiscreteMeasure(1, {{0.0}, {5.0}}, {0.5, 0.5}),
          DiscreteMeasure(1, {{-1.0}, {1.0}, {4.0}, {6.0}}, {0.25, 0.25, 0.25, 0.25}), CostSpec::euclidean(Sense::kMinimize)};
}

SupportSet two_round_support() {
  SupportSet s(2);
  s.fibers = {{{0.0, 0.0}, {{-1.0, 0.0}, {1.0, 0.0}}},
              {{0.5, 0.0}, {{0.5, -1.0}, {0.5, 1.0}}},
              {{-0.5, 0.6}, {{-0.5, 0.3}, {-0.5, 0.9}}}};
  return s;
}

namespace {

std::vector<std::pair<Point, Point>> nikodym_segments(std::uint64_t seed, std::size_t side, double eps) {
  if (side == 0 || !(eps > 0.0) || eps >= 0.5) throw argument_error("nikodym-singletons: need side >= 1 and 0 < eps < 0.5");
  Rng rng(seed, 7);
  const std::size_t n = side * side;
  std::vector<std::pair<Point, Point>> out;
  for (std::size_t k = 0; k < n; ++k) {
    // one direction per slot of width pi / n, jittered inside its slot
    const double th = pi * (static_cast<double>(k) + rng.uniform(0.1, 0.9)) / static_cast<double>(n);
    const Point x{static_cast<double>(k % side), static_cast<double>(k / side)};
    out.push_back({x, {eps * std::cos(th), eps * std::sin(th)}});
  }
  return out;
}

}  // namespace

SupportSet nikodym_singletons(std::uint64_t seed, std::size_t side, double eps) {
  SupportSet s(2);
  for (const auto& [x, u] : nikodym_segments(seed, side, eps))
    s.fibers.push_back({x, {{x[0] - u[0], x[1] - u[1]}, {x[0] + u[0], x[1] + u[1]}}});
  return s;
}

Instance nikodym_instance(std::uint64_t seed, std::size_t side, double eps) {
  std::vector<Point> xs;
  Builder nu{2, {}, {}};
  const auto segs = nikodym_segments(seed, side, eps);
  const double w = 1.0 / static_cast<double>(segs.size());
  for (const auto& [x, u] : segs) {
    xs.push_back(x);
    nu.add({x[0] - u[0], x[1] - u[1]}, w / 2);
    nu.add({x[0] + u[0], x[1] + u[1]}, w / 2);
  }
  return {uniform_on(2, xs), nu.measure(), CostSpec::euclidean(Sense::kMaximize)};
}

Instance random_spread(std::uint64_t seed, std::size_t d, std::size_t nx, std::size_t ny, Sense sense) {
  if (d == 0 || nx == 0 || ny < d + 2) throw argument_error("random_spread: need d >= 1, nx >= 1, ny >= d + 2");
  Rng rng(seed, 1);
  std::vector<Point> xs;
  std::vector<double> wx;
  for (std::size_t i = 0; i < nx; ++i) {
    Point x(d);
    for (double& v : x) v = rng.uniform(-1.0, 1.0);
    xs.push_back(x);
    wx.push_back(rng.uniform(0.2, 1.0));
  }
  double total = 0.0;
  for (double w : wx) total += w;
  for (double& w : wx) w /= total;

  // at most a quarter of the target atoms are stay-put copies of mu atoms
  std::vector<bool> stays(nx, false);
  std::size_t nstay = 0;
  for (std::size_t i = 0; i < nx && nstay < ny / 4; ++i)
    if (rng.uniform() < 0.25) {
      stays[i] = true;
      ++nstay;
    }

  // enclosing simplex {v >= -1.5, sum(v + 1.5) <= 2.5 d + 0.5} plus random points
  std::vector<Point> pool;
  const double b = 1.5, a = 2.5 * static_cast<double>(d) + 0.5;
  pool.push_back(Point(d, -b));
  for (std::size_t k = 0; k < d; ++k) {
    Point v(d, -b);
    v[k] += a;
    pool.push_back(v);
  }
  while (pool.size() < ny - nstay) {
    Point p(d);
    for (double& v : p) v = rng.uniform(-1.8, 1.8);
    pool.push_back(p);
  }

  Builder nu{d, {}, {}};
  for (std::size_t i = 0; i < nx; ++i) {
    double spread = wx[i];
    if (stays[i]) {
      const double s = rng.uniform(0.1, 0.5);
      nu.add(xs[i], wx[i] * s);
      spread -= wx[i] * s;
    }
    std::vector<std::size_t> pick(d + 1);
    std::vector<double> lam;
    bool found = false;
    const bool enough = pool.size() >= 2 * (d + 1);
    for (int attempt = 0; enough && attempt < 60 && !found; ++attempt) {
      // distinct random indices, skipping the enclosing simplex
      for (std::size_t c = 0; c <= d; ++c) {
        std::size_t idx;
        do idx = d + 1 + rng.below(pool.size() - d - 1);
        while (std::find(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(c), idx) != pick.begin() + static_cast<std::ptrdiff_t>(c));
        pick[c] = idx;
      }
      std::vector<Point> verts;
      for (std::size_t c : pick) verts.push_back(pool[c]);
      lam = barycentric(verts, xs[i]);
      found = *std::min_element(lam.begin(), lam.end()) > 0.02;
    }
    if (!found) {
      for (std::size_t c = 0; c <= d; ++c) pick[c] = c;
      std::vector<Point> verts(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(d + 1));
      lam = barycentric(verts, xs[i]);
    }
    for (std::size_t c = 0; c <= d; ++c) nu.add(pool[pick[c]], spread * lam[c]);
  }
  return {DiscreteMeasure(d, xs, wx), nu.measure(), CostSpec::euclidean(sense)};
}

Instance grid_spread_1d(std::uint64_t seed, std::size_t n, std::size_t ny, Sense sense) {
  if (n < 2 || ny < 2) throw argument_error("grid_spread_1d: need n >= 2 and ny >= 2");
  Rng rng(seed, 2);
  std::vector<Point> xs;
  std::vector<double> wx;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back({static_cast<double>(i) / static_cast<double>(n - 1)});
    wx.push_back(rng.uniform(0.5, 1.5));
    total += wx.back();
  }
  for (double& w : wx) w /= total;
  std::vector<double> pool{-0.5, 1.5};
  while (pool.size() < ny) pool.push_back(rng.uniform(-0.5, 1.5));
  Builder nu{1, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = xs[i][0];
    std::vector<double> lo, hi;
    for (double p : pool) (p < x ? lo : hi).push_back(p);
    // pool points never land exactly on the grid, except by astronomically unlikely draws
    const double a = lo[rng.below(lo.size())], b = hi[rng.below(hi.size())];
    const double lam = (b - x) / (b - a);
    nu.add({a}, wx[i] * lam);
    nu.add({b}, wx[i] * (1.0 - lam));
  }
  return {DiscreteMeasure(1, xs, wx), nu.measure(), CostSpec::euclidean(sense)};
}

Instance pentagon_2d(std::uint64_t seed, std::size_t side, Sense sense) {
  if (side < 2) throw argument_error("pentagon_2d: need side >= 2");
  Rng rng(seed, 3);
  std::vector<Point> verts;
  const double rot = rng.uniform(0.0, 2.0 * pi / 5.0);
  for (int k = 0; k < 5; ++k) {
    // circumradius 1.25 +- 0.05 keeps the inradius above the corner distance 0.71
    const double th = rot + 2.0 * pi * k / 5.0 + rng.uniform(-0.08, 0.08);
    const double r = rng.uniform(1.2, 1.3);
    verts.push_back({0.5 + r * std::cos(th), 0.5 + r * std::sin(th)});
  }
  std::vector<Point> xs;
  for (std::size_t a = 0; a < side; ++a)
    for (std::size_t b = 0; b < side; ++b)
      xs.push_back({static_cast<double>(a) / static_cast<double>(side - 1), static_cast<double>(b) / static_cast<double>(side - 1)});
  const double w = 1.0 / static_cast<double>(xs.size());
  std::vector<double> nw(5, 0.0);
  for (const auto& x : xs) {
    // fan triangulation from vertex 0
    bool placed = false;
    for (int k = 1; k <= 3 && !placed; ++k) {
      const auto lam = barycentric({verts[0], verts[k], verts[k + 1]}, x);
      if (*std::min_element(lam.begin(), lam.end()) < 0.0) continue;
      nw[0] += w * lam[0];
      nw[k] += w * lam[1];
      nw[k + 1] += w * lam[2];
      placed = true;
    }
    if (!placed) throw verification_error("pentagon_2d: grid point outside the pentagon");
  }
  return {uniform_on(2, xs), DiscreteMeasure::normalized(2, verts, nw), CostSpec::euclidean(sense)};
}

std::vector<Point> fibonacci_sphere(std::size_t n, double r) {
  std::vector<Point> pts;
  const double golden = pi * (3.0 - std::sqrt(5.0));
  for (std::size_t k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(n);
    const double rho = std::sqrt(1.0 - z * z);
    const double th = golden * static_cast<double>(k);
    pts.push_back({r * rho * std::cos(th), r * rho * std::sin(th), r * z});
  }
  return pts;
}

SegmentFamily tilted_family() {
  SegmentFamily f;
  f.s0 = 0.3;
  f.kappa = 0.4;
  f.h_lo = -1.0;
  f.h_hi = 1.0;
  f.big_r = 1.5;
  f.r = 1.0;
  f.eta = 1.2;
  return f;
}

std::vector<Point> family_queries(const SegmentFamily& family, std::size_t n, std::uint64_t seed) {
  Rng rng(seed, 13);
  std::vector<Point> q;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = rng.uniform(-family.r, family.r), h = rng.uniform(family.h_lo, family.h_hi);
    q.push_back({v, h + family.slope(h) * v});
  }
  return q;
}

}  // namespace motkit::fixtures
