#include "motkit/structure.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "motkit/error.hpp"
#include "motkit/fixtures.hpp"
#include "motkit/lp.hpp"
#include "motkit/parallel.hpp"
#include "motkit/random.hpp"

namespace motkit {

namespace {

struct FiberData {
  std::size_t atom;
  double mass;
  std::vector<Point> ys;
  std::vector<double> w;
};

std::vector<FiberData> fibers_of(const Coupling& pi, bool drop_diagonal) {
  std::vector<FiberData> out;
  for (const auto& row : pi.rows()) {
    if (row.empty()) continue;
    FiberData f{pi.entries()[row.front()].i, 0.0, {}, {}};
    const Point& x = pi.mu().atom(f.atom);
    for (std::size_t k : row) {
      const auto& e = pi.entries()[k];
      const Point& y = pi.nu().atom(e.j);
      if (drop_diagonal && y == x) continue;
      f.ys.push_back(y);
      f.w.push_back(e.mass);
      f.mass += e.mass;
    }
    if (!f.ys.empty()) out.push_back(std::move(f));
  }
  return out;
}

FiberRecord describe(const Coupling& pi, const FiberData& f, const Tolerances& tol) {
  FiberRecord r;
  r.atom = f.atom;
  r.x = pi.mu().atom(f.atom);
  r.mass = f.mass;
  r.size = f.ys.size();
  const PointSet targets(pi.dim(), f.ys, 0.0);
  r.dim = affine_span(targets, tol).dim;
  r.extremal = extreme_points(targets, tol).size() == targets.size();
  r.interior = rel_interior_contains(targets, r.x, tol).inside;
  Point bary(pi.dim(), 0.0);
  for (std::size_t k = 0; k < f.ys.size(); ++k)
    for (std::size_t c = 0; c < bary.size(); ++c) bary[c] += f.w[k] * f.ys[k][c] / f.mass;
  r.barycenter_residual = distance(bary, r.x);
  return r;
}

void aggregate(FiberReport& rep) {
  double pass = 0.0, ext = 0.0, low = 0.0;
  for (const auto& f : rep.fibers) {
    rep.total_mass += f.mass;
    if (f.pass) pass += f.mass;
    if (f.extremal) ext += f.mass;
    if (f.dim + 1 <= rep.dim) low += f.mass;
    if (f.dim == rep.dim) {
      ++rep.full_dim_fibers;
      if (f.extremal) ++rep.full_dim_extremal;
    }
  }
  if (rep.total_mass > 0.0) {
    rep.pass_fraction = pass / rep.total_mass;
    rep.extremal_fraction = ext / rep.total_mass;
    rep.low_dim_fraction = low / rep.total_mass;
  } else {
    rep.pass_fraction = rep.extremal_fraction = rep.low_dim_fraction = 1.0;
  }
}

template <class Pred>
FiberReport run_check(const char* name, const Coupling& pi, bool drop_diagonal, const Tolerances& tol,
                      std::size_t threads, Pred pred) {
  const auto data = fibers_of(pi, drop_diagonal);
  FiberReport rep;
  rep.check = name;
  rep.dim = pi.dim();
  rep.fibers.resize(data.size());
  parallel_for(data.size(), threads, [&](std::size_t k) {
    rep.fibers[k] = describe(pi, data[k], tol);
    rep.fibers[k].pass = pred(rep.fibers[k]);
  });
  aggregate(rep);
  return rep;
}

}  // namespace

FiberReport check_extremal_support(const Coupling& pi, const Tolerances& tol, std::size_t threads) {
  return run_check("extremal-support", pi, false, tol, threads, [](const FiberRecord& f) { return f.extremal; });
}

FiberReport check_1d_structure(const Coupling& pi, Sense sense, const Tolerances& tol) {
  if (pi.dim() != 1) throw unsupported_error("check_1d_structure: needs d = 1, got d = " + std::to_string(pi.dim()));
  const std::size_t bound = sense == Sense::kMinimize ? 3 : 2;
  return run_check(sense == Sense::kMinimize ? "1d-structure-min" : "1d-structure-max", pi,
                   sense == Sense::kMinimize, tol, 1, [bound](const FiberRecord& f) { return f.size <= bound; });
}

FiberReport check_polytope_support(const Coupling& pi, const Tolerances& tol, std::size_t threads) {
  const std::size_t d = pi.dim();
  return run_check("polytope-support", pi, false, tol, threads,
                   [d](const FiberRecord& f) { return f.size == d + 1 && f.dim == d && f.interior; });
}

std::string fiber_report_csv(const FiberReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "atom";
  for (std::size_t k = 0; k < r.dim; ++k) os << ",x" << k;
  os << ",mass,size,dim,extremal,interior,barycenter_residual,pass\n";
  for (const auto& f : r.fibers) {
    os << f.atom;
    for (double v : f.x) os << "," << v;
    os << "," << f.mass << "," << f.size << "," << f.dim << "," << f.extremal << "," << f.interior << ","
       << f.barycenter_residual << "," << f.pass << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- shell certificate

double ShellCertificate::alpha(std::span<const double> x) const { return dot(x, x) / (2.0 * eps) - offset; }

Point ShellCertificate::gamma(std::span<const double> x) const {
  Point g(x.begin(), x.end());
  for (double& v : g) v /= eps;
  return g;
}

double ShellCertificate::beta(std::span<const double> y) const { return dot(y, y) / (2.0 * eps); }

double ShellCertificate::slack(std::span<const double> x, std::span<const double> y) const {
  double lhs = beta(y) - alpha(x);
  for (std::size_t k = 0; k < x.size(); ++k) lhs -= x[k] / eps * (y[k] - x[k]);
  return lhs - distance(x, y);
}

AdmissibleTriple ShellCertificate::tabulate(const std::vector<Point>& xs, const std::vector<Point>& ys) const {
  AdmissibleTriple t;
  t.sense = Sense::kMaximize;
  t.xs = xs;
  t.ys = ys;
  for (const auto& x : xs) {
    t.alpha.push_back(alpha(x));
    t.gamma.push_back(gamma(x));
  }
  for (const auto& y : ys) t.beta.push_back(beta(y));
  return t;
}

ShellCertificate shell_certificate(double eps) {
  if (!(eps > 0.0)) throw argument_error("shell_certificate: eps must be positive");
  return {eps, eps / 2.0};
}

ShellCertificate shell_certificate_as_stated(double eps) {
  if (!(eps > 0.0)) throw argument_error("shell_certificate: eps must be positive");
  return {eps, eps};
}

// ---------------------------------------------------------------- gamma growth

GammaGrowth gamma_growth_check(std::size_t n, const Tolerances& tol) {
  if (n < 2) throw argument_error("gamma_growth_check: need n >= 2");
  const auto in = fixtures::identity_grid(n);
  return gamma_growth_of(in.mu, in.nu, in.cost, tol);
}

GammaGrowth gamma_growth_of(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostSpec& cost,
                            const Tolerances& tol) {
  if (mu.dim() != 1) throw unsupported_error("gamma growth: needs d = 1, got d = " + std::to_string(mu.dim()));
  if (mu.size() < 2) throw argument_error("gamma growth: need at least two mu atoms");
  const std::size_t n = mu.size();
  MotOptions opts;
  opts.tol = tol;
  const auto res = solve_mot(mu, nu, cost, opts);
  const auto t = recover_dual(mu, nu, cost, res.coupling, tol);
  std::vector<std::pair<double, double>> xg;
  for (std::size_t i = 0; i < t.xs.size(); ++i) xg.emplace_back(t.xs[i][0], t.gamma[i][0]);
  std::sort(xg.begin(), xg.end());
  GammaGrowth g;
  g.n = n;
  for (const auto& [x, v] : xg) g.gamma.push_back(v);
  g.min_increment = lp::kInf;
  for (std::size_t i = 0; i + 1 < g.gamma.size(); ++i) {
    g.increments.push_back(g.gamma[i + 1] - g.gamma[i]);
    g.min_increment = std::min(g.min_increment, g.increments.back());
  }
  g.span = g.gamma.back() - g.gamma.front();
  return g;
}

// ---------------------------------------------------------------- Laplacian bound

namespace {

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(std::size_t n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

// Integral of (1 - 2|z|) over the ball of radius 1/2 in R^m, in polar form
// |S^(m-1)| * int_0^(1/2) (1 - 2 rho) rho^(m-1) d rho.
double c0_quadrature(std::size_t m) {
  std::vector<double> x, w;
  gauss_legendre(32, x, w);
  double radial = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double rho = 0.25 * (x[i] + 1.0);
    radial += 0.25 * w[i] * (1.0 - 2.0 * rho) * std::pow(rho, static_cast<double>(m) - 1.0);
  }
  const double sphere = static_cast<double>(m) * unit_ball_volume(m);
  return sphere * radial;
}

}  // namespace

LaplacianBound convex_laplacian_bound_check(const std::vector<double>& a, std::size_t d, double r, double tol) {
  if (d < 2) throw argument_error("convex_laplacian_bound_check: need d >= 2");
  if (a.size() != d * d) throw argument_error("convex_laplacian_bound_check: A must be d x d");
  if (!(r > 0.0)) throw argument_error("convex_laplacian_bound_check: r must be positive");
  Eigen::MatrixXd m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = a[i * d + j];
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw argument_error("convex_laplacian_bound_check: A is not symmetric");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.eigenvalues().minCoeff() < -1e-12 * scale)
    throw argument_error("convex_laplacian_bound_check: A is not positive semidefinite");

  LaplacianBound b;
  const double big = std::sqrt(2.0) * r;
  b.lhs = 2.0 * m.trace() * unit_ball_volume(d) * std::pow(big, static_cast<double>(d));
  b.max_phi = r * r * std::max(0.0, es.eigenvalues().maxCoeff());
  b.c0 = c0_quadrature(d - 1);
  b.rhs = b.c0 * std::pow(r, static_cast<double>(d) - 2.0) * b.max_phi;
  b.pass = b.lhs >= b.rhs - tol;
  return b;
}

// ---------------------------------------------------------------- flattening map

void SegmentFamily::validate() const {
  if (!(h_lo < h_hi)) throw precondition_error("segment family: need h_lo < h_hi");
  if (!(r > 0.0 && r < big_r)) throw precondition_error("segment family: need 0 < r < R");
  if (!(eta > 0.0 && eta < std::numbers::pi / 2)) throw precondition_error("segment family: need 0 < eta < pi/2");
  // w = h (1 + kappa v) + s0 v is increasing in h exactly when 1 + kappa v > 0
  if (!(std::abs(kappa) * big_r < 1.0)) throw precondition_error("segment family: graphs meet over V");
  const double steepest = std::max(std::abs(slope(h_lo)), std::abs(slope(h_hi)));
  if (!(steepest < std::tan(eta))) throw precondition_error("segment family: slope exceeds tan(eta)");
}

double SegmentFamily::height(double v, double w) const { return (w - s0 * v) / (1.0 + kappa * v); }

namespace {

// Singular values of [[1, 0], [a, b]].
std::pair<double, double> singular_values(double a, double b) {
  const double f = 1.0 + a * a + b * b;
  const double disc = std::sqrt(std::max(0.0, f * f - 4.0 * b * b));
  return {std::sqrt((f + disc) / 2.0), std::sqrt(std::max(0.0, (f - disc) / 2.0))};
}

}  // namespace

FlatteningResult flattening_map(const SegmentFamily& fam, const std::vector<Point>& queries, std::size_t max_pairs,
                                std::uint64_t seed) {
  fam.validate();
  FlatteningResult out;
  for (const auto& q : queries) {
    if (q.size() != 2) throw argument_error("flattening_map: queries are (v, w) points");
    if (std::abs(q[0]) > fam.r + 1e-12) throw precondition_error("flattening_map: query outside B_r");
    const double h = fam.height(q[0], q[1]);
    if (h < fam.h_lo - 1e-12 || h > fam.h_hi + 1e-12) throw precondition_error("flattening_map: query on no graph");
    out.mapped.push_back({q[0], h});
  }
  // The inverse (v, h) -> (v, h + s(h) v) has Jacobian [[1, 0], [s(h), 1 + kappa v]],
  // affine in (s, 1 + kappa v); both domains are convex, so the extreme singular
  // values over the corners bound the ratio.
  double smax = 0.0, smin = lp::kInf;
  for (double h : {fam.h_lo, fam.h_hi})
    for (double v : {-fam.r, fam.r}) {
      const auto [hi, lo] = singular_values(fam.slope(h), 1.0 + fam.kappa * v);
      smax = std::max(smax, hi);
      smin = std::min(smin, lo);
    }
  out.bound_lo = 1.0 / smax;
  out.bound_hi = 1.0 / smin;

  const std::size_t n = queries.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (n * (n - 1) / 2 <= max_pairs) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  } else {
    Rng rng(seed, 11);
    while (pairs.size() < max_pairs) {
      const std::size_t i = rng.below(n), j = rng.below(n);
      if (i != j) pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  out.ratio_min = lp::kInf;
  out.ratio_max = 0.0;
  for (auto [i, j] : pairs) {
    const double dq = distance(queries[i], queries[j]);
    if (dq == 0.0) continue;
    const double ratio = distance(out.mapped[i], out.mapped[j]) / dq;
    out.ratio_min = std::min(out.ratio_min, ratio);
    out.ratio_max = std::max(out.ratio_max, ratio);
    ++out.pairs;
  }
  if (out.pairs == 0) throw argument_error("flattening_map: need two distinct queries");
  return out;
}

}  // namespace motkit
