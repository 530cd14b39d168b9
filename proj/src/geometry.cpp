#include "motkit/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "motkit/error.hpp"
#include "motkit/lp.hpp"

namespace motkit {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

PointSet::PointSet(std::size_t dim, std::vector<Point> points, double collapse_tol) : dim_(dim) {
  points_.reserve(points.size());
  for (auto& p : points) {
    if (p.size() != dim) throw argument_error("point set: point of dimension " + std::to_string(p.size()) +
                                              " in a set of dimension " + std::to_string(dim));
    for (double v : p)
      if (!std::isfinite(v)) throw argument_error("point set: non-finite coordinate");
    const bool dup = std::any_of(points_.begin(), points_.end(),
                                 [&](const Point& q) { return distance(p, q) <= collapse_tol; });
    if (!dup) points_.push_back(std::move(p));
  }
}

PointSet PointSet::without(std::size_t index) const {
  PointSet out;
  out.dim_ = dim_;
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (i != index) out.points_.push_back(points_[i]);
  return out;
}

PointSet PointSet::merged(const PointSet& a, const PointSet& b, double collapse_tol) {
  if (a.dim() != b.dim()) throw argument_error("point set: dimension mismatch in merge");
  std::vector<Point> all = a.points();
  all.insert(all.end(), b.begin(), b.end());
  return PointSet(a.dim(), std::move(all), collapse_tol);
}

AffineSubspace::Projection AffineSubspace::project(std::span<const double> x) const {
  Projection pr;
  Point diff(x.begin(), x.end());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= base[i];
  pr.coords.resize(dim);
  Point rem = diff;
  for (std::size_t k = 0; k < dim; ++k) {
    pr.coords[k] = dot(basis[k], diff);
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] -= pr.coords[k] * basis[k][i];
  }
  pr.residual = norm(rem);
  return pr;
}

AffineSubspace affine_span(const PointSet& points, const Tolerances& tol) {
  if (points.empty()) throw argument_error("affine_span: empty point set");
  const std::size_t n = points.size(), d = points.dim();
  AffineSubspace sub;
  sub.base.assign(d, 0.0);
  for (const auto& p : points)
    for (std::size_t i = 0; i < d; ++i) sub.base[i] += p[i] / static_cast<double>(n);
  if (n == 1) {
    sub.base = points[0];
    return sub;
  }
  Eigen::MatrixXd centered(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < d; ++i)
      centered(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = points[r][i] - sub.base[i];
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = std::max(tol.rank * (sv.size() ? sv(0) : 0.0), tol.geom);
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) <= cutoff) break;
    Point dir(d);
    for (std::size_t i = 0; i < d; ++i) dir[i] = svd.matrixV()(static_cast<Eigen::Index>(i), k);
    // canonical sign: first significant component positive
    for (double v : dir) {
      if (std::abs(v) > 1e-12) {
        if (v < 0) for (double& w : dir) w = -w;
        break;
      }
    }
    sub.basis.push_back(std::move(dir));
  }
  sub.dim = sub.basis.size();
  return sub;
}

namespace {

void check_dim(const PointSet& p, std::span<const double> x) {
  if (x.size() != p.dim())
    throw argument_error("geometry: point of dimension " + std::to_string(x.size()) + " against set of dimension " +
                         std::to_string(p.dim()));
}

// Equality rows of sum_i w_i c_i = target in subspace coordinates.
void add_coordinate_rows(lp::MarginSystem& sys, const AffineSubspace& span,
                         const std::vector<std::vector<double>>& coords, const std::vector<double>& sign,
                         const std::vector<double>& target) {
  for (std::size_t k = 0; k < span.dim; ++k) {
    std::vector<double> row(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) row[i] = sign[i] * coords[i][k];
    sys.equality_rows.push_back(std::move(row));
    sys.equality_rhs.push_back(target.empty() ? 0.0 : target[k]);
  }
}

}  // namespace

Containment rel_interior_contains(const PointSet& points, std::span<const double> x, const Tolerances& tol) {
  if (points.empty()) throw argument_error("rel_interior_contains: empty point set");
  check_dim(points, x);
  Containment out;
  const AffineSubspace span = affine_span(points, tol);
  const auto px = span.project(x);
  if (px.residual > tol.geom) return out;

  lp::MarginSystem sys;
  sys.num_weights = points.size();
  sys.group.assign(points.size(), 0);
  std::vector<std::vector<double>> coords;
  for (const auto& p : points) coords.push_back(span.project(p).coords);
  add_coordinate_rows(sys, span, coords, std::vector<double>(points.size(), 1.0), px.coords);
  const lp::MarginResult res = lp::feasibility_with_margin(sys);
  if (!res.feasible) return out;
  out.margin = res.margin;
  out.inside = res.margin > tol.strict;
  if (out.inside) out.weights = res.weights;
  return out;
}

bool rel_interiors_intersect(const PointSet& p, const PointSet& q, const Tolerances& tol) {
  if (p.empty() || q.empty()) throw argument_error("rel_interiors_intersect: empty point set");
  if (p.dim() != q.dim()) throw argument_error("rel_interiors_intersect: dimension mismatch");
  std::vector<Point> all = p.points();
  all.insert(all.end(), q.begin(), q.end());
  const AffineSubspace span = affine_span(PointSet(p.dim(), all, 0.0), tol);

  lp::MarginSystem sys;
  sys.num_weights = all.size();
  std::vector<std::vector<double>> coords;
  std::vector<double> sign;
  for (std::size_t i = 0; i < all.size(); ++i) {
    coords.push_back(span.project(all[i]).coords);
    const bool from_p = i < p.size();
    sys.group.push_back(from_p ? 0 : 1);
    sign.push_back(from_p ? 1.0 : -1.0);
  }
  add_coordinate_rows(sys, span, coords, sign, {});
  const lp::MarginResult res = lp::feasibility_with_margin(sys);
  return res.feasible && res.margin > tol.strict;
}

bool hull_contains(const PointSet& points, std::span<const double> x, const Tolerances& tol) {
  if (points.empty()) throw argument_error("hull_contains: empty point set");
  check_dim(points, x);
  const AffineSubspace span = affine_span(points, tol);
  const auto px = span.project(x);
  if (px.residual > tol.geom) return false;
  if (span.dim == 0) return true;

  // min sum |residual| over convex weights, in subspace coordinates
  lp::LinearProgram prog;
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) prog.add_variable(0.0);
  std::vector<std::size_t> splus, sminus;
  for (std::size_t k = 0; k < span.dim; ++k) {
    splus.push_back(prog.add_variable(1.0));
    sminus.push_back(prog.add_variable(1.0));
  }
  std::vector<std::vector<double>> coords;
  for (const auto& p : points) coords.push_back(span.project(p).coords);
  for (std::size_t k = 0; k < span.dim; ++k) {
    lp::Row row;
    for (std::size_t i = 0; i < n; ++i)
      if (coords[i][k] != 0.0) row.terms.emplace_back(i, coords[i][k]);
    row.terms.emplace_back(splus[k], 1.0);
    row.terms.emplace_back(sminus[k], -1.0);
    row.rhs = px.coords[k];
    prog.add_row(std::move(row));
  }
  lp::Row sum;
  for (std::size_t i = 0; i < n; ++i) sum.terms.emplace_back(i, 1.0);
  sum.rhs = 1.0;
  prog.add_row(std::move(sum));
  const lp::LpSolution sol = lp::solve(prog);
  return sol.status == lp::Status::kOptimal && sol.objective <= tol.geom;
}

bool rel_interior_subset(const PointSet& p, const PointSet& q, const Tolerances& tol) {
  if (p.empty() || q.empty()) throw argument_error("rel_interior_subset: empty point set");
  if (p.dim() != q.dim()) throw argument_error("rel_interior_subset: dimension mismatch");
  for (const auto& pt : p)
    if (!hull_contains(q, pt, tol)) return false;
  return rel_interiors_intersect(p, q, tol);
}

PointSet extreme_points(const PointSet& points, const Tolerances& tol) {
  if (points.empty()) throw argument_error("extreme_points: empty point set");
  if (points.size() == 1) return points;
  std::vector<Point> keep;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!hull_contains(points.without(i), points[i], tol)) keep.push_back(points[i]);
  return PointSet(points.dim(), std::move(keep), 0.0);
}

}  // namespace motkit
