#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "motkit/tolerances.hpp"

namespace motkit {

using Point = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
double distance(std::span<const double> a, std::span<const double> b);

// A finite point cloud in R^d. Points closer than `collapse_tol` to an earlier
// point are dropped on construction, so every stored point is distinct.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t dim, std::vector<Point> points, double collapse_tol = 1e-9);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  PointSet without(std::size_t index) const;
  static PointSet merged(const PointSet& a, const PointSet& b, double collapse_tol = 1e-9);

 private:
  std::size_t dim_ = 0;
  std::vector<Point> points_;
};

struct AffineSubspace {
  Point base;                  // centroid of the generating points
  std::vector<Point> basis;    // orthonormal directions
  std::size_t dim = 0;

  // Coordinates of x in the subspace frame and the distance of x from it.
  struct Projection {
    std::vector<double> coords;
    double residual = 0.0;
  };
  Projection project(std::span<const double> x) const;
};

// Lowest-dimensional affine subspace containing P (numerical rank with
// relative cutoff tol.rank and absolute floor tol.geom).
AffineSubspace affine_span(const PointSet& points, const Tolerances& tol = {});

struct Containment {
  bool inside = false;
  double margin = 0.0;           // largest achievable minimum weight
  std::vector<double> weights;   // strictly positive witness when inside
};

// x in ri conv(P): x is a convex combination of every point of P with weights
// bounded below by tol.strict.
Containment rel_interior_contains(const PointSet& points, std::span<const double> x,
                                  const Tolerances& tol = {});

// ri conv(P) and ri conv(Q) share a point.
bool rel_interiors_intersect(const PointSet& p, const PointSet& q, const Tolerances& tol = {});

// x in conv(P) up to an L1 residual of tol.geom.
bool hull_contains(const PointSet& points, std::span<const double> x, const Tolerances& tol = {});

// ri conv(P) subset of ri conv(Q).
bool rel_interior_subset(const PointSet& p, const PointSet& q, const Tolerances& tol = {});

// Vertices of conv(P), in the order they appear in P.
PointSet extreme_points(const PointSet& points, const Tolerances& tol = {});

}  // namespace motkit
