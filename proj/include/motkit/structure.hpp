#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "motkit/cost.hpp"
#include "motkit/geometry.hpp"
#include "motkit/measures.hpp"
#include "motkit/mot.hpp"
#include "motkit/tolerances.hpp"

namespace motkit {

struct FiberRecord {
  std::size_t atom = 0;  // index into mu
  Point x;
  double mass = 0.0;     // mass of the fiber counted by the check
  std::size_t size = 0;  // number of target atoms
  std::size_t dim = 0;   // affine dimension of the targets
  bool extremal = false;  // every target is a vertex of their hull
  bool interior = false;  // x in ri conv(targets)
  double barycenter_residual = 0.0;
  bool pass = false;      // the predicate of the check that produced the report
};

struct FiberReport {
  std::string check;
  std::size_t dim = 0;
  std::vector<FiberRecord> fibers;
  double total_mass = 0.0;
  double pass_fraction = 0.0;      // mass fraction with pass set
  double extremal_fraction = 0.0;  // mass fraction with extremal targets
  double low_dim_fraction = 0.0;   // mass fraction with dim <= d - 1
  std::size_t full_dim_fibers = 0;
  std::size_t full_dim_extremal = 0;
};

// pass = extremal.
FiberReport check_extremal_support(const Coupling& pi, const Tolerances& tol = {}, std::size_t threads = 1);

// d = 1 only. pass = at most 3 targets (minimization, mass kept in place is
// left out of each fiber) or at most 2 (maximization).
FiberReport check_1d_structure(const Coupling& pi, Sense sense, const Tolerances& tol = {});

// pass = exactly d + 1 targets spanning a d-simplex with x in its relative interior.
FiberReport check_polytope_support(const Coupling& pi, const Tolerances& tol = {}, std::size_t threads = 1);

std::string fiber_report_csv(const FiberReport& r);

// Maximization triple for |x - y| on the eps-shell:
//   alpha(x) = |x|^2 / (2 eps) - offset, gamma(x) = x / eps, beta(y) = |y|^2 / (2 eps).
// The slack is (|x - y| - eps)^2 / (2 eps) + offset - eps / 2.
struct ShellCertificate {
  double eps = 1.0;
  double offset = 0.5;

  double alpha(std::span<const double> x) const;
  Point gamma(std::span<const double> x) const;
  double beta(std::span<const double> y) const;
  double slack(std::span<const double> x, std::span<const double> y) const;
  AdmissibleTriple tabulate(const std::vector<Point>& xs, const std::vector<Point>& ys) const;
};

// offset = eps / 2: equality exactly on |x - y| = eps.
ShellCertificate shell_certificate(double eps);
// offset = eps, the constant as printed in the source example.
ShellCertificate shell_certificate_as_stated(double eps);

struct GammaGrowth {
  std::size_t n = 0;
  std::vector<double> gamma;       // recovered gamma at the sorted grid points
  std::vector<double> increments;  // gamma(x_{i+1}) - gamma(x_i)
  double min_increment = 0.0;
  double span = 0.0;
};

// mu = nu uniform on n points of [0, 1], maximization of |x - y|; the dual of the
// identity plan is recovered and its gamma increments measured.
GammaGrowth gamma_growth_check(std::size_t n, const Tolerances& tol = {});
// Same measurement on any 1D instance, sorted by x.
GammaGrowth gamma_growth_of(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostSpec& cost,
                            const Tolerances& tol = {});

struct LaplacianBound {
  double lhs = 0.0;      // integral of the Laplacian of x^T A x over the ball of radius sqrt(2) r
  double rhs = 0.0;      // C0 r^(d-2) max over B_r of x^T A x
  double c0 = 0.0;       // integral of (1 - 2|z|) over the (d-1)-ball of radius 1/2, by quadrature
  double max_phi = 0.0;
  bool pass = false;
};

// A symmetric positive semidefinite, row-major d x d. Throws an argument error otherwise.
LaplacianBound convex_laplacian_bound_check(const std::vector<double>& a, std::size_t d, double r,
                                            double tol = 1e-9);

// Graphs w = h + (s0 + kappa h) v over |v| <= big_r, for heights h in [h_lo, h_hi].
struct SegmentFamily {
  double s0 = 0.0;
  double kappa = 0.0;
  double h_lo = -1.0, h_hi = 1.0;
  double big_r = 1.0;  // half-width of V
  double r = 0.5;      // queries must satisfy |v| <= r < big_r
  double eta = 1.0;    // angle bound, < pi / 2

  double slope(double h) const { return s0 + kappa * h; }
  // Throws a precondition error when graphs meet over V or a slope exceeds tan eta.
  void validate() const;
  double height(double v, double w) const;
};

struct FlatteningResult {
  std::vector<Point> mapped;  // F(v, w) = (v, h)
  double ratio_min = 0.0;     // empirical min / max of |F(p) - F(q)| / |p - q|
  double ratio_max = 0.0;
  double bound_lo = 0.0;      // analytic bounds on the same ratio
  double bound_hi = 0.0;
  std::size_t pairs = 0;
};

// Queries are (v, w) points; each must lie on a graph of the family with |v| <= r.
FlatteningResult flattening_map(const SegmentFamily& family, const std::vector<Point>& queries,
                                std::size_t max_pairs = 1000, std::uint64_t seed = 0);

}  // namespace motkit
