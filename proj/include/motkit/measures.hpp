#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "motkit/cost.hpp"
#include "motkit/error.hpp"
#include "motkit/geometry.hpp"
#include "motkit/tolerances.hpp"

namespace motkit {

// Finitely supported probability measure on R^d.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  // Strict: weights positive, summing to one within 1e-12, atoms pairwise
  // farther apart than tol_geom.
  DiscreteMeasure(std::size_t dim, std::vector<Point> atoms, std::vector<double> weights,
                  double tol_geom = 1e-9);

  // Lenient: drops zero weights, merges atoms within tol_geom and rescales to
  // total mass one. Sets *warning when the input mass was off by more than 1e-9.
  static DiscreteMeasure normalized(std::size_t dim, std::vector<Point> atoms, std::vector<double> weights,
                                    double tol_geom = 1e-9, std::string* warning = nullptr);

  static DiscreteMeasure dirac(Point x);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<Point>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  const Point& atom(std::size_t i) const { return atoms_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  // Index of an atom equal to x within tol, if any.
  std::optional<std::size_t> find(std::span<const double> x, double tol = 0.0) const;
  PointSet support() const { return PointSet(dim_, atoms_, 0.0); }

 private:
  std::size_t dim_ = 0;
  std::vector<Point> atoms_;
  std::vector<double> weights_;
};

Point barycenter(const DiscreteMeasure& m);

struct CommonMass {
  // Unnormalized minimum measure on the atoms the two inputs share exactly.
  std::vector<Point> atoms;
  std::vector<double> weights;
  std::vector<std::size_t> mu_index, nu_index;  // source atom of each shared atom
  double mass = 0.0;

  // Remainders mu - mu^nu and nu - mu^nu rescaled to probability measures,
  // absent when the remainder mass (1 - mass) is zero.
  double remainder_mass = 1.0;
  std::optional<DiscreteMeasure> mu_rest, nu_rest;
  std::vector<std::size_t> mu_rest_index, nu_rest_index;  // source atom of each remainder atom
  bool remainders_empty() const { return !mu_rest.has_value(); }
};

// Remainder weights at or below `drop` (relative to unit mass) are treated as zero.
CommonMass common_mass(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double drop = 1e-12);

struct CouplingEntry {
  std::size_t i = 0;  // mu atom
  std::size_t j = 0;  // nu atom
  double mass = 0.0;
  bool operator==(const CouplingEntry&) const = default;
};

struct CouplingResiduals {
  double row = 0.0;         // max |sum_j pi_ij - mu_i|
  double column = 0.0;      // max |sum_i pi_ij - nu_j|
  double barycenter = 0.0;  // max |sum_j pi_ij (y_j - x_i)|_inf / (1 + |x_i|)
  double max() const;
};

// Sparse transport plan between two discrete measures. Carries copies of both
// marginals so a coupling file is self-contained.
class Coupling {
 public:
  Coupling() = default;
  // Entries are sorted by (i, j) and repeated pairs merged; zero masses are
  // dropped and negative ones rejected.
  Coupling(DiscreteMeasure mu, DiscreteMeasure nu, std::vector<CouplingEntry> entries);

  static Coupling identity(const DiscreteMeasure& mu);

  const DiscreteMeasure& mu() const { return mu_; }
  const DiscreteMeasure& nu() const { return nu_; }
  std::size_t dim() const { return mu_.dim(); }
  const std::vector<CouplingEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  double cost(const CostSpec& c) const;
  CouplingResiduals residuals() const;
  bool is_martingale(double tol_feas = 1e-8) const { return residuals().max() <= tol_feas; }

  // Entry indices grouped by mu atom, in j order.
  std::vector<std::vector<std::size_t>> rows() const;
  // Fiber of mu atom i: its target atoms.
  PointSet fiber(std::size_t i) const;

 private:
  DiscreteMeasure mu_, nu_;
  std::vector<CouplingEntry> entries_;
};

// phi(y) = max_i (offset_i + slope_i . (y - anchor_i)): a convex function
// separating two measures that are not in convex order.
struct ConvexWitness {
  std::vector<Point> anchors;
  std::vector<double> offsets;
  std::vector<Point> slopes;
  double mu_integral = 0.0;
  double nu_integral = 0.0;
  double gap() const { return mu_integral - nu_integral; }
  double operator()(std::span<const double> y) const;
};

class OrderViolation : public Error {
 public:
  OrderViolation(const std::string& what, ConvexWitness witness)
      : Error(ErrorKind::kOrder, what), witness_(std::move(witness)) {}
  const ConvexWitness& witness() const { return witness_; }

 private:
  ConvexWitness witness_;
};

struct ConvexOrderResult {
  bool in_order = false;
  std::optional<Coupling> coupling;      // a basic martingale coupling when in order
  std::optional<ConvexWitness> witness;  // when not in order
};

ConvexOrderResult check_convex_order(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                     const Tolerances& tol = {});

double unit_ball_volume(std::size_t d);

// P_m(x) = sum_i w_i |x - y_i|^(2-d) / (d (2-d) omega_d), d >= 3.
double newtonian_potential(const DiscreteMeasure& m, std::span<const double> x, const Tolerances& tol = {});

struct SubharmonicReport {
  std::vector<double> gap;   // P_nu - P_mu per grid point
  std::vector<bool> in_u;    // gap > threshold
  double min_gap = 0.0;
  double max_gap = 0.0;
  double fraction_positive = 0.0;
  bool consistent = false;   // gap >= -tol.feas everywhere
};

SubharmonicReport subharmonic_order_report(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                           const std::vector<Point>& grid, const Tolerances& tol = {},
                                           double threshold = 0.0, std::size_t threads = 1);

}  // namespace motkit
