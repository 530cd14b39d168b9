#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "motkit/cost.hpp"
#include "motkit/geometry.hpp"
#include "motkit/measures.hpp"
#include "motkit/tolerances.hpp"

namespace motkit {

// Finite Gamma in R^d x R^d, stored as x-fibers.
struct SupportSet {
  struct Fiber {
    Point x;
    std::vector<Point> ys;
  };

  std::size_t dim = 0;
  std::vector<Fiber> fibers;

  SupportSet() = default;
  explicit SupportSet(std::size_t d) : dim(d) {}

  static SupportSet of(const Coupling& pi);

  // Appends (x, y), creating the fiber of x if needed (exact match on x).
  void add(const Point& x, const Point& y);
  void validate() const;

  std::size_t num_pairs() const;
  // (fiber, position-in-fiber) for every pair, in storage order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  PointSet x_points() const;  // X_Gamma
  PointSet y_points() const;  // Y_Gamma, duplicates collapsed
  PointSet fiber_points(std::size_t f) const { return PointSet(dim, fibers[f].ys, 0.0); }

  // Index of the first fiber whose x is not in ri conv(Gamma_x), if any.
  std::optional<std::size_t> first_non_martingale_fiber(const Tolerances& tol = {}) const;
};

// (alpha, gamma, beta) tabulated on finite X and Y.
struct AdmissibleTriple {
  Sense sense = Sense::kMinimize;
  std::vector<Point> xs;
  std::vector<double> alpha;
  std::vector<Point> gamma;
  std::vector<Point> ys;
  std::vector<double> beta;
  bool degenerate = false;  // contact set strictly larger than the requested layer

  std::optional<std::size_t> find_x(std::span<const double> x, double tol) const;
  std::optional<std::size_t> find_y(std::span<const double> y, double tol) const;

  // Admissibility slack at (xs[i], ys[j]); nonnegative when the defining
  // inequality holds and zero on the contact set.
  double slack(std::size_t i, std::size_t j, const CostSpec& cost) const;

  // sum beta dnu - sum alpha dmu on measures supported in ys / xs.
  double dual_value(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double tol) const;
};

struct ContactReport {
  bool ok = false;
  double max_violation = 0.0;  // worst negative slack over X x Y
  double max_equality = 0.0;   // worst |slack| on Gamma
  std::size_t pairs_checked = 0;
  std::string worst;           // human-readable location of the worst residual
};

ContactReport verify_contact_layer(const SupportSet& gamma, const AdmissibleTriple& triple, const PointSet& x_ambient,
                                   const PointSet& y_ambient, const CostSpec& cost, const Tolerances& tol = {});

struct CycleEntry {
  Point x, y;
  double weight = 0.0;  // signed; negative only on Gamma pairs
};

struct ContactFeasibility {
  bool feasible = false;
  std::optional<AdmissibleTriple> triple;
  // When infeasible: a signed measure with zero marginals and barycenters,
  // nonnegative off Gamma, whose cost has the wrong sign for any triple.
  std::vector<CycleEntry> certificate;
  double certificate_cost = 0.0;
};

// Ambient sets default to X_Gamma and Y_Gamma when empty.
ContactFeasibility contact_layer_feasibility(const SupportSet& gamma, const PointSet& x_ambient,
                                             const PointSet& y_ambient, const CostSpec& cost,
                                             const Tolerances& tol = {});
ContactFeasibility contact_layer_feasibility(const SupportSet& gamma, const CostSpec& cost,
                                             const Tolerances& tol = {});

struct ExposabilityReport {
  bool exposable = true;
  std::size_t subsets_checked = 0;
  SupportSet violating;  // first infeasible subset, empty when exposable
};

ExposabilityReport check_finitely_exposable(const SupportSet& gamma, const CostSpec& cost, std::size_t k = 3,
                                            std::size_t max_subsets = 200000, const Tolerances& tol = {});

struct Instance {
  DiscreteMeasure mu, nu;
  CostSpec cost;
};

struct MotOptions {
  bool split_common_mass = true;  // minimization with |x-y|^p, p <= 1
  Tolerances tol;
};

struct MotResult {
  Coupling coupling;
  double value = 0.0;
  bool split_applied = false;
  double common_mass = 0.0;
  std::size_t iterations = 0;
};

// Throws OrderViolation (with a convex witness) when mu and nu are not in convex order.
MotResult solve_mot(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostSpec& cost,
                    const MotOptions& options = {});

// Triple from the multipliers of the martingale LP, with equality on supp pi.
// Throws a verification error naming the gap when pi is not optimal.
AdmissibleTriple recover_dual(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostSpec& cost,
                              const Coupling& pi, const Tolerances& tol = {});

struct DeltaBounds {
  double delta1 = 0.0;
  double delta2 = 0.0;
};

DeltaBounds delta_bounds(const CostSpec& cost, const PointSet& omega, const PointSet& y);

}  // namespace motkit
