#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "motkit/cost.hpp"
#include "motkit/geometry.hpp"
#include "motkit/measures.hpp"
#include "motkit/mot.hpp"
#include "motkit/tolerances.hpp"

namespace motkit {

struct PavingClass {
  std::size_t id = 0;
  std::vector<std::size_t> members;  // fiber indices into the support set, ascending
  std::vector<Point> generators;     // member x's and their fibers, duplicates collapsed
  std::size_t dim = 0;               // affine dimension of the generators
};

struct Paving {
  std::size_t dim = 0;
  std::vector<PavingClass> classes;  // ordered by smallest member
  std::vector<std::size_t> class_of;  // fiber index -> class id
  std::size_t iterations = 0;        // merge rounds that changed the partition

  PointSet hull(std::size_t c) const { return PointSet(dim, classes[c].generators, 0.0); }
  // Class whose members include x, if any.
  std::optional<std::size_t> class_of_point(const SupportSet& gamma, std::span<const double> x, double tol) const;
};

// Merges classes whose hulls have intersecting relative interiors, resetting
// generators to the union of the members' fibers, until nothing changes.
// Throws a precondition error when some x is outside ri conv(Gamma_x).
Paving build_paving(const SupportSet& gamma, const Tolerances& tol = {});

// A paving with the given grouping of fiber indices (each index exactly once).
Paving paving_from_partition(const SupportSet& gamma, const std::vector<std::vector<std::size_t>>& groups,
                             const Tolerances& tol = {});

struct PavingReport {
  bool covered = true;         // every fiber in exactly one class
  bool disjoint = true;        // class hulls have pairwise disjoint relative interiors
  bool members_inside = true;  // every member x in ri of its class hull
  bool fibers_inside = true;   // every fiber inside the closed class hull
  bool implication = true;     // ri conv(Gamma_z) meets C(x) => ri conv(Gamma_z) inside C(x)
  std::vector<std::string> violations;
  bool ok() const { return covered && disjoint && members_inside && fibers_inside && implication; }
};

PavingReport verify_paving(const SupportSet& gamma, const Paving& paving, const Tolerances& tol = {});

enum class PavingOrder { kEqual, kFiner, kCoarser, kIncomparable };
const char* to_string(PavingOrder o);

// How `a` relates to `b` as partitions of the fiber indices.
PavingOrder compare_pavings(const Paving& a, const Paving& b);

struct IrreducibilityReport {
  bool irreducible = true;
  std::size_t classes_checked = 0;
  std::size_t classes_skipped = 0;  // larger than the exhaustive limit
  std::vector<std::size_t> reducible_classes;
};

// No proper split of a class (of at most max_members members) passes verify_paving.
IrreducibilityReport check_irreducible(const SupportSet& gamma, const Paving& paving, std::size_t max_members = 4,
                                       const Tolerances& tol = {});

// Gamma restricted to the fibers of one class.
SupportSet class_support(const SupportSet& gamma, const Paving& paving, std::size_t c);

struct ComponentDuals {
  std::vector<ContactFeasibility> classes;
  std::vector<std::size_t> infeasible;  // class ids without a contact triple
  bool all_feasible() const { return infeasible.empty(); }
};

ComponentDuals component_duals(const SupportSet& gamma, const Paving& paving, const CostSpec& cost,
                               const Tolerances& tol = {}, std::size_t threads = 1);

struct Component {
  std::size_t class_id = 0;
  double weight = 0.0;
  DiscreteMeasure mu, nu;                  // normalized marginals of the restriction
  Coupling coupling;                       // normalized restriction
  std::vector<CouplingEntry> restriction;  // unnormalized entries, indices into the original marginals
};

// Splits pi by the class of each x-atom. Throws a precondition error when an
// atom of mu carrying mass is in no class.
std::vector<Component> disintegrate(const Coupling& pi, const SupportSet& gamma, const Paving& paving,
                                    const Tolerances& tol = {});

// Sum of the restrictions, as a coupling of the original marginals.
Coupling reaggregate(const Coupling& pi, const std::vector<Component>& parts);

struct ComponentOptimality {
  std::vector<double> values;  // cost of each normalized component
  std::vector<double> optima;  // solve_mot on each (mu_C, nu_C)
  double max_gap = 0.0;        // worst |value - optimum| / (1 + |optimum|)
  double max_residual = 0.0;   // worst martingale residual of a component
  bool ok = false;
};

ComponentOptimality check_component_optimality(const std::vector<Component>& parts, const CostSpec& cost,
                                               const Tolerances& tol = {}, std::size_t threads = 1);

// Plain-text renderings of a paving (2D for the SVG).
std::string paving_csv(const SupportSet& gamma, const Paving& paving);
std::string paving_svg(const SupportSet& gamma, const Paving& paving, double size = 480.0);

}  // namespace motkit
