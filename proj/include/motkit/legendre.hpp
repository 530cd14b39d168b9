#pragma once

#include <cstddef>
#include <vector>

#include "motkit/cost.hpp"
#include "motkit/geometry.hpp"
#include "motkit/tolerances.hpp"

namespace motkit {

// A real function given by its values on finitely many distinct points.
struct SampledFunction {
  std::size_t dim = 0;
  std::vector<Point> points;
  std::vector<double> values;

  SampledFunction() = default;
  SampledFunction(std::size_t dim, std::vector<Point> points, std::vector<double> values);

  std::size_t size() const { return points.size(); }
  void validate(double tol_geom = 1e-9) const;
};

// (alpha_c, gamma_c) on the evaluation points. For minimization,
//   alpha_c(x) = min { a : beta(y) - c(x, y) <= b.(y - x) + a for all y },
// gamma_c(x) the minimizing b. Maximization reverses every inequality.
struct LegendreDual {
  Sense sense = Sense::kMinimize;
  std::size_t dim = 0;
  std::vector<Point> xs;
  std::vector<double> alpha;
  std::vector<Point> gamma;
  std::vector<bool> degenerate;  // gamma_c(x) is not unique

  // Largest violation of the defining inequality over x in xs and the generators.
  double max_violation(const SampledFunction& beta, const CostSpec& cost) const;
};

// Throws a domain error for x outside ri conv(Y).
LegendreDual legendre_dual(const SampledFunction& beta, const std::vector<Point>& xs, const CostSpec& cost,
                           const Tolerances& tol = {}, std::size_t threads = 1);

// beta_cc(y) = min over stored x of c(x, y) + gamma_c(x).(y - x) + alpha_c(x) (max for maximization).
std::vector<double> double_transform(const LegendreDual& dual, const std::vector<Point>& eval, const CostSpec& cost);

struct SandwichReport {
  double delta1 = 0.0, delta2 = 0.0;
  double beta_margin = 0.0;   // min over Y of beta_cc - beta (max sense: beta - beta_cc)
  double lower_margin = 0.0;  // min over X of alpha_c - (beta_cc - delta1)
  double upper_margin = 0.0;  // min over X of (beta_cc + delta2) - alpha_c
  double max_gap = 0.0;       // max over X of |alpha_c - beta_cc|
  bool ok = false;
};

// beta <= beta_cc on Y and beta_cc - delta1 <= alpha_c <= beta_cc + delta2 on X
// (signs mirrored for maximization).
SandwichReport check_sandwich(const SampledFunction& beta, const std::vector<Point>& xs, const CostSpec& cost,
                              const Tolerances& tol = {}, std::size_t threads = 1);

struct IdempotenceReport {
  double max_deviation = 0.0;  // max |beta_cc - beta_cccc| over Y and the grid
  std::size_t points = 0;
};

// beta_cc is sampled on Y and the grid, transformed again with the same X, and
// compared with itself.
IdempotenceReport check_idempotent(const SampledFunction& beta, const std::vector<Point>& xs,
                                   const std::vector<Point>& grid, const CostSpec& cost, const Tolerances& tol = {},
                                   std::size_t threads = 1);

}  // namespace motkit
