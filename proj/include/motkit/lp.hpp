#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace motkit::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };
enum class Direction { kMinimize, kMaximize };
enum class Status { kOptimal, kInfeasible, kUnbounded };

// Entering-variable rule. kBland is pure Bland; the hybrid prices with the most
// negative reduced cost and drops to Bland's rule during degenerate stalls, which
// keeps the method cycle-free.
enum class PivotRule { kBland, kDantzigBlandFallback };

struct Row {
  std::vector<std::pair<std::size_t, double>> terms;  // (variable, coefficient)
  RowSense sense = RowSense::kEqual;
  double rhs = 0.0;
};

class LinearProgram {
 public:
  LinearProgram() = default;
  explicit LinearProgram(Direction direction) : direction_(direction) {}

  std::size_t add_variable(double cost, double lower = 0.0, double upper = kInf);
  std::size_t add_row(Row row);
  std::size_t add_row(std::vector<std::pair<std::size_t, double>> terms, RowSense sense,
                      double rhs) {
    return add_row(Row{std::move(terms), sense, rhs});
  }

  void set_direction(Direction d) { direction_ = d; }
  void set_cost(std::size_t var, double cost) { objective_.at(var) = cost; }

  Direction direction() const { return direction_; }
  std::size_t num_vars() const { return objective_.size(); }
  std::size_t num_rows() const { return rows_.size(); }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<Row>& rows() const { return rows_; }

  // Throws ArgumentError on out-of-range indices, non-finite data or lower > upper.
  void validate() const;

 private:
  Direction direction_ = Direction::kMinimize;
  std::vector<double> objective_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<Row> rows_;
};

struct SolverOptions {
  PivotRule rule = PivotRule::kDantzigBlandFallback;
  double tol_feas = 1e-8;
  double tol_pivot = 1e-9;
  double tol_reduced = 1e-9;
  std::size_t max_iterations = 0;  // 0: automatic, proportional to problem size
};

struct LpSolution {
  Status status = Status::kInfeasible;
  std::vector<double> primal;          // per variable
  std::vector<double> duals;           // per row; objective == rhs . duals + bound terms
  std::vector<double> reduced_costs;   // c - A^T duals, per variable
  double objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;        // max row violation at the returned point
  std::vector<std::size_t> basis;      // standard-form column ids in basis row order
  std::vector<bool> basic;             // per variable: some part of it is basic
  bool dual_degenerate = false;        // a nonbasic column prices at zero: alternative optima
  // kInfeasible: row multipliers y with y.rhs > 0 and y^T A <= 0 on the nonnegative orthant.
  std::vector<double> farkas;
  // kUnbounded: improving direction over the variables.
  std::vector<double> ray;
  std::size_t iterations = 0;
};

LpSolution solve(const LinearProgram& program, const SolverOptions& options = {});

// Maximum common lower bound t on grouped convex weights.
//
// Weights w_0..w_{n-1} are split into groups; each group sums to one. Extra
// linear equalities E w = e may tie the groups together. The routine returns the
// largest t with w_i >= t for all i; t > 0 certifies a strictly positive
// solution. An infeasible base system is reported with feasible = false and
// margin = -inf.
struct MarginSystem {
  std::size_t num_weights = 0;
  std::vector<std::size_t> group;                         // group id per weight
  std::vector<std::vector<double>> equality_rows;         // each of length num_weights
  std::vector<double> equality_rhs;
};

struct MarginResult {
  bool feasible = false;
  double margin = -kInf;
  std::vector<double> weights;
};

MarginResult feasibility_with_margin(const MarginSystem& system, const SolverOptions& options = {});

}  // namespace motkit::lp
