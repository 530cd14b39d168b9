#include "motkit/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "motkit/error.hpp"

namespace motkit::lp {

std::size_t LinearProgram::add_variable(double cost, double lower, double upper) {
  objective_.push_back(cost);
  lower_.push_back(lower);
  upper_.push_back(upper);
  return objective_.size() - 1;
}

std::size_t LinearProgram::add_row(Row row) {
  rows_.push_back(std::move(row));
  return rows_.size() - 1;
}

void LinearProgram::validate() const {
  for (std::size_t j = 0; j < objective_.size(); ++j) {
    if (!std::isfinite(objective_[j])) throw argument_error("lp: non-finite objective coefficient");
    if (std::isnan(lower_[j]) || std::isnan(upper_[j]) || lower_[j] > upper_[j])
      throw argument_error("lp: invalid bounds for variable " + std::to_string(j));
    if (lower_[j] == kInf || upper_[j] == -kInf)
      throw argument_error("lp: empty domain for variable " + std::to_string(j));
  }
  for (const auto& row : rows_) {
    if (!std::isfinite(row.rhs)) throw argument_error("lp: non-finite right-hand side");
    for (const auto& [var, coef] : row.terms) {
      if (var >= objective_.size()) throw argument_error("lp: row references unknown variable");
      if (!std::isfinite(coef)) throw argument_error("lp: non-finite constraint coefficient");
    }
  }
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

enum class VarKind { kShift, kReflect, kFree, kFixed };

struct VarMap {
  VarKind kind = VarKind::kShift;
  double offset = 0.0;
  std::size_t col = kNone;
  std::size_t col2 = kNone;
};

// min c^T x  s.t.  A x = b, x >= 0, b >= 0, with a starting basis of slacks and artificials.
struct StandardForm {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> a;  // row-major m x n
  std::vector<double> b;
  std::vector<double> c;
  std::vector<double> row_sign;
  std::vector<std::size_t> start_basis;  // column id, or n + i for the artificial of row i
  std::vector<VarMap> vars;
  std::vector<std::size_t> twin;         // free-variable partner column, or kNone
  std::size_t original_rows = 0;
  double direction_sign = 1.0;
  double objective_offset = 0.0;

  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

StandardForm to_standard_form(const LinearProgram& lp) {
  StandardForm sf;
  const std::size_t nv = lp.num_vars();
  sf.direction_sign = lp.direction() == Direction::kMaximize ? -1.0 : 1.0;
  sf.vars.resize(nv);

  std::size_t cols = 0;
  std::vector<std::size_t> bound_rows;  // variables needing x' <= u - l
  for (std::size_t j = 0; j < nv; ++j) {
    const double l = lp.lower()[j];
    const double u = lp.upper()[j];
    VarMap& vm = sf.vars[j];
    if (std::isfinite(l) && std::isfinite(u) && l == u) {
      vm.kind = VarKind::kFixed;
      vm.offset = l;
    } else if (std::isfinite(l)) {
      vm.kind = VarKind::kShift;
      vm.offset = l;
      vm.col = cols++;
      if (std::isfinite(u)) bound_rows.push_back(j);
    } else if (std::isfinite(u)) {
      vm.kind = VarKind::kReflect;
      vm.offset = u;
      vm.col = cols++;
    } else {
      vm.kind = VarKind::kFree;
      vm.col = cols++;
      vm.col2 = cols++;
    }
  }
  const std::size_t structural = cols;

  struct DenseRow {
    std::vector<double> coef;
    RowSense sense;
    double rhs;
  };
  std::vector<DenseRow> rows;
  rows.reserve(lp.num_rows() + bound_rows.size());
  for (const auto& row : lp.rows()) {
    DenseRow dr{std::vector<double>(structural, 0.0), row.sense, row.rhs};
    for (const auto& [var, coef] : row.terms) {
      const VarMap& vm = sf.vars[var];
      switch (vm.kind) {
        case VarKind::kFixed:
          dr.rhs -= coef * vm.offset;
          break;
        case VarKind::kShift:
          dr.coef[vm.col] += coef;
          dr.rhs -= coef * vm.offset;
          break;
        case VarKind::kReflect:
          dr.coef[vm.col] -= coef;
          dr.rhs -= coef * vm.offset;
          break;
        case VarKind::kFree:
          dr.coef[vm.col] += coef;
          dr.coef[vm.col2] -= coef;
          break;
      }
    }
    rows.push_back(std::move(dr));
  }
  sf.original_rows = rows.size();
  for (std::size_t j : bound_rows) {
    DenseRow dr{std::vector<double>(structural, 0.0), RowSense::kLessEqual,
                lp.upper()[j] - lp.lower()[j]};
    dr.coef[sf.vars[j].col] = 1.0;
    rows.push_back(std::move(dr));
  }

  std::size_t slacks = 0;
  for (const auto& r : rows)
    if (r.sense != RowSense::kEqual) ++slacks;

  sf.m = rows.size();
  sf.n = structural + slacks;
  sf.a.assign(sf.m * sf.n, 0.0);
  sf.b.assign(sf.m, 0.0);
  sf.row_sign.assign(sf.m, 1.0);
  sf.start_basis.assign(sf.m, kNone);

  std::size_t slack_col = structural;
  for (std::size_t i = 0; i < sf.m; ++i) {
    const DenseRow& r = rows[i];
    const double sign = r.rhs < 0.0 ? -1.0 : 1.0;
    sf.row_sign[i] = sign;
    for (std::size_t j = 0; j < structural; ++j) sf.a[i * sf.n + j] = sign * r.coef[j];
    sf.b[i] = sign * r.rhs;
    std::size_t basis_col = sf.n + i;
    if (r.sense != RowSense::kEqual) {
      const double s = (r.sense == RowSense::kLessEqual ? 1.0 : -1.0) * sign;
      sf.a[i * sf.n + slack_col] = s;
      if (s > 0.0) basis_col = slack_col;
      ++slack_col;
    }
    sf.start_basis[i] = basis_col;
  }

  sf.c.assign(sf.n, 0.0);
  sf.twin.assign(sf.n, kNone);
  for (std::size_t j = 0; j < nv; ++j) {
    const VarMap& vm = sf.vars[j];
    const double cj = lp.objective()[j];
    switch (vm.kind) {
      case VarKind::kFixed:
        sf.objective_offset += cj * vm.offset;
        break;
      case VarKind::kShift:
        sf.c[vm.col] = sf.direction_sign * cj;
        sf.objective_offset += cj * vm.offset;
        break;
      case VarKind::kReflect:
        sf.c[vm.col] = -sf.direction_sign * cj;
        sf.objective_offset += cj * vm.offset;
        break;
      case VarKind::kFree:
        sf.c[vm.col] = sf.direction_sign * cj;
        sf.c[vm.col2] = -sf.direction_sign * cj;
        sf.twin[vm.col] = vm.col2;
        sf.twin[vm.col2] = vm.col;
        break;
    }
  }
  return sf;
}

class Tableau {
 public:
  Tableau(const StandardForm& sf, const SolverOptions& options)
      : sf_(sf), opt_(options), m_(sf.m), n_(sf.n), w_(sf.n + 1) {
    t_.assign(m_ * w_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      std::copy(sf.a.begin() + i * n_, sf.a.begin() + (i + 1) * n_, t_.begin() + i * w_);
      t_[i * w_ + n_] = sf.b[i];
    }
    basis_ = sf.start_basis;
    is_basic_.assign(n_, false);
    for (std::size_t col : basis_)
      if (col < n_) is_basic_[col] = true;
    d_.assign(n_, 0.0);
    max_iter_ = opt_.max_iterations ? opt_.max_iterations : 200 * (m_ + n_) + 1000;
  }

  // Returns kOptimal or kUnbounded (with the offending entering column recorded).
  Status run_phase(bool phase_one) {
    price(phase_one);
    std::size_t stall = 0;
    bool bland = opt_.rule == PivotRule::kBland;
    for (int refinements = 0;; ) {
      const std::size_t s = choose_entering(bland, phase_one);
      if (s == kNone) {
        if (refinements >= 3) return Status::kOptimal;
        ++refinements;
        const bool confirmed = refine(phase_one);
        if (confirmed && choose_entering(bland, phase_one) == kNone) return Status::kOptimal;
        continue;
      }
      const std::size_t r = choose_leaving(s, bland);
      if (r == kNone) {
        // confirm against a fresh factorization before trusting the ray
        if (!rebuilt_) {
          rebuild(phase_one);
          rebuilt_ = true;
          continue;
        }
        unbounded_col_ = s;
        return Status::kUnbounded;
      }
      rebuilt_ = false;
      const bool degenerate = t_[r * w_ + n_] <= 1e-12;
      pivot(r, s);
      if (++iterations_ > max_iter_)
        throw verification_error("lp: iteration limit exceeded (" + std::to_string(max_iter_) + ")");
      if (opt_.rule == PivotRule::kDantzigBlandFallback) {
        if (degenerate) {
          if (++stall > 50) bland = true;
        } else {
          stall = 0;
          bland = false;
        }
      }
    }
  }

  double artificial_mass() const {
    double w = 0.0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= n_) w += std::max(0.0, t_[i * w_ + n_]);
    return w;
  }

  // Pivots zero-level artificials out of the basis where a structural column allows it.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      std::size_t best = kNone;
      double best_abs = opt_.tol_pivot;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        const double v = std::abs(t_[r * w_ + j]);
        if (v > best_abs) {
          best_abs = v;
          best = j;
        }
      }
      if (best != kNone) pivot(r, best);
    }
  }

  // Basis-matrix solves against the original standard-form data.
  struct Factored {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  };

  Eigen::MatrixXd basis_matrix() const {
    Eigen::MatrixXd bm = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
    for (std::size_t k = 0; k < m_; ++k) {
      const std::size_t col = basis_[k];
      if (col >= n_) {
        bm(static_cast<Eigen::Index>(col - n_), static_cast<Eigen::Index>(k)) = 1.0;
      } else {
        for (std::size_t i = 0; i < m_; ++i) bm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = sf_.at(i, col);
      }
    }
    return bm;
  }

  std::vector<double> basic_costs(bool phase_one) const {
    std::vector<double> cb(m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      const std::size_t col = basis_[k];
      cb[k] = phase_one ? (col >= n_ ? 1.0 : 0.0) : (col >= n_ ? 0.0 : sf_.c[col]);
    }
    return cb;
  }

  // Row duals y with B^T y = c_B (normalized standard-form rows).
  std::vector<double> duals(bool phase_one) const {
    if (m_ == 0) return {};
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix());
    const std::vector<double> cb = basic_costs(phase_one);
    Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(cb.data(), static_cast<Eigen::Index>(m_));
    Eigen::VectorXd y = lu.transpose().solve(rhs);
    return {y.data(), y.data() + y.size()};
  }

  std::vector<double> basic_values() const {
    std::vector<double> xb(m_);
    for (std::size_t i = 0; i < m_; ++i) xb[i] = t_[i * w_ + n_];
    return xb;
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  const std::vector<bool>& is_basic() const { return is_basic_; }
  const std::vector<double>& reduced() const { return d_; }
  std::size_t unbounded_col() const { return unbounded_col_; }
  std::size_t iterations() const { return iterations_; }
  double entry(std::size_t i, std::size_t j) const { return t_[i * w_ + j]; }

 private:
  void price(bool phase_one) {
    std::fill(d_.begin(), d_.end(), 0.0);
    if (!phase_one) d_ = sf_.c;
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t col = basis_[i];
      const double cb = phase_one ? (col >= n_ ? 1.0 : 0.0) : (col >= n_ ? 0.0 : sf_.c[col]);
      if (cb == 0.0) continue;
      const double* row = &t_[i * w_];
      for (std::size_t j = 0; j < n_; ++j) d_[j] -= cb * row[j];
    }
    for (std::size_t col : basis_)
      if (col < n_) d_[col] = 0.0;
  }

  std::size_t choose_entering(bool bland, bool phase_one) const {
    (void)phase_one;
    std::size_t best = kNone;
    double best_val = -opt_.tol_reduced;
    for (std::size_t j = 0; j < n_; ++j) {
      if (is_basic_[j]) continue;
      // the partner of a basic split column is its exact negative
      if (sf_.twin[j] != kNone && is_basic_[sf_.twin[j]]) continue;
      if (d_[j] < best_val) {
        best = j;
        if (bland) break;
        best_val = d_[j];
      }
    }
    return best;
  }

  std::size_t leaving_key(std::size_t col) const { return col >= n_ ? col - n_ : m_ + col; }

  // Min-ratio row. Ties go to the largest pivot element, or to the lowest
  // basis key under Bland's rule.
  std::size_t choose_leaving(std::size_t s, bool bland) const {
    std::size_t best = kNone;
    double best_ratio = kInf;
    for (std::size_t i = 0; i < m_; ++i) {
      const double a = t_[i * w_ + s];
      if (a <= opt_.tol_pivot) continue;
      const double ratio = std::max(0.0, t_[i * w_ + n_]) / a;
      if (best == kNone || ratio < best_ratio - 1e-12 * (1.0 + best_ratio)) {
        best = i;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + 1e-12 * (1.0 + best_ratio) &&
                 (bland ? leaving_key(basis_[i]) < leaving_key(basis_[best]) : a > t_[best * w_ + s])) {
        best = i;
        best_ratio = std::min(best_ratio, ratio);
      }
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t s) {
    double* prow = &t_[r * w_];
    const double inv = 1.0 / prow[s];
    nz_.clear();
    for (std::size_t j = 0; j < w_; ++j) {
      if (prow[j] != 0.0) {
        prow[j] *= inv;
        nz_.push_back(j);
      }
    }
    prow[s] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &t_[i * w_];
      const double f = row[s];
      if (f == 0.0) continue;
      for (std::size_t j : nz_) row[j] -= f * prow[j];
      row[s] = 0.0;
    }
    const double f = d_[s];
    if (f != 0.0) {
      for (std::size_t j : nz_)
        if (j < n_) d_[j] -= f * prow[j];
      d_[s] = 0.0;
    }
    if (basis_[r] < n_) is_basic_[basis_[r]] = false;
    basis_[r] = s;
    is_basic_[s] = true;
  }

  // Recomputes basic values and reduced costs from the original data. Returns
  // true when the current basis is confirmed optimal; otherwise the tableau is
  // rebuilt from a fresh factorization and pivoting resumes.
  bool refine(bool phase_one) {
    if (m_ == 0) return true;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix());
    const Eigen::VectorXd bvec = Eigen::Map<const Eigen::VectorXd>(sf_.b.data(), static_cast<Eigen::Index>(m_));
    const Eigen::VectorXd xb = lu.solve(bvec);
    const std::vector<double> cb = basic_costs(phase_one);
    const Eigen::VectorXd y =
        lu.transpose().solve(Eigen::Map<const Eigen::VectorXd>(cb.data(), static_cast<Eigen::Index>(m_)));

    bool ok = true;
    double scale = 1.0;
    for (std::size_t i = 0; i < m_; ++i) scale = std::max(scale, std::abs(sf_.b[i]));
    for (std::size_t i = 0; i < m_; ++i)
      if (xb(static_cast<Eigen::Index>(i)) < -opt_.tol_feas * scale) ok = false;
    std::vector<double> d(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      double v = phase_one ? 0.0 : sf_.c[j];
      for (std::size_t i = 0; i < m_; ++i) v -= sf_.at(i, j) * y(static_cast<Eigen::Index>(i));
      d[j] = is_basic_[j] ? 0.0 : v;
      if (!is_basic_[j] && v < -10.0 * opt_.tol_reduced) ok = false;
    }
    if (ok) {
      for (std::size_t i = 0; i < m_; ++i) t_[i * w_ + n_] = std::max(0.0, xb(static_cast<Eigen::Index>(i)));
      d_ = std::move(d);
      return true;
    }
    // Drifted: rebuild the whole tableau as B^{-1} [A | b].
    rebuild_from(lu, xb);
    d_ = std::move(d);
    return false;
  }

  // Rebuilds the tableau and reduced costs from the original data.
  void rebuild(bool phase_one) {
    if (m_ == 0) return;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix());
    const Eigen::VectorXd bvec = Eigen::Map<const Eigen::VectorXd>(sf_.b.data(), static_cast<Eigen::Index>(m_));
    const Eigen::VectorXd xb = lu.solve(bvec);
    rebuild_from(lu, xb);
    for (std::size_t i = 0; i < m_; ++i) t_[i * w_ + n_] = std::max(0.0, t_[i * w_ + n_]);
    price(phase_one);
  }

  void rebuild_from(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, const Eigen::VectorXd& xb) {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sf_.at(i, j);
    const Eigen::MatrixXd ta = lu.solve(a);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) t_[i * w_ + j] = ta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      t_[i * w_ + n_] = xb(static_cast<Eigen::Index>(i));
    }
    for (std::size_t k = 0; k < m_; ++k)
      if (basis_[k] < n_) {
        for (std::size_t i = 0; i < m_; ++i) t_[i * w_ + basis_[k]] = i == k ? 1.0 : 0.0;
      }
  }

  const StandardForm& sf_;
  const SolverOptions& opt_;
  std::size_t m_, n_, w_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  std::vector<double> d_;
  std::vector<std::size_t> nz_;
  std::size_t iterations_ = 0;
  std::size_t max_iter_ = 0;
  std::size_t unbounded_col_ = kNone;
  bool rebuilt_ = false;
};

std::vector<double> to_original(const StandardForm& sf, const std::vector<double>& xs, bool with_offset) {
  std::vector<double> x(sf.vars.size(), 0.0);
  for (std::size_t j = 0; j < sf.vars.size(); ++j) {
    const VarMap& vm = sf.vars[j];
    const double off = with_offset ? vm.offset : 0.0;
    switch (vm.kind) {
      case VarKind::kFixed: x[j] = off; break;
      case VarKind::kShift: x[j] = off + xs[vm.col]; break;
      case VarKind::kReflect: x[j] = off - xs[vm.col]; break;
      case VarKind::kFree: x[j] = xs[vm.col] - xs[vm.col2]; break;
    }
  }
  return x;
}

double row_activity(const Row& row, const std::vector<double>& x) {
  double v = 0.0;
  for (const auto& [var, coef] : row.terms) v += coef * x[var];
  return v;
}

}  // namespace

LpSolution solve(const LinearProgram& program, const SolverOptions& options) {
  program.validate();
  const StandardForm sf = to_standard_form(program);
  Tableau tab(sf, options);
  LpSolution sol;

  double bscale = 1.0;
  for (double v : sf.b) bscale = std::max(bscale, std::abs(v));

  tab.run_phase(true);
  if (tab.artificial_mass() > options.tol_feas * bscale) {
    sol.status = Status::kInfeasible;
    const std::vector<double> y = tab.duals(true);
    sol.farkas.assign(program.num_rows(), 0.0);
    for (std::size_t i = 0; i < sf.original_rows; ++i) sol.farkas[i] = sf.row_sign[i] * y[i];
    sol.iterations = tab.iterations();
    return sol;
  }
  tab.drive_out_artificials();

  const Status st = tab.run_phase(false);
  sol.iterations = tab.iterations();
  sol.basis = tab.basis();

  if (st == Status::kUnbounded) {
    sol.status = Status::kUnbounded;
    const std::size_t s = tab.unbounded_col();
    std::vector<double> dir(sf.n, 0.0);
    dir[s] = 1.0;
    for (std::size_t i = 0; i < sf.m; ++i)
      if (tab.basis()[i] < sf.n) dir[tab.basis()[i]] = -tab.entry(i, s);
    sol.ray = to_original(sf, dir, false);
    for (double v : sol.ray)
      if (!std::isfinite(v)) throw verification_error("lp: numerical breakdown (non-finite ray)");
    return sol;
  }

  sol.status = Status::kOptimal;
  std::vector<double> xs(sf.n, 0.0);
  const std::vector<double> xb = tab.basic_values();
  for (std::size_t i = 0; i < sf.m; ++i)
    if (tab.basis()[i] < sf.n) xs[tab.basis()[i]] = xb[i];
  sol.primal = to_original(sf, xs, true);

  const std::vector<double> y = tab.duals(false);
  sol.duals.assign(program.num_rows(), 0.0);
  for (std::size_t i = 0; i < sf.original_rows; ++i)
    sol.duals[i] = sf.direction_sign * sf.row_sign[i] * y[i];

  sol.objective = 0.0;
  for (std::size_t j = 0; j < program.num_vars(); ++j)
    sol.objective += program.objective()[j] * sol.primal[j];
  double dual_std = 0.0;
  for (std::size_t i = 0; i < sf.m; ++i) dual_std += sf.b[i] * y[i];
  sol.dual_objective = sf.direction_sign * dual_std + sf.objective_offset;

  sol.reduced_costs = program.objective();
  for (std::size_t i = 0; i < program.num_rows(); ++i)
    for (const auto& [var, coef] : program.rows()[i].terms) sol.reduced_costs[var] -= coef * sol.duals[i];

  double resid = 0.0;
  for (const auto& row : program.rows()) {
    const double act = row_activity(row, sol.primal);
    switch (row.sense) {
      case RowSense::kEqual: resid = std::max(resid, std::abs(act - row.rhs)); break;
      case RowSense::kLessEqual: resid = std::max(resid, act - row.rhs); break;
      case RowSense::kGreaterEqual: resid = std::max(resid, row.rhs - act); break;
    }
  }
  for (std::size_t j = 0; j < program.num_vars(); ++j) {
    resid = std::max(resid, program.lower()[j] - sol.primal[j]);
    resid = std::max(resid, sol.primal[j] - program.upper()[j]);
  }
  sol.primal_residual = resid;
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(sol.primal) || !finite(sol.duals) || !std::isfinite(resid))
    throw verification_error("lp: numerical breakdown (non-finite solution)");

  sol.basic.assign(program.num_vars(), false);
  for (std::size_t j = 0; j < program.num_vars(); ++j) {
    const VarMap& vm = sf.vars[j];
    if (vm.col != kNone && tab.is_basic()[vm.col]) sol.basic[j] = true;
    if (vm.col2 != kNone && tab.is_basic()[vm.col2]) sol.basic[j] = true;
  }
  for (std::size_t j = 0; j < sf.n; ++j) {
    if (tab.is_basic()[j]) continue;
    if (sf.twin[j] != kNone && tab.is_basic()[sf.twin[j]]) continue;
    if (std::abs(tab.reduced()[j]) <= options.tol_reduced) {
      sol.dual_degenerate = true;
      break;
    }
  }
  return sol;
}

MarginResult feasibility_with_margin(const MarginSystem& system, const SolverOptions& options) {
  const std::size_t n = system.num_weights;
  if (system.group.size() != n) throw argument_error("margin: group vector size mismatch");
  if (system.equality_rows.size() != system.equality_rhs.size())
    throw argument_error("margin: equality rows/rhs size mismatch");

  LinearProgram lp(Direction::kMaximize);
  for (std::size_t i = 0; i < n; ++i) lp.add_variable(0.0);
  const std::size_t t = lp.add_variable(1.0, -kInf, kInf);

  std::size_t groups = 0;
  for (std::size_t g : system.group) groups = std::max(groups, g + 1);
  for (std::size_t g = 0; g < groups; ++g) {
    Row row;
    double count = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (system.group[i] != g) continue;
      row.terms.emplace_back(i, 1.0);
      count += 1.0;
    }
    if (count == 0.0) continue;
    row.terms.emplace_back(t, count);
    row.rhs = 1.0;
    lp.add_row(std::move(row));
  }
  for (std::size_t r = 0; r < system.equality_rows.size(); ++r) {
    const auto& e = system.equality_rows[r];
    if (e.size() != n) throw argument_error("margin: equality row length mismatch");
    Row row;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0.0) continue;
      row.terms.emplace_back(i, e[i]);
      total += e[i];
    }
    if (total != 0.0) row.terms.emplace_back(t, total);
    row.rhs = system.equality_rhs[r];
    lp.add_row(std::move(row));
  }

  const LpSolution sol = solve(lp, options);
  MarginResult res;
  if (sol.status != Status::kOptimal || sol.primal[t] < -options.tol_feas) return res;
  res.feasible = true;
  res.margin = sol.primal[t];
  res.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.weights[i] = sol.primal[i] + res.margin;
  return res;
}

}  // namespace motkit::lp
