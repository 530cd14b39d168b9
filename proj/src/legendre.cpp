#include "motkit/legendre.hpp"

#include <algorithm>
#include <cmath>

#include "motkit/error.hpp"
#include "motkit/lp.hpp"
#include "motkit/mot.hpp"
#include "motkit/parallel.hpp"
#include "points.hpp"

namespace motkit {

SampledFunction::SampledFunction(std::size_t dim_, std::vector<Point> points_, std::vector<double> values_)
    : dim(dim_), points(std::move(points_)), values(std::move(values_)) {
  validate();
}

void SampledFunction::validate(double tol_geom) const {
  if (points.size() != values.size()) throw argument_error("sampled function: points and values differ in length");
  if (points.empty()) throw argument_error("sampled function: no points");
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].size() != dim) throw argument_error("sampled function: point of wrong dimension");
    if (!std::isfinite(values[k])) throw argument_error("sampled function: non-finite value");
    for (std::size_t l = 0; l < k; ++l)
      if (distance(points[k], points[l]) <= tol_geom)
        throw argument_error("sampled function: repeated point " + detail::fmt_point(points[k]));
  }
}

namespace {

// Maximization is the minimization problem for (-beta, -c) with every output negated.
CostSpec negated(const CostSpec& cost) {
  CostSpec c = cost;
  c.scale = -cost.scale;
  c.sense = Sense::kMinimize;
  return c;
}

SampledFunction negated(const SampledFunction& f) {
  SampledFunction g = f;
  for (double& v : g.values) v = -v;
  return g;
}

LegendreDual negated(LegendreDual d) {
  for (double& a : d.alpha) a = -a;
  for (auto& g : d.gamma)
    for (double& v : g) v = -v;
  return d;
}

struct Local {
  double alpha = 0.0;
  Point gamma;
  bool degenerate = false;
};

// min a s.t. a + b.(y - x) >= v(y), through its dual
//   max sum l_k v_k  s.t.  sum l_k = 1, sum l_k (y_k - x) = 0, l >= 0,
// whose row multipliers are (a, b).
Local solve_local(const SampledFunction& beta, const Point& x, const CostSpec& cost, const Tolerances& tol) {
  const std::size_t n = beta.size(), d = beta.dim;
  std::vector<double> v(n);
  double scale = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = beta.values[k] - cost(x, beta.points[k]);
    scale = std::max(scale, std::abs(v[k]));
  }
  lp::LinearProgram prog(lp::Direction::kMaximize);
  for (std::size_t k = 0; k < n; ++k) prog.add_variable(v[k]);
  lp::Row mass;
  for (std::size_t k = 0; k < n; ++k) mass.terms.emplace_back(k, 1.0);
  mass.rhs = 1.0;
  const std::size_t mass_row = prog.add_row(std::move(mass));
  std::vector<std::size_t> bary_row(d, static_cast<std::size_t>(-1));
  for (std::size_t c = 0; c < d; ++c) {
    lp::Row r;
    for (std::size_t k = 0; k < n; ++k) {
      const double a = beta.points[k][c] - x[c];
      if (a != 0.0) r.terms.emplace_back(k, a);
    }
    if (!r.terms.empty()) bary_row[c] = prog.add_row(std::move(r));
  }
  lp::SolverOptions opts;
  opts.tol_feas = tol.feas;
  const lp::LpSolution sol = lp::solve(prog, opts);
  if (sol.status != lp::Status::kOptimal)
    throw domain_error("legendre_dual: no finite transform at " + detail::fmt_point(x));

  Local out;
  out.alpha = sol.duals[mass_row];
  out.gamma.assign(d, 0.0);
  for (std::size_t c = 0; c < d; ++c)
    if (bary_row[c] != static_cast<std::size_t>(-1)) out.gamma[c] = sol.duals[bary_row[c]];

  std::vector<Point> active;
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double rhs = out.alpha;
    for (std::size_t c = 0; c < d; ++c) rhs += out.gamma[c] * (beta.points[k][c] - x[c]);
    worst = std::max(worst, v[k] - rhs);
    if (rhs - v[k] <= tol.feas * scale) active.push_back(beta.points[k]);
  }
  if (!(worst <= tol.feas * scale) || !(std::abs(out.alpha - sol.objective) <= tol.feas * scale))
    throw verification_error("legendre_dual: multipliers fail at " + detail::fmt_point(x));
  // b is pinned exactly when x is interior to the hull of the active generators
  const PointSet act(d, active, tol.geom);
  out.degenerate = affine_span(act, tol).dim < d || !rel_interior_contains(act, x, tol).inside;
  return out;
}

LegendreDual dual_min(const SampledFunction& beta, const std::vector<Point>& xs, const CostSpec& cost,
                      const Tolerances& tol, std::size_t threads) {
  const PointSet hull(beta.dim, beta.points, tol.geom);
  std::vector<Local> local(xs.size());
  parallel_for(xs.size(), threads, [&](std::size_t i) {
    if (xs[i].size() != beta.dim) throw argument_error("legendre_dual: evaluation point of wrong dimension");
    if (!rel_interior_contains(hull, xs[i], tol).inside)
      throw domain_error("legendre_dual: " + detail::fmt_point(xs[i]) + " is outside ri conv(Y)");
    local[i] = solve_local(beta, xs[i], cost, tol);
  });
  LegendreDual out;
  out.sense = Sense::kMinimize;
  out.dim = beta.dim;
  out.xs = xs;
  for (auto& l : local) {
    out.alpha.push_back(l.alpha);
    out.gamma.push_back(std::move(l.gamma));
    out.degenerate.push_back(l.degenerate);
  }
  return out;
}

std::vector<double> transform_min(const LegendreDual& dual, const std::vector<Point>& eval, const CostSpec& cost) {
  std::vector<double> out(eval.size());
  for (std::size_t e = 0; e < eval.size(); ++e) {
    double best = lp::kInf;
    for (std::size_t i = 0; i < dual.xs.size(); ++i) {
      double v = cost(dual.xs[i], eval[e]) + dual.alpha[i];
      for (std::size_t c = 0; c < dual.dim; ++c) v += dual.gamma[i][c] * (eval[e][c] - dual.xs[i][c]);
      best = std::min(best, v);
    }
    out[e] = best;
  }
  return out;
}

}  // namespace

double LegendreDual::max_violation(const SampledFunction& beta, const CostSpec& cost) const {
  const double s = sense == Sense::kMinimize ? 1.0 : -1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = 0; k < beta.size(); ++k) {
      double lhs = beta.values[k] - alpha[i] - cost(xs[i], beta.points[k]);
      for (std::size_t c = 0; c < dim; ++c) lhs -= gamma[i][c] * (beta.points[k][c] - xs[i][c]);
      worst = std::max(worst, s * lhs);
    }
  return worst;
}

LegendreDual legendre_dual(const SampledFunction& beta, const std::vector<Point>& xs, const CostSpec& cost,
                           const Tolerances& tol, std::size_t threads) {
  beta.validate(tol.geom);
  cost.validate();
  if (cost.sense == Sense::kMinimize) return dual_min(beta, xs, cost, tol, threads);
  LegendreDual d = negated(dual_min(negated(beta), xs, negated(cost), tol, threads));
  d.sense = Sense::kMaximize;
  return d;
}

std::vector<double> double_transform(const LegendreDual& dual, const std::vector<Point>& eval, const CostSpec& cost) {
  if (dual.xs.empty()) throw argument_error("double_transform: empty dual");
  if (cost.sense != dual.sense) throw argument_error("double_transform: cost sense differs from the dual's");
  for (const auto& y : eval)
    if (y.size() != dual.dim) throw argument_error("double_transform: evaluation point of wrong dimension");
  if (dual.sense == Sense::kMinimize) return transform_min(dual, eval, cost);
  std::vector<double> out = transform_min(negated(dual), eval, negated(cost));
  for (double& v : out) v = -v;
  return out;
}

SandwichReport check_sandwich(const SampledFunction& beta_in, const std::vector<Point>& xs, const CostSpec& cost_in,
                              const Tolerances& tol, std::size_t threads) {
  const bool flip = cost_in.sense == Sense::kMaximize;
  const SampledFunction beta = flip ? negated(beta_in) : beta_in;
  const CostSpec cost = flip ? negated(cost_in) : cost_in;
  const LegendreDual dual = legendre_dual(beta, xs, cost, tol, threads);
  const std::vector<double> on_y = transform_min(dual, beta.points, cost);
  const std::vector<double> on_x = transform_min(dual, xs, cost);
  const DeltaBounds db = delta_bounds(cost, PointSet(beta.dim, xs, tol.geom), PointSet(beta.dim, beta.points, tol.geom));

  SandwichReport r;
  r.delta1 = db.delta1;
  r.delta2 = db.delta2;
  r.beta_margin = lp::kInf;
  r.lower_margin = lp::kInf;
  r.upper_margin = lp::kInf;
  for (std::size_t k = 0; k < beta.size(); ++k) r.beta_margin = std::min(r.beta_margin, on_y[k] - beta.values[k]);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    r.lower_margin = std::min(r.lower_margin, dual.alpha[i] - (on_x[i] - db.delta1));
    r.upper_margin = std::min(r.upper_margin, on_x[i] + db.delta2 - dual.alpha[i]);
    r.max_gap = std::max(r.max_gap, std::abs(dual.alpha[i] - on_x[i]));
  }
  r.ok = r.beta_margin >= -tol.feas && r.lower_margin >= -tol.feas && r.upper_margin >= -tol.feas;
  return r;
}

IdempotenceReport check_idempotent(const SampledFunction& beta, const std::vector<Point>& xs,
                                   const std::vector<Point>& grid, const CostSpec& cost, const Tolerances& tol,
                                   std::size_t threads) {
  std::vector<Point> ys = beta.points;
  for (const auto& g : grid)
    if (!detail::find_point(ys, g, tol.geom)) ys.push_back(g);
  const LegendreDual first = legendre_dual(beta, xs, cost, tol, threads);
  const SampledFunction cc(beta.dim, ys, double_transform(first, ys, cost));
  const LegendreDual second = legendre_dual(cc, xs, cost, tol, threads);
  const std::vector<double> cccc = double_transform(second, ys, cost);
  IdempotenceReport r;
  r.points = ys.size();
  for (std::size_t k = 0; k < ys.size(); ++k) r.max_deviation = std::max(r.max_deviation, std::abs(cc.values[k] - cccc[k]));
  return r;
}

}  // namespace motkit
