#include "motkit/mot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "martingale_lp.hpp"
#include "points.hpp"
#include "motkit/error.hpp"
#include "motkit/lp.hpp"
#include "motkit/random.hpp"

namespace motkit {

// ---------------------------------------------------------------- SupportSet

SupportSet SupportSet::of(const Coupling& pi) {
  SupportSet s(pi.dim());
  for (const auto& e : pi.entries()) s.add(pi.mu().atom(e.i), pi.nu().atom(e.j));
  return s;
}

void SupportSet::add(const Point& x, const Point& y) {
  if (x.size() != dim || y.size() != dim) throw argument_error("support: point dimension mismatch");
  for (auto& f : fibers)
    if (f.x == x) {
      f.ys.push_back(y);
      return;
    }
  fibers.push_back({x, {y}});
}

void SupportSet::validate() const {
  if (dim == 0) throw argument_error("support: dimension must be positive");
  for (std::size_t f = 0; f < fibers.size(); ++f) {
    if (fibers[f].x.size() != dim) throw argument_error("support: fiber " + std::to_string(f) + " has wrong x dimension");
    if (fibers[f].ys.empty()) throw argument_error("support: fiber " + std::to_string(f) + " is empty");
    for (const auto& y : fibers[f].ys)
      if (y.size() != dim) throw argument_error("support: fiber " + std::to_string(f) + " has wrong y dimension");
  }
}

std::size_t SupportSet::num_pairs() const {
  std::size_t n = 0;
  for (const auto& f : fibers) n += f.ys.size();
  return n;
}

std::vector<std::pair<std::size_t, std::size_t>> SupportSet::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t f = 0; f < fibers.size(); ++f)
    for (std::size_t k = 0; k < fibers[f].ys.size(); ++k) out.emplace_back(f, k);
  return out;
}

PointSet SupportSet::x_points() const {
  std::vector<Point> xs;
  for (const auto& f : fibers) xs.push_back(f.x);
  return PointSet(dim, std::move(xs));
}

PointSet SupportSet::y_points() const {
  std::vector<Point> ys;
  for (const auto& f : fibers) ys.insert(ys.end(), f.ys.begin(), f.ys.end());
  return PointSet(dim, std::move(ys));
}

std::optional<std::size_t> SupportSet::first_non_martingale_fiber(const Tolerances& tol) const {
  for (std::size_t f = 0; f < fibers.size(); ++f)
    if (!rel_interior_contains(fiber_points(f), fibers[f].x, tol).inside) return f;
  return std::nullopt;
}

// ---------------------------------------------------------------- triples

using detail::find_point;
using detail::fmt_point;

std::optional<std::size_t> AdmissibleTriple::find_x(std::span<const double> x, double tol) const {
  return find_point(xs, x, tol);
}

std::optional<std::size_t> AdmissibleTriple::find_y(std::span<const double> y, double tol) const {
  return find_point(ys, y, tol);
}

double AdmissibleTriple::slack(std::size_t i, std::size_t j, const CostSpec& cost) const {
  double lhs = beta[j] - alpha[i];
  for (std::size_t k = 0; k < xs[i].size(); ++k) lhs -= gamma[i][k] * (ys[j][k] - xs[i][k]);
  const double c = cost(xs[i], ys[j]);
  return sense == Sense::kMinimize ? c - lhs : lhs - c;
}

double AdmissibleTriple::dual_value(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double tol) const {
  double v = 0.0;
  for (std::size_t j = 0; j < nu.size(); ++j) {
    const auto k = find_y(nu.atom(j), tol);
    if (!k) throw domain_error("triple: beta undefined at " + fmt_point(nu.atom(j)));
    v += nu.weight(j) * beta[*k];
  }
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto k = find_x(mu.atom(i), tol);
    if (!k) throw domain_error("triple: alpha undefined at " + fmt_point(mu.atom(i)));
    v -= mu.weight(i) * alpha[*k];
  }
  return v;
}

ContactReport verify_contact_layer(const SupportSet& gamma, const AdmissibleTriple& triple, const PointSet& x_ambient,
                                   const PointSet& y_ambient, const CostSpec& cost, const Tolerances& tol) {
  gamma.validate();
  auto lookup_x = [&](const Point& x) {
    const auto i = triple.find_x(x, tol.geom);
    if (!i) throw domain_error("verify_contact_layer: alpha/gamma undefined at " + fmt_point(x));
    return *i;
  };
  auto lookup_y = [&](const Point& y) {
    const auto j = triple.find_y(y, tol.geom);
    if (!j) throw domain_error("verify_contact_layer: beta undefined at " + fmt_point(y));
    return *j;
  };
  std::vector<std::size_t> xi, yj;
  for (const auto& x : x_ambient) xi.push_back(lookup_x(x));
  for (const auto& f : gamma.fibers) xi.push_back(lookup_x(f.x));
  for (const auto& y : y_ambient) yj.push_back(lookup_y(y));
  for (const auto& f : gamma.fibers)
    for (const auto& y : f.ys) yj.push_back(lookup_y(y));
  std::sort(xi.begin(), xi.end());
  xi.erase(std::unique(xi.begin(), xi.end()), xi.end());
  std::sort(yj.begin(), yj.end());
  yj.erase(std::unique(yj.begin(), yj.end()), yj.end());

  ContactReport rep;
  for (std::size_t i : xi)
    for (std::size_t j : yj) {
      const double s = triple.slack(i, j, cost);
      ++rep.pairs_checked;
      if (-s > rep.max_violation) {
        rep.max_violation = -s;
        rep.worst = "largest inequality violation at x=" + fmt_point(triple.xs[i]) + " y=" + fmt_point(triple.ys[j]);
      }
    }
  double worst_ineq = rep.max_violation;
  for (const auto& f : gamma.fibers) {
    const std::size_t i = lookup_x(f.x);
    for (const auto& y : f.ys) {
      const double r = std::abs(triple.slack(i, lookup_y(y), cost));
      if (r > rep.max_equality) {
        rep.max_equality = r;
        if (r > worst_ineq) {
          worst_ineq = r;
          rep.worst = "largest equality residual at x=" + fmt_point(f.x) + " y=" + fmt_point(y);
        }
      }
    }
  }
  rep.ok = rep.max_violation <= tol.feas && rep.max_equality <= tol.feas;
  return rep;
}

// ---------------------------------------------------------------- contact LP

namespace {

struct ContactProblem {
  std::vector<Point> xs, ys;
  std::vector<std::pair<std::size_t, std::size_t>> layer;  // (x index, y index)
};

// The system  beta_j - alpha_i - gamma_i.(y_j - x_i) <= c_ij on X x Y, with
// equality on the layer, is the dual of
//   min sum c_ij r_ij  s.t.  zero row sums, zero column sums, zero barycenters,
//   r_ij >= 0 off the layer (free on it).
// That LP has |X| + |Y| + d|X| rows instead of |X||Y|; at an optimal basis its
// multipliers are the triple, and an improving ray certifies infeasibility.
// Maximization is handled as minimization of -c.
ContactFeasibility solve_contact(const ContactProblem& p, const CostSpec& cost, const Tolerances& tol) {
  const std::size_t n = p.xs.size(), m = p.ys.size(), d = n ? p.xs[0].size() : 0;
  const double sign = cost.sense == Sense::kMinimize ? 1.0 : -1.0;
  std::vector<bool> on_layer(n * m, false);
  for (auto [i, j] : p.layer) on_layer[i * m + j] = true;

  // Off-layer lower bounds are pushed slightly below zero. Neither the dual
  // feasibility of a basis nor an unbounded direction depends on the bounds,
  // and the shifted system is far less degenerate than the homogeneous one.
  Rng rng(0x636f6e74616374ULL, n * 1000003 + m);
  const double eps = 1e-6;
  lp::LinearProgram prog;
  std::vector<double> c(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      c[i * m + j] = sign * cost(p.xs[i], p.ys[j]);
      prog.add_variable(c[i * m + j], on_layer[i * m + j] ? -lp::kInf : -eps * (1.0 + rng.uniform()));
    }
  // row index per constraint, or npos for empty rows
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> row_of_x(n), row_of_y(m), row_of_bary(n * d, npos);
  for (std::size_t i = 0; i < n; ++i) {
    lp::Row r;
    for (std::size_t j = 0; j < m; ++j) r.terms.emplace_back(i * m + j, 1.0);
    row_of_x[i] = prog.add_row(std::move(r));
  }
  for (std::size_t j = 0; j < m; ++j) {
    lp::Row r;
    for (std::size_t i = 0; i < n; ++i) r.terms.emplace_back(i * m + j, 1.0);
    row_of_y[j] = prog.add_row(std::move(r));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      lp::Row r;
      for (std::size_t j = 0; j < m; ++j) {
        const double a = p.ys[j][k] - p.xs[i][k];
        if (a != 0.0) r.terms.emplace_back(i * m + j, a);
      }
      if (!r.terms.empty()) row_of_bary[i * d + k] = prog.add_row(std::move(r));
    }

  lp::SolverOptions opts;
  opts.tol_feas = tol.feas;
  const lp::LpSolution sol = lp::solve(prog, opts);
  ContactFeasibility out;
  if (sol.status == lp::Status::kInfeasible)
    throw verification_error("contact_layer_feasibility: homogeneous system reported infeasible");

  if (sol.status == lp::Status::kUnbounded) {
    double scale = 0.0;
    for (double v : sol.ray) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const double w = sol.ray[i * m + j] / scale;
        if (std::abs(w) <= 1e-12) continue;
        out.certificate.push_back({p.xs[i], p.ys[j], w});
        out.certificate_cost += w * cost(p.xs[i], p.ys[j]);
      }
    // the ray must be a signed cycle that the layer cannot price
    std::vector<double> rs(n, 0.0), cs(m, 0.0), bs(n * d, 0.0);
    double bad = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const double w = sol.ray[i * m + j] / scale;
        rs[i] += w;
        cs[j] += w;
        for (std::size_t k = 0; k < d; ++k) bs[i * d + k] += w * (p.ys[j][k] - p.xs[i][k]);
        if (!on_layer[i * m + j]) bad = std::max(bad, -w);
      }
    for (double v : rs) bad = std::max(bad, std::abs(v));
    for (double v : cs) bad = std::max(bad, std::abs(v));
    for (double v : bs) bad = std::max(bad, std::abs(v));
    if (bad > tol.feas || sign * out.certificate_cost > -tol.feas)
      throw verification_error("contact_layer_feasibility: unbounded direction is not a valid certificate");
    return out;
  }

  AdmissibleTriple t;
  t.sense = cost.sense;
  t.xs = p.xs;
  t.ys = p.ys;
  t.alpha.resize(n);
  t.gamma.assign(n, Point(d, 0.0));
  t.beta.resize(m);
  for (std::size_t i = 0; i < n; ++i) {
    t.alpha[i] = -sign * sol.duals[row_of_x[i]];
    for (std::size_t k = 0; k < d; ++k)
      if (row_of_bary[i * d + k] != npos) t.gamma[i][k] = -sign * sol.duals[row_of_bary[i * d + k]];
  }
  for (std::size_t j = 0; j < m; ++j) t.beta[j] = sign * sol.duals[row_of_y[j]];

  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double s = t.slack(i, j, cost);
      worst = std::max(worst, on_layer[i * m + j] ? std::abs(s) : -s);
      if (!on_layer[i * m + j] && s <= tol.feas) t.degenerate = true;
    }
  if (!(worst <= tol.feas))
    throw verification_error("contact_layer_feasibility: multipliers violate the system by " + std::to_string(worst));
  out.feasible = true;
  out.triple = std::move(t);
  return out;
}

std::size_t index_into(std::vector<Point>& pts, const Point& p, double tol) {
  if (auto k = find_point(pts, p, tol)) return *k;
  pts.push_back(p);
  return pts.size() - 1;
}

ContactProblem make_problem(const SupportSet& gamma, const PointSet& x_ambient, const PointSet& y_ambient,
                            double tol_geom) {
  ContactProblem p;
  p.xs = x_ambient.points();
  p.ys = y_ambient.points();
  for (const auto& f : gamma.fibers) {
    const std::size_t i = index_into(p.xs, f.x, tol_geom);
    for (const auto& y : f.ys) p.layer.emplace_back(i, index_into(p.ys, y, tol_geom));
  }
  std::sort(p.layer.begin(), p.layer.end());
  p.layer.erase(std::unique(p.layer.begin(), p.layer.end()), p.layer.end());
  return p;
}

}  // namespace

ContactFeasibility contact_layer_feasibility(const SupportSet& gamma, const PointSet& x_ambient,
                                             const PointSet& y_ambient, const CostSpec& cost, const Tolerances& tol) {
  gamma.validate();
  cost.validate();
  if ((!x_ambient.empty() && x_ambient.dim() != gamma.dim) || (!y_ambient.empty() && y_ambient.dim() != gamma.dim))
    throw argument_error("contact_layer_feasibility: ambient dimension mismatch");
  if (gamma.fibers.empty()) throw argument_error("contact_layer_feasibility: empty support");
  return solve_contact(make_problem(gamma, x_ambient, y_ambient, tol.geom), cost, tol);
}

ContactFeasibility contact_layer_feasibility(const SupportSet& gamma, const CostSpec& cost, const Tolerances& tol) {
  return contact_layer_feasibility(gamma, PointSet(gamma.dim, {}), PointSet(gamma.dim, {}), cost, tol);
}

ExposabilityReport check_finitely_exposable(const SupportSet& gamma, const CostSpec& cost, std::size_t k,
                                            std::size_t max_subsets, const Tolerances& tol) {
  gamma.validate();
  if (k == 0) throw argument_error("check_finitely_exposable: k must be at least 1");
  const auto pairs = gamma.pairs();
  const std::size_t n = pairs.size();
  k = std::min(k, n);
  // count subsets before enumerating anything
  double total = 0.0, binom = 1.0;
  for (std::size_t s = 1; s <= k; ++s) {
    binom = binom * static_cast<double>(n - s + 1) / static_cast<double>(s);
    total += binom;
  }
  if (total > static_cast<double>(max_subsets))
    throw precondition_error("check_finitely_exposable: " + std::to_string(static_cast<long long>(total)) +
                             " subsets exceed the cap of " + std::to_string(max_subsets));

  ExposabilityReport rep;
  std::vector<std::size_t> idx;
  for (std::size_t s = 1; s <= k; ++s) {
    idx.resize(s);
    for (std::size_t q = 0; q < s; ++q) idx[q] = q;
    while (true) {
      SupportSet sub(gamma.dim);
      for (std::size_t q : idx) sub.add(gamma.fibers[pairs[q].first].x, gamma.fibers[pairs[q].first].ys[pairs[q].second]);
      ++rep.subsets_checked;
      if (!contact_layer_feasibility(sub, cost, tol).feasible) {
        rep.exposable = false;
        rep.violating = std::move(sub);
        return rep;
      }
      // next combination in lexicographic order
      std::size_t q = s;
      while (q > 0 && idx[q - 1] == n - s + q - 1) --q;
      if (q == 0) break;
      ++idx[q - 1];
      for (std::size_t r = q; r < s; ++r) idx[r] = idx[r - 1] + 1;
    }
  }
  return rep;
}

// ---------------------------------------------------------------- primal

namespace {

bool splits_common_mass(const CostSpec& cost) {
  if (cost.sense != Sense::kMinimize || cost.scale < 0.0) return false;
  return cost.kind == CostKind::kEuclidean || (cost.kind == CostKind::kPower && cost.p <= 1.0);
}

struct LpOutcome {
  std::optional<Coupling> coupling;
  std::optional<ConvexWitness> witness;
  std::size_t iterations = 0;
};

LpOutcome solve_plain(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostSpec& cost,
                      const Tolerances& tol) {
  std::vector<double> c(mu.size() * nu.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j) c[i * nu.size() + j] = cost(mu.atom(i), nu.atom(j));
  const auto dir = cost.sense == Sense::kMinimize ? lp::Direction::kMinimize : lp::Direction::kMaximize;
  lp::SolverOptions opts;
  opts.tol_feas = tol.feas;
  const lp::LpSolution sol = lp::solve(detail::martingale_lp(mu, nu, c, dir), opts);
  LpOutcome out;
  out.iterations = sol.iterations;
  if (sol.status == lp::Status::kOptimal)
    out.coupling = detail::coupling_from_primal(mu, nu, sol.primal);
  else if (sol.status == lp::Status::kInfeasible)
    out.witness = detail::witness_from_farkas(mu, nu, sol.farkas);
  else
    throw verification_error("solve_mot: bounded transport problem reported unbounded");
  return out;
}

}  // namespace

MotResult solve_mot(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostSpec& cost,
                    const MotOptions& options) {
  if (mu.dim() != nu.dim()) throw argument_error("solve_mot: marginal dimensions differ");
  cost.validate();
  const Tolerances& tol = options.tol;
  MotResult res;

  if (options.split_common_mass && splits_common_mass(cost)) {
    const CommonMass cm = common_mass(mu, nu);
    if (cm.mass > 0.0) {
      std::vector<CouplingEntry> entries;
      for (std::size_t k = 0; k < cm.atoms.size(); ++k) entries.push_back({cm.mu_index[k], cm.nu_index[k], cm.weights[k]});
      std::optional<LpOutcome> rest;
      if (!cm.remainders_empty()) rest = solve_plain(*cm.mu_rest, *cm.nu_rest, cost, tol);
      if (cm.remainders_empty() || rest->coupling) {
        if (rest) {
          res.iterations = rest->iterations;
          for (const auto& e : rest->coupling->entries())
            entries.push_back({cm.mu_rest_index[e.i], cm.nu_rest_index[e.j], e.mass * cm.remainder_mass});
        }
        res.coupling = Coupling(mu, nu, std::move(entries));
        res.split_applied = true;
        res.common_mass = cm.mass;
      }
      // otherwise the remainders are not in convex order; fall through to the plain solve
    }
  }

  if (!res.split_applied) {
    LpOutcome plain = solve_plain(mu, nu, cost, tol);
    if (!plain.coupling) {
      std::ostringstream os;
      os << "marginals are not in convex order (witness separates by " << plain.witness->gap() << ")";
      throw OrderViolation(os.str(), std::move(*plain.witness));
    }
    res.coupling = std::move(*plain.coupling);
    res.iterations = plain.iterations;
  }

  const CouplingResiduals r = res.coupling.residuals();
  if (r.max() > tol.feas)
    throw verification_error("solve_mot: coupling residual " + std::to_string(r.max()) + " exceeds tolerance");
  res.value = res.coupling.cost(cost);
  return res;
}

AdmissibleTriple recover_dual(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostSpec& cost,
                              const Coupling& pi, const Tolerances& tol) {
  cost.validate();
  ContactProblem p;
  p.xs = mu.atoms();
  p.ys = nu.atoms();
  for (const auto& e : pi.entries()) {
    const auto i = find_point(p.xs, pi.mu().atom(e.i), tol.geom);
    const auto j = find_point(p.ys, pi.nu().atom(e.j), tol.geom);
    if (!i || !j) throw argument_error("recover_dual: coupling is not supported on the given marginals");
    p.layer.emplace_back(*i, *j);
  }
  const double value = pi.cost(cost);
  ContactFeasibility cf = solve_contact(p, cost, tol);
  if (!cf.feasible) {
    MotOptions opts;
    opts.tol = tol;
    const double best = solve_mot(mu, nu, cost, opts).value;
    std::ostringstream os;
    os << "recover_dual: coupling is not optimal (cost " << value << ", optimum " << best << ", gap "
       << std::abs(value - best) << ")";
    throw verification_error(os.str());
  }
  const double dual = cf.triple->dual_value(mu, nu, tol.geom);
  if (!(std::abs(dual - value) <= tol.gap * (1.0 + std::abs(value)))) {
    std::ostringstream os;
    os << "recover_dual: dual value " << dual << " differs from primal " << value;
    throw verification_error(os.str());
  }
  return std::move(*cf.triple);
}

DeltaBounds delta_bounds(const CostSpec& cost, const PointSet& omega, const PointSet& y) {
  DeltaBounds b;
  b.delta1 = -lp::kInf;
  b.delta2 = -lp::kInf;
  for (const auto& x : omega) b.delta1 = std::max(b.delta1, cost(x, x));
  for (const auto& x : omega)
    for (const auto& xp : omega) {
      const double cxx = cost(x, xp);
      for (const auto& yy : y) b.delta2 = std::max(b.delta2, cost(x, yy) - cxx - cost(xp, yy));
    }
  if (omega.empty()) b.delta1 = 0.0;
  if (omega.empty() || y.empty()) b.delta2 = 0.0;
  return b;
}

}  // namespace motkit
