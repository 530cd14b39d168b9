#include "motkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "martingale_lp.hpp"
#include "motkit/lp.hpp"
#include "motkit/parallel.hpp"

namespace motkit {

namespace {

void require_same_dim(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const char* op) {
  if (mu.dim() != nu.dim())
    throw argument_error(std::string(op) + ": dimension mismatch (" + std::to_string(mu.dim()) + " vs " +
                         std::to_string(nu.dim()) + ")");
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::size_t dim, std::vector<Point> atoms, std::vector<double> weights,
                                 double tol_geom)
    : dim_(dim), atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (dim == 0) throw argument_error("measure: dimension must be positive");
  if (atoms_.empty()) throw argument_error("measure: no atoms");
  if (atoms_.size() != weights_.size())
    throw argument_error("measure: " + std::to_string(atoms_.size()) + " atoms but " +
                         std::to_string(weights_.size()) + " weights");
  double total = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].size() != dim) throw argument_error("measure: atom " + std::to_string(i) + " has wrong dimension");
    for (double v : atoms_[i])
      if (!std::isfinite(v)) throw argument_error("measure: non-finite coordinate in atom " + std::to_string(i));
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      throw argument_error("measure: weight " + std::to_string(i) + " is not a positive number");
    total += weights_[i];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw argument_error("measure: weights sum to " + std::to_string(total) + ", not 1");
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (distance(atoms_[i], atoms_[k]) <= tol_geom)
        throw argument_error("measure: atoms " + std::to_string(k) + " and " + std::to_string(i) + " coincide");
}

DiscreteMeasure DiscreteMeasure::normalized(std::size_t dim, std::vector<Point> atoms, std::vector<double> weights,
                                            double tol_geom, std::string* warning) {
  if (atoms.size() != weights.size())
    throw argument_error("measure: " + std::to_string(atoms.size()) + " atoms but " +
                         std::to_string(weights.size()) + " weights");
  std::vector<Point> kept;
  std::vector<double> mass;
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!std::isfinite(weights[i]) || weights[i] < 0.0)
      throw argument_error("measure: weight " + std::to_string(i) + " is negative or not finite");
    if (atoms[i].size() != dim) throw argument_error("measure: atom " + std::to_string(i) + " has wrong dimension");
    if (weights[i] == 0.0) continue;
    total += weights[i];
    auto hit = std::find_if(kept.begin(), kept.end(), [&](const Point& q) { return distance(q, atoms[i]) <= tol_geom; });
    if (hit != kept.end()) {
      mass[static_cast<std::size_t>(hit - kept.begin())] += weights[i];
    } else {
      kept.push_back(std::move(atoms[i]));
      mass.push_back(weights[i]);
    }
  }
  if (kept.empty()) throw argument_error("measure: no atom with positive weight");
  if (warning) warning->clear();
  if (warning && std::abs(total - 1.0) > 1e-9)
    *warning = "measure weights summed to " + std::to_string(total) + "; normalized";
  // weights already summing to one up to rounding are kept bit for bit
  if (std::abs(total - 1.0) > 1e-12)
    for (double& w : mass) w /= total;
  // absorb rounding so the strict constructor accepts the result
  double s = 0.0;
  for (double w : mass) s += w;
  if (std::abs(s - 1.0) > 1e-13) mass.back() += 1.0 - s;
  return DiscreteMeasure(dim, std::move(kept), std::move(mass), tol_geom);
}

DiscreteMeasure DiscreteMeasure::dirac(Point x) {
  const std::size_t d = x.size();
  return DiscreteMeasure(d, {std::move(x)}, {1.0});
}

std::optional<std::size_t> DiscreteMeasure::find(std::span<const double> x, double tol) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (distance(atoms_[i], x) <= tol) return i;
  return std::nullopt;
}

Point barycenter(const DiscreteMeasure& m) {
  Point b(m.dim(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t k = 0; k < m.dim(); ++k) b[k] += m.weight(i) * m.atom(i)[k];
  return b;
}

CommonMass common_mass(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double drop) {
  require_same_dim(mu, nu, "common_mass");
  CommonMass out;
  std::vector<double> mu_left = mu.weights(), nu_left = nu.weights();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto j = nu.find(mu.atom(i), 0.0);
    if (!j) continue;
    const double m = std::min(mu.weight(i), nu.weight(*j));
    out.atoms.push_back(mu.atom(i));
    out.weights.push_back(m);
    out.mu_index.push_back(i);
    out.nu_index.push_back(*j);
    out.mass += m;
    // the smaller side is exhausted exactly, so the remainders never share an atom
    if (mu.weight(i) <= nu.weight(*j)) {
      mu_left[i] = 0.0;
      nu_left[*j] -= m;
    } else {
      nu_left[*j] = 0.0;
      mu_left[i] -= m;
    }
  }
  out.remainder_mass = 1.0 - out.mass;
  if (out.remainder_mass <= drop) {
    out.remainder_mass = 0.0;
    return out;
  }
  auto rest = [&](const DiscreteMeasure& m, const std::vector<double>& left, std::vector<std::size_t>& index) {
    std::vector<Point> atoms;
    std::vector<double> w;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (left[i] <= drop) continue;
      atoms.push_back(m.atom(i));
      w.push_back(left[i]);
      index.push_back(i);
    }
    return DiscreteMeasure::normalized(m.dim(), std::move(atoms), std::move(w), 0.0);
  };
  out.mu_rest = rest(mu, mu_left, out.mu_rest_index);
  out.nu_rest = rest(nu, nu_left, out.nu_rest_index);
  return out;
}

double CouplingResiduals::max() const { return std::max({row, column, barycenter}); }

Coupling::Coupling(DiscreteMeasure mu, DiscreteMeasure nu, std::vector<CouplingEntry> entries)
    : mu_(std::move(mu)), nu_(std::move(nu)) {
  if (mu_.dim() != nu_.dim()) throw argument_error("coupling: marginal dimensions differ");
  std::sort(entries.begin(), entries.end(),
            [](const CouplingEntry& a, const CouplingEntry& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  for (const auto& e : entries) {
    if (e.i >= mu_.size() || e.j >= nu_.size())
      throw argument_error("coupling: entry (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ") out of range");
    if (!std::isfinite(e.mass) || e.mass < 0.0) throw argument_error("coupling: negative or non-finite mass");
    if (e.mass == 0.0) continue;
    if (!entries_.empty() && entries_.back().i == e.i && entries_.back().j == e.j)
      entries_.back().mass += e.mass;
    else
      entries_.push_back(e);
  }
}

Coupling Coupling::identity(const DiscreteMeasure& mu) {
  std::vector<CouplingEntry> e;
  for (std::size_t i = 0; i < mu.size(); ++i) e.push_back({i, i, mu.weight(i)});
  return Coupling(mu, mu, std::move(e));
}

double Coupling::cost(const CostSpec& c) const {
  double v = 0.0;
  for (const auto& e : entries_) v += e.mass * c(mu_.atom(e.i), nu_.atom(e.j));
  return v;
}

CouplingResiduals Coupling::residuals() const {
  CouplingResiduals r;
  const std::size_t d = dim();
  std::vector<double> rs(mu_.size(), 0.0), cs(nu_.size(), 0.0);
  std::vector<double> bary(mu_.size() * d, 0.0);
  for (const auto& e : entries_) {
    rs[e.i] += e.mass;
    cs[e.j] += e.mass;
    for (std::size_t k = 0; k < d; ++k) bary[e.i * d + k] += e.mass * (nu_.atom(e.j)[k] - mu_.atom(e.i)[k]);
  }
  for (std::size_t i = 0; i < mu_.size(); ++i) {
    r.row = std::max(r.row, std::abs(rs[i] - mu_.weight(i)));
    const double scale = 1.0 + norm(mu_.atom(i));
    for (std::size_t k = 0; k < d; ++k) r.barycenter = std::max(r.barycenter, std::abs(bary[i * d + k]) / scale);
  }
  for (std::size_t j = 0; j < nu_.size(); ++j) r.column = std::max(r.column, std::abs(cs[j] - nu_.weight(j)));
  return r;
}

std::vector<std::vector<std::size_t>> Coupling::rows() const {
  std::vector<std::vector<std::size_t>> out(mu_.size());
  for (std::size_t k = 0; k < entries_.size(); ++k) out[entries_[k].i].push_back(k);
  return out;
}

PointSet Coupling::fiber(std::size_t i) const {
  std::vector<Point> ys;
  for (const auto& e : entries_)
    if (e.i == i) ys.push_back(nu_.atom(e.j));
  return PointSet(dim(), std::move(ys), 0.0);
}

double ConvexWitness::operator()(std::span<const double> y) const {
  double best = -lp::kInf;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    double v = offsets[i];
    for (std::size_t k = 0; k < y.size(); ++k) v += slopes[i][k] * (y[k] - anchors[i][k]);
    best = std::max(best, v);
  }
  return best;
}

ConvexOrderResult check_convex_order(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const Tolerances& tol) {
  require_same_dim(mu, nu, "check_convex_order");
  const lp::LinearProgram prog = detail::martingale_lp(mu, nu, {}, lp::Direction::kMinimize);
  lp::SolverOptions opts;
  opts.tol_feas = tol.feas;
  const lp::LpSolution sol = lp::solve(prog, opts);
  ConvexOrderResult out;
  if (sol.status == lp::Status::kOptimal) {
    out.in_order = true;
    out.coupling = detail::coupling_from_primal(mu, nu, sol.primal);
  } else {
    out.witness = detail::witness_from_farkas(mu, nu, sol.farkas);
  }
  return out;
}

double unit_ball_volume(std::size_t d) {
  const double h = static_cast<double>(d) / 2.0;
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

double newtonian_potential(const DiscreteMeasure& m, std::span<const double> x, const Tolerances& tol) {
  const std::size_t d = m.dim();
  if (d < 3) throw unsupported_error("newtonian_potential: dimension " + std::to_string(d) + " < 3");
  if (x.size() != d) throw argument_error("newtonian_potential: point dimension mismatch");
  const double dd = static_cast<double>(d);
  const double constant = 1.0 / (dd * (2.0 - dd) * unit_ball_volume(d));
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double r = distance(x, m.atom(i));
    if (r <= tol.geom) throw domain_error("newtonian_potential: evaluation point coincides with atom " + std::to_string(i));
    s += m.weight(i) * std::pow(r, 2.0 - dd);
  }
  return constant * s;
}

SubharmonicReport subharmonic_order_report(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                           const std::vector<Point>& grid, const Tolerances& tol, double threshold,
                                           std::size_t threads) {
  require_same_dim(mu, nu, "subharmonic_order_report");
  SubharmonicReport rep;
  rep.gap.assign(grid.size(), 0.0);
  parallel_for(grid.size(), threads, [&](std::size_t g) {
    rep.gap[g] = newtonian_potential(nu, grid[g], tol) - newtonian_potential(mu, grid[g], tol);
  });
  rep.in_u.resize(grid.size());
  std::size_t positive = 0;
  rep.min_gap = grid.empty() ? 0.0 : lp::kInf;
  rep.max_gap = grid.empty() ? 0.0 : -lp::kInf;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    rep.in_u[g] = rep.gap[g] > threshold;
    positive += rep.in_u[g];
    rep.min_gap = std::min(rep.min_gap, rep.gap[g]);
    rep.max_gap = std::max(rep.max_gap, rep.gap[g]);
  }
  rep.fraction_positive = grid.empty() ? 0.0 : static_cast<double>(positive) / static_cast<double>(grid.size());
  rep.consistent = rep.min_gap >= -tol.feas;
  return rep;
}

}  // namespace motkit
