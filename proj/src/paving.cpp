#include "motkit/paving.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "motkit/error.hpp"
#include "motkit/parallel.hpp"
#include "points.hpp"

namespace motkit {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

std::vector<Point> generators_of(const SupportSet& gamma, const std::vector<std::size_t>& members, double tol) {
  std::vector<Point> g;
  auto push = [&](const Point& p) {
    if (!detail::find_point(g, p, tol)) g.push_back(p);
  };
  for (std::size_t f : members) {
    push(gamma.fibers[f].x);
    for (const auto& y : gamma.fibers[f].ys) push(y);
  }
  return g;
}

// Canonical form: members ascending, classes ordered by smallest member.
Paving assemble(const SupportSet& gamma, std::vector<std::vector<std::size_t>> groups, const Tolerances& tol) {
  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::sort(groups.begin(), groups.end());
  Paving p;
  p.dim = gamma.dim;
  p.class_of.assign(gamma.fibers.size(), 0);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    PavingClass cl;
    cl.id = c;
    cl.members = groups[c];
    cl.generators = generators_of(gamma, cl.members, tol.geom);
    cl.dim = affine_span(PointSet(gamma.dim, cl.generators, 0.0), tol).dim;
    for (std::size_t f : cl.members) p.class_of[f] = c;
    p.classes.push_back(std::move(cl));
  }
  return p;
}

}  // namespace

std::optional<std::size_t> Paving::class_of_point(const SupportSet& gamma, std::span<const double> x,
                                                   double tol) const {
  for (std::size_t f = 0; f < gamma.fibers.size(); ++f)
    if (distance(gamma.fibers[f].x, x) <= tol) return class_of.at(f);
  return std::nullopt;
}

Paving build_paving(const SupportSet& gamma, const Tolerances& tol) {
  gamma.validate();
  if (auto bad = gamma.first_non_martingale_fiber(tol))
    throw precondition_error("build_paving: x = " + detail::fmt_point(gamma.fibers[*bad].x) +
                             " is not in ri conv(Gamma_x)");
  const std::size_t n = gamma.fibers.size();
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t f = 0; f < n; ++f) groups[f] = {f};

  std::size_t rounds = 0;
  for (;;) {
    std::vector<PointSet> hulls;
    for (const auto& g : groups) hulls.emplace_back(gamma.dim, generators_of(gamma, g, tol.geom), 0.0);
    UnionFind uf(groups.size());
    bool merged = false;
    for (std::size_t a = 0; a < groups.size(); ++a)
      for (std::size_t b = a + 1; b < groups.size(); ++b) {
        if (uf.find(a) == uf.find(b)) continue;
        if (rel_interiors_intersect(hulls[a], hulls[b], tol)) merged = uf.unite(a, b) || merged;
      }
    if (!merged) break;
    ++rounds;
    std::map<std::size_t, std::vector<std::size_t>> next;
    for (std::size_t a = 0; a < groups.size(); ++a) {
      auto& dst = next[uf.find(a)];
      dst.insert(dst.end(), groups[a].begin(), groups[a].end());
    }
    groups.clear();
    for (auto& [root, g] : next) groups.push_back(std::move(g));
    if (rounds > n) throw verification_error("build_paving: no fixpoint after |X| rounds");
  }
  Paving p = assemble(gamma, std::move(groups), tol);
  p.iterations = rounds;
  return p;
}

Paving paving_from_partition(const SupportSet& gamma, const std::vector<std::vector<std::size_t>>& groups,
                             const Tolerances& tol) {
  std::vector<int> seen(gamma.fibers.size(), 0);
  for (const auto& g : groups) {
    if (g.empty()) throw argument_error("paving_from_partition: empty class");
    for (std::size_t f : g) {
      if (f >= seen.size()) throw argument_error("paving_from_partition: fiber index out of range");
      ++seen[f];
    }
  }
  for (int s : seen)
    if (s != 1) throw argument_error("paving_from_partition: classes must cover every fiber exactly once");
  return assemble(gamma, groups, tol);
}

PavingReport verify_paving(const SupportSet& gamma, const Paving& paving, const Tolerances& tol) {
  PavingReport r;
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    r.violations.push_back(what);
  };
  std::vector<int> seen(gamma.fibers.size(), 0);
  for (const auto& c : paving.classes)
    for (std::size_t f : c.members) {
      if (f < seen.size()) ++seen[f];
      else fail(r.covered, "class " + std::to_string(c.id) + " names a missing fiber");
    }
  for (std::size_t f = 0; f < seen.size(); ++f)
    if (seen[f] != 1)
      fail(r.covered, "fiber at " + detail::fmt_point(gamma.fibers[f].x) + " is in " + std::to_string(seen[f]) + " classes");
  if (!r.covered) return r;

  std::vector<PointSet> hulls;
  for (std::size_t c = 0; c < paving.classes.size(); ++c) hulls.push_back(paving.hull(c));
  for (std::size_t a = 0; a < hulls.size(); ++a)
    for (std::size_t b = a + 1; b < hulls.size(); ++b)
      if (rel_interiors_intersect(hulls[a], hulls[b], tol))
        fail(r.disjoint, "classes " + std::to_string(a) + " and " + std::to_string(b) + " overlap");

  for (std::size_t c = 0; c < paving.classes.size(); ++c)
    for (std::size_t f : paving.classes[c].members) {
      const auto& fib = gamma.fibers[f];
      if (!rel_interior_contains(hulls[c], fib.x, tol).inside)
        fail(r.members_inside, detail::fmt_point(fib.x) + " is not in ri of its class hull");
      for (const auto& y : fib.ys)
        if (!hull_contains(hulls[c], y, tol))
          fail(r.fibers_inside, "fiber point " + detail::fmt_point(y) + " of " + detail::fmt_point(fib.x) +
                                    " is outside its class hull");
    }

  for (std::size_t z = 0; z < gamma.fibers.size(); ++z) {
    const PointSet fz = gamma.fiber_points(z);
    for (std::size_t c = 0; c < hulls.size(); ++c)
      if (rel_interiors_intersect(fz, hulls[c], tol) && !rel_interior_subset(fz, hulls[c], tol))
        fail(r.implication, "hull of the fiber at " + detail::fmt_point(gamma.fibers[z].x) + " meets class " +
                                std::to_string(c) + " without lying inside it");
  }
  return r;
}

const char* to_string(PavingOrder o) {
  switch (o) {
    case PavingOrder::kEqual: return "equal";
    case PavingOrder::kFiner: return "finer";
    case PavingOrder::kCoarser: return "coarser";
    case PavingOrder::kIncomparable: return "incomparable";
  }
  return "?";
}

PavingOrder compare_pavings(const Paving& a, const Paving& b) {
  if (a.class_of.size() != b.class_of.size()) throw argument_error("compare_pavings: different supports");
  // a refines b when equal a-classes imply equal b-classes
  auto refines = [](const Paving& p, const Paving& q) {
    for (const auto& c : p.classes)
      for (std::size_t f : c.members)
        if (q.class_of[f] != q.class_of[c.members.front()]) return false;
    return true;
  };
  const bool ab = refines(a, b), ba = refines(b, a);
  if (ab && ba) return PavingOrder::kEqual;
  if (ab) return PavingOrder::kFiner;
  if (ba) return PavingOrder::kCoarser;
  return PavingOrder::kIncomparable;
}

namespace {

// All set partitions of {0, ..., n-1} into at least two blocks (restricted growth strings).
std::vector<std::vector<std::size_t>> proper_splits(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> a(n, 0);
  for (;;) {
    if (*std::max_element(a.begin(), a.end()) > 0) out.push_back(a);
    std::size_t i = n;
    for (;;) {
      if (i <= 1) return out;
      --i;
      const std::size_t mx = *std::max_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
      if (a[i] <= mx) {
        ++a[i];
        std::fill(a.begin() + static_cast<std::ptrdiff_t>(i) + 1, a.end(), 0);
        break;
      }
    }
  }
}

}  // namespace

IrreducibilityReport check_irreducible(const SupportSet& gamma, const Paving& paving, std::size_t max_members,
                                       const Tolerances& tol) {
  IrreducibilityReport r;
  for (const auto& cl : paving.classes) {
    const std::size_t k = cl.members.size();
    if (k == 1) continue;
    if (k > max_members) {
      ++r.classes_skipped;
      continue;
    }
    ++r.classes_checked;
    for (const auto& split : proper_splits(k)) {
      std::vector<std::vector<std::size_t>> groups;
      for (const auto& other : paving.classes)
        if (other.id != cl.id) groups.push_back(other.members);
      const std::size_t blocks = *std::max_element(split.begin(), split.end()) + 1;
      std::vector<std::vector<std::size_t>> parts(blocks);
      for (std::size_t m = 0; m < k; ++m) parts[split[m]].push_back(cl.members[m]);
      groups.insert(groups.end(), parts.begin(), parts.end());
      if (verify_paving(gamma, paving_from_partition(gamma, groups, tol), tol).ok()) {
        r.irreducible = false;
        r.reducible_classes.push_back(cl.id);
        break;
      }
    }
  }
  return r;
}

SupportSet class_support(const SupportSet& gamma, const Paving& paving, std::size_t c) {
  SupportSet s(gamma.dim);
  for (std::size_t f : paving.classes.at(c).members) s.fibers.push_back(gamma.fibers[f]);
  return s;
}

ComponentDuals component_duals(const SupportSet& gamma, const Paving& paving, const CostSpec& cost,
                               const Tolerances& tol, std::size_t threads) {
  ComponentDuals out;
  out.classes.resize(paving.classes.size());
  parallel_for(paving.classes.size(), threads, [&](std::size_t c) {
    out.classes[c] = contact_layer_feasibility(class_support(gamma, paving, c), cost, tol);
  });
  for (std::size_t c = 0; c < out.classes.size(); ++c)
    if (!out.classes[c].feasible) out.infeasible.push_back(c);
  return out;
}

std::vector<Component> disintegrate(const Coupling& pi, const SupportSet& gamma, const Paving& paving,
                                    const Tolerances& tol) {
  const DiscreteMeasure& mu = pi.mu();
  const DiscreteMeasure& nu = pi.nu();
  std::vector<std::size_t> cls(mu.size(), static_cast<std::size_t>(-1));
  for (const auto& e : pi.entries()) {
    if (cls[e.i] != static_cast<std::size_t>(-1)) continue;
    const auto c = paving.class_of_point(gamma, mu.atom(e.i), tol.geom);
    if (!c) throw precondition_error("disintegrate: atom " + detail::fmt_point(mu.atom(e.i)) + " is in no class");
    cls[e.i] = *c;
  }
  std::vector<std::vector<CouplingEntry>> groups(paving.classes.size());
  for (const auto& e : pi.entries()) groups[cls[e.i]].push_back(e);

  std::vector<Component> out;
  for (std::size_t c = 0; c < groups.size(); ++c) {
    if (groups[c].empty()) continue;
    Component comp;
    comp.class_id = c;
    comp.restriction = groups[c];
    std::map<std::size_t, double> rows, cols;
    for (const auto& e : groups[c]) {
      comp.weight += e.mass;
      rows[e.i] += e.mass;
      cols[e.j] += e.mass;
    }
    std::vector<Point> xa, ya;
    std::vector<double> xw, yw;
    std::map<std::size_t, std::size_t> xi, yi;
    for (auto [i, m] : rows) {
      xi[i] = xa.size();
      xa.push_back(mu.atom(i));
      xw.push_back(m / comp.weight);
    }
    for (auto [j, m] : cols) {
      yi[j] = ya.size();
      ya.push_back(nu.atom(j));
      yw.push_back(m / comp.weight);
    }
    comp.mu = DiscreteMeasure::normalized(mu.dim(), xa, xw, 0.0);
    comp.nu = DiscreteMeasure::normalized(nu.dim(), ya, yw, 0.0);
    std::vector<CouplingEntry> local;
    for (const auto& e : groups[c]) {
      const auto i = comp.mu.find(mu.atom(e.i));
      const auto j = comp.nu.find(nu.atom(e.j));
      if (!i || !j) throw verification_error("disintegrate: lost an atom while normalizing");
      local.push_back({*i, *j, e.mass / comp.weight});
    }
    comp.coupling = Coupling(comp.mu, comp.nu, std::move(local));
    out.push_back(std::move(comp));
  }
  double total = 0.0;
  for (const auto& comp : out) total += comp.weight;
  if (std::abs(total - 1.0) > 1e-12) throw verification_error("disintegrate: component weights do not sum to one");
  return out;
}

Coupling reaggregate(const Coupling& pi, const std::vector<Component>& parts) {
  std::vector<CouplingEntry> all;
  for (const auto& p : parts) all.insert(all.end(), p.restriction.begin(), p.restriction.end());
  return Coupling(pi.mu(), pi.nu(), std::move(all));
}

ComponentOptimality check_component_optimality(const std::vector<Component>& parts, const CostSpec& cost,
                                               const Tolerances& tol, std::size_t threads) {
  ComponentOptimality r;
  r.values.resize(parts.size());
  r.optima.resize(parts.size());
  std::vector<double> resid(parts.size());
  parallel_for(parts.size(), threads, [&](std::size_t k) {
    r.values[k] = parts[k].coupling.cost(cost);
    resid[k] = parts[k].coupling.residuals().max();
    MotOptions opts;
    opts.tol = tol;
    r.optima[k] = solve_mot(parts[k].mu, parts[k].nu, cost, opts).value;
  });
  for (std::size_t k = 0; k < parts.size(); ++k) {
    r.max_gap = std::max(r.max_gap, std::abs(r.values[k] - r.optima[k]) / (1.0 + std::abs(r.optima[k])));
    r.max_residual = std::max(r.max_residual, resid[k]);
  }
  r.ok = r.max_gap <= tol.gap && r.max_residual <= tol.feas;
  return r;
}

std::string paving_csv(const SupportSet& gamma, const Paving& paving) {
  std::ostringstream os;
  os.precision(17);
  os << "class,role,fiber";
  for (std::size_t k = 0; k < gamma.dim; ++k) os << ",c" << k;
  os << "\n";
  auto row = [&](std::size_t c, const char* role, std::size_t f, const Point& p) {
    os << c << "," << role << "," << f;
    for (double v : p) os << "," << v;
    os << "\n";
  };
  for (const auto& cl : paving.classes)
    for (std::size_t f : cl.members) {
      row(cl.id, "x", f, gamma.fibers[f].x);
      for (const auto& y : gamma.fibers[f].ys) row(cl.id, "y", f, y);
    }
  return os.str();
}

namespace {

// Vertices of a planar point set in counterclockwise order (monotone chain).
std::vector<Point> planar_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

std::string paving_svg(const SupportSet& gamma, const Paving& paving, double size) {
  if (gamma.dim != 2) throw unsupported_error("paving_svg: only 2D pavings can be drawn");
  double lo[2] = {1e300, 1e300}, hi[2] = {-1e300, -1e300};
  for (const auto& f : gamma.fibers) {
    for (int k = 0; k < 2; ++k) {
      lo[k] = std::min(lo[k], f.x[k]);
      hi[k] = std::max(hi[k], f.x[k]);
    }
    for (const auto& y : f.ys)
      for (int k = 0; k < 2; ++k) {
        lo[k] = std::min(lo[k], y[k]);
        hi[k] = std::max(hi[k], y[k]);
      }
  }
  const double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1e-12});
  const double pad = 0.05 * size, s = (size - 2 * pad) / span;
  auto px = [&](const Point& p) {
    std::ostringstream o;
    o.precision(6);
    o << pad + (p[0] - lo[0]) * s << "," << size - pad - (p[1] - lo[1]) * s;
    return o.str();
  };
  static const char* palette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
  for (const auto& cl : paving.classes) {
    const char* col = palette[cl.id % 8];
    const auto h = planar_hull(cl.generators);
    os << "  <polygon points=\"";
    for (std::size_t v = 0; v < h.size(); ++v) os << (v ? " " : "") << px(h[v]);
    os << "\" fill=\"" << col << "\" fill-opacity=\"0.25\" stroke=\"" << col << "\"/>\n";
    for (std::size_t f : cl.members) {
      const auto& fib = gamma.fibers[f];
      for (const auto& y : fib.ys) {
        const auto a = px(fib.x), b = px(y);
        os << "  <line x1=\"" << a.substr(0, a.find(',')) << "\" y1=\"" << a.substr(a.find(',') + 1) << "\" x2=\""
           << b.substr(0, b.find(',')) << "\" y2=\"" << b.substr(b.find(',') + 1) << "\" stroke=\"" << col
           << "\" stroke-width=\"0.6\"/>\n";
      }
      const auto a = px(fib.x);
      os << "  <circle cx=\"" << a.substr(0, a.find(',')) << "\" cy=\"" << a.substr(a.find(',') + 1)
         << "\" r=\"2.5\" fill=\"" << col << "\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace motkit
