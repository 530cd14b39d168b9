#include "motkit/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace motkit::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw argument_error(std::string("expected an object holding \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) throw argument_error(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw argument_error(std::string(what) + ": expected a number");
  return j.get<double>();
}

std::size_t index(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw argument_error(std::string(what) + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::size_t dim_of(const Json& j) {
  const std::size_t d = index(field(j, "dim"), "dim");
  if (d == 0) throw argument_error("dim must be positive");
  return d;
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw argument_error(std::string(what) + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

Json bools(const std::vector<bool>& v) {
  Json a = Json::array();
  for (bool b : v) a.push_back(b);
  return a;
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Point& p) {
  Json a = Json::array();
  for (double v : p) a.push_back(v);
  return a;
}

Json to_json(const std::vector<Point>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(to_json(p));
  return a;
}

Point point_from_json(const Json& j, std::size_t dim) {
  // a bare number is accepted as a 1D point
  if (dim == 1 && j.is_number()) return {j.get<double>()};
  auto p = numbers(j, "point");
  if (p.size() != dim)
    throw argument_error("point of length " + std::to_string(p.size()) + " in dimension " + std::to_string(dim));
  for (double v : p)
    if (!std::isfinite(v)) throw argument_error("non-finite coordinate");
  return p;
}

std::vector<Point> points_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw argument_error("expected an array of points");
  std::vector<Point> out;
  out.reserve(j.size());
  for (const auto& p : j) out.push_back(point_from_json(p, dim));
  return out;
}

Json to_json(const DiscreteMeasure& m) {
  Json j;
  j["dim"] = m.dim();
  j["atoms"] = to_json(m.atoms());
  j["weights"] = m.weights();
  return j;
}

DiscreteMeasure measure_from_json(const Json& j, std::string* warning, double tol_geom) {
  const std::size_t d = dim_of(j);
  auto atoms = points_from_json(field(j, "atoms"), d);
  auto w = numbers(field(j, "weights"), "weights");
  if (w.size() != atoms.size()) throw argument_error("atoms and weights differ in length");
  return DiscreteMeasure::normalized(d, std::move(atoms), std::move(w), tol_geom, warning);
}

Json to_json(const CostSpec& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["p"] = c.p;
  j["sense"] = to_string(c.sense);
  if (c.scale != 1.0) j["scale"] = c.scale;
  return j;
}

CostSpec cost_from_json(const Json& j) {
  CostSpec c;
  if (!j.is_object()) throw argument_error("cost: expected an object");
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) throw argument_error("cost.kind: expected a string");
    c.kind = parse_cost_kind(j["kind"].get<std::string>());
  }
  if (c.kind == CostKind::kZero) c = CostSpec::zero();
  if (j.contains("p")) c.p = number(j["p"], "cost.p");
  if (j.contains("scale")) c.scale = number(j["scale"], "cost.scale");
  if (j.contains("sense")) {
    if (!j["sense"].is_string()) throw argument_error("cost.sense: expected a string");
    c.sense = parse_sense(j["sense"].get<std::string>());
  }
  c.validate();
  return c;
}

Json to_json(const Instance& in) {
  Json j;
  j["mu"] = to_json(in.mu);
  j["nu"] = to_json(in.nu);
  j["cost"] = to_json(in.cost);
  return j;
}

Instance instance_from_json(const Json& j, std::string* warning, double tol_geom) {
  std::string w1, w2;
  Instance in{measure_from_json(field(j, "mu"), &w1, tol_geom), measure_from_json(field(j, "nu"), &w2, tol_geom),
              j.contains("cost") ? cost_from_json(j["cost"]) : CostSpec{}};
  if (in.mu.dim() != in.nu.dim()) throw argument_error("mu and nu differ in dimension");
  if (warning) {
    warning->clear();
    if (!w1.empty()) *warning += "mu: " + w1;
    if (!w2.empty()) *warning += (warning->empty() ? "" : "; ") + std::string("nu: ") + w2;
  }
  return in;
}

Json to_json(const Coupling& pi, const std::optional<CostSpec>& cost, std::optional<double> value) {
  Json j;
  j["mu"] = to_json(pi.mu());
  j["nu"] = to_json(pi.nu());
  Json e = Json::array();
  for (const auto& x : pi.entries()) e.push_back(Json{{"i", x.i}, {"j", x.j}, {"mass", x.mass}});
  j["entries"] = std::move(e);
  if (cost) j["cost"] = to_json(*cost);
  if (value) j["value"] = *value;
  return j;
}

Coupling coupling_from_json(const Json& j, std::optional<CostSpec>* cost, double tol_geom) {
  auto mu = measure_from_json(field(j, "mu"), nullptr, tol_geom);
  auto nu = measure_from_json(field(j, "nu"), nullptr, tol_geom);
  if (mu.dim() != nu.dim()) throw argument_error("mu and nu differ in dimension");
  // entries index the stored atoms, so nothing may be merged or dropped on load
  if (mu.size() != field(field(j, "mu"), "atoms").size() || nu.size() != field(field(j, "nu"), "atoms").size())
    throw argument_error("coupling marginals must have distinct atoms with positive weights");
  const auto& e = field(j, "entries");
  if (!e.is_array()) throw argument_error("entries: expected an array");
  std::vector<CouplingEntry> entries;
  for (const auto& x : e) {
    CouplingEntry c{index(field(x, "i"), "entry.i"), index(field(x, "j"), "entry.j"), number(field(x, "mass"), "entry.mass")};
    if (c.i >= mu.size() || c.j >= nu.size()) throw argument_error("coupling entry index out of range");
    entries.push_back(c);
  }
  if (cost) *cost = j.contains("cost") ? std::optional<CostSpec>(cost_from_json(j["cost"])) : std::nullopt;
  return Coupling(std::move(mu), std::move(nu), std::move(entries));
}

Json to_json(const AdmissibleTriple& t) {
  Json j;
  j["sense"] = to_string(t.sense);
  j["dim"] = t.xs.empty() ? (t.ys.empty() ? 0 : t.ys[0].size()) : t.xs[0].size();
  j["xs"] = to_json(t.xs);
  j["alpha"] = t.alpha;
  j["gamma"] = to_json(t.gamma);
  j["ys"] = to_json(t.ys);
  j["beta"] = t.beta;
  j["degenerate"] = t.degenerate;
  return j;
}

AdmissibleTriple triple_from_json(const Json& j) {
  AdmissibleTriple t;
  const std::size_t d = dim_of(j);
  if (j.contains("sense")) t.sense = parse_sense(field(j, "sense").get<std::string>());
  t.xs = points_from_json(field(j, "xs"), d);
  t.alpha = numbers(field(j, "alpha"), "alpha");
  t.gamma = points_from_json(field(j, "gamma"), d);
  t.ys = points_from_json(field(j, "ys"), d);
  t.beta = numbers(field(j, "beta"), "beta");
  if (t.alpha.size() != t.xs.size() || t.gamma.size() != t.xs.size() || t.beta.size() != t.ys.size())
    throw argument_error("triple arrays differ in length");
  if (j.contains("degenerate")) t.degenerate = j["degenerate"].get<bool>();
  return t;
}

Json to_json(const SupportSet& s) {
  Json j;
  j["dim"] = s.dim;
  Json f = Json::array();
  for (const auto& fib : s.fibers) {
    Json o;
    o["x"] = to_json(fib.x);
    o["ys"] = to_json(fib.ys);
    f.push_back(std::move(o));
  }
  j["fibers"] = std::move(f);
  return j;
}

SupportSet support_from_json(const Json& j) {
  if (j.is_object() && j.contains("entries")) return SupportSet::of(coupling_from_json(j));
  const std::size_t d = dim_of(j);
  SupportSet s(d);
  const auto& f = field(j, "fibers");
  if (!f.is_array()) throw argument_error("fibers: expected an array");
  for (const auto& fib : f) {
    const auto x = point_from_json(field(fib, "x"), d);
    const auto ys = points_from_json(field(fib, "ys"), d);
    if (ys.empty()) throw argument_error("empty fiber");
    for (const auto& y : ys) s.add(x, y);
  }
  s.validate();
  return s;
}

Json to_json(const ConvexWitness& w) {
  Json j;
  j["anchors"] = to_json(w.anchors);
  j["offsets"] = w.offsets;
  j["slopes"] = to_json(w.slopes);
  j["mu_integral"] = w.mu_integral;
  j["nu_integral"] = w.nu_integral;
  j["gap"] = w.gap();
  return j;
}

Json to_json(const CouplingResiduals& r) {
  Json j;
  j["row"] = r.row;
  j["column"] = r.column;
  j["barycenter"] = r.barycenter;
  return j;
}

Json to_json(const ContactReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["max_violation"] = r.max_violation;
  j["max_equality"] = r.max_equality;
  j["pairs_checked"] = r.pairs_checked;
  j["worst"] = r.worst;
  return j;
}

Json to_json(const PavingReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["covered"] = r.covered;
  j["disjoint"] = r.disjoint;
  j["members_inside"] = r.members_inside;
  j["fibers_inside"] = r.fibers_inside;
  j["implication"] = r.implication;
  j["violations"] = r.violations;
  return j;
}

Json to_json(const SupportSet& gamma, const Paving& p) {
  Json j;
  j["dim"] = p.dim;
  j["iterations"] = p.iterations;
  Json cs = Json::array();
  for (const auto& c : p.classes) {
    Json o;
    o["id"] = c.id;
    o["dim"] = c.dim;
    o["members"] = c.members;
    std::vector<Point> xs;
    for (std::size_t f : c.members) xs.push_back(gamma.fibers[f].x);
    o["xs"] = to_json(xs);
    o["generators"] = to_json(c.generators);
    cs.push_back(std::move(o));
  }
  j["classes"] = std::move(cs);
  return j;
}

Json to_json(const ComponentDuals& d) {
  Json j;
  j["all_feasible"] = d.all_feasible();
  Json cs = Json::array();
  for (std::size_t c = 0; c < d.classes.size(); ++c) {
    Json o;
    o["class"] = c;
    o["feasible"] = d.classes[c].feasible;
    if (d.classes[c].triple) o["triple"] = to_json(*d.classes[c].triple);
    else o["certificate_cost"] = d.classes[c].certificate_cost;
    cs.push_back(std::move(o));
  }
  j["classes"] = std::move(cs);
  return j;
}

Json to_json(const FiberReport& r) {
  Json j;
  j["check"] = r.check;
  j["dim"] = r.dim;
  j["total_mass"] = r.total_mass;
  j["pass_fraction"] = r.pass_fraction;
  j["extremal_fraction"] = r.extremal_fraction;
  j["low_dim_fraction"] = r.low_dim_fraction;
  j["full_dim_fibers"] = r.full_dim_fibers;
  j["full_dim_extremal"] = r.full_dim_extremal;
  Json fs = Json::array();
  for (const auto& f : r.fibers) {
    Json o;
    o["atom"] = f.atom;
    o["x"] = to_json(f.x);
    o["mass"] = f.mass;
    o["size"] = f.size;
    o["dim"] = f.dim;
    o["extremal"] = f.extremal;
    o["interior"] = f.interior;
    o["barycenter_residual"] = f.barycenter_residual;
    o["pass"] = f.pass;
    fs.push_back(std::move(o));
  }
  j["fibers"] = std::move(fs);
  return j;
}

Json to_json(const LegendreDual& d) {
  Json j;
  j["sense"] = to_string(d.sense);
  j["dim"] = d.dim;
  j["xs"] = to_json(d.xs);
  j["alpha"] = d.alpha;
  j["gamma"] = to_json(d.gamma);
  j["degenerate"] = bools(d.degenerate);
  return j;
}

Json to_json(const SandwichReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["delta1"] = r.delta1;
  j["delta2"] = r.delta2;
  j["beta_margin"] = r.beta_margin;
  j["lower_margin"] = r.lower_margin;
  j["upper_margin"] = r.upper_margin;
  j["max_gap"] = r.max_gap;
  return j;
}

Json to_json(const IdempotenceReport& r) {
  Json j;
  j["max_deviation"] = r.max_deviation;
  j["points"] = r.points;
  return j;
}

Json to_json(const GammaGrowth& g) {
  Json j;
  j["n"] = g.n;
  j["gamma"] = g.gamma;
  j["increments"] = g.increments;
  j["min_increment"] = g.min_increment;
  j["span"] = g.span;
  return j;
}

Json to_json(const LaplacianBound& b) {
  Json j;
  j["pass"] = b.pass;
  j["lhs"] = b.lhs;
  j["rhs"] = b.rhs;
  j["c0"] = b.c0;
  j["max_phi"] = b.max_phi;
  return j;
}

Json to_json(const SegmentFamily& f) {
  Json j;
  j["s0"] = f.s0;
  j["kappa"] = f.kappa;
  j["h_lo"] = f.h_lo;
  j["h_hi"] = f.h_hi;
  j["big_r"] = f.big_r;
  j["r"] = f.r;
  j["eta"] = f.eta;
  return j;
}

SegmentFamily family_from_json(const Json& j) {
  SegmentFamily f;
  if (!j.is_object()) throw argument_error("family: expected an object");
  auto get = [&](const char* k, double& v) {
    if (j.contains(k)) v = number(j[k], k);
  };
  get("s0", f.s0);
  get("kappa", f.kappa);
  get("h_lo", f.h_lo);
  get("h_hi", f.h_hi);
  get("big_r", f.big_r);
  get("r", f.r);
  get("eta", f.eta);
  return f;
}

Json to_json(const FlatteningResult& f) {
  Json j;
  j["ratio_min"] = f.ratio_min;
  j["ratio_max"] = f.ratio_max;
  j["bound_lo"] = f.bound_lo;
  j["bound_hi"] = f.bound_hi;
  j["pairs"] = f.pairs;
  j["mapped"] = to_json(f.mapped);
  return j;
}

SampledFunction sampled_from_json(const Json& j) {
  const std::size_t d = dim_of(j);
  auto ys = points_from_json(field(j, "ys"), d);
  const auto& b = field(j, "beta");
  std::vector<double> values;
  if (b.is_array()) {
    values = numbers(b, "beta");
  } else if (b.is_object()) {
    values.assign(ys.size(), std::nan(""));
    for (const auto& [k, v] : b.items()) {
      std::size_t pos = 0;
      unsigned long idx = 0;
      try {
        idx = std::stoul(k, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != k.size() || idx >= ys.size()) throw argument_error("beta: bad Y index \"" + k + "\"");
      values[idx] = number(v, "beta");
    }
    for (std::size_t i = 0; i < values.size(); ++i)
      if (std::isnan(values[i])) throw argument_error("beta: no value for Y index " + std::to_string(i));
  } else {
    throw argument_error("beta: expected an array or an object keyed by Y index");
  }
  if (values.size() != ys.size()) throw argument_error("beta and ys differ in length");
  return SampledFunction(d, std::move(ys), std::move(values));
}

}  // namespace motkit::io
