#include "motkit/motkit.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "motkit/fixtures.hpp"
#include "motkit/io.hpp"

using namespace motkit;
using io::Json;

struct motkit_measure {
  DiscreteMeasure m;
  std::string warning;
};

struct motkit_instance {
  Instance in;
  std::string warning;
};

struct motkit_solution {
  Instance in;
  MotResult res;
  AdmissibleTriple dual;
  Json report;
  bool verified = false;
};

struct motkit_support {
  SupportSet s;
};

struct motkit_paving {
  SupportSet s;
  Paving p;
  PavingReport report;
  Json doc;
};

struct motkit_bundle {
  std::vector<std::pair<std::string, std::string>> files;
};

namespace {

constexpr double kGrowthTol = 1e-6;  // slack on the increment bound of 2
constexpr double kFlattenSlack = 0.05;
constexpr double kIdempotenceTol = 1e-6;

thread_local std::string g_error;

motkit_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::kArgument:
    case ErrorKind::kParse:
      return MOTKIT_E_INPUT;
    case ErrorKind::kOrder:
    case ErrorKind::kPrecondition:
    case ErrorKind::kDomain:
    case ErrorKind::kUnsupported:
      return MOTKIT_E_PRECONDITION;
    case ErrorKind::kVerification:
      return MOTKIT_E_VERIFICATION;
  }
  return MOTKIT_E_INTERNAL;
}

template <class F>
motkit_status guard(F&& f) {
  try {
    g_error.clear();
    return f();
  } catch (const OrderViolation& e) {
    g_error = std::string(e.what()) + "; witness " + io::to_json(e.witness()).dump();
    return MOTKIT_E_PRECONDITION;
  } catch (const Error& e) {
    g_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    g_error = std::string("invalid input: ") + e.what();
    return MOTKIT_E_INPUT;
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return MOTKIT_E_INTERNAL;
  } catch (const std::exception& e) {
    g_error = e.what();
    return MOTKIT_E_INTERNAL;
  }
}

motkit_status null_argument(const char* what) {
  g_error = std::string("null argument: ") + what;
  return MOTKIT_E_INPUT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

motkit_status emit(const Json& j, char** out) {
  if (!out) return null_argument("out");
  *out = copy_string(io::dump(j));
  return MOTKIT_OK;
}

motkit_options defaults() {
  motkit_options o;
  motkit_options_init(&o);
  return o;
}

Tolerances tolerances(const motkit_options& o) {
  Tolerances t;
  const double eps = 2.220446049250313e-16;
  if (!(o.tol_feas >= eps) || !(o.tol_geom >= eps))
    throw argument_error("tolerance overrides must be at least machine epsilon");
  t.feas = o.tol_feas;
  t.geom = o.tol_geom;
  return t;
}

std::size_t threads(const motkit_options& o) { return o.threads == 0 ? 1 : o.threads; }

CostSpec apply_overrides(CostSpec c, const motkit_options& o) {
  switch (o.cost_kind) {
    case MOTKIT_KEEP:
      break;
    case MOTKIT_COST_EUCLIDEAN:
      c = CostSpec::euclidean(c.sense);
      break;
    case MOTKIT_COST_POWER:
      c = CostSpec::power(o.p, c.sense);
      break;
    case MOTKIT_COST_ZERO:
      c = CostSpec::zero();
      break;
    default:
      throw argument_error("unknown cost kind " + std::to_string(o.cost_kind));
  }
  switch (o.sense) {
    case MOTKIT_KEEP:
      break;
    case MOTKIT_SENSE_MIN:
      c.sense = Sense::kMinimize;
      break;
    case MOTKIT_SENSE_MAX:
      c.sense = Sense::kMaximize;
      break;
    default:
      throw argument_error("unknown sense " + std::to_string(o.sense));
  }
  c.validate();
  return c;
}

std::vector<Point> grid_1d(double lo, double hi, std::size_t n) {
  std::vector<Point> g;
  for (std::size_t i = 0; i < n; ++i)
    g.push_back({lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1)});
  return g;
}

// ---------------------------------------------------------------- properties

struct PropertyResult {
  bool passed = false;
  Json report;
};

PropertyResult fiber_property(const std::string& name, const Json& in, const motkit_options& o) {
  std::optional<CostSpec> cost;
  const auto pi = io::coupling_from_json(in, &cost, tolerances(o).geom);
  const auto tol = tolerances(o);
  FiberReport r;
  double measured = 0.0;
  if (name == "extremal") {
    r = check_extremal_support(pi, tol, threads(o));
    measured = r.extremal_fraction;
  } else if (name == "one-d") {
    const auto sense = apply_overrides(cost.value_or(CostSpec{}), o).sense;
    r = check_1d_structure(pi, sense, tol);
    measured = r.pass_fraction;
  } else {
    r = check_polytope_support(pi, tol, threads(o));
    measured = r.pass_fraction;
  }
  PropertyResult out;
  out.passed = measured >= o.threshold;
  out.report["property"] = name;
  out.report["threshold"] = o.threshold;
  out.report["measured"] = measured;
  out.report["fibers"] = io::to_json(r);
  return out;
}

PropertyResult gamma_growth_property(const Json& in, const motkit_options& o) {
  const auto tol = tolerances(o);
  GammaGrowth g;
  if (in.is_object() && in.contains("n") && !in.contains("mu")) {
    if (!in["n"].is_number_integer()) throw argument_error("n: expected an integer");
    g = gamma_growth_check(in["n"].get<std::size_t>(), tol);
  } else {
    std::optional<CostSpec> cost;
    Instance inst;
    if (in.contains("entries")) {
      const auto pi = io::coupling_from_json(in, &cost, tol.geom);
      inst = {pi.mu(), pi.nu(), cost.value_or(CostSpec::euclidean(Sense::kMaximize))};
    } else {
      inst = io::instance_from_json(in, nullptr, tol.geom);
    }
    inst.cost = apply_overrides(inst.cost, o);
    g = gamma_growth_of(inst.mu, inst.nu, inst.cost, tol);
  }
  PropertyResult out;
  out.passed = g.min_increment >= 2.0 - kGrowthTol;
  out.report["property"] = "gamma-growth";
  out.report["bound"] = 2.0 - kGrowthTol;
  out.report["growth"] = io::to_json(g);
  return out;
}

struct LegendreInput {
  SampledFunction beta;
  std::vector<Point> xs, grid;
  CostSpec cost;
};

LegendreInput legendre_input(const Json& in, const motkit_options& o) {
  LegendreInput l;
  l.beta = io::sampled_from_json(in);
  if (!in.contains("xs")) throw argument_error("missing field \"xs\"");
  l.xs = io::points_from_json(in["xs"], l.beta.dim);
  if (in.contains("grid")) l.grid = io::points_from_json(in["grid"], l.beta.dim);
  l.cost = apply_overrides(in.contains("cost") ? io::cost_from_json(in["cost"]) : CostSpec{}, o);
  return l;
}

PropertyResult sandwich_property(const Json& in, const motkit_options& o) {
  const auto l = legendre_input(in, o);
  const auto tol = tolerances(o);
  const auto r = check_sandwich(l.beta, l.xs, l.cost, tol, threads(o));
  const auto dual = legendre_dual(l.beta, l.xs, l.cost, tol, threads(o));
  PropertyResult out;
  out.passed = r.ok;
  out.report["property"] = "sandwich";
  out.report["sandwich"] = io::to_json(r);
  out.report["dual"] = io::to_json(dual);
  out.report["beta_cc"] = double_transform(dual, l.xs, l.cost);
  return out;
}

PropertyResult idempotent_property(const Json& in, const motkit_options& o) {
  const auto l = legendre_input(in, o);
  const auto r = check_idempotent(l.beta, l.xs, l.grid, l.cost, tolerances(o), threads(o));
  PropertyResult out;
  out.passed = r.max_deviation <= kIdempotenceTol;
  out.report["property"] = "idempotent";
  out.report["bound"] = kIdempotenceTol;
  out.report["idempotence"] = io::to_json(r);
  return out;
}

PropertyResult laplacian_property(const Json& in, const motkit_options&) {
  if (!in.is_object() || !in.contains("d") || !in.contains("a") || !in.contains("r"))
    throw argument_error("laplacian input needs \"d\", \"a\" and \"r\"");
  if (!in["d"].is_number_integer()) throw argument_error("d: expected an integer");
  const auto a = in["a"].get<std::vector<double>>();
  const auto b = convex_laplacian_bound_check(a, in["d"].get<std::size_t>(), in["r"].get<double>());
  PropertyResult out;
  out.passed = b.pass;
  out.report["property"] = "laplacian";
  out.report["bound"] = io::to_json(b);
  return out;
}

PropertyResult flatten_property(const Json& in, const motkit_options&) {
  if (!in.is_object()) throw argument_error("flatten input: expected an object");
  const auto fam = in.contains("family") ? io::family_from_json(in["family"]) : fixtures::tilted_family();
  const std::uint64_t seed = in.value("seed", std::uint64_t{0});
  std::vector<Point> q;
  if (in.contains("queries")) q = io::points_from_json(in["queries"], 2);
  else q = fixtures::family_queries(fam, in.value("n", std::size_t{400}), seed);
  const auto f = flattening_map(fam, q, in.value("max_pairs", std::size_t{1000}), seed);
  PropertyResult out;
  out.passed = f.ratio_min >= (1.0 - kFlattenSlack) * f.bound_lo && f.ratio_max <= (1.0 + kFlattenSlack) * f.bound_hi;
  out.report["property"] = "flatten";
  out.report["family"] = io::to_json(fam);
  out.report["slack"] = kFlattenSlack;
  out.report["result"] = io::to_json(f);
  return out;
}

// ---------------------------------------------------------------- generators

double param(const Json& p, const char* key, double fallback) {
  if (!p.contains(key)) return fallback;
  if (!p[key].is_number()) throw argument_error(std::string("param ") + key + ": expected a number");
  return p[key].get<double>();
}

std::size_t count_param(const Json& p, const char* key, std::size_t fallback) {
  if (!p.contains(key)) return fallback;
  if (!p[key].is_number_integer() || p[key].get<long long>() < 0)
    throw argument_error(std::string("param ") + key + ": expected a nonnegative integer");
  return p[key].get<std::size_t>();
}

Sense sense_param(const Json& p, Sense fallback) {
  if (!p.contains("sense")) return fallback;
  if (!p["sense"].is_string()) throw argument_error("param sense: expected a string");
  return parse_sense(p["sense"].get<std::string>());
}

using Files = std::vector<std::pair<std::string, Json>>;

Files generate(const std::string& name, std::uint64_t seed, const Json& p) {
  if (name == "forced1d") return {{"forced1d.json", io::to_json(fixtures::forced1d(sense_param(p, Sense::kMinimize)))}};
  if (name == "three-point")
    return {{"three-point.json", io::to_json(fixtures::three_point(sense_param(p, Sense::kMinimize)))}};
  if (name == "shell2d") return {{"shell2d.json", io::to_json(fixtures::shell2d())}};
  if (name == "radial4") {
    const auto r = fixtures::radial4();
    return {{"radial4.json", io::to_json(r.instance)},
            {"radial4-plan-a.json", io::to_json(r.plan_a, r.instance.cost, r.plan_a.cost(r.instance.cost))},
            {"radial4-plan-b.json", io::to_json(r.plan_b, r.instance.cost, r.plan_b.cost(r.instance.cost))}};
  }
  if (name == "identity-grid") {
    const auto n = count_param(p, "n", 11);
    if (n < 2) throw argument_error("identity-grid: need n >= 2");
    return {{"identity-grid.json", io::to_json(fixtures::identity_grid(n))}};
  }
  if (name == "two-class")
    return {{"two-class.json", io::to_json(fixtures::two_class_instance())},
            {"two-class-support.json", io::to_json(fixtures::two_class_support())}};
  if (name == "overlap") return {{"overlap-support.json", io::to_json(fixtures::overlap_support())}};
  if (name == "two-round") return {{"two-round-support.json", io::to_json(fixtures::two_round_support())}};
  if (name == "nikodym-singletons") {
    const auto side = count_param(p, "side", 4);
    const double eps = param(p, "eps", 0.3);
    return {{"nikodym-singletons.json", io::to_json(fixtures::nikodym_instance(seed, side, eps))},
            {"nikodym-singletons-support.json", io::to_json(fixtures::nikodym_singletons(seed, side, eps))}};
  }
  if (name == "random-spread")
    return {{"random-spread.json",
             io::to_json(fixtures::random_spread(seed, count_param(p, "d", 2), count_param(p, "nx", 10),
                                                 count_param(p, "ny", 14), sense_param(p, Sense::kMinimize)))}};
  if (name == "grid-spread-1d")
    return {{"grid-spread-1d.json", io::to_json(fixtures::grid_spread_1d(seed, count_param(p, "n", 50),
                                                                          count_param(p, "ny", 3),
                                                                          sense_param(p, Sense::kMinimize)))}};
  if (name == "pentagon-2d")
    return {{"pentagon-2d.json", io::to_json(fixtures::pentagon_2d(seed, count_param(p, "side", 20),
                                                                    sense_param(p, Sense::kMinimize)))}};
  if (name == "extremal-fiber") {
    // the fiber {-1, 0, 1} at 0: 0 is not an extreme point
    const DiscreteMeasure nu(1, {{-1.0}, {0.0}, {1.0}}, {0.25, 0.5, 0.25});
    const Coupling pi(DiscreteMeasure::dirac({0.0}), nu, {{0, 0, 0.25}, {0, 1, 0.5}, {0, 2, 0.25}});
    return {{"extremal-fiber.json", io::to_json(pi, CostSpec::euclidean(), pi.cost(CostSpec::euclidean()))}};
  }
  if (name == "legendre") {
    // beta = 0 on {-1, 1}, c = |x - y|, X = Y' = 201-point grid of (-0.99, 0.99)
    const auto xs = grid_1d(-0.99, 0.99, count_param(p, "n", 201));
    Json j;
    j["dim"] = 1;
    j["ys"] = io::to_json(std::vector<Point>{{-1.0}, {1.0}});
    j["beta"] = std::vector<double>{0.0, 0.0};
    j["xs"] = io::to_json(xs);
    j["grid"] = io::to_json(xs);
    j["cost"] = io::to_json(CostSpec::euclidean());
    return {{"legendre.json", j}};
  }
  if (name == "tilted-family") {
    Json j;
    j["family"] = io::to_json(fixtures::tilted_family());
    j["n"] = count_param(p, "n", 400);
    j["seed"] = seed;
    j["max_pairs"] = count_param(p, "max_pairs", 1000);
    return {{"tilted-family.json", j}};
  }
  throw argument_error("unknown generator '" + name + "'");
}

}  // namespace

extern "C" {

void motkit_options_init(motkit_options* o) {
  if (!o) return;
  const Tolerances t;
  o->tol_feas = t.feas;
  o->tol_geom = t.geom;
  o->threads = 1;
  o->sense = MOTKIT_KEEP;
  o->cost_kind = MOTKIT_KEEP;
  o->p = 1.0;
  o->threshold = 0.95;
}

const char* motkit_version(void) { return "1.0.0"; }

const char* motkit_last_error(void) { return g_error.c_str(); }

void motkit_string_free(char* s) { std::free(s); }

motkit_status motkit_measure_parse(const char* json, const motkit_options* opts, motkit_measure** out) {
  if (!json) return null_argument("json");
  if (!out) return null_argument("out");
  return guard([&] {
    const auto o = opts ? *opts : defaults();
    auto m = std::make_unique<motkit_measure>();
    m->m = io::measure_from_json(io::parse(json), &m->warning, tolerances(o).geom);
    *out = m.release();
    return MOTKIT_OK;
  });
}

size_t motkit_measure_size(const motkit_measure* m) { return m ? m->m.size() : 0; }
size_t motkit_measure_dim(const motkit_measure* m) { return m ? m->m.dim() : 0; }
const char* motkit_measure_warning(const motkit_measure* m) { return m ? m->warning.c_str() : ""; }

motkit_status motkit_measure_to_json(const motkit_measure* m, char** out) {
  if (!m) return null_argument("measure");
  return guard([&] { return emit(io::to_json(m->m), out); });
}

void motkit_measure_free(motkit_measure* m) { delete m; }

motkit_status motkit_check_order(const motkit_measure* mu, const motkit_measure* nu, const motkit_options* opts,
                                 int* in_order, char** verdict_json) {
  if (!mu || !nu) return null_argument("measure");
  if (!in_order) return null_argument("in_order");
  return guard([&] {
    const auto o = opts ? *opts : defaults();
    const auto r = check_convex_order(mu->m, nu->m, tolerances(o));
    Json v;
    v["in_order"] = r.in_order;
    if (r.coupling) v["coupling"] = io::to_json(*r.coupling);
    if (r.witness) v["witness"] = io::to_json(*r.witness);
    *in_order = r.in_order ? 1 : 0;
    return verdict_json ? emit(v, verdict_json) : MOTKIT_OK;
  });
}

motkit_status motkit_instance_parse(const char* json, const motkit_options* opts, motkit_instance** out) {
  if (!json) return null_argument("json");
  if (!out) return null_argument("out");
  return guard([&] {
    const auto o = opts ? *opts : defaults();
    auto in = std::make_unique<motkit_instance>();
    in->in = io::instance_from_json(io::parse(json), &in->warning, tolerances(o).geom);
    in->in.cost = apply_overrides(in->in.cost, o);
    *out = in.release();
    return MOTKIT_OK;
  });
}

const char* motkit_instance_warning(const motkit_instance* in) { return in ? in->warning.c_str() : ""; }
void motkit_instance_free(motkit_instance* in) { delete in; }

motkit_status motkit_solve(const motkit_instance* in, const motkit_options* opts, motkit_solution** out) {
  if (!in) return null_argument("instance");
  if (!out) return null_argument("out");
  return guard([&] {
    const auto o = opts ? *opts : defaults();
    MotOptions mo;
    mo.tol = tolerances(o);
    auto s = std::make_unique<motkit_solution>();
    s->in = in->in;
    s->res = solve_mot(s->in.mu, s->in.nu, s->in.cost, mo);
    s->dual = recover_dual(s->in.mu, s->in.nu, s->in.cost, s->res.coupling, mo.tol);
    const auto contact = verify_contact_layer(SupportSet::of(s->res.coupling), s->dual, s->in.mu.support(),
                                              s->in.nu.support(), s->in.cost, mo.tol);
    const double dual_value = s->dual.dual_value(s->in.mu, s->in.nu, mo.tol.geom);
    s->verified = contact.ok;
    Json& r = s->report;
    r["value"] = s->res.value;
    r["dual_value"] = dual_value;
    r["duality_gap"] = std::abs(dual_value - s->res.value);
    r["cost"] = io::to_json(s->in.cost);
    r["atoms"] = s->res.coupling.size();
    r["split_applied"] = s->res.split_applied;
    r["common_mass"] = s->res.common_mass;
    r["residuals"] = io::to_json(s->res.coupling.residuals());
    r["contact"] = io::to_json(contact);
    r["dual_degenerate"] = s->dual.degenerate;
    *out = s.release();
    return MOTKIT_OK;
  });
}

double motkit_solution_value(const motkit_solution* s) { return s ? s->res.value : std::nan(""); }
int motkit_solution_verified(const motkit_solution* s) { return s && s->verified ? 1 : 0; }

motkit_status motkit_solution_coupling_json(const motkit_solution* s, char** out) {
  if (!s) return null_argument("solution");
  return guard([&] { return emit(io::to_json(s->res.coupling, s->in.cost, s->res.value), out); });
}

motkit_status motkit_solution_dual_json(const motkit_solution* s, char** out) {
  if (!s) return null_argument("solution");
  return guard([&] { return emit(io::to_json(s->dual), out); });
}

motkit_status motkit_solution_report_json(const motkit_solution* s, char** out) {
  if (!s) return null_argument("solution");
  return guard([&] { return emit(s->report, out); });
}

void motkit_solution_free(motkit_solution* s) { delete s; }

motkit_status motkit_support_parse(const char* json, const motkit_options* opts, motkit_support** out) {
  if (!json) return null_argument("json");
  if (!out) return null_argument("out");
  return guard([&] {
    (void)opts;
    auto s = std::make_unique<motkit_support>();
    s->s = io::support_from_json(io::parse(json));
    *out = s.release();
    return MOTKIT_OK;
  });
}

void motkit_support_free(motkit_support* s) { delete s; }

motkit_status motkit_paving_build(const motkit_support* s, const motkit_options* opts, int with_duals,
                                  motkit_paving** out) {
  if (!s) return null_argument("support");
  if (!out) return null_argument("out");
  return guard([&] {
    const auto o = opts ? *opts : defaults();
    const auto tol = tolerances(o);
    auto p = std::make_unique<motkit_paving>();
    p->s = s->s;
    p->p = build_paving(p->s, tol);
    p->report = verify_paving(p->s, p->p, tol);
    p->doc["paving"] = io::to_json(p->s, p->p);
    p->doc["report"] = io::to_json(p->report);
    const auto irr = check_irreducible(p->s, p->p, 4, tol);
    p->doc["irreducible"] = Json{{"irreducible", irr.irreducible},
                                 {"classes_checked", irr.classes_checked},
                                 {"classes_skipped", irr.classes_skipped},
                                 {"reducible_classes", irr.reducible_classes}};
    if (with_duals) {
      const auto cost = apply_overrides(CostSpec{}, o);
      p->doc["cost"] = io::to_json(cost);
      p->doc["duals"] = io::to_json(component_duals(p->s, p->p, cost, tol, threads(o)));
    }
    *out = p.release();
    return MOTKIT_OK;
  });
}

int motkit_paving_verified(const motkit_paving* p) { return p && p->report.ok() ? 1 : 0; }
size_t motkit_paving_class_count(const motkit_paving* p) { return p ? p->p.classes.size() : 0; }

motkit_status motkit_paving_json(const motkit_paving* p, char** out) {
  if (!p) return null_argument("paving");
  return guard([&] { return emit(p->doc, out); });
}

motkit_status motkit_paving_csv(const motkit_paving* p, char** out) {
  if (!p) return null_argument("paving");
  if (!out) return null_argument("out");
  return guard([&] {
    *out = copy_string(paving_csv(p->s, p->p));
    return MOTKIT_OK;
  });
}

motkit_status motkit_paving_svg(const motkit_paving* p, char** out) {
  if (!p) return null_argument("paving");
  if (!out) return null_argument("out");
  return guard([&] {
    *out = copy_string(paving_svg(p->s, p->p));
    return MOTKIT_OK;
  });
}

void motkit_paving_free(motkit_paving* p) { delete p; }

motkit_status motkit_verify_property(const char* property, const char* input_json, const motkit_options* opts,
                                     int* passed, char** report_json) {
  if (!property) return null_argument("property");
  if (!input_json) return null_argument("input_json");
  if (!passed) return null_argument("passed");
  return guard([&] {
    const auto o = opts ? *opts : defaults();
    if (!(o.threshold >= 0.0 && o.threshold <= 1.0)) throw argument_error("threshold must lie in [0, 1]");
    const std::string name = property;
    static const std::vector<std::pair<std::string, std::function<PropertyResult(const Json&, const motkit_options&)>>>
        table = {
            {"extremal", [](const Json& j, const motkit_options& x) { return fiber_property("extremal", j, x); }},
            {"one-d", [](const Json& j, const motkit_options& x) { return fiber_property("one-d", j, x); }},
            {"polytope", [](const Json& j, const motkit_options& x) { return fiber_property("polytope", j, x); }},
            {"gamma-growth", gamma_growth_property},
            {"sandwich", sandwich_property},
            {"idempotent", idempotent_property},
            {"laplacian", laplacian_property},
            {"flatten", flatten_property},
        };
    for (const auto& [key, fn] : table) {
      if (key != name) continue;
      auto r = fn(io::parse(input_json), o);
      r.report["passed"] = r.passed;
      *passed = r.passed ? 1 : 0;
      return report_json ? emit(r.report, report_json) : MOTKIT_OK;
    }
    throw argument_error("unknown property '" + name + "'");
  });
}

motkit_status motkit_generate(const char* name, uint64_t seed, const char* params_json, motkit_bundle** out) {
  if (!name) return null_argument("name");
  if (!out) return null_argument("out");
  return guard([&] {
    const Json p = params_json && *params_json ? io::parse(params_json) : Json::object();
    if (!p.is_object()) throw argument_error("params: expected a JSON object");
    auto b = std::make_unique<motkit_bundle>();
    for (auto& [file, doc] : generate(name, seed, p)) b->files.emplace_back(file, io::dump(doc));
    *out = b.release();
    return MOTKIT_OK;
  });
}

size_t motkit_bundle_size(const motkit_bundle* b) { return b ? b->files.size() : 0; }

const char* motkit_bundle_name(const motkit_bundle* b, size_t i) {
  return b && i < b->files.size() ? b->files[i].first.c_str() : nullptr;
}

const char* motkit_bundle_text(const motkit_bundle* b, size_t i) {
  return b && i < b->files.size() ? b->files[i].second.c_str() : nullptr;
}

void motkit_bundle_free(motkit_bundle* b) { delete b; }

}  // extern "C"
