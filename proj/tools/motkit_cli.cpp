// motkit command-line front end. Talks to the library through the C API only.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "motkit/motkit.h"

namespace fs = std::filesystem;

namespace {

struct Config {
  std::string out_dir = ".";
  std::string cost;
  double p = 1.0;
  std::string sense;
  double tol_feas = 0.0, tol_geom = 0.0;
  double threshold = 0.95;
  int threads = 0;
  std::uint64_t seed = 0;
};

struct Failure {
  int code;
  std::string message;
};

struct CString {
  char* s = nullptr;
  ~CString() { motkit_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};

void check(motkit_status st) {
  if (st != MOTKIT_OK) throw Failure{st, motkit_last_error()};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{MOTKIT_E_INPUT, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const Config& cfg, const std::string& name, const std::string& text) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  const auto path = fs::path(cfg.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{MOTKIT_E_INPUT, "cannot write " + path.string()};
  std::cout << "wrote " << path.string() << "\n";
}

unsigned thread_count(const Config& cfg) {
  if (cfg.threads > 0) return static_cast<unsigned>(cfg.threads);
  if (const char* env = std::getenv("MOTKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    throw Failure{MOTKIT_E_INPUT, std::string("MOTKIT_THREADS must be a positive integer, got '") + env + "'"};
  }
  return 1;
}

motkit_options options(const Config& cfg) {
  motkit_options o;
  motkit_options_init(&o);
  if (cfg.tol_feas > 0.0) o.tol_feas = cfg.tol_feas;
  if (cfg.tol_geom > 0.0) o.tol_geom = cfg.tol_geom;
  o.threads = thread_count(cfg);
  o.threshold = cfg.threshold;
  if (cfg.sense == "min") o.sense = MOTKIT_SENSE_MIN;
  else if (cfg.sense == "max") o.sense = MOTKIT_SENSE_MAX;
  if (cfg.cost == "euclidean") o.cost_kind = MOTKIT_COST_EUCLIDEAN;
  else if (cfg.cost == "power") o.cost_kind = MOTKIT_COST_POWER;
  o.p = cfg.p;
  return o;
}

int cmd_check_order(const Config& cfg, const std::string& mu_path, const std::string& nu_path) {
  const auto o = options(cfg);
  Handle<motkit_measure, motkit_measure_free> mu, nu;
  check(motkit_measure_parse(read_text(mu_path).c_str(), &o, &mu.p));
  check(motkit_measure_parse(read_text(nu_path).c_str(), &o, &nu.p));
  for (const auto* m : {mu.p, nu.p})
    if (*motkit_measure_warning(m)) std::cerr << "warning: " << motkit_measure_warning(m) << "\n";
  int in_order = 0;
  CString verdict;
  check(motkit_check_order(mu.p, nu.p, &o, &in_order, &verdict.s));
  write_text(cfg, "order.json", verdict.str());
  std::cout << (in_order ? "in convex order\n" : "not in convex order\n");
  return in_order ? 0 : MOTKIT_E_PRECONDITION;
}

int cmd_solve(const Config& cfg, const std::string& path) {
  const auto o = options(cfg);
  Handle<motkit_instance, motkit_instance_free> in;
  check(motkit_instance_parse(read_text(path).c_str(), &o, &in.p));
  if (*motkit_instance_warning(in.p)) std::cerr << "warning: " << motkit_instance_warning(in.p) << "\n";
  Handle<motkit_solution, motkit_solution_free> sol;
  check(motkit_solve(in.p, &o, &sol.p));
  CString coupling, dual, report;
  check(motkit_solution_coupling_json(sol.p, &coupling.s));
  check(motkit_solution_dual_json(sol.p, &dual.s));
  check(motkit_solution_report_json(sol.p, &report.s));
  write_text(cfg, "coupling.json", coupling.str());
  write_text(cfg, "dual.json", dual.str());
  write_text(cfg, "report.json", report.str());
  std::ostringstream v;
  v.precision(17);
  v << motkit_solution_value(sol.p);
  std::cout << "value " << v.str() << "\n";
  if (!motkit_solution_verified(sol.p)) {
    std::cerr << "error: recovered dual fails the contact check (see report.json)\n";
    return MOTKIT_E_VERIFICATION;
  }
  return 0;
}

int cmd_paving(const Config& cfg, const std::string& path, const std::string& svg, const std::string& csv,
               bool duals) {
  const auto o = options(cfg);
  Handle<motkit_support, motkit_support_free> s;
  check(motkit_support_parse(read_text(path).c_str(), &o, &s.p));
  Handle<motkit_paving, motkit_paving_free> p;
  check(motkit_paving_build(s.p, &o, duals ? 1 : 0, &p.p));
  CString doc;
  check(motkit_paving_json(p.p, &doc.s));
  write_text(cfg, "paving.json", doc.str());
  if (!svg.empty()) {
    CString text;
    check(motkit_paving_svg(p.p, &text.s));
    write_text(cfg, svg, text.str());
  }
  if (!csv.empty()) {
    CString text;
    check(motkit_paving_csv(p.p, &text.s));
    write_text(cfg, csv, text.str());
  }
  std::cout << motkit_paving_class_count(p.p) << " classes\n";
  if (!motkit_paving_verified(p.p)) {
    std::cerr << "error: paving verification failed (see paving.json)\n";
    return MOTKIT_E_VERIFICATION;
  }
  return 0;
}

int cmd_verify(const Config& cfg, const std::string& path, const std::string& property) {
  const auto o = options(cfg);
  int passed = 0;
  CString report;
  check(motkit_verify_property(property.c_str(), read_text(path).c_str(), &o, &passed, &report.s));
  write_text(cfg, "verify-" + property + ".json", report.str());
  std::cout << property << (passed ? " holds\n" : " fails\n");
  return passed ? 0 : MOTKIT_E_PROPERTY;
}

int cmd_gen(const Config& cfg, const std::string& name, const std::string& params) {
  options(cfg);  // rejects a bad MOTKIT_THREADS like every other command
  Handle<motkit_bundle, motkit_bundle_free> b;
  check(motkit_generate(name.c_str(), cfg.seed, params.c_str(), &b.p));
  for (std::size_t i = 0; i < motkit_bundle_size(b.p); ++i)
    write_text(cfg, motkit_bundle_name(b.p, i), motkit_bundle_text(b.p, i));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"motkit: discrete martingale optimal transport"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--out-dir", cfg.out_dir, "directory for output files")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (default: MOTKIT_THREADS, else 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for generated instances")->capture_default_str();
  app.add_option("--cost", cfg.cost, "cost override")->check(CLI::IsMember({"euclidean", "power"}));
  app.add_option("--p", cfg.p, "exponent for --cost power")->capture_default_str();
  app.add_option("--sense", cfg.sense, "sense override")->check(CLI::IsMember({"min", "max"}));
  app.add_option("--tol-feas", cfg.tol_feas, "feasibility tolerance");
  app.add_option("--tol-geom", cfg.tol_geom, "geometric tolerance");
  app.add_option("--threshold", cfg.threshold, "mass fraction required by statistical checks")
      ->capture_default_str();

  std::string a, b, svg, csv, property, name, params;
  bool duals = false;
  auto* order = app.add_subcommand("check-order", "test mu <=_c nu; exit 3 with a witness otherwise");
  order->add_option("mu", a, "measure JSON")->required();
  order->add_option("nu", b, "measure JSON")->required();
  auto* solve = app.add_subcommand("solve", "solve an instance and recover its dual");
  solve->add_option("instance", a, "instance JSON")->required();
  auto* paving = app.add_subcommand("paving", "build the irreducible convex paving of a support");
  paving->add_option("support", a, "support or coupling JSON")->required();
  paving->add_option("--svg", svg, "also write an SVG plot (2D) under this name");
  paving->add_option("--csv", csv, "also write a CSV table under this name");
  paving->add_flag("--duals", duals, "compute per-class contact triples for the cost options");
  auto* verify = app.add_subcommand("verify", "check a structural property; exit 5 when it fails");
  verify->add_option("input", a, "property input JSON")->required();
  verify->add_option("--property", property, "property name")
      ->required()
      ->check(CLI::IsMember(
          {"extremal", "one-d", "polytope", "gamma-growth", "sandwich", "idempotent", "laplacian", "flatten"}));
  auto* gen = app.add_subcommand("gen", "write a named fixture");
  gen->add_option("--name", name, "generator name")->required();
  gen->add_option("--params", params, "generator parameters as a JSON object");
  for (auto* sub : {order, solve, paving, verify, gen}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return MOTKIT_E_INPUT;
  }

  try {
    if (*order) return cmd_check_order(cfg, a, b);
    if (*solve) return cmd_solve(cfg, a);
    if (*paving) return cmd_paving(cfg, a, svg, csv, duals);
    if (*verify) return cmd_verify(cfg, a, property);
    if (*gen) return cmd_gen(cfg, name, params);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return MOTKIT_E_INTERNAL;
}
