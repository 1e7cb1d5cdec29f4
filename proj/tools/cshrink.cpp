// cshrink: command-line driver.
//
//   cshrink simulate  --config scene.json [--M 4] [--csv out.csv] [--svg out.svg --svg-every 0.1]
//   cshrink threshold --config scene.json [--tol 1e-3] [--json report.json]
//   cshrink one-step  --config scene.json --a 0.9 [--json out.json] [--pgm mask.pgm]
//   cshrink validate  [--seed 7] [--suite raster --suite invariants] [--threads 4]
//
// Exit codes: 0 ok, 1 usage or config error, 2 numeric failure, 3 validation failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cshrink/io.hpp"
#include "cshrink/raster.hpp"
#include "cshrink/threshold.hpp"
#include "cshrink/validation.hpp"

namespace {

using namespace cshrink;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitValidation = 3;

struct Overrides {
  std::string config;
  std::optional<double> M, dt, horizon, tol, a, svg_every, c1, c2;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> csv, json_out, svg, pgm;
  unsigned threads = 1;
};

struct Scene {
  RoundedSet geometry;
  bool has_geometry = false;
  double M = 0.0, dt = 0.0 /* 0: pick from the geometry */, horizon = 10.0, tol = 1e-3, a = 0.0, c1 = 1.0, c2 = 0.0, svg_every = 0.0, pgm_h = 0.0;
  std::uint64_t seed = 7;
  std::string csv, json_out, svg, pgm;
};

double finite_field(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number() || !std::isfinite(v.get<double>())) throw Error(ErrorCode::BadConfig, std::string(key) + " must be a finite number");
  return v.get<double>();
}

std::string string_field(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j.at(key).is_string()) throw Error(ErrorCode::BadConfig, std::string(key) + " must be a string");
  return j.at(key).get<std::string>();
}

Scene load_scene(const Overrides& o, double default_horizon) {
  Scene sc;
  sc.horizon = default_horizon;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw Error(ErrorCode::BadConfig, "cannot open config " + o.config);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::BadConfig, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::BadConfig, "config must be a JSON object");
    if (j.contains("geometry")) {
      sc.geometry = geometry_from_json(j.at("geometry"));
      sc.has_geometry = true;
    }
    sc.M = finite_field(j, "M", sc.M);
    sc.dt = finite_field(j, "dt", sc.dt);
    sc.horizon = finite_field(j, "horizon", sc.horizon);
    sc.tol = finite_field(j, "tol", sc.tol);
    sc.a = finite_field(j, "a", sc.a);
    sc.c1 = finite_field(j, "c1", sc.c1);
    sc.c2 = finite_field(j, "c2", sc.c2);
    sc.svg_every = finite_field(j, "svg_every", sc.svg_every);
    sc.pgm_h = finite_field(j, "pgm_h", sc.pgm_h);
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_unsigned()) throw Error(ErrorCode::BadConfig, "seed must be a non-negative integer");
      sc.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("output")) {
      const auto& out = j.at("output");
      if (!out.is_object()) throw Error(ErrorCode::BadConfig, "output must be an object");
      sc.csv = string_field(out, "csv");
      sc.json_out = string_field(out, "json");
      sc.svg = string_field(out, "svg");
      sc.pgm = string_field(out, "pgm");
    }
  }
  auto take = [](auto& field, const auto& opt) {
    if (opt) field = *opt;
  };
  take(sc.M, o.M), take(sc.dt, o.dt), take(sc.horizon, o.horizon), take(sc.tol, o.tol), take(sc.a, o.a);
  take(sc.c1, o.c1), take(sc.c2, o.c2), take(sc.svg_every, o.svg_every), take(sc.seed, o.seed);
  take(sc.csv, o.csv), take(sc.json_out, o.json_out), take(sc.svg, o.svg), take(sc.pgm, o.pgm);
  for (double v : {sc.M, sc.dt, sc.horizon, sc.tol, sc.a, sc.c1, sc.c2, sc.svg_every}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::BadConfig, "numeric fields must be finite");
  }
  if (sc.dt < 0.0) throw Error(ErrorCode::BadConfig, "dt must be positive");
  return sc;
}

const RoundedSet& need_geometry(const Scene& sc) {
  if (!sc.has_geometry) throw Error(ErrorCode::BadConfig, "config has no geometry");
  return sc.geometry;
}

double time_step(const Scene& sc) { return sc.dt > 0.0 ? sc.dt : default_time_step(sc.geometry); }

// Writes to `path`, or stdout when the path is empty.
template <class F>
void emit(const std::string& path, F&& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadConfig, "cannot write " + path);
  body(out);
}

int cmd_simulate(const Scene& sc) {
  const auto& omega0 = need_geometry(sc);
  const auto tr = simulate(omega0, sc.M, sc.horizon, time_step(sc));
  const double cost = compute_cost(tr, sc.c1, sc.c2, sc.horizon);
  emit(sc.csv, [&](std::ostream& os) { write_trace_csv(os, tr, {"J=" + format_number(cost)}); });

  std::vector<SvgFrame> frames;
  if (sc.svg_every > 0.0) {
    const IsoperimetricSolver solver(omega0);
    const double end = tr.end_time();
    for (long k = 0;; ++k) {
      const double t = static_cast<double>(k) * sc.svg_every;
      if (t > end) break;
      frames.push_back({t, reconstruct_set(tr, solver, t)});
    }
  }
  if (!sc.svg.empty()) emit(sc.svg, [&](std::ostream& os) { write_svg(os, omega0, frames); });
  if (!sc.json_out.empty()) {
    json snaps = json::array();
    for (const auto& f : frames) snaps.push_back({{"t", f.t}, {"geometry", geometry_to_json(f.set)}});
    json rep = {{"M", sc.M},
                {"T_star", tr.t_star ? json(*tr.t_star) : json(nullptr)},
                {"T_dagger", tr.t_dagger ? json(*tr.t_dagger) : json(nullptr)},
                {"J", cost},
                {"snapshots", snaps}};
    emit(sc.json_out, [&](std::ostream& os) { os << rep.dump(2) << '\n'; });
  }
  return kExitOk;
}

int cmd_threshold(const Scene& sc) {
  const auto& omega0 = need_geometry(sc);
  const auto rep = find_m0(omega0, sc.tol, sc.horizon, time_step(sc));
  emit(sc.json_out, [&](std::ostream& os) { os << threshold_to_json(rep).dump(2) << '\n'; });
  return kExitOk;
}

int cmd_one_step(const Scene& sc) {
  const auto& omega0 = need_geometry(sc);
  const auto sol = solve_tilde(omega0, sc.a);
  emit(sc.json_out, [&](std::ostream& os) { os << solution_to_json(sol).dump(2) << '\n'; });
  if (!sc.pgm.empty()) {
    const double h = sc.pgm_h > 0.0 ? sc.pgm_h : 1e-2 * omega0.diameter();
    const auto g = rasterize(sol.set, h);
    emit(sc.pgm, [&](std::ostream& os) { write_pgm(g, os); });
  }
  if (!sc.svg.empty()) emit(sc.svg, [&](std::ostream& os) { write_svg(os, omega0, {{0.0, sol.set}}); });
  return kExitOk;
}

int cmd_validate(const Scene& sc, const std::vector<std::string>& suites, bool suites_given, double fault, int raster_sets,
                 int cases, unsigned threads) {
  ValidationOptions opt;
  opt.seed = sc.seed;
  opt.fault = fault;
  opt.threads = threads;
  opt.raster_sets = raster_sets;
  opt.invariant_cases = cases;
  if (suites_given) {
    opt.raster = opt.invariants = false;
    for (const auto& s : suites) {
      if (s == "raster") opt.raster = true;
      else if (s == "invariants") opt.invariants = true;
      else if (s != "none") throw Error(ErrorCode::BadConfig, "unknown suite " + s);
    }
  }
  const auto checks = run_validation(opt);
  bool ok = true;
  std::ostringstream table;
  for (const auto& c : checks) {
    table << (c.passed ? "PASS " : "FAIL ") << c.name << "  worst=" << format_number(c.worst)
          << "  bound=" << format_number(c.bound) << "  cases=" << c.cases << '\n';
    ok = ok && c.passed;
  }
  table << (ok ? "all checks passed" : "validation failed") << " (" << checks.size() << " checks)\n";
  std::cout << table.str();
  if (!sc.json_out.empty()) emit(sc.json_out, [&](std::ostream& os) { os << validation_to_json(checks).dump(2) << '\n'; });
  return ok ? kExitOk : kExitValidation;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidGeometry:
    case ErrorCode::EmptySet:
    case ErrorCode::NonpositiveArea:
    case ErrorCode::AreaExceedsDomain:
    case ErrorCode::BadConfig: return kExitUsage;
    case ErrorCode::OutOfRegime:
    case ErrorCode::OutOfRange:
    case ErrorCode::DegenerateDomain:
    case ErrorCode::NotCritical: return kExitNumeric;
  }
  return kExitNumeric;
}

void add_scene_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "scene JSON file");
  cmd->add_option("--M", o.M, "control budget");
  cmd->add_option("--dt", o.dt, "time step");
  cmd->add_option("--horizon", o.horizon, "final time");
  cmd->add_option("--tol", o.tol, "bisection tolerance on M0");
  cmd->add_option("--a", o.a, "target area");
  cmd->add_option("--c1", o.c1, "cost weight on the area integral");
  cmd->add_option("--c2", o.c2, "cost weight on the final area");
  cmd->add_option("--seed", o.seed, "seed for randomized suites");
  cmd->add_option("--svg-every", o.svg_every, "time between SVG outlines");
  cmd->add_option("--csv", o.csv, "CSV output path (default stdout)");
  cmd->add_option("--json", o.json_out, "JSON output path");
  cmd->add_option("--svg", o.svg, "SVG output path");
  cmd->add_option("--pgm", o.pgm, "PGM raster of the result");
  cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 256u));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal control of a spreading convex set under a perimeter budget"};
  app.require_subcommand(1);

  Overrides o;
  auto* sim = app.add_subcommand("simulate", "integrate the area ODE and write a CSV trace");
  auto* thr = app.add_subcommand("threshold", "bisect for the critical budget M0");
  auto* one = app.add_subcommand("one-step", "solve the fixed-area perimeter problem");
  auto* val = app.add_subcommand("validate", "run the raster-oracle and invariant suites");
  for (auto* c : {sim, thr, one, val}) add_scene_options(c, o);

  std::vector<std::string> suites;
  double fault = 0.0;
  int raster_sets = 8, cases = 200;
  val->add_option("--suite", suites, "raster, invariants or none (repeatable)");
  val->add_option("--inject-fault", fault, "perturb exact values by this relative amount");
  val->add_option("--raster-sets", raster_sets, "random sets in the raster suite")->check(CLI::NonNegativeNumber);
  val->add_option("--cases", cases, "random cases in the invariant suite")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    // threshold needs long runs to tell slow growth from slow extinction
    const Scene sc = load_scene(o, thr->parsed() ? 50.0 : 10.0);
    if (sim->parsed()) return cmd_simulate(sc);
    if (thr->parsed()) return cmd_threshold(sc);
    if (one->parsed()) return cmd_one_step(sc);
    return cmd_validate(sc, suites, val->count("--suite") > 0, fault, raster_sets, cases, o.threads);
  } catch (const Error& e) {
    std::cerr << "cshrink: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "cshrink: " << e.what() << '\n';
    return kExitUsage;
  }
}
