#include "commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "spinlie/cartan_parity.hpp"
#include "spinlie/dynamics.hpp"
#include "spinlie/ident.hpp"
#include "spinlie/json_io.hpp"
#include "spinlie/lie_engine.hpp"
#include "spinlie/su3_structure.hpp"

#ifndef SPINLIE_VERSION
#define SPINLIE_VERSION "unknown"
#endif

namespace spinlie::cli {

namespace fs = std::filesystem;

nlohmann::json to_json(const RunManifest& m) {
  return {{"command", m.command},           {"config_path", m.config_path}, {"seed", m.seed},
          {"tool_version", m.tool_version}, {"timestamp", m.timestamp},     {"output_paths", m.output_paths}};
}

std::string iso_timestamp_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream os;
  os << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string tool_version() { return SPINLIE_VERSION; }

namespace {

struct Globals {
  std::uint64_t seed = 0;
  bool emit_plot_data = false;
  std::string manifest;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
}

void write_json_file(const fs::path& path, const nlohmann::json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void write_trace_file(const fs::path& path, const MagnetizationTrace& trace) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  write_trace_csv(out, trace);
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

// Long format for external plotting: one row per (series, time, component).
void write_plot_data(const fs::path& path, const std::vector<std::pair<std::string, const MagnetizationTrace*>>& series) {
  std::ofstream out(path);
  out << "series,t,component,value\n" << std::setprecision(17);
  static const char* names[] = {"mx", "my", "mz"};
  for (const auto& [label, trace] : series)
    for (std::size_t k = 0; k < trace->size(); ++k)
      for (int v = 0; v < 3; ++v)
        out << label << ',' << trace->times[k] << ',' << names[v] << ',' << trace->component(v)[k] << '\n';
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

class ManifestWriter {
 public:
  ManifestWriter(const Globals& g, std::string command, std::string config_path) : globals_(g) {
    manifest_.command = std::move(command);
    manifest_.config_path = std::move(config_path);
    manifest_.seed = g.seed;
    manifest_.tool_version = tool_version();
    manifest_.timestamp = iso_timestamp_now();
  }

  void add_output(const fs::path& p) { manifest_.output_paths.push_back(p.string()); }

  // Default location: next to the first output, else the working directory.
  void write(const fs::path& fallback_dir = {}) {
    fs::path path;
    if (!globals_.manifest.empty()) {
      path = globals_.manifest;
    } else if (!fallback_dir.empty()) {
      path = fallback_dir / "manifest.json";
    } else if (!manifest_.output_paths.empty()) {
      path = manifest_.output_paths.front() + ".manifest.json";
    } else {
      path = "spinlie-" + manifest_.command + ".manifest.json";
    }
    write_json_file(path, to_json(manifest_));
  }

 private:
  const Globals& globals_;
  RunManifest manifest_;
};

nlohmann::json complex_json(Complex z) { return {z.real(), z.imag()}; }

std::string format_expansion(const std::array<Complex, 9>& c) {
  const auto& labels = expansion_labels();
  std::ostringstream os;
  bool any = false;
  for (std::size_t k = 0; k < 9; ++k) {
    if (std::abs(c[k]) <= 1e-12) continue;
    if (any) os << " + ";
    os << '(' << c[k].real();
    if (std::abs(c[k].imag()) > 1e-12) os << (c[k].imag() < 0 ? "-" : "+") << std::abs(c[k].imag()) << 'i';
    os << ")*" << labels[k];
    any = true;
  }
  return any ? os.str() : "0";
}

// --- verify-tables ---------------------------------------------------------

struct TablesArgs {
  double tolerance = 1e-12;
  std::string json;
  bool strict = false;
};

int cmd_verify_tables(const Globals& g, const TablesArgs& a, std::ostream& out) {
  ManifestWriter manifest(g, "verify-tables", "");
  const auto reports = verify_structure_tables(a.tolerance);
  const double casimir = (casimir_spin1() - 2.0 * identity(3)).norm();

  std::size_t cells = 0, mismatched = 0, unexplained = 0;
  nlohmann::json tables = nlohmann::json::array();
  for (const auto& t : reports) {
    nlohmann::json entries = nlohmann::json::array();
    std::size_t table_mismatch = 0;
    for (const auto& e : t.entries) {
      ++cells;
      const bool explained = e.pass || (e.flipped_uv_residual <= a.tolerance && e.expansion_residual <= a.tolerance);
      nlohmann::json coeffs;
      for (std::size_t k = 0; k < 9; ++k) coeffs[expansion_labels()[k]] = complex_json(e.recomputed[k]);
      entries.push_back({{"lhs", e.lhs},
                         {"rhs", e.rhs},
                         {"printed", e.expected},
                         {"residual", e.residual},
                         {"pass", e.pass},
                         {"recomputed", coeffs},
                         {"expansion_residual", e.expansion_residual},
                         {"flipped_uv_residual", e.flipped_uv_residual},
                         {"explained_by_uv_sign", !e.pass && explained}});
      if (e.pass) continue;
      ++mismatched;
      ++table_mismatch;
      if (!explained) ++unexplained;
      out << "  MISMATCH " << t.table_id << " (" << e.lhs << ", " << e.rhs << "): printed " << e.expected
          << ", recomputed " << format_expansion(e.recomputed) << "; residual " << e.residual
          << (explained ? " [matches with V, U negated]" : " [UNEXPLAINED]") << '\n';
    }
    out << t.table_id << ": " << t.entries.size() << " cells, " << t.entries.size() - table_mismatch
        << " match, max residual " << t.max_residual << '\n';
    tables.push_back({{"table", t.table_id}, {"max_residual", t.max_residual}, {"cells", entries}});
  }
  const bool casimir_ok = casimir <= a.tolerance;
  out << "casimir sum_j (-i sbar_j)^2 - 2*1: residual " << casimir << (casimir_ok ? "" : " [FAIL]") << '\n';
  out << cells << " cells checked, " << mismatched << " mismatched, " << unexplained << " unexplained\n";

  int code = kExitOk;
  if (!casimir_ok || unexplained > 0 || (a.strict && mismatched > 0)) code = kExitNegative;
  if (!a.json.empty()) {
    write_json_file(a.json, {{"tolerance", a.tolerance},
                             {"tables", tables},
                             {"casimir_residual", casimir},
                             {"cells", cells},
                             {"mismatched", mismatched},
                             {"unexplained", unexplained},
                             {"exit_code", code}});
    manifest.add_output(a.json);
  }
  manifest.write();
  return code;
}

// --- cartan ----------------------------------------------------------------

struct CartanArgs {
  int spins = 2;
  std::string mode = "auto";
  std::size_t samples = 2000;
  std::size_t identity_samples = 100;
  std::string json;
};

nlohmann::json relation_json(const RelationCheck& r) {
  return {{"relation", r.name}, {"pairs", r.pairs}, {"violations", r.violations}, {"max_forbidden_norm", r.max_forbidden_norm}};
}

int cmd_cartan(const Globals& g, const CartanArgs& a, std::ostream& out) {
  ManifestWriter manifest(g, "cartan", "");
  CartanOptions opts;
  if (a.mode == "auto") {
    opts.mode = a.spins <= 2 ? SweepMode::kExhaustive : SweepMode::kSampled;
  } else if (a.mode == "exhaustive") {
    opts.mode = SweepMode::kExhaustive;
  } else if (a.mode == "sampled") {
    opts.mode = SweepMode::kSampled;
  } else {
    throw std::invalid_argument("--mode must be auto, exhaustive or sampled");
  }
  opts.samples_per_relation = a.samples;
  opts.identity_samples = a.identity_samples;
  opts.seed = g.seed;

  const auto decomp = build_parity_decomposition(a.spins);
  const auto rep = verify_cartan_relations(decomp, opts);
  out << "n = " << rep.n_spins << ": even (I) dim " << rep.even_dim << ", odd (I_perp) dim " << rep.odd_dim
      << ", sum " << rep.even_dim + rep.odd_dim << '\n';
  nlohmann::json labelings = nlohmann::json::array();
  for (const auto& l : rep.labelings) {
    out << "labeling " << l.labeling << ": commutators " << (l.commutators_hold() ? "hold" : "FAIL")
        << ", anticommutators " << (l.anticommutators_hold() ? "hold" : "FAIL") << '\n';
    nlohmann::json rel = nlohmann::json::array();
    for (const auto* group : {&l.commutator_relations, &l.anticommutator_relations})
      for (const auto& r : *group) {
        out << "  " << r.name << ": " << r.pairs << " pairs, " << r.violations << " violations, max leak "
            << r.max_forbidden_norm << '\n';
        rel.push_back(relation_json(r));
      }
    labelings.push_back({{"labeling", l.labeling},
                         {"commutators_hold", l.commutators_hold()},
                         {"anticommutators_hold", l.anticommutators_hold()},
                         {"relations", rel}});
  }
  const bool identity_ok = rep.identity_max_residual <= 1e-12;
  out << "tensor bracket identity on " << rep.identity_samples << " random blocks: max residual "
      << rep.identity_max_residual << '\n';
  const auto& primary = rep.labelings.front();
  const bool ok = primary.commutators_hold() && primary.anticommutators_hold() && identity_ok;
  if (!a.json.empty()) {
    write_json_file(a.json, {{"n_spins", rep.n_spins},
                             {"even_dim", rep.even_dim},
                             {"odd_dim", rep.odd_dim},
                             {"mode", opts.mode == SweepMode::kExhaustive ? "exhaustive" : "sampled"},
                             {"tolerance", rep.tol},
                             {"labelings", labelings},
                             {"identity_samples", rep.identity_samples},
                             {"identity_max_residual", rep.identity_max_residual},
                             {"pass", ok}});
    manifest.add_output(a.json);
  }
  manifest.write();
  return ok ? kExitOk : kExitNegative;
}

// --- controllability / observability ------------------------------------------

struct VerdictArgs {
  std::string model;
  std::string json;
  double tol = kSpanTolerance;
  int iteration_cap = kDefaultIterationCap;
};

SpinPairModel load_model(const std::string& path) { return model_from_json(read_json_file(path)); }

int cmd_controllability(const Globals& g, const VerdictArgs& a, std::ostream& out) {
  ManifestWriter manifest(g, "controllability", a.model);
  const auto model = load_model(a.model);
  const auto rep = controllability_verdict(model, {a.tol, a.iteration_cap});
  out << "dimension " << rep.dimension << " of " << rep.full_dimension << ": "
      << (rep.controllable ? "controllable" : "not controllable") << '\n';
  for (const auto& w : rep.warnings) out << "warning: " << w << '\n';
  if (!a.json.empty()) {
    write_json_file(a.json, {{"gamma1", model.gamma1},
                             {"gamma2", model.gamma2},
                             {"J12", model.J12},
                             {"generators", rep.generators},
                             {"dimension", rep.dimension},
                             {"full_dimension", rep.full_dimension},
                             {"controllable", rep.controllable},
                             {"iterations", rep.iterations},
                             {"per_iteration_dims", rep.per_iteration_dims},
                             {"tolerance", rep.tolerance_used},
                             {"parameter_condition", rep.parameter_condition},
                             {"warnings", rep.warnings}});
    manifest.add_output(a.json);
  }
  manifest.write();
  return rep.controllable ? kExitOk : kExitNegative;
}

int cmd_observability(const Globals& g, const VerdictArgs& a, std::ostream& out) {
  ManifestWriter manifest(g, "observability", a.model);
  const auto model = load_model(a.model);
  const auto rep = observability_verdict(model, {a.tol, a.iteration_cap});
  out << "algebra dimension " << rep.algebra_dim << ", observability space dimension " << rep.space_dim
      << " of 80: " << (rep.observable ? "observable" : "not observable") << '\n';
  for (const auto& w : rep.warnings) out << "warning: " << w << '\n';
  if (!a.json.empty()) {
    write_json_file(a.json, {{"gamma1", model.gamma1},
                             {"gamma2", model.gamma2},
                             {"J12", model.J12},
                             {"algebra_dim", rep.algebra_dim},
                             {"space_dim", rep.space_dim},
                             {"complement_dim", rep.vperp_basis.dimension()},
                             {"observable", rep.observable},
                             {"warnings", rep.warnings}});
    manifest.add_output(a.json);
  }
  manifest.write();
  return rep.observable ? kExitOk : kExitNegative;
}

// --- simulate ----------------------------------------------------------------

struct SimulateArgs {
  std::string model;
  std::string schedule;
  std::string out;
  int samples = kDefaultSamplesPerSegment;
};

int cmd_simulate(const Globals& g, const SimulateArgs& a, std::ostream& out) {
  ManifestWriter manifest(g, "simulate", a.model);
  const auto model = load_model(a.model);
  const auto schedule = schedule_from_json(read_json_file(a.schedule));
  const auto result = propagate(model, schedule, a.samples);
  write_trace_file(a.out, result.trace);
  manifest.add_output(a.out);
  if (g.emit_plot_data) {
    const std::string plot = a.out + ".plot.csv";
    write_plot_data(plot, {{"model", &result.trace}});
    manifest.add_output(plot);
  }
  out << "wrote " << result.trace.size() << " samples to " << a.out << '\n';
  manifest.write();
  return kExitOk;
}

// --- equivalence ------------------------------------------------------------

struct EquivalenceArgs {
  std::string model;  // empty: (1, 2, 0.5) with a seeded partner-safe state
  int schedules = 10;
  std::string out_dir = "equivalence_out";
  bool unflipped = false;
  int samples = kDefaultSamplesPerSegment;
};

int cmd_equivalence(const Globals& g, const EquivalenceArgs& a, std::ostream& out) {
  if (a.schedules < 1) throw std::invalid_argument("--schedules must be >= 1");
  ManifestWriter manifest(g, "equivalence", a.model);
  const fs::path dir = a.out_dir;
  fs::create_directories(dir);

  const SpinPairModel model = [&]() -> SpinPairModel {
    if (!a.model.empty()) return load_model(a.model);
    const ModelParameters p{1.0, 2.0, 0.5};
    return {p.gamma1, p.gamma2, p.J12, partner_safe_state(random_density_matrix(g.seed), p)};
  }();

  nlohmann::json report = {{"model", model_to_json(model)}, {"unflipped_control", a.unflipped}};
  ModelParameters partner_params{model.gamma1, model.gamma2, -model.J12};
  ComplexMatrix partner_state = model.rho0.matrix();
  if (!a.unflipped) {
    const auto pc = partner_construction(model.parameters(), model.rho0.matrix());
    report["partner_physical"] = pc.physical;
    report["partner_min_eigenvalue"] = pc.min_eigenvalue;
    report["partner_rho0"] = matrix_to_json(pc.rho0);
    if (!pc.physical) {
      out << "partner state is not positive semidefinite (min eigenvalue " << pc.min_eigenvalue
          << "): the equivalent model exists algebraically but not as a physical state for this rho0\n";
      const fs::path rp = dir / "report.json";
      report["exit_code"] = kExitSpecial;
      write_json_file(rp, report);
      manifest.add_output(rp);
      manifest.write(dir);
      return kExitSpecial;
    }
    partner_state = pc.rho0;
  }

  std::mt19937_64 rng(g.seed);
  std::vector<ControlSchedule> schedules;
  for (int k = 0; k < a.schedules; ++k) schedules.push_back(random_schedule(rng()));
  const auto eq = verify_equivalence(model.parameters(), model.rho0.matrix(), partner_params, partner_state,
                                     schedules, a.samples);

  std::vector<std::pair<std::string, MagnetizationTrace>> plot_traces;
  for (std::size_t k = 0; k < schedules.size(); ++k) {
    const auto stem = std::to_string(k);
    const fs::path sp = dir / ("schedule_" + stem + ".json");
    write_json_file(sp, schedule_to_json(schedules[k]));
    const auto ta = propagate(model.parameters(), model.rho0.matrix(), schedules[k], a.samples).trace;
    const auto tb = propagate(partner_params, partner_state, schedules[k], a.samples).trace;
    const fs::path pa = dir / ("trace_" + stem + "_original.csv");
    const fs::path pb = dir / ("trace_" + stem + "_partner.csv");
    write_trace_file(pa, ta);
    write_trace_file(pb, tb);
    for (const auto& p : {sp, pa, pb}) manifest.add_output(p);
    if (g.emit_plot_data) {
      plot_traces.emplace_back("original_" + stem, ta);
      plot_traces.emplace_back("partner_" + stem, tb);
    }
  }
  if (g.emit_plot_data) {
    std::vector<std::pair<std::string, const MagnetizationTrace*>> series;
    for (const auto& [label, t] : plot_traces) series.emplace_back(label, &t);
    const fs::path plot = dir / "plot_data.csv";
    write_plot_data(plot, series);
    manifest.add_output(plot);
  }

  const int code = eq.pass ? kExitOk : kExitNegative;
  report["per_schedule_max_deviation"] = eq.per_schedule;
  report["max_deviation"] = eq.max_deviation;
  report["tolerance"] = kEquivalenceTol;
  report["pass"] = eq.pass;
  report["exit_code"] = code;
  const fs::path rp = dir / "report.json";
  write_json_file(rp, report);
  manifest.add_output(rp);
  out << (a.unflipped ? "J negated, state unchanged" : "partner model") << ": max deviation " << eq.max_deviation
      << " over " << schedules.size() << " schedules -> " << (eq.pass ? "equivalent" : "distinguishable") << '\n';
  manifest.write(dir);
  return code;
}

// --- identify -------------------------------------------------------------------

struct IdentifyArgs {
  std::string data_dir;
  std::string out;
  int starts = 8;
  int max_iterations = 400;
};

int cmd_identify(const Globals& g, const IdentifyArgs& a, std::ostream& out) {
  ManifestWriter manifest(g, "identify", a.data_dir);
  const auto data = load_experiment(a.data_dir);
  IdentifyConfig cfg;
  cfg.starts = a.starts;
  cfg.max_iterations = a.max_iterations;
  cfg.seed = g.seed;
  const auto res = identify(data, cfg);
  const fs::path path = a.out.empty() ? fs::path(a.data_dir) / "identification.json" : fs::path(a.out);
  write_json_file(path, to_json(res));
  manifest.add_output(path);
  out << "gamma = (" << res.gamma1_hat << ", " << res.gamma2_hat << ") up to permutation, |J| = " << res.absJ_hat
      << '\n';
  for (const auto& c : res.candidates)
    out << "  candidate J = " << c.J_signed << ": rms residual " << c.residual
        << (c.physical ? "" : " (rho0 not positive semidefinite)") << '\n';
  for (const auto& w : res.warnings) out << "warning: " << w << '\n';
  manifest.write();
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Controllability, observability and identifiability of a coupled spin-1 pair", "spinlie"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());
  Globals g;
  app.add_option("--seed", g.seed, "Seed for all randomness")->capture_default_str();
  app.add_flag("--emit-plot-data", g.emit_plot_data, "Also write long-format CSV for external plotting");
  app.add_option("--manifest", g.manifest, "Run manifest path (default: next to the first output)");

  TablesArgs tables;
  auto* vt = app.add_subcommand("verify-tables", "Recompute the su(3) commutator/anticommutator tables");
  vt->add_option("--tolerance", tables.tolerance, "Cell residual tolerance")->capture_default_str();
  vt->add_option("--json", tables.json, "Write the full report here");
  vt->add_flag("--strict", tables.strict, "Exit 2 on any mismatched cell, explained or not");

  CartanArgs cartan;
  auto* ca = app.add_subcommand("cartan", "Check the parity (Cartan-type) splitting of su(3^n)");
  ca->add_option("--spins", cartan.spins, "Number of spins, 1..3")->capture_default_str();
  ca->add_option("--mode", cartan.mode, "auto | exhaustive | sampled")->capture_default_str();
  ca->add_option("--samples", cartan.samples, "Pairs per relation in sampled mode")->capture_default_str();
  ca->add_option("--identity-samples", cartan.identity_samples, "Random blocks for the tensor identity")
      ->capture_default_str();
  ca->add_option("--json", cartan.json, "Write the report here");

  VerdictArgs ctrl;
  auto* co = app.add_subcommand("controllability", "Lie closure of drift and controls");
  co->add_option("model", ctrl.model, "Model JSON")->required();
  co->add_option("--json", ctrl.json, "Write the report here");
  co->add_option("--tol", ctrl.tol, "Span tolerance")->capture_default_str();
  co->add_option("--iteration-cap", ctrl.iteration_cap, "Closure sweep limit")->capture_default_str();

  VerdictArgs obs;
  auto* ob = app.add_subcommand("observability", "Observability space of the total magnetization");
  ob->add_option("model", obs.model, "Model JSON")->required();
  ob->add_option("--json", obs.json, "Write the report here");
  ob->add_option("--tol", obs.tol, "Span tolerance")->capture_default_str();
  ob->add_option("--iteration-cap", obs.iteration_cap, "Closure sweep limit")->capture_default_str();

  SimulateArgs sim;
  auto* si = app.add_subcommand("simulate", "Propagate a model under a control schedule");
  si->add_option("model", sim.model, "Model JSON")->required();
  si->add_option("schedule", sim.schedule, "Schedule JSON")->required();
  si->add_option("--out,-o", sim.out, "Trace CSV")->required();
  si->add_option("--samples", sim.samples, "Samples per segment")->capture_default_str();

  EquivalenceArgs eqv;
  auto* eq = app.add_subcommand("equivalence", "Compare a model with its J-flipped partner");
  eq->add_option("--model", eqv.model, "Model JSON (default: gamma 1, 2, J 0.5, seeded state)");
  eq->add_option("--schedules", eqv.schedules, "Random schedules to compare")->capture_default_str();
  eq->add_option("--out-dir", eqv.out_dir, "Output directory")->capture_default_str();
  eq->add_flag("--unflipped", eqv.unflipped, "Negate J but keep the state (control run)");
  eq->add_option("--samples", eqv.samples, "Samples per segment")->capture_default_str();

  IdentifyArgs idf;
  auto* id = app.add_subcommand("identify", "Fit (gamma1, gamma2, J, rho0) to recorded traces");
  id->add_option("data_dir", idf.data_dir, "Directory with schedule_<k>.json and trace_<k>.csv")->required();
  id->add_option("--out,-o", idf.out, "Result JSON (default: <data_dir>/identification.json)");
  id->add_option("--starts", idf.starts, "Optimizer starts per sign of J")->capture_default_str();
  id->add_option("--max-iterations", idf.max_iterations, "Residual evaluations per start")->capture_default_str();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*vt) return cmd_verify_tables(g, tables, out);
    if (*ca) return cmd_cartan(g, cartan, out);
    if (*co) return cmd_controllability(g, ctrl, out);
    if (*ob) return cmd_observability(g, obs, out);
    if (*si) return cmd_simulate(g, sim, out);
    if (*eq) return cmd_equivalence(g, eqv, out);
    if (*id) return cmd_identify(g, idf, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"spinlie"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace spinlie::cli
