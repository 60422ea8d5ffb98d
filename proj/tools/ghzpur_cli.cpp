// ghzpur: run / sweep / validate front end.
//
// Exit codes: 0 ok, 2 bad configuration or usage, 3 threshold not reached
// (outputs are still written), 4 validation failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghzpur/scenario.hpp"
#include "ghzpur/schedule.hpp"
#include "ghzpur/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ghzpur;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitValidation = 4;

struct ScenarioFlags {
  std::string config_path;
  std::optional<int> n;
  std::optional<std::string> mode;
  std::optional<std::string> engine;
  std::optional<std::string> schedule;
  std::optional<double> theta;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;
  std::optional<double> threshold;
  std::optional<int> rounds;
  std::optional<double> x;
  std::optional<double> fidelity;
  std::optional<std::string> grid;
  std::optional<std::string> out_dir;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f) {
  cmd->add_option("config", f.config_path, "Scenario file (JSON)");
  cmd->add_option("--n", f.n, "Number of parties");
  cmd->add_option("--mode", f.mode, "even-only | even-plus-odd | six-mode-pbs");
  cmd->add_option("--engine", f.engine, "fast | exact");
  cmd->add_option("--schedule", f.schedule, "Comma-separated steps, e.g. P1,P2");
  cmd->add_option("--theta", f.theta, "Cross-Kerr phase shift");
  cmd->add_option("--epsilon", f.epsilon, "Detector misread probability");
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--threshold", f.threshold, "Stop once fidelity reaches this value");
  cmd->add_option("--rounds", f.rounds, "Run exactly this many rounds");
  cmd->add_option("--x", f.x, "Werner input with this x");
  cmd->add_option("--F", f.fidelity, "Binary input with this fidelity");
  cmd->add_option("--grid", f.grid, "Sweep grid start:stop:step");
  cmd->add_option("--out-dir", f.out_dir, "Output directory (default $GHZPUR_OUT_DIR or .)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json merged_config(const ScenarioFlags& f) {
  json cfg = f.config_path.empty() ? json::object() : parse_json_text(read_file(f.config_path));
  if (!cfg.is_object()) throw ConfigError("config: top level must be an object");
  json patch = json::object();
  if (f.n) patch["n_qubits"] = *f.n;
  if (f.mode) patch["mode"] = *f.mode;
  if (f.engine) patch["engine"] = *f.engine;
  if (f.schedule) {
    json steps = json::array();
    try {
      for (StepKind s : parse_steps(*f.schedule)) steps.push_back(std::string(step_name(s)));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--schedule: ") + e.what());
    }
    patch["schedule"] = steps;
  }
  if (f.theta) patch["theta"] = *f.theta;
  if (f.epsilon) patch["epsilon"] = *f.epsilon;
  if (f.seed) patch["seed"] = *f.seed;
  if (f.threshold && f.rounds) throw ConfigError("--threshold and --rounds are exclusive");
  if (f.threshold) cfg["stop"] = json{{"threshold", *f.threshold}};
  if (f.rounds) cfg["stop"] = json{{"rounds", *f.rounds}};
  if (f.x && f.fidelity) throw ConfigError("--x and --F are exclusive");
  if (f.x) cfg["initial"] = json{{"type", "werner"}, {"x", *f.x}};
  if (f.fidelity) {
    const json old = cfg.value("initial", json::object());
    json init{{"type", "binary"}, {"F", *f.fidelity}};
    if (old.is_object() && old.value("type", "") == "binary") {
      if (old.contains("error")) init["error"] = old["error"];
      if (old.contains("error_sign")) init["error_sign"] = old["error_sign"];
    }
    cfg["initial"] = init;
  }
  if (f.grid) {
    const json old = cfg.value("grid", json::object());
    std::string param = old.is_object() ? old.value("param", "") : "";
    if (param.empty()) param = f.fidelity ? "F" : "x";
    cfg["grid"] = json{{"param", param}, {"range", *f.grid}};
  }
  cfg.merge_patch(patch);
  return cfg;
}

fs::path output_dir(const ScenarioFlags& f) {
  if (f.out_dir) return *f.out_dir;
  if (const char* env = std::getenv("GHZPUR_OUT_DIR"); env && *env) return env;
  return ".";
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

int cmd_run(const ScenarioFlags& f) {
  const Scenario s = scenario_from_json(merged_config(f));
  const BuiltInitial init = build_initial(s);
  for (const auto& w : init.warnings) std::cerr << "warning: " << w << '\n';
  const ScheduleTrace trace = run_schedule(init.ensemble, s.schedule, s.engine, s.record_ensembles);

  const fs::path dir = output_dir(f);
  write_file(dir / "trace.csv", trace_csv(trace));
  write_file(dir / "summary.json", run_summary(s, trace, init.warnings).dump(2) + "\n");

  std::printf("rounds %d  final fidelity %s  cumulative yield %s\n", trace.rounds_applied(),
              format_double(trace.last().fidelity).c_str(),
              format_double(trace.last().cumulative_yield).c_str());
  if (!trace.converged) {
    std::cerr << "threshold not reached within " << kRoundCap << " rounds\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_sweep(const ScenarioFlags& f) {
  const Scenario s = scenario_from_json(merged_config(f));
  if (!s.grid) throw ConfigError("grid: sweep needs a grid (config \"grid\" or --grid)");
  if (s.grid->values.empty()) throw ConfigError("grid: empty grid");

  SweepTemplate tmpl;
  tmpl.n_qubits = s.n_qubits;
  tmpl.schedule = s.schedule;
  tmpl.engine = s.engine;
  if (s.initial.kind == InitialSpec::Kind::Binary) {
    tmpl.error_label = GhzLabel::from_string(s.initial.error_bits, s.initial.error_sign);
  }
  const auto rows = sweep(s.grid->parameter, s.grid->values, tmpl);
  const std::string csv = sweep_csv(rows);
  write_file(output_dir(f) / "sweep.csv", csv);
  std::cout << csv;

  bool all = true;
  for (const auto& r : rows) all = all && r.converged;
  if (!all) {
    std::cerr << "some grid points did not reach the threshold\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

struct ValidateFlags {
  int n_max = 4;
  std::uint64_t seed = 1;
  int cases = 200;
  bool corrupt_p2 = false;
};

int cmd_validate(const ValidateFlags& f) {
  ValidationOptions opt;
  opt.n_max = f.n_max;
  opt.seed = f.seed;
  opt.cases = f.cases;
  if (f.corrupt_p2) opt.rule = corrupted_p2_rule();
  ValidationReport report;
  try {
    report = run_validation(opt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (const auto& c : report.checks) {
    std::printf("%-26s %s  max deviation %.3e  (%s)\n", c.name.c_str(), c.passed ? "PASS" : "FAIL",
                c.max_deviation, c.detail.c_str());
  }
  return report.all_passed() ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GHZ entanglement purification with QND parity checks"};
  app.require_subcommand(1);

  ScenarioFlags run_flags;
  auto* run = app.add_subcommand("run", "Iterate a purification schedule");
  add_scenario_flags(run, run_flags);

  ScenarioFlags sweep_flags;
  auto* sw = app.add_subcommand("sweep", "Run a schedule over a grid of inputs");
  add_scenario_flags(sw, sweep_flags);

  ValidateFlags vflags;
  auto* val = app.add_subcommand("validate", "Check the closed-form engine against the oracle");
  val->add_option("--n-max", vflags.n_max, "Largest register checked (2..5)");
  val->add_option("--seed", vflags.seed, "Seed for the random ensembles");
  val->add_option("--cases", vflags.cases, "Random ensembles per register size");
  val->add_flag("--corrupt-p2-table", vflags.corrupt_p2)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_flags);
    if (*sw) return cmd_sweep(sweep_flags);
    return cmd_validate(vflags);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
