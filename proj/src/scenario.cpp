#include "ghzpur/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

namespace ghzpur {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("field '" + field + "': " + what);
}

double get_number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& prefix) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.contains(key)) fail(prefix + key, "unknown field");
  }
}

std::pair<int, int> line_col(std::string_view text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

InitialSpec parse_initial(const json& v, int n) {
  if (!v.is_object()) fail("initial", "expected an object");
  if (!v.contains("type")) fail("initial.type", "missing");
  const std::string type = get_string(v, "type", "initial.type");
  InitialSpec s;
  if (type == "werner") {
    reject_unknown(v, {"type", "x"}, "initial.");
    s.kind = InitialSpec::Kind::Werner;
    if (!v.contains("x")) fail("initial.x", "missing");
    s.x = get_number(v, "x", "initial.x");
    if (!(s.x >= 0.0 && s.x <= 1.0)) fail("initial.x", "must lie in [0, 1]");
  } else if (type == "binary") {
    reject_unknown(v, {"type", "F", "error", "error_sign"}, "initial.");
    s.kind = InitialSpec::Kind::Binary;
    if (!v.contains("F")) fail("initial.F", "missing");
    s.fidelity = get_number(v, "F", "initial.F");
    if (!(s.fidelity >= 0.0 && s.fidelity <= 1.0)) fail("initial.F", "must lie in [0, 1]");
    s.error_bits = v.contains("error") ? get_string(v, "error", "initial.error")
                                       : bits_to_string(qubit_mask(n, 0), n);
    if (static_cast<int>(s.error_bits.size()) != n) {
      fail("initial.error", "needs exactly " + std::to_string(n) + " bits");
    }
    try {
      string_to_bits(s.error_bits);
    } catch (const std::invalid_argument& e) {
      fail("initial.error", e.what());
    }
    if (v.contains("error_sign")) {
      const std::string sign = get_string(v, "error_sign", "initial.error_sign");
      if (sign == "+") {
        s.error_sign = Sign::Plus;
      } else if (sign == "-") {
        s.error_sign = Sign::Minus;
      } else {
        fail("initial.error_sign", "expected \"+\" or \"-\"");
      }
    }
  } else if (type == "bitflip") {
    reject_unknown(v, {"type", "weights"}, "initial.");
    s.kind = InitialSpec::Kind::Bitflip;
    if (!v.contains("weights") || !v.at("weights").is_array()) {
      fail("initial.weights", "expected an array of n + 1 numbers");
    }
    for (const json& w : v.at("weights")) {
      if (!w.is_number()) fail("initial.weights", "expected numbers");
      s.bitflip_weights.push_back(w.get<double>());
    }
    if (static_cast<int>(s.bitflip_weights.size()) != n + 1) {
      fail("initial.weights", "needs n + 1 = " + std::to_string(n + 1) + " entries");
    }
  } else {
    fail("initial.type", "unknown type '" + type + "' (expected binary, bitflip or werner)");
  }
  return s;
}

}  // namespace

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError("syntax error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
}

std::vector<double> parse_grid_range(std::string_view range) {
  std::vector<double> parts;
  std::size_t pos = 0;
  while (pos <= range.size()) {
    const std::size_t colon = std::min(range.find(':', pos), range.size());
    const std::string tok(range.substr(pos, colon - pos));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) {
      throw ConfigError("grid range '" + std::string(range) + "': bad number '" + tok + "'");
    }
    parts.push_back(v);
    pos = colon + 1;
  }
  if (parts.size() != 3) throw ConfigError("grid range must be start:stop:step");
  const double start = parts[0];
  const double stop = parts[1];
  const double step = parts[2];
  if (!(step > 0.0) || stop < start) {
    throw ConfigError("grid range needs step > 0 and stop >= start");
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values;
  for (std::size_t i = 0; i < count; ++i) {
    values.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return values;
}

Scenario scenario_from_json(const json& cfg) {
  if (!cfg.is_object()) throw ConfigError("scenario must be a JSON object");
  reject_unknown(cfg, {"n_qubits", "initial", "schedule", "mode", "theta", "epsilon", "engine",
                       "seed", "stop", "grid", "record_ensembles"},
                 "");
  Scenario s;
  if (cfg.contains("n_qubits")) {
    if (!cfg.at("n_qubits").is_number_integer()) fail("n_qubits", "expected an integer");
    s.n_qubits = cfg.at("n_qubits").get<int>();
  }
  if (cfg.contains("engine")) {
    try {
      s.engine = parse_engine(get_string(cfg, "engine", "engine"));
    } catch (const std::invalid_argument& e) {
      fail("engine", e.what());
    }
  }
  const int bound = s.engine == Engine::Exact ? kMaxExactQubits : kMaxFastQubits;
  if (s.n_qubits < kMinQubits || s.n_qubits > bound) {
    fail("n_qubits", "must lie in [2, " + std::to_string(bound) + "] for the " +
                         std::string(engine_name(s.engine)) + " engine");
  }

  if (!cfg.contains("initial")) fail("initial", "missing");
  s.initial = parse_initial(cfg.at("initial"), s.n_qubits);

  s.schedule.steps = {StepKind::P1, StepKind::P2};
  if (cfg.contains("schedule")) {
    const json& v = cfg.at("schedule");
    s.schedule.steps.clear();
    try {
      if (v.is_string()) {
        s.schedule.steps = parse_steps(v.get<std::string>());
      } else if (v.is_array()) {
        for (const json& step : v) {
          if (!step.is_string()) fail("schedule", "expected step names");
          s.schedule.steps.push_back(parse_step(step.get<std::string>()));
        }
      } else {
        fail("schedule", "expected a list of \"P1\"/\"P2\"");
      }
    } catch (const std::invalid_argument& e) {
      fail("schedule", e.what());
    }
    if (s.schedule.steps.empty()) fail("schedule", "must not be empty");
  }

  if (cfg.contains("mode")) {
    try {
      s.schedule.mode.kind = parse_mode(get_string(cfg, "mode", "mode"));
    } catch (const std::invalid_argument& e) {
      fail("mode", e.what());
    }
  }
  if (cfg.contains("theta")) {
    try {
      s.schedule.mode.kerr = KerrInteraction(get_number(cfg, "theta", "theta"));
    } catch (const std::invalid_argument& e) {
      fail("theta", e.what());
    }
  }
  if (cfg.contains("epsilon")) {
    s.schedule.mode.misclassification_probability = get_number(cfg, "epsilon", "epsilon");
  }
  try {
    s.schedule.mode.validate();
  } catch (const std::invalid_argument& e) {
    fail("mode", e.what());
  }
  if (!s.schedule.mode.is_ideal()) {
    fail("epsilon", "the fast and exact engines model an ideal detector; epsilon must be 0");
  }

  if (cfg.contains("seed")) {
    if (!cfg.at("seed").is_number_unsigned()) fail("seed", "expected a non-negative integer");
    s.seed = cfg.at("seed").get<std::uint64_t>();
  }

  if (cfg.contains("stop")) {
    const json& v = cfg.at("stop");
    if (!v.is_object() || v.size() != 1) fail("stop", "expected {\"threshold\": t} or {\"rounds\": k}");
    if (v.contains("threshold")) {
      s.schedule.stop = FidelityThreshold{get_number(v, "threshold", "stop.threshold")};
    } else if (v.contains("rounds")) {
      if (!v.at("rounds").is_number_integer()) fail("stop.rounds", "expected an integer");
      s.schedule.stop = FixedRounds{v.at("rounds").get<int>()};
    } else {
      fail("stop", "expected {\"threshold\": t} or {\"rounds\": k}");
    }
  }
  try {
    s.schedule.validate();
  } catch (const std::invalid_argument& e) {
    fail("stop", e.what());
  }

  if (cfg.contains("grid")) {
    const json& v = cfg.at("grid");
    if (!v.is_object()) fail("grid", "expected an object");
    reject_unknown(v, {"param", "values", "range"}, "grid.");
    GridSpec g;
    const std::string param = v.contains("param") ? get_string(v, "param", "grid.param") : "x";
    if (param == "x") {
      g.parameter = SweepParameter::WernerX;
    } else if (param == "F") {
      g.parameter = SweepParameter::Fidelity;
    } else {
      fail("grid.param", "expected \"x\" or \"F\"");
    }
    if (v.contains("values")) {
      if (!v.at("values").is_array()) fail("grid.values", "expected an array");
      for (const json& x : v.at("values")) {
        if (!x.is_number()) fail("grid.values", "expected numbers");
        g.values.push_back(x.get<double>());
      }
    } else if (v.contains("range")) {
      g.values = parse_grid_range(get_string(v, "range", "grid.range"));
    }
    for (double x : g.values) {
      if (!(x >= 0.0 && x <= 1.0)) fail("grid.values", "values must lie in [0, 1]");
    }
    s.grid = std::move(g);
  }

  if (cfg.contains("record_ensembles")) {
    if (!cfg.at("record_ensembles").is_boolean()) fail("record_ensembles", "expected a boolean");
    s.record_ensembles = cfg.at("record_ensembles").get<bool>();
  }
  try {
    build_initial(s);
  } catch (const std::invalid_argument& e) {
    fail("initial", e.what());
  }
  return s;
}

BuiltInitial build_initial(const Scenario& s) {
  const int n = s.n_qubits;
  switch (s.initial.kind) {
    case InitialSpec::Kind::Werner:
      return {build_werner(s.initial.x, n), {}};
    case InitialSpec::Kind::Bitflip:
      try {
        return {build_bitflip_ensemble(s.initial.bitflip_weights, n), {}};
      } catch (const std::invalid_argument& e) {
        fail("initial.weights", e.what());
      }
    case InitialSpec::Kind::Binary: {
      const GhzLabel err = GhzLabel::from_string(s.initial.error_bits, s.initial.error_sign);
      BinaryEnsemble b = build_binary_ensemble(s.initial.fidelity, err, n);
      std::vector<std::string> warnings;
      if (b.degenerate) {
        warnings.push_back("error label equals the target; input is the pure target");
      }
      return {std::move(b.ensemble), std::move(warnings)};
    }
  }
  throw ConfigError("unknown initial type");
}

GhzDiagonalEnsemble build_grid_point(const Scenario& s, double value) {
  if (!s.grid) throw ConfigError("scenario has no grid");
  if (s.grid->parameter == SweepParameter::WernerX) return build_werner(value, s.n_qubits);
  const GhzLabel err = s.initial.kind == InitialSpec::Kind::Binary
                           ? GhzLabel::from_string(s.initial.error_bits, s.initial.error_sign)
                           : GhzLabel::single_flip(s.n_qubits, 0);
  return build_binary_ensemble(value, err, s.n_qubits).ensemble;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trace_csv(const ScheduleTrace& trace) {
  std::ostringstream os;
  os << "round,step,fidelity,keep_probability,cumulative_yield\n";
  for (const RoundRecord& r : trace.rows) {
    os << r.round << ',' << (r.step ? step_name(*r.step) : std::string_view("init")) << ','
       << format_double(r.fidelity) << ',' << format_double(r.keep_probability) << ','
       << format_double(r.cumulative_yield) << '\n';
  }
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "parameter,initial_fidelity,rounds,final_fidelity,cumulative_yield,converged\n";
  for (const SweepRow& r : rows) {
    os << format_double(r.parameter) << ',' << format_double(r.initial_fidelity) << ','
       << r.rounds << ',' << format_double(r.final_fidelity) << ','
       << format_double(r.cumulative_yield) << ',' << (r.converged ? "true" : "false") << '\n';
  }
  return os.str();
}

json run_summary(const Scenario& s, const ScheduleTrace& trace,
                 const std::vector<std::string>& warnings) {
  json j;
  j["n_qubits"] = s.n_qubits;
  j["engine"] = engine_name(s.engine);
  j["mode"] = mode_name(s.schedule.mode.kind);
  j["theta"] = s.schedule.mode.kerr.theta();
  j["schedule"] = s.schedule.label();
  j["seed"] = s.seed;
  if (const auto* t = std::get_if<FidelityThreshold>(&s.schedule.stop)) {
    j["stop"] = {{"threshold", t->threshold}};
  } else {
    j["stop"] = {{"rounds", std::get<FixedRounds>(s.schedule.stop).rounds}};
  }
  j["converged"] = trace.converged;
  j["rounds"] = trace.rounds_applied();
  j["initial_fidelity"] = trace.rows.front().fidelity;
  j["final_fidelity"] = trace.last().fidelity;
  j["cumulative_yield"] = trace.last().cumulative_yield;
  j["warnings"] = warnings;
  json weights = json::object();
  for (const GhzLabel& l : all_labels(trace.final_ensemble.n_qubits())) {
    const double w = trace.final_ensemble.weight(l);
    if (w != 0.0) weights[l.to_string()] = w;
  }
  j["final_ensemble"] = weights;
  if (!trace.ensembles.empty()) {
    json per_round = json::array();
    for (const auto& ens : trace.ensembles) per_round.push_back(ens.weights());
    j["ensembles"] = per_round;
  }
  return j;
}

}  // namespace ghzpur
