// Scenario files and result emission for the command-line front end.
//
// A scenario is a JSON object:
//   {
//     "n_qubits": 3,
//     "initial": {"type": "werner", "x": 0.8}
//              | {"type": "binary", "F": 0.8, "error": "011", "error_sign": "+"}
//              | {"type": "bitflip", "weights": [0.7, 0.1, 0.1, 0.1]},
//     "schedule": ["P1", "P2"],
//     "mode": "even-only" | "even-plus-odd" | "six-mode-pbs",
//     "theta": 3.141592653589793,
//     "epsilon": 0.0,
//     "engine": "fast" | "exact",
//     "seed": 1,
//     "stop": {"threshold": 0.99} | {"rounds": 4},
//     "grid": {"param": "x" | "F", "values": [...]}
//           | {"param": "x" | "F", "range": "0.6:0.9:0.1"},
//     "record_ensembles": false
//   }
// Every field except "initial" has a default.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ghzpur/ghz_core.hpp"
#include "ghzpur/schedule.hpp"

namespace ghzpur {

/// Malformed scenario; the message names the offending field or the
/// line/column of a syntax error.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InitialSpec {
  enum class Kind { Binary, Bitflip, Werner } kind = Kind::Werner;
  double fidelity = 1.0;
  std::string error_bits;
  Sign error_sign = Sign::Plus;
  std::vector<double> bitflip_weights;
  double x = 1.0;
};

struct GridSpec {
  SweepParameter parameter = SweepParameter::WernerX;
  std::vector<double> values;
};

struct Scenario {
  int n_qubits = 3;
  InitialSpec initial;
  Schedule schedule;
  Engine engine = Engine::Fast;
  std::uint64_t seed = 1;
  std::optional<GridSpec> grid;
  bool record_ensembles = false;
};

/// Parses JSON text into a json object, reporting syntax errors by line and
/// column.
nlohmann::json parse_json_text(std::string_view text);

/// Checks fields, types and ranges (including the engine's qubit bound).
Scenario scenario_from_json(const nlohmann::json& cfg);

/// "start:stop:step", inclusive of stop.
std::vector<double> parse_grid_range(std::string_view range);

struct BuiltInitial {
  GhzDiagonalEnsemble ensemble;
  std::vector<std::string> warnings;
};

BuiltInitial build_initial(const Scenario& s);
/// Initial ensemble for a sweep grid point.
GhzDiagonalEnsemble build_grid_point(const Scenario& s, double value);

/// round,step,fidelity,keep_probability,cumulative_yield with 17 significant
/// digits; one row per trace row.
std::string trace_csv(const ScheduleTrace& trace);
std::string sweep_csv(const std::vector<SweepRow>& rows);

nlohmann::json run_summary(const Scenario& s, const ScheduleTrace& trace,
                           const std::vector<std::string>& warnings);

std::string format_double(double v);

}  // namespace ghzpur
