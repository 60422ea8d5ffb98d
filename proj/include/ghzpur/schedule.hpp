// Iterated purification: P1/P2 schedules, fidelity/yield traces, parameter
// sweeps and ordering comparisons.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ghzpur/ghz_core.hpp"
#include "ghzpur/optics_qnd.hpp"
#include "ghzpur/purify.hpp"

namespace ghzpur {

inline constexpr int kRoundCap = 64;

enum class Engine { Fast, Exact };

std::string_view engine_name(Engine engine);
Engine parse_engine(std::string_view name);

struct FixedRounds {
  int rounds = 1;
};
struct FidelityThreshold {
  double threshold = 0.99;
};
using StopRule = std::variant<FixedRounds, FidelityThreshold>;

struct Schedule {
  std::vector<StepKind> steps;
  StopRule stop = FidelityThreshold{};
  DiscriminationMode mode;

  /// Throws std::invalid_argument for an empty step list, a threshold
  /// outside (1/2, 1] or a round count outside [0, 64].
  void validate() const;
  /// "P1,P2"
  std::string label() const;
};

std::vector<StepKind> parse_steps(std::string_view csv);

struct RoundRecord {
  int round = 0;
  std::optional<StepKind> step;  // empty for the initial row
  double fidelity = 0.0;
  double keep_probability = 1.0;
  double cumulative_yield = 1.0;
};

struct ScheduleTrace {
  /// Row 0 is the input; row k is the state after k steps.
  std::vector<RoundRecord> rows;
  /// Threshold reached (threshold rule) or all rounds run (fixed rule).
  bool converged = false;
  GhzDiagonalEnsemble final_ensemble;
  /// Output ensemble per row, filled only when requested.
  std::vector<GhzDiagonalEnsemble> ensembles;

  int rounds_applied() const { return static_cast<int>(rows.size()) - 1; }
  const RoundRecord& last() const { return rows.back(); }
};

/// Applies the schedule's steps cyclically until the stop rule is met or 64
/// rounds have run.  Missing the threshold is reported through `converged`,
/// not thrown.  Engine::Exact needs n <= 5 and carries the full density
/// operator from round to round.
ScheduleTrace run_schedule(const GhzDiagonalEnsemble& initial, const Schedule& schedule,
                           Engine engine, bool record_ensembles = false);

enum class SweepParameter { Fidelity, WernerX };

struct SweepTemplate {
  int n_qubits = 3;
  Schedule schedule;
  Engine engine = Engine::Fast;
  /// Error label for fidelity sweeps over binary ensembles.
  std::optional<GhzLabel> error_label;
};

struct SweepRow {
  double parameter = 0.0;
  double initial_fidelity = 0.0;
  int rounds = 0;
  double final_fidelity = 0.0;
  double cumulative_yield = 1.0;
  bool converged = false;
};

/// One row per grid point.  Throws std::invalid_argument for an empty grid or
/// values outside [0, 1].
std::vector<SweepRow> sweep(SweepParameter parameter, const std::vector<double>& grid,
                            const SweepTemplate& tmpl);

enum class RankingMetric { Rounds, Yield };

struct OrderingOutcome {
  std::string label;
  bool converged = false;
  int rounds = 0;
  double final_fidelity = 0.0;
  double cumulative_yield = 0.0;
};

struct OrderingRanking {
  std::vector<OrderingOutcome> outcomes;
  /// Groups of indices into `outcomes`, best first; a group with several
  /// members is a tie.  Non-convergent orderings form the last group.
  std::vector<std::vector<std::size_t>> ranking;
};

/// Throws std::invalid_argument for fewer than two orderings.
OrderingRanking compare_orderings(const GhzDiagonalEnsemble& initial,
                                  const std::vector<Schedule>& orderings, Engine engine,
                                  RankingMetric metric);

}  // namespace ghzpur
