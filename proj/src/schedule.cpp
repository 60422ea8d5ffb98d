#include "ghzpur/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ghzpur/exact_engine.hpp"

namespace ghzpur {

namespace {

constexpr double kTieTol = 1e-12;

/// Engine-specific state carried between rounds.
class Runner {
 public:
  Runner(const GhzDiagonalEnsemble& initial, Engine engine)
      : engine_(engine), ensemble_(initial) {
    if (engine == Engine::Exact) {
      if (initial.n_qubits() > kMaxExactQubits) {
        throw std::invalid_argument("exact engine supports at most " +
                                    std::to_string(kMaxExactQubits) + " qubits");
      }
      density_.emplace(ensemble_to_density(initial));
      target_.emplace(ghz_label_to_state(GhzLabel::target(initial.n_qubits()), initial.n_qubits()));
    }
  }

  double fidelity() const {
    return engine_ == Engine::Fast ? ensemble_fidelity(ensemble_) : density_->expectation(*target_);
  }

  double step(StepKind kind, const DiscriminationMode& mode) {
    if (engine_ == Engine::Fast) {
      StepReport r = purify_step(kind, ensemble_, mode);
      ensemble_ = std::move(r.output);
      return r.keep_probability;
    }
    ExactStepResult r = exact_step(kind, *density_, mode);
    density_.emplace(std::move(r.output));
    return r.keep_probability;
  }

  GhzDiagonalEnsemble ensemble() const {
    return engine_ == Engine::Fast ? ensemble_ : ghz_diagonal_extract(*density_).ensemble;
  }

 private:
  Engine engine_;
  GhzDiagonalEnsemble ensemble_;
  std::optional<DensityMatrix> density_;
  std::optional<PureState> target_;
};

}  // namespace

std::string_view engine_name(Engine engine) {
  return engine == Engine::Fast ? "fast" : "exact";
}

Engine parse_engine(std::string_view name) {
  if (name == "fast") return Engine::Fast;
  if (name == "exact") return Engine::Exact;
  throw std::invalid_argument("unknown engine '" + std::string(name) + "' (expected fast or exact)");
}

void Schedule::validate() const {
  if (steps.empty()) throw std::invalid_argument("schedule has no steps");
  if (const auto* t = std::get_if<FidelityThreshold>(&stop)) {
    if (!(t->threshold > 0.5 && t->threshold <= 1.0)) {
      throw std::invalid_argument("threshold must lie in (0.5, 1]");
    }
  } else {
    const int r = std::get<FixedRounds>(stop).rounds;
    if (r < 0 || r > kRoundCap) throw std::invalid_argument("round count must lie in [0, 64]");
  }
  mode.validate();
}

std::string Schedule::label() const {
  std::string s;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) s += ',';
    s += step_name(steps[i]);
  }
  return s;
}

std::vector<StepKind> parse_steps(std::string_view csv) {
  std::vector<StepKind> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = std::min(csv.find(',', pos), csv.size());
    std::string_view tok = csv.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    out.push_back(parse_step(tok));
    pos = comma + 1;
  }
  return out;
}

ScheduleTrace run_schedule(const GhzDiagonalEnsemble& initial, const Schedule& schedule,
                           Engine engine, bool record_ensembles) {
  schedule.validate();
  Runner runner(initial, engine);
  ScheduleTrace trace{{}, false, initial, {}};
  trace.rows.push_back({0, std::nullopt, runner.fidelity(), 1.0, 1.0});
  if (record_ensembles) trace.ensembles.push_back(initial);

  const auto* threshold = std::get_if<FidelityThreshold>(&schedule.stop);
  const int limit = threshold ? kRoundCap : std::get<FixedRounds>(schedule.stop).rounds;
  auto done = [&] { return threshold && trace.last().fidelity >= threshold->threshold; };

  double yield = 1.0;
  for (int round = 1; round <= limit && !done(); ++round) {
    const StepKind kind = schedule.steps[static_cast<std::size_t>(round - 1) % schedule.steps.size()];
    const double keep = runner.step(kind, schedule.mode);
    yield *= keep / 2.0;
    trace.rows.push_back({round, kind, runner.fidelity(), keep, yield});
    if (record_ensembles) trace.ensembles.push_back(runner.ensemble());
  }
  trace.converged = threshold ? done() : true;
  trace.final_ensemble = runner.ensemble();
  return trace;
}

std::vector<SweepRow> sweep(SweepParameter parameter, const std::vector<double>& grid,
                            const SweepTemplate& tmpl) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double v : grid) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("sweep: grid value outside [0, 1]");
    const GhzDiagonalEnsemble initial =
        parameter == SweepParameter::WernerX
            ? build_werner(v, tmpl.n_qubits)
            : build_binary_ensemble(v, tmpl.error_label.value_or(GhzLabel::single_flip(tmpl.n_qubits, 0)),
                                    tmpl.n_qubits)
                  .ensemble;
    const ScheduleTrace t = run_schedule(initial, tmpl.schedule, tmpl.engine);
    rows.push_back({v, t.rows.front().fidelity, t.rounds_applied(), t.last().fidelity,
                    t.last().cumulative_yield, t.converged});
  }
  return rows;
}

OrderingRanking compare_orderings(const GhzDiagonalEnsemble& initial,
                                  const std::vector<Schedule>& orderings, Engine engine,
                                  RankingMetric metric) {
  if (orderings.size() < 2) throw std::invalid_argument("compare_orderings: need at least two orderings");
  OrderingRanking out;
  std::vector<std::size_t> converged;
  std::vector<std::size_t> stalled;
  for (std::size_t i = 0; i < orderings.size(); ++i) {
    const ScheduleTrace t = run_schedule(initial, orderings[i], engine);
    out.outcomes.push_back({orderings[i].label(), t.converged, t.rounds_applied(),
                            t.last().fidelity, t.last().cumulative_yield});
    (t.converged ? converged : stalled).push_back(i);
  }

  auto better = [&](std::size_t a, std::size_t b) {
    const auto& x = out.outcomes[a];
    const auto& y = out.outcomes[b];
    if (metric == RankingMetric::Rounds) return x.rounds < y.rounds;
    return x.cumulative_yield > y.cumulative_yield + kTieTol;
  };
  auto tied = [&](std::size_t a, std::size_t b) { return !better(a, b) && !better(b, a); };

  std::stable_sort(converged.begin(), converged.end(), better);
  for (std::size_t idx : converged) {
    if (!out.ranking.empty() && tied(out.ranking.back().front(), idx)) {
      out.ranking.back().push_back(idx);
    } else {
      out.ranking.push_back({idx});
    }
  }
  if (!stalled.empty()) out.ranking.push_back(stalled);
  return out;
}

}  // namespace ghzpur
