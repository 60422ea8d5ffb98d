#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ghzpur/schedule.hpp"

using namespace ghzpur;

namespace {

Schedule make(std::vector<StepKind> steps, StopRule stop = FidelityThreshold{0.99},
              DiscriminationMode mode = DiscriminationMode::even_only()) {
  return {std::move(steps), stop, mode};
}

}  // namespace

TEST(Schedule, WernerConvergesWithBothSteps) {
  const auto trace = run_schedule(build_werner(0.8, 3), make({StepKind::P1, StepKind::P2}), Engine::Fast);
  EXPECT_TRUE(trace.converged);
  EXPECT_EQ(trace.rounds_applied(), 3);
  EXPECT_NEAR(trace.rows[0].fidelity, 0.825, 1e-15);
  EXPECT_FALSE(trace.rows[0].step.has_value());
  EXPECT_EQ(trace.rows[2].step, StepKind::P2);
  EXPECT_GT(trace.last().fidelity, 0.99);
  EXPECT_NEAR(ensemble_fidelity(trace.final_ensemble), trace.last().fidelity, 1e-15);
}

TEST(Schedule, FastAndExactAgreePerRound) {
  const auto s = make({StepKind::P1, StepKind::P2}, FidelityThreshold{0.99}, DiscriminationMode::even_plus_odd());
  const auto fast = run_schedule(build_werner(0.8, 3), s, Engine::Fast);
  const auto exact = run_schedule(build_werner(0.8, 3), s, Engine::Exact);
  ASSERT_EQ(fast.rows.size(), exact.rows.size());
  for (std::size_t i = 0; i < fast.rows.size(); ++i) {
    EXPECT_NEAR(fast.rows[i].fidelity, exact.rows[i].fidelity, 1e-9);
    EXPECT_NEAR(fast.rows[i].cumulative_yield, exact.rows[i].cumulative_yield, 1e-9);
  }
}

TEST(Schedule, BitFlipStepAloneStalls) {
  const auto trace = run_schedule(build_werner(0.8, 3), make({StepKind::P1}), Engine::Fast);
  EXPECT_FALSE(trace.converged);
  EXPECT_EQ(trace.rounds_applied(), kRoundCap);
  EXPECT_LT(trace.last().fidelity, 0.99);
}

TEST(Schedule, YieldHalvesKeepPerRound) {
  const auto trace = run_schedule(build_werner(0.8, 3), make({StepKind::P1}, FixedRounds{2}), Engine::Fast);
  ASSERT_EQ(trace.rows.size(), 3u);
  EXPECT_TRUE(trace.converged);
  EXPECT_DOUBLE_EQ(trace.rows[1].cumulative_yield, trace.rows[1].keep_probability / 2);
  EXPECT_DOUBLE_EQ(trace.rows[2].cumulative_yield,
                   trace.rows[1].cumulative_yield * trace.rows[2].keep_probability / 2);
}

TEST(Schedule, AlreadyAboveThreshold) {
  const auto trace = run_schedule(GhzDiagonalEnsemble::pure(GhzLabel::target(3)), make({StepKind::P1}),
                                  Engine::Fast);
  EXPECT_TRUE(trace.converged);
  EXPECT_EQ(trace.rounds_applied(), 0);
}

TEST(Schedule, RecordsEnsemblesOnRequest) {
  const auto trace =
      run_schedule(build_werner(0.8, 3), make({StepKind::P1}, FixedRounds{3}), Engine::Fast, true);
  EXPECT_EQ(trace.ensembles.size(), trace.rows.size());
}

TEST(Schedule, Validation) {
  EXPECT_THROW(make({}).validate(), std::invalid_argument);
  EXPECT_THROW(make({StepKind::P1}, FidelityThreshold{0.4}).validate(), std::invalid_argument);
  EXPECT_THROW(make({StepKind::P1}, FixedRounds{65}).validate(), std::invalid_argument);
  EXPECT_THROW(run_schedule(build_werner(0.8, 6), make({StepKind::P1}), Engine::Exact), std::invalid_argument);
  EXPECT_EQ(make({StepKind::P1, StepKind::P2}).label(), "P1,P2");
  EXPECT_EQ(parse_steps("P2, P1"), (std::vector<StepKind>{StepKind::P2, StepKind::P1}));
  EXPECT_THROW(parse_steps(""), std::invalid_argument);
  EXPECT_EQ(parse_engine("exact"), Engine::Exact);
}

TEST(Sweep, WernerInitialFidelities) {
  SweepTemplate t;
  t.schedule = make({StepKind::P1, StepKind::P2});
  const auto rows = sweep(SweepParameter::WernerX, {0.6, 0.7, 0.8, 0.9}, t);
  ASSERT_EQ(rows.size(), 4u);
  const double want[] = {0.65, 0.7375, 0.825, 0.9125};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(rows[i].initial_fidelity, want[i], 1e-15);
  for (const auto& r : rows) EXPECT_TRUE(r.converged);
}

TEST(Sweep, FidelityGridUsesTheErrorLabel) {
  SweepTemplate t;
  t.schedule = make({StepKind::P1}, FixedRounds{1});
  t.error_label = GhzLabel::single_flip(3, 0);
  const auto rows = sweep(SweepParameter::Fidelity, {0.8}, t);
  EXPECT_NEAR(rows[0].final_fidelity, 16.0 / 17.0, 1e-15);
  EXPECT_THROW(sweep(SweepParameter::Fidelity, {}, t), std::invalid_argument);
  EXPECT_THROW(sweep(SweepParameter::Fidelity, {1.5}, t), std::invalid_argument);
}

TEST(Ordering, NonConvergentOrderingRanksLast) {
  const std::vector<Schedule> orderings = {make({StepKind::P1}), make({StepKind::P1, StepKind::P2}),
                                           make({StepKind::P2, StepKind::P1})};
  const auto r = compare_orderings(build_werner(0.8, 3), orderings, Engine::Fast, RankingMetric::Rounds);
  ASSERT_EQ(r.outcomes.size(), 3u);
  EXPECT_FALSE(r.outcomes[0].converged);
  ASSERT_FALSE(r.ranking.empty());
  EXPECT_EQ(r.ranking.back(), std::vector<std::size_t>{0});
  EXPECT_THROW(compare_orderings(build_werner(0.8, 3), {orderings[0]}, Engine::Fast, RankingMetric::Yield),
               std::invalid_argument);
}
