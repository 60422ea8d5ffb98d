#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ghzpur/monte_carlo.hpp"

using namespace ghzpur;

namespace {

constexpr std::uint64_t kTrials = 200000;

GhzDiagonalEnsemble binary(double f, const GhzLabel& err) {
  return build_binary_ensemble(f, err, err.n_qubits()).ensemble;
}

void expect_within_3_sigma(const McStepReport& mc, double keep, double fidelity) {
  const double sk = std::sqrt(keep * (1 - keep) / double(mc.trials));
  EXPECT_NEAR(mc.keep_rate(), keep, 3 * sk);
  const double sf = std::sqrt(fidelity * (1 - fidelity) / double(mc.kept));
  EXPECT_NEAR(mc.fidelity(), fidelity, 3 * sf + 1e-12);
}

}  // namespace

TEST(MonteCarlo, MatchesClosedFormP1) {
  const auto ens = binary(0.8, GhzLabel::single_flip(3, 0));
  const auto mc = mc_sample_step(ens, StepKind::P1, DiscriminationMode::even_only(), kTrials, 11);
  expect_within_3_sigma(mc, 0.34, 16.0 / 17.0);
  EXPECT_EQ(mc.kept_by_branch.count("odd"), 0u);
}

TEST(MonteCarlo, MatchesClosedFormP2) {
  const auto ens = binary(0.8, GhzLabel(3, 0, Sign::Minus));
  const auto mc = mc_sample_step(ens, StepKind::P2, DiscriminationMode::even_only(), kTrials, 12);
  expect_within_3_sigma(mc, 0.17, 16.0 / 17.0);
}

TEST(MonteCarlo, EvenPlusOddKeepsBothBranches) {
  const auto ens = binary(0.8, GhzLabel::single_flip(3, 0));
  const auto mc = mc_sample_step(ens, StepKind::P1, DiscriminationMode::even_plus_odd(), kTrials, 13);
  expect_within_3_sigma(mc, 0.68, 16.0 / 17.0);
  EXPECT_GT(mc.kept_by_branch.at("odd"), 0u);
  EXPECT_GT(mc.kept_by_branch.at("even"), 0u);
}

TEST(MonteCarlo, SameSeedSameTallies) {
  const auto ens = build_werner(0.7, 4);
  const auto a = mc_sample_step(ens, StepKind::P2, DiscriminationMode::even_plus_odd(), 50000, 99);
  const auto b = mc_sample_step(ens, StepKind::P2, DiscriminationMode::even_plus_odd(), 50000, 99);
  EXPECT_EQ(a.kept, b.kept);
  EXPECT_EQ(a.kept_on_target, b.kept_on_target);
  EXPECT_EQ(a.output_counts, b.output_counts);
  const auto c = mc_sample_step(ens, StepKind::P2, DiscriminationMode::even_plus_odd(), 50000, 100);
  EXPECT_NE(a.output_counts, c.output_counts);
}

TEST(MonteCarlo, MisreadsLowerTheKeepRate) {
  // Matched pairs give an all-even or all-odd pattern (half each); a misread
  // on any party rejects them.  Cross pairs give a one-odd or two-odd pattern
  // and are kept when exactly the odd parties are misread.
  const double eps = 0.01;
  DiscriminationMode m = DiscriminationMode::even_only();
  m.misclassification_probability = eps;
  const double q = 1 - eps;
  const double keep = 0.34 * (q * q * q + eps * eps * eps) + 0.16 * (eps * q * q + eps * eps * q);
  const auto mc = mc_sample_step(binary(0.8, GhzLabel::single_flip(3, 0)), StepKind::P1, m, kTrials, 5);
  EXPECT_NEAR(mc.keep_rate(), keep, 3 * std::sqrt(keep * (1 - keep) / kTrials));
  EXPECT_LT(mc.keep_rate(), 0.34);
}

TEST(MonteCarlo, Preconditions) {
  const auto ens = build_werner(0.8, 3);
  EXPECT_THROW(mc_sample_step(ens, StepKind::P1, DiscriminationMode::even_only(), 0, 1), std::invalid_argument);
  DiscriminationMode m = DiscriminationMode::even_only();
  m.misclassification_probability = 0.01;
  m.kerr = KerrInteraction(1.0);
  EXPECT_THROW(mc_sample_step(ens, StepKind::P1, m, 10, 1), std::invalid_argument);
}
