#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ghzpur/dense_ops.hpp"
#include "ghzpur/exact_engine.hpp"
#include "ghzpur/reference_states.hpp"
#include "ghzpur/validate.hpp"

using namespace ghzpur;
namespace pp = ghzpur::pure_pipeline;

namespace {

DensityMatrix binary_rho(double f, const GhzLabel& err) {
  return ensemble_to_density(build_binary_ensemble(f, err, err.n_qubits()).ensemble);
}

}  // namespace

TEST(Exact, P1BinaryInput) {
  const auto r = p1_exact(binary_rho(0.8, GhzLabel::single_flip(3, 0)), DiscriminationMode::even_only());
  EXPECT_NEAR(r.keep_probability, 0.34, 1e-12);
  EXPECT_NEAR(r.output.expectation(ghz_label_to_state(GhzLabel::target(3), 3)), 16.0 / 17.0, 1e-12);
  EXPECT_TRUE(r.output.is_physical());
}

TEST(Exact, P2PhaseErrorInput) {
  const auto r = p2_exact(binary_rho(0.8, GhzLabel(3, 0, Sign::Minus)), DiscriminationMode::even_only());
  EXPECT_NEAR(r.keep_probability, 0.17, 1e-12);
  EXPECT_NEAR(r.output.expectation(ghz_label_to_state(GhzLabel::target(3), 3)), 16.0 / 17.0, 1e-12);
}

TEST(Exact, OutputStaysGhzDiagonal) {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 4; ++n) {
    const auto rho = ensemble_to_density(random_ensemble(n, rng));
    for (StepKind s : {StepKind::P1, StepKind::P2}) {
      const auto ex = ghz_diagonal_extract(exact_step(s, rho, DiscriminationMode::even_plus_odd()).output);
      EXPECT_LT(ex.residual_norm, 1e-10);
    }
  }
}

TEST(Exact, SizeBound) {
  EXPECT_THROW(tensor_pair(ensemble_to_density(build_werner(0.8, 6))), std::invalid_argument);
}

TEST(Exact, RejectsNoisyDetector) {
  DiscriminationMode m = DiscriminationMode::even_only();
  m.misclassification_probability = 0.05;
  EXPECT_THROW(p1_exact(binary_rho(0.8, GhzLabel::single_flip(3, 0)), m), std::invalid_argument);
}

TEST(Exact, ParityProjectionOfTargetPair) {
  const auto t = ghz_label_to_state(GhzLabel::target(3), 3);
  const Eigen::VectorXcd pair = pp::pair_state(t, t);
  const Eigen::VectorXcd even = pp::project(pair, 3, 0);
  EXPECT_NEAR(even.squaredNorm(), 0.5, 1e-15);
  EXPECT_LT(dense::distance_up_to_phase(even / even.norm(), reference::even_target_pair()), 1e-15);
}

TEST(Exact, OddPatternOfQubitOneErrorPair) {
  // Error on qubit 1 in both copies, all-odd pattern: |100011> + |011100>.
  const auto e = ghz_label_to_state(GhzLabel::single_flip(3, 0), 3);
  const Eigen::VectorXcd odd = pp::project(pp::pair_state(e, e), 3, 0b111);
  const Eigen::VectorXcd want = reference::from_terms({{"100011", 1}, {"011100", 1}}, 1 / std::sqrt(2.0));
  EXPECT_LT(dense::distance_up_to_phase(odd / odd.norm(), want), 1e-15);
}

TEST(Exact, RotatedPairsMatchProductForms) {
  for (int n = 2; n <= 5; ++n) {
    const auto t = ghz_label_to_state(GhzLabel::target(n), n);
    Eigen::VectorXcd kept = pp::project(pp::pair_state(t, t), n, 0);
    kept /= kept.norm();
    EXPECT_LT(dense::distance_up_to_phase(pp::rotate_copy2(kept, n), reference::rotated_target_pair(n)),
              1e-14) << n;
  }
}

TEST(Exact, CrossPairsAreNeverKept) {
  const int n = 3;
  const auto mode = DiscriminationMode::even_plus_odd();
  EXPECT_LT(pair_kept_probability(GhzLabel::target(n), GhzLabel::single_flip(n, 1), StepKind::P1, mode), 1e-15);
  EXPECT_LT(pair_kept_probability(GhzLabel::target(n), GhzLabel(n, 0, Sign::Minus), StepKind::P2, mode), 1e-15);
  EXPECT_NEAR(pair_kept_probability(GhzLabel::target(n), GhzLabel(n, 0, Sign::Minus), StepKind::P1, mode), 1.0,
              1e-15);
}

TEST(Exact, PatternDistributionSumsToOne) {
  const auto rho = ensemble_to_density(build_werner(0.6, 4));
  for (StepKind s : {StepKind::P1, StepKind::P2}) {
    double total = 0.0;
    for (double p : parity_pattern_distribution(rho, s)) total += p;
    EXPECT_NEAR(total, 1.0, 1e-13);
  }
}

TEST(Exact, CorrectionRuleIsInjectable) {
  const auto rho = ensemble_to_density(build_werner(0.8, 3));
  const auto good = p2_exact(rho, DiscriminationMode::even_only());
  const auto bad = p2_exact(rho, DiscriminationMode::even_only(), corrupted_p2_rule());
  const auto target = ghz_label_to_state(GhzLabel::target(3), 3);
  EXPECT_NEAR(good.keep_probability, bad.keep_probability, 1e-14);
  EXPECT_GT(good.output.expectation(target) - bad.output.expectation(target), 0.1);
}

TEST(Exact, ExtractionReportsCoherences) {
  // |000><000| = (Phi+ + Phi-)(Phi+ + Phi-)^dagger / 2: off-diagonal 1/2 twice.
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
  v(0) = 1.0;
  const auto ex = ghz_diagonal_extract(DensityMatrix::from_pure(PureState(3, v)));
  EXPECT_NEAR(ex.residual_norm, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(ex.ensemble.weight(GhzLabel::target(3)), 0.5, 1e-15);
}
