#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ghzpur/optics_qnd.hpp"

using namespace ghzpur;
using P = Polarization;

TEST(Kerr, ThetaRange) {
  EXPECT_THROW(KerrInteraction(0.0), std::invalid_argument);
  EXPECT_THROW(KerrInteraction(4.0), std::invalid_argument);
  EXPECT_TRUE(KerrInteraction::pi().is_pi());
  EXPECT_FALSE(KerrInteraction(1.0).is_pi());
}

TEST(Kerr, SinglePhotonPicksUpTheta) {
  const KerrInteraction k(0.3);
  const ProbeBeam p(2.0);
  EXPECT_DOUBLE_EQ(kerr_evolve(0, p, k).accumulated_phase(), 0.0);
  EXPECT_DOUBLE_EQ(kerr_evolve(1, p, k).accumulated_phase(), 0.3);
  EXPECT_THROW(kerr_evolve(2, p, k), std::invalid_argument);
  EXPECT_THROW(ProbeBeam(0.0), std::invalid_argument);
}

TEST(Qnd, ShiftClassesPerPolarizationPair) {
  EXPECT_EQ(qnd_parity_shift(P::H, P::H), ShiftClass::Theta);
  EXPECT_EQ(qnd_parity_shift(P::V, P::V), ShiftClass::Theta);
  EXPECT_EQ(qnd_parity_shift(P::H, P::V), ShiftClass::TwoTheta);
  EXPECT_EQ(qnd_parity_shift(P::V, P::H), ShiftClass::Zero);
}

TEST(Qnd, ProbePhaseMatchesShiftClass) {
  const KerrInteraction k(0.4);
  const ProbeBeam p(1.0);
  EXPECT_NEAR(qnd_probe(P::H, P::H, p, k).accumulated_phase(), 0.4, 1e-15);
  EXPECT_NEAR(qnd_probe(P::V, P::V, p, k).accumulated_phase(), 0.4, 1e-15);
  EXPECT_NEAR(qnd_probe(P::H, P::V, p, k).accumulated_phase(), 0.8, 1e-15);
  EXPECT_NEAR(qnd_probe(P::V, P::H, p, k).accumulated_phase(), 0.0, 1e-15);
}

TEST(Qnd, ReadingAtGenericTheta) {
  const KerrInteraction k(0.5);
  EXPECT_EQ(read_phase_shift(0.5, k).verdict, Verdict::Even);
  EXPECT_EQ(read_phase_shift(0.0, k).verdict, Verdict::Odd);
  EXPECT_EQ(read_phase_shift(1.0, k).shift_class, ShiftClass::TwoTheta);
  EXPECT_EQ(read_phase_shift(2.0, k).verdict, Verdict::Indeterminate);
  EXPECT_FALSE(read_phase_shift(2.0, k).shift_class.has_value());
}

TEST(Qnd, AtPiTheTwoOddShiftsCoincide) {
  const KerrInteraction k = KerrInteraction::pi();
  const double two_pi = 2 * std::numbers::pi;
  EXPECT_EQ(read_phase_shift(two_pi, k).shift_class, ShiftClass::Zero);
  EXPECT_EQ(read_phase_shift(std::numbers::pi, k).verdict, Verdict::Even);
}

TEST(Mode, Validation) {
  DiscriminationMode m = DiscriminationMode::even_plus_odd();
  m.kerr = KerrInteraction(1.0);
  EXPECT_THROW(m.validate(), std::invalid_argument);
  DiscriminationMode e = DiscriminationMode::even_only();
  e.misclassification_probability = 0.5;
  EXPECT_THROW(e.validate(), std::invalid_argument);
  e.misclassification_probability = 0.1;
  EXPECT_NO_THROW(e.validate());
  EXPECT_THROW(discriminate(ShiftClass::Theta, e, nullptr), std::invalid_argument);
}

TEST(Mode, NamesRoundTrip) {
  for (ModeKind k : {ModeKind::EvenOnly, ModeKind::EvenPlusOdd, ModeKind::SixModePBS}) {
    EXPECT_EQ(parse_mode(mode_name(k)), k);
  }
  EXPECT_THROW(parse_mode("odd-only"), std::invalid_argument);
}

TEST(Discriminate, IdealVerdicts) {
  const auto m = DiscriminationMode::even_only();
  EXPECT_EQ(discriminate(ShiftClass::Theta, m, nullptr), Verdict::Even);
  EXPECT_EQ(discriminate(ShiftClass::Zero, m, nullptr), Verdict::Odd);
  EXPECT_EQ(discriminate(ShiftClass::TwoTheta, m, nullptr), Verdict::Odd);
}

TEST(Discriminate, MisreadRate) {
  DiscriminationMode m = DiscriminationMode::even_only();
  m.misclassification_probability = 0.2;
  RandomSource rng(7);
  const int trials = 200000;
  int flipped = 0;
  for (int i = 0; i < trials; ++i) flipped += discriminate(ShiftClass::Theta, m, &rng) == Verdict::Odd;
  const double sigma = std::sqrt(0.2 * 0.8 / trials);
  EXPECT_NEAR(flipped / double(trials), 0.2, 4 * sigma);
}

TEST(SixMode, KeepsOnlyIdenticalStrings) {
  EXPECT_TRUE(six_mode_keep("011", "011"));
  EXPECT_FALSE(six_mode_keep("011", "100"));
  EXPECT_FALSE(six_mode_keep(0b000, 0b111));
  EXPECT_THROW(six_mode_keep("01", "011"), std::invalid_argument);
}
