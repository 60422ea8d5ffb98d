#include "ghzpur/optics_qnd.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ghzpur {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phase) {
  double p = std::fmod(phase, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  if (p >= kTwoPi) p -= kTwoPi;
  return p;
}

bool phase_close(double a, double b) {
  const double d = std::abs(wrap_phase(a) - wrap_phase(b));
  return d <= kPhaseTol || kTwoPi - d <= kPhaseTol;
}

}  // namespace

KerrInteraction::KerrInteraction(double theta) : theta_(theta) {
  if (!(theta > 0.0 && theta <= std::numbers::pi + kPhaseTol)) {
    throw std::invalid_argument("KerrInteraction: theta must lie in (0, pi]");
  }
}

KerrInteraction KerrInteraction::pi() { return KerrInteraction(std::numbers::pi); }

bool KerrInteraction::is_pi() const { return std::abs(theta_ - std::numbers::pi) <= kPhaseTol; }

ProbeBeam::ProbeBeam(std::complex<double> alpha, double accumulated_phase)
    : alpha_(alpha), phase_(wrap_phase(accumulated_phase)) {
  if (std::abs(alpha) == 0.0) throw std::invalid_argument("ProbeBeam: |alpha| must be > 0");
}

ProbeBeam kerr_evolve(int photon_number, const ProbeBeam& probe, const KerrInteraction& kerr) {
  if (photon_number != 0 && photon_number != 1) {
    throw std::invalid_argument("kerr_evolve: photon number must be 0 or 1");
  }
  return ProbeBeam(probe.alpha(), probe.accumulated_phase() + photon_number * kerr.theta());
}

ShiftClass qnd_parity_shift(Polarization up, Polarization down) {
  if (up == down) return ShiftClass::Theta;
  return up == Polarization::H ? ShiftClass::TwoTheta : ShiftClass::Zero;
}

ProbeBeam qnd_probe(Polarization up, Polarization down, const ProbeBeam& probe,
                    const KerrInteraction& kerr) {
  const ProbeBeam after_ck1 = kerr_evolve(up == Polarization::H ? 1 : 0, probe, kerr);
  return kerr_evolve(down == Polarization::V ? 1 : 0, after_ck1, kerr);
}

ParityReading read_phase_shift(double shift, const KerrInteraction& kerr) {
  const double theta = kerr.theta();
  // theta itself can coincide with 0 or 2 theta only if theta = 0 mod 2pi,
  // which the KerrInteraction range excludes.
  if (phase_close(shift, theta)) return {ShiftClass::Theta, Verdict::Even};
  if (phase_close(shift, 0.0)) return {ShiftClass::Zero, Verdict::Odd};
  if (phase_close(shift, 2.0 * theta)) return {ShiftClass::TwoTheta, Verdict::Odd};
  return {std::nullopt, Verdict::Indeterminate};
}

void DiscriminationMode::validate() const {
  if (!(misclassification_probability >= 0.0 && misclassification_probability < 0.5)) {
    throw std::invalid_argument("misclassification probability must lie in [0, 0.5)");
  }
  if (kind == ModeKind::EvenPlusOdd && !kerr.is_pi()) {
    throw std::invalid_argument("even-plus-odd discrimination requires theta = pi");
  }
}

std::string_view mode_name(ModeKind kind) {
  switch (kind) {
    case ModeKind::EvenOnly: return "even-only";
    case ModeKind::EvenPlusOdd: return "even-plus-odd";
    case ModeKind::SixModePBS: return "six-mode-pbs";
  }
  throw std::invalid_argument("unknown discrimination mode");
}

ModeKind parse_mode(std::string_view name) {
  if (name == "even-only") return ModeKind::EvenOnly;
  if (name == "even-plus-odd") return ModeKind::EvenPlusOdd;
  if (name == "six-mode-pbs") return ModeKind::SixModePBS;
  throw std::invalid_argument("unknown mode '" + std::string(name) +
                              "' (expected even-only, even-plus-odd or six-mode-pbs)");
}

double uniform01(RandomSource& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Verdict discriminate(ShiftClass shift, const DiscriminationMode& mode, RandomSource* rng) {
  mode.validate();
  Verdict v = shift == ShiftClass::Theta ? Verdict::Even : Verdict::Odd;
  const double eps = mode.misclassification_probability;
  if (eps > 0.0) {
    if (rng == nullptr) {
      throw std::invalid_argument("discriminate: epsilon > 0 needs a random source");
    }
    if (uniform01(*rng) < eps) v = v == Verdict::Even ? Verdict::Odd : Verdict::Even;
  }
  return v;
}

bool six_mode_keep(std::uint64_t first, std::uint64_t second) { return first == second; }

bool six_mode_keep(std::string_view first, std::string_view second) {
  if (first.size() != second.size()) {
    throw std::invalid_argument("six_mode_keep: strings differ in length");
  }
  return first == second;
}

}  // namespace ghzpur
