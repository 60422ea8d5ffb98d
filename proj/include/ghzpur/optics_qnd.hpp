// Optical layer: cross-Kerr probe evolution, the two-medium QND parity
// detector, homodyne verdicts and the PBS six-mode post-selection.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace ghzpur {

inline constexpr double kPhaseTol = 1e-9;

/// Probe phase picked up per signal photon, theta = chi * t.
class KerrInteraction {
 public:
  /// Throws std::invalid_argument unless 0 < theta <= pi.
  explicit KerrInteraction(double theta);
  static KerrInteraction pi();

  double theta() const { return theta_; }
  bool is_pi() const;

 private:
  double theta_;
};

class ProbeBeam {
 public:
  /// Throws std::invalid_argument if |alpha| == 0.  The phase is reduced
  /// into [0, 2pi).
  explicit ProbeBeam(std::complex<double> alpha, double accumulated_phase = 0.0);

  std::complex<double> alpha() const { return alpha_; }
  double accumulated_phase() const { return phase_; }

 private:
  std::complex<double> alpha_;
  double phase_;
};

/// |n>_s |alpha>_p -> |n>_s |alpha e^{i n theta}>_p for n in {0, 1}.
ProbeBeam kerr_evolve(int photon_number, const ProbeBeam& probe, const KerrInteraction& kerr);

enum class Polarization { H, V };
enum class ShiftClass { Theta, Zero, TwoTheta };
enum class Verdict { Even, Odd, Indeterminate };

struct ParityReading {
  std::optional<ShiftClass> shift_class;  // empty when no class matches
  Verdict verdict = Verdict::Indeterminate;
};

/// Shift table of the detector: HH, VV -> theta; HV -> 2 theta; VH -> 0.
/// `up` enters spatial mode b1, `down` enters b2.
ShiftClass qnd_parity_shift(Polarization up, Polarization down);

/// Runs the probe through both Kerr media: the first couples to the |H>
/// path of b1, the second to the |V> path of b2.
ProbeBeam qnd_probe(Polarization up, Polarization down, const ProbeBeam& probe,
                    const KerrInteraction& kerr);

/// Classifies a probe phase shift (mod 2pi) against {0, theta, 2 theta}.
/// At theta = pi the 0 and 2 theta classes coincide and are reported as Zero.
ParityReading read_phase_shift(double shift, const KerrInteraction& kerr);

enum class ModeKind { EvenOnly, EvenPlusOdd, SixModePBS };

/// How the parties turn probe readings into keep/discard decisions.
/// `kerr` is the detector the readings come from; epsilon is a symmetric
/// per-party Even/Odd misread probability (0 for the ideal detector).
struct DiscriminationMode {
  ModeKind kind = ModeKind::EvenOnly;
  double misclassification_probability = 0.0;
  KerrInteraction kerr = KerrInteraction::pi();

  static DiscriminationMode even_only() { return {ModeKind::EvenOnly}; }
  static DiscriminationMode even_plus_odd() { return {ModeKind::EvenPlusOdd}; }
  static DiscriminationMode six_mode_pbs() { return {ModeKind::SixModePBS}; }

  /// Throws std::invalid_argument for epsilon outside [0, 0.5) or
  /// EvenPlusOdd with theta != pi.
  void validate() const;
  bool is_ideal() const { return misclassification_probability == 0.0; }
};

std::string_view mode_name(ModeKind kind);
/// Accepts "even-only", "even-plus-odd", "six-mode-pbs".
ModeKind parse_mode(std::string_view name);

using RandomSource = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(RandomSource& rng);

/// Homodyne verdict for one party.  With epsilon > 0 the Even/Odd verdict
/// is flipped with probability epsilon, drawn from `rng` (required then).
Verdict discriminate(ShiftClass shift, const DiscriminationMode& mode,
                     RandomSource* rng = nullptr);

/// True iff every party sees one photon per PBS output mode, i.e. the two
/// computational strings agree bitwise.
bool six_mode_keep(std::uint64_t first, std::uint64_t second);
bool six_mode_keep(std::string_view first, std::string_view second);

}  // namespace ghzpur
