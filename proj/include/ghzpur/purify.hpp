// Bit-flip (P1) and phase-flip (P2) purification steps as closed-form maps
// on GHZ-diagonal ensembles.
//
// Both steps pair two copies, compare them party by party with the parity
// detector and keep a pair only for an accepted all-party verdict pattern.
// The surviving copy is then disentangled from the measured copy (rotated,
// measured in Z) and fixed up with an outcome-dependent correction.
//
// P1 works in the computational frame:
//   labels (e, s1), (e', s2) survive iff e == e'; the kept copy becomes
//   (e, s1 s2) and every accepted pattern contributes 1/2 of the pair weight.
// P2 runs the same machinery in the Hadamard frame (H^n on both copies
// before, H^n on the kept copy after):
//   labels (e1, s), (e2, s') survive iff s == s'; the kept copy becomes
//   (e1 xor e2, s) and every accepted pattern contributes 2^-(n-1).
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ghzpur/ghz_core.hpp"
#include "ghzpur/optics_qnd.hpp"

namespace ghzpur {

enum class StepKind { P1, P2 };

std::string_view step_name(StepKind step);
/// Accepts "P1" / "P2".
StepKind parse_step(std::string_view name);

/// All-party verdict pattern a pair is kept under.
enum class ParityBranch { Even, Odd };

std::string_view branch_name(ParityBranch branch);

/// Verdict patterns the protocol keeps.  EvenOnly and SixModePBS keep the
/// all-even pattern.  EvenPlusOdd adds the all-odd pattern for P1, and for
/// P2 only at even n: in the Hadamard frame the all-odd pattern of an odd-n
/// register holds nothing but opposite-sign pairs.
std::vector<ParityBranch> accepted_branches(StepKind step, const DiscriminationMode& mode,
                                            int n_qubits);

/// Bits flipped on the measured copy before it is rotated and measured
/// (all of them for the all-odd pattern).
std::uint64_t realignment_mask(ParityBranch branch, int n_qubits);

/// Fix-up applied to the kept copy after the measured copy returned
/// `outcome`.  Phase flips act in the step's working frame (the Hadamard
/// frame for P2, i.e. before the closing H^n).
struct Correction {
  std::uint64_t phase_flip_mask = 0;

  bool is_identity() const { return phase_flip_mask == 0; }
  friend bool operator==(const Correction&, const Correction&) = default;
};

/// P1: identity for an even number of 1s, otherwise a phase flip on qubit 1.
/// P2: phase flips on exactly the qubits whose outcome bit is 1, which
/// cancels the sign signature (-1)^(m.k) the X-basis outcome k imprints.
Correction correction_for_outcome(StepKind step, int n_qubits, std::uint64_t outcome);
Correction correction_for_outcome(StepKind step, std::string_view outcome);

/// Injectable correction lookup (the oracle and the sampler take one so a
/// faulty table can be exercised).
using CorrectionRule = std::function<Correction(StepKind, int, std::uint64_t)>;
CorrectionRule default_correction_rule();

struct BranchKey {
  ParityBranch branch;
  std::uint64_t outcome;
  auto operator<=>(const BranchKey&) const = default;
};

struct CorrectionCounts {
  std::size_t identity = 0;
  std::size_t phase_flip = 0;
  /// Branches that needed the all-qubit bit flip on the measured copy.
  std::size_t realigned = 0;
};

struct StepReport {
  GhzDiagonalEnsemble output;
  double keep_probability = 0.0;
  /// Probability (per input pair) of each kept (verdict pattern, outcome).
  std::map<BranchKey, double> branch_stats;
  CorrectionCounts corrections;
};

/// Ideal-detector steps; throws std::invalid_argument for epsilon > 0 (the
/// noisy detector is handled by the Monte Carlo sampler) and
/// std::domain_error if the keep probability underflows 1e-300.
StepReport p1_step(const GhzDiagonalEnsemble& ens, const DiscriminationMode& mode);
StepReport p2_step(const GhzDiagonalEnsemble& ens, const DiscriminationMode& mode);
StepReport purify_step(StepKind step, const GhzDiagonalEnsemble& ens,
                       const DiscriminationMode& mode);

/// F^2 / (F^2 + (1 - F)^2).
double recurrence_fidelity(double f);

}  // namespace ghzpur
