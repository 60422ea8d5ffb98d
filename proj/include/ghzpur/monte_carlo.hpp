// Trial-by-trial sampler for one purification step: draws label pairs,
// simulates the detector verdicts per party (including misreads) and tracks
// the kept copy's label through the measurement and correction.
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "ghzpur/ghz_core.hpp"
#include "ghzpur/optics_qnd.hpp"
#include "ghzpur/purify.hpp"

namespace ghzpur {

struct McStepReport {
  std::uint64_t trials = 0;
  std::uint64_t kept = 0;
  std::uint64_t kept_on_target = 0;
  /// Kept trials per read verdict pattern ("even" / "odd").
  std::map<std::string, std::uint64_t> kept_by_branch;
  /// Kept-output label counts, keyed by GhzLabel::index().
  std::map<std::size_t, std::uint64_t> output_counts;

  double keep_rate() const;
  double fidelity() const;
};

/// Throws std::invalid_argument for trials == 0, and for epsilon > 0 with
/// theta != pi (a misread is only harmless to coherence when the detector
/// cannot tell the two odd shifts apart).
McStepReport mc_sample_step(const GhzDiagonalEnsemble& ens, StepKind step,
                            const DiscriminationMode& mode, std::uint64_t trials,
                            std::uint64_t seed,
                            const CorrectionRule& rule = default_correction_rule());

}  // namespace ghzpur
