// Self-check suite behind `ghzpur validate`: oracle vs closed-form
// equivalence, Hadamard table, published state vectors, correction tables and
// probability bookkeeping.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ghzpur/ghz_core.hpp"
#include "ghzpur/purify.hpp"

namespace ghzpur {

struct ValidationOptions {
  int n_max = 4;
  std::uint64_t seed = 1;
  int cases = 200;
  /// Correction lookup used by the oracle-side checks (replaceable to
  /// exercise fault localization).
  CorrectionRule rule = default_correction_rule();
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  const CheckResult* find(const std::string& name) const;
};

/// Throws std::invalid_argument unless 2 <= n_max <= 5 and cases >= 1.
ValidationReport run_validation(const ValidationOptions& options);

/// Random GHZ-diagonal ensemble; roughly a third of the draws zero out
/// some weights so sparse inputs are covered too.
GhzDiagonalEnsemble random_ensemble(int n_qubits, std::mt19937_64& rng);

/// Correction rule that ignores the P2 outcome (identity for every P2
/// branch); P1 is left intact.
CorrectionRule corrupted_p2_rule();

}  // namespace ghzpur
