#include "ghzpur/purify.hpp"

#include <cmath>
#include <stdexcept>

#include "ghzpur/dense_ops.hpp"

namespace ghzpur {

namespace {

constexpr double kUnderflow = 1e-300;

std::vector<double> unnormalized_output(StepKind step, const GhzDiagonalEnsemble& ens,
                                        double pattern_weight) {
  const int n = ens.n_qubits();
  const auto& w = ens.weights();
  std::vector<double> out(w.size(), 0.0);
  const std::uint64_t reps = std::uint64_t{1} << (n - 1);
  const Sign signs[] = {Sign::Plus, Sign::Minus};
  if (step == StepKind::P1) {
    for (std::uint64_t e = 0; e < reps; ++e) {
      for (Sign s1 : signs) {
        for (Sign s2 : signs) {
          const double pair = w[GhzLabel(n, e, s1).index()] * w[GhzLabel(n, e, s2).index()];
          out[GhzLabel(n, e, sign_product(s1, s2)).index()] += pattern_weight * pair;
        }
      }
    }
  } else {
    for (Sign s : signs) {
      for (std::uint64_t e1 = 0; e1 < reps; ++e1) {
        const double w1 = w[GhzLabel(n, e1, s).index()];
        if (w1 == 0.0) continue;
        for (std::uint64_t e2 = 0; e2 < reps; ++e2) {
          const double pair = w1 * w[GhzLabel(n, e2, s).index()];
          out[GhzLabel(n, e1 ^ e2, s).index()] += pattern_weight * pair;
        }
      }
    }
  }
  return out;
}

}  // namespace

std::string_view step_name(StepKind step) {
  switch (step) {
    case StepKind::P1: return "P1";
    case StepKind::P2: return "P2";
  }
  throw std::invalid_argument("unknown step kind");
}

StepKind parse_step(std::string_view name) {
  if (name == "P1") return StepKind::P1;
  if (name == "P2") return StepKind::P2;
  throw std::invalid_argument("unknown step '" + std::string(name) + "' (expected P1 or P2)");
}

std::string_view branch_name(ParityBranch branch) {
  return branch == ParityBranch::Even ? "even" : "odd";
}

std::vector<ParityBranch> accepted_branches(StepKind step, const DiscriminationMode& mode,
                                            int n_qubits) {
  mode.validate();
  if (step != StepKind::P1 && step != StepKind::P2) {
    throw std::invalid_argument("unknown step kind");
  }
  std::vector<ParityBranch> out{ParityBranch::Even};
  if (mode.kind == ModeKind::EvenPlusOdd && (step == StepKind::P1 || n_qubits % 2 == 0)) {
    out.push_back(ParityBranch::Odd);
  }
  return out;
}

std::uint64_t realignment_mask(ParityBranch branch, int n_qubits) {
  return branch == ParityBranch::Odd ? all_ones(n_qubits) : 0;
}

Correction correction_for_outcome(StepKind step, int n_qubits, std::uint64_t outcome) {
  if (outcome > all_ones(n_qubits)) {
    throw std::invalid_argument("correction_for_outcome: outcome has more than n bits");
  }
  switch (step) {
    case StepKind::P1:
      return {dense::parity(outcome) ? qubit_mask(n_qubits, 0) : 0};
    case StepKind::P2:
      return {outcome};
  }
  throw std::invalid_argument("correction_for_outcome: unknown step kind");
}

Correction correction_for_outcome(StepKind step, std::string_view outcome) {
  return correction_for_outcome(step, static_cast<int>(outcome.size()), string_to_bits(outcome));
}

CorrectionRule default_correction_rule() {
  return [](StepKind step, int n, std::uint64_t outcome) {
    return correction_for_outcome(step, n, outcome);
  };
}

StepReport purify_step(StepKind step, const GhzDiagonalEnsemble& ens,
                       const DiscriminationMode& mode) {
  if (!mode.is_ideal()) {
    throw std::invalid_argument(
        "closed-form steps model an ideal detector; use the Monte Carlo sampler for epsilon > 0");
  }
  const int n = ens.n_qubits();
  const auto branches = accepted_branches(step, mode, n);
  const double pattern_weight =
      step == StepKind::P1 ? 0.5 : std::ldexp(1.0, -(n - 1));

  std::vector<double> out = unnormalized_output(step, ens, pattern_weight);
  double per_branch = 0.0;
  for (double v : out) per_branch += v;
  const double keep = per_branch * static_cast<double>(branches.size());
  if (!(keep >= kUnderflow)) {
    throw std::domain_error("purification step: keep probability underflow");
  }
  for (double& v : out) v /= per_branch;

  StepReport report{GhzDiagonalEnsemble(n, std::move(out)), keep, {}, {}};
  // Every outcome of the measured copy is equally likely within a kept
  // pattern (the rotated copy is uniform in magnitude).
  const std::uint64_t outcomes = std::uint64_t{1} << n;
  const double per_outcome = per_branch / static_cast<double>(outcomes);
  for (ParityBranch b : branches) {
    for (std::uint64_t m = 0; m < outcomes; ++m) {
      report.branch_stats[{b, m}] = per_outcome;
      if (correction_for_outcome(step, n, m).is_identity()) {
        ++report.corrections.identity;
      } else {
        ++report.corrections.phase_flip;
      }
      if (realignment_mask(b, n) != 0) ++report.corrections.realigned;
    }
  }
  return report;
}

StepReport p1_step(const GhzDiagonalEnsemble& ens, const DiscriminationMode& mode) {
  return purify_step(StepKind::P1, ens, mode);
}

StepReport p2_step(const GhzDiagonalEnsemble& ens, const DiscriminationMode& mode) {
  return purify_step(StepKind::P2, ens, mode);
}

double recurrence_fidelity(double f) {
  const double a = f * f;
  const double b = (1.0 - f) * (1.0 - f);
  return a / (a + b);
}

}  // namespace ghzpur
