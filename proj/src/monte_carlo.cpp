#include "ghzpur/monte_carlo.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ghzpur/dense_ops.hpp"

namespace ghzpur {

namespace {

std::size_t sample_index(const std::vector<double>& cdf, RandomSource& rng) {
  const double u = uniform01(rng) * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                           static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

std::uint64_t random_bits(RandomSource& rng, int n) { return rng() & all_ones(n); }

/// Computational term of one copy, in the step's frame.  P1: one of the two
/// GHZ branches.  P2: a Hadamard-frame string, uniform over the strings
/// whose weight parity matches the sign.
std::uint64_t sample_term(const GhzLabel& label, StepKind step, RandomSource& rng) {
  const int n = label.n_qubits();
  if (step == StepKind::P1) {
    return (rng() & 1u) ? label.rep() ^ all_ones(n) : label.rep();
  }
  std::uint64_t x = random_bits(rng, n);
  const int want = label.sign() == Sign::Minus ? 1 : 0;
  if (dense::parity(x) != want) x ^= 1u;
  return x;
}

Polarization polarization(std::uint64_t bits, int n, int qubit) {
  return (bits & qubit_mask(n, qubit)) ? Polarization::V : Polarization::H;
}

}  // namespace

double McStepReport::keep_rate() const {
  return trials == 0 ? 0.0 : static_cast<double>(kept) / static_cast<double>(trials);
}

double McStepReport::fidelity() const {
  return kept == 0 ? 0.0 : static_cast<double>(kept_on_target) / static_cast<double>(kept);
}

McStepReport mc_sample_step(const GhzDiagonalEnsemble& ens, StepKind step,
                            const DiscriminationMode& mode, std::uint64_t trials,
                            std::uint64_t seed, const CorrectionRule& rule) {
  if (trials == 0) throw std::invalid_argument("mc_sample_step: trials must be >= 1");
  mode.validate();
  if (!mode.is_ideal() && !mode.kerr.is_pi()) {
    throw std::invalid_argument("mc_sample_step: epsilon > 0 requires theta = pi");
  }
  const int n = ens.n_qubits();
  const auto branches = accepted_branches(step, mode, n);
  const bool odd_kept = branches.size() > 1;

  std::vector<double> cdf(ens.weights().size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) cdf[i] = (acc += ens.weights()[i]);

  RandomSource rng(seed);
  McStepReport report;
  report.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const GhzLabel a = GhzLabel::from_index(n, sample_index(cdf, rng));
    const GhzLabel b = GhzLabel::from_index(n, sample_index(cdf, rng));
    const std::uint64_t x1 = sample_term(a, step, rng);
    const std::uint64_t x2 = sample_term(b, step, rng);

    ParityBranch read = ParityBranch::Even;
    if (mode.kind == ModeKind::SixModePBS) {
      if (!six_mode_keep(x1, x2)) continue;
    } else {
      int evens = 0;
      for (int q = 0; q < n; ++q) {
        const ShiftClass shift = qnd_parity_shift(polarization(x1, n, q), polarization(x2, n, q));
        if (discriminate(shift, mode, &rng) == Verdict::Even) ++evens;
      }
      if (evens == n) {
        read = ParityBranch::Even;
      } else if (evens == 0 && odd_kept) {
        read = ParityBranch::Odd;
      } else {
        continue;
      }
    }

    const std::uint64_t outcome = random_bits(rng, n);
    const std::uint64_t mask = rule(step, n, outcome).phase_flip_mask;
    GhzLabel out = GhzLabel::target(n);
    if (step == StepKind::P1) {
      const int flips = dense::parity(outcome) + dense::parity(mask);
      Sign s = sign_product(a.sign(), b.sign());
      if (flips % 2) s = sign_product(s, Sign::Minus);
      out = GhzLabel(n, a.rep(), s);
    } else {
      out = GhzLabel::canonical(n, a.rep() ^ b.rep() ^ outcome ^ mask, a.sign());
    }

    ++report.kept;
    ++report.kept_by_branch[std::string(branch_name(read))];
    ++report.output_counts[out.index()];
    if (out.is_target()) ++report.kept_on_target;
  }
  return report;
}

}  // namespace ghzpur
