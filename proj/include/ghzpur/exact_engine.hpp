// Brute-force two-copy oracle for P1/P2.
//
// Two-copy registers order qubits as [copy 1: qubits 1..n, copy 2: qubits
// 1..n], so a pair index is (x1 << n) | x2.  Measurement is an outcome-summed
// channel: no sampling happens here.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ghzpur/ghz_core.hpp"
#include "ghzpur/optics_qnd.hpp"
#include "ghzpur/purify.hpp"

namespace ghzpur {

/// rho (x) rho.  Throws std::invalid_argument for n > 5.
DensityMatrix tensor_pair(const DensityMatrix& rho);

struct ProjectedPair {
  Eigen::MatrixXcd op;  // unnormalized
  double probability = 0.0;
};

/// Projects every party's qubit pair (i, n + i) onto span{|00>,|11>} (Even)
/// or span{|01>,|10>} (Odd).  The Odd result also has every copy-2 qubit
/// flipped back, as the parties do before measuring.
ProjectedPair project_parity(const DensityMatrix& pair, ParityBranch branch);

/// Projection onto an arbitrary per-party parity pattern (bit set = odd at
/// that party), no realignment.  `n` is the single-copy qubit count.
ProjectedPair project_parity_pattern(const Eigen::MatrixXcd& pair, int n,
                                     std::uint64_t pattern);

/// Projector of the PBS six-mode post-selection, built from six_mode_keep.
ProjectedPair project_six_mode(const Eigen::MatrixXcd& pair, int n);

/// H on every copy-2 qubit, Z-measurement of copy 2 summed over outcomes
/// with the outcome's correction applied to copy 1, then copy 2 traced out.
/// `kept_pair` must be trace-normalized.
DensityMatrix measure_copy2_and_correct(const DensityMatrix& kept_pair, StepKind step,
                                        const CorrectionRule& rule = default_correction_rule());

struct ExactStepResult {
  DensityMatrix output;
  double keep_probability = 0.0;
  std::vector<std::pair<ParityBranch, double>> branch_probabilities;
};

ExactStepResult p1_exact(const DensityMatrix& rho, const DiscriminationMode& mode,
                         const CorrectionRule& rule = default_correction_rule());
ExactStepResult p2_exact(const DensityMatrix& rho, const DiscriminationMode& mode,
                         const CorrectionRule& rule = default_correction_rule());
ExactStepResult exact_step(StepKind step, const DensityMatrix& rho,
                           const DiscriminationMode& mode,
                           const CorrectionRule& rule = default_correction_rule());

struct GhzExtraction {
  GhzDiagonalEnsemble ensemble;
  /// Frobenius norm of the part of rho off the GHZ-basis diagonal.
  double residual_norm = 0.0;
};

GhzExtraction ghz_diagonal_extract(const DensityMatrix& rho);

/// Probability that the pure pair |a> (x) |b> is kept by `step`, obtained by
/// projecting the two-copy state vector onto every accepted pattern.
double pair_kept_probability(const GhzLabel& a, const GhzLabel& b, StepKind step,
                             const DiscriminationMode& mode);

/// Parity-pattern probabilities of rho (x) rho in the step's frame; sums to 1.
std::vector<double> parity_pattern_distribution(const DensityMatrix& rho, StepKind step);

// State-vector pipeline for pure inputs (used to reproduce intermediate
// states of the protocol).
namespace pure_pipeline {

Eigen::VectorXcd pair_state(const PureState& first, const PureState& second);
/// Unnormalized projection onto a parity pattern.
Eigen::VectorXcd project(const Eigen::VectorXcd& pair, int n, std::uint64_t pattern);
/// X on every copy-2 qubit in `mask`.
Eigen::VectorXcd flip_copy2(const Eigen::VectorXcd& pair, int n, std::uint64_t mask);
/// H on every copy-2 qubit.
Eigen::VectorXcd rotate_copy2(const Eigen::VectorXcd& pair, int n);
/// H on every copy-1 qubit.
Eigen::VectorXcd rotate_copy1(const Eigen::VectorXcd& pair, int n);
/// Unnormalized copy-1 state conditioned on copy 2 reading `outcome` in Z.
Eigen::VectorXcd copy1_given_outcome(const Eigen::VectorXcd& pair, int n,
                                     std::uint64_t outcome);

}  // namespace pure_pipeline

}  // namespace ghzpur
