#include "ghzpur/exact_engine.hpp"

#include <cmath>
#include <stdexcept>

#include "ghzpur/dense_ops.hpp"

namespace ghzpur {

namespace {

std::uint64_t pair_pattern(std::uint64_t index, int n) {
  return (index >> n) ^ (index & all_ones(n));
}

void require_pair(const Eigen::MatrixXcd& pair, int n) {
  if (n < 1 || n > kMaxExactQubits || pair.rows() != (Eigen::Index{1} << (2 * n)) ||
      pair.cols() != pair.rows()) {
    throw std::invalid_argument("two-copy operator has the wrong size");
  }
}

ProjectedPair project_by(const Eigen::MatrixXcd& pair, int n, auto keep) {
  require_pair(pair, n);
  const Eigen::Index d = pair.rows();
  std::vector<char> kept(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) kept[static_cast<std::size_t>(i)] = keep(static_cast<std::uint64_t>(i));
  ProjectedPair out{Eigen::MatrixXcd::Zero(d, d), 0.0};
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!kept[static_cast<std::size_t>(j)]) continue;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (kept[static_cast<std::size_t>(i)]) out.op(i, j) = pair(i, j);
    }
  }
  out.probability = out.op.trace().real();
  return out;
}

Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

ExactStepResult purify_core(StepKind step, const DensityMatrix& rho_frame,
                            const DiscriminationMode& mode, const CorrectionRule& rule) {
  if (!mode.is_ideal()) {
    throw std::invalid_argument("the exact engine models an ideal detector (epsilon = 0)");
  }
  const int n = rho_frame.n_qubits();
  const DensityMatrix pair = tensor_pair(rho_frame);
  const auto d = pair.dim();
  Eigen::MatrixXcd kept = Eigen::MatrixXcd::Zero(d, d);
  ExactStepResult result{rho_frame, 0.0, {}};
  for (ParityBranch b : accepted_branches(step, mode, n)) {
    ProjectedPair p = mode.kind == ModeKind::SixModePBS ? project_six_mode(pair.entries(), n)
                                                        : project_parity(pair, b);
    kept += p.op;
    result.keep_probability += p.probability;
    result.branch_probabilities.emplace_back(b, p.probability);
  }
  if (!(result.keep_probability >= 1e-300)) {
    throw std::domain_error("exact step: keep probability underflow");
  }
  kept /= result.keep_probability;
  result.output = measure_copy2_and_correct(DensityMatrix(2 * n, hermitize(kept)), step, rule);
  return result;
}

}  // namespace

DensityMatrix tensor_pair(const DensityMatrix& rho) {
  if (rho.n_qubits() > kMaxExactQubits) {
    throw std::invalid_argument("tensor_pair: n = " + std::to_string(rho.n_qubits()) +
                                " exceeds the exact-engine bound of " +
                                std::to_string(kMaxExactQubits));
  }
  return {2 * rho.n_qubits(), dense::kron(rho.entries(), rho.entries())};
}

ProjectedPair project_parity_pattern(const Eigen::MatrixXcd& pair, int n, std::uint64_t pattern) {
  return project_by(pair, n, [&](std::uint64_t i) { return pair_pattern(i, n) == pattern; });
}

ProjectedPair project_parity(const DensityMatrix& pair, ParityBranch branch) {
  const int n = pair.n_qubits() / 2;
  const std::uint64_t mask = realignment_mask(branch, n);
  ProjectedPair p = project_parity_pattern(pair.entries(), n, mask);
  dense::bit_flip(p.op, mask);  // copy-2 bits are the low n bits
  return p;
}

ProjectedPair project_six_mode(const Eigen::MatrixXcd& pair, int n) {
  return project_by(pair, n, [&](std::uint64_t i) {
    return six_mode_keep(i >> n, i & all_ones(n));
  });
}

DensityMatrix measure_copy2_and_correct(const DensityMatrix& kept_pair, StepKind step,
                                        const CorrectionRule& rule) {
  const int n = kept_pair.n_qubits() / 2;
  require_pair(kept_pair.entries(), n);
  Eigen::MatrixXcd m = kept_pair.entries();
  dense::hadamard_range(m, 2 * n, n, n);

  const Eigen::Index dn = Eigen::Index{1} << n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dn, dn);
  for (Eigen::Index k = 0; k < dn; ++k) {
    Eigen::MatrixXcd block(dn, dn);
    for (Eigen::Index y = 0; y < dn; ++y) {
      for (Eigen::Index x = 0; x < dn; ++x) block(x, y) = m(x * dn + k, y * dn + k);
    }
    dense::phase_flip(block, rule(step, n, static_cast<std::uint64_t>(k)).phase_flip_mask);
    out += block;
  }
  return {n, hermitize(out)};
}

ExactStepResult p1_exact(const DensityMatrix& rho, const DiscriminationMode& mode,
                         const CorrectionRule& rule) {
  return purify_core(StepKind::P1, rho, mode, rule);
}

ExactStepResult p2_exact(const DensityMatrix& rho, const DiscriminationMode& mode,
                         const CorrectionRule& rule) {
  ExactStepResult r = purify_core(StepKind::P2, hadamard_all(rho), mode, rule);
  r.output = hadamard_all(r.output);
  return r;
}

ExactStepResult exact_step(StepKind step, const DensityMatrix& rho,
                           const DiscriminationMode& mode, const CorrectionRule& rule) {
  return step == StepKind::P1 ? p1_exact(rho, mode, rule) : p2_exact(rho, mode, rule);
}

GhzExtraction ghz_diagonal_extract(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  if (n < kMinQubits || n > kMaxFastQubits) {
    throw std::invalid_argument("ghz_diagonal_extract: unsupported qubit count");
  }
  const auto labels = all_labels(n);
  const auto count = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXcd basis(Eigen::Index{1} << n, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    basis.col(i) = ghz_label_to_state(labels[static_cast<std::size_t>(i)], n).amplitudes();
  }
  Eigen::MatrixXcd in_basis = basis.adjoint() * rho.entries() * basis;
  std::vector<double> weights(labels.size());
  for (Eigen::Index i = 0; i < count; ++i) {
    weights[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)].index())] =
        std::max(0.0, in_basis(i, i).real());
    in_basis(i, i) = 0.0;
  }
  double sum = 0.0;
  for (double w : weights) sum += w;
  for (double& w : weights) w /= sum;
  return {GhzDiagonalEnsemble(n, std::move(weights)), in_basis.norm()};
}

double pair_kept_probability(const GhzLabel& a, const GhzLabel& b, StepKind step,
                             const DiscriminationMode& mode) {
  const int n = a.n_qubits();
  Eigen::VectorXcd pair = pure_pipeline::pair_state(ghz_label_to_state(a, n),
                                                    ghz_label_to_state(b, n));
  if (step == StepKind::P2) {
    pair = pure_pipeline::rotate_copy2(pure_pipeline::rotate_copy1(pair, n), n);
  }
  double kept = 0.0;
  for (ParityBranch br : accepted_branches(step, mode, n)) {
    kept += pure_pipeline::project(pair, n, realignment_mask(br, n)).squaredNorm();
  }
  return kept;
}

std::vector<double> parity_pattern_distribution(const DensityMatrix& rho, StepKind step) {
  const int n = rho.n_qubits();
  const DensityMatrix frame = step == StepKind::P2 ? hadamard_all(rho) : rho;
  const DensityMatrix pair = tensor_pair(frame);
  std::vector<double> dist(std::size_t{1} << n, 0.0);
  for (Eigen::Index i = 0; i < pair.dim(); ++i) {
    dist[pair_pattern(static_cast<std::uint64_t>(i), n)] += pair.entries()(i, i).real();
  }
  return dist;
}

namespace pure_pipeline {

Eigen::VectorXcd pair_state(const PureState& first, const PureState& second) {
  if (first.n_qubits() != second.n_qubits()) {
    throw std::invalid_argument("pair_state: copies differ in size");
  }
  return dense::kron(first.amplitudes(), second.amplitudes());
}

Eigen::VectorXcd project(const Eigen::VectorXcd& pair, int n, std::uint64_t pattern) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(pair.size());
  for (Eigen::Index i = 0; i < pair.size(); ++i) {
    if (pair_pattern(static_cast<std::uint64_t>(i), n) == pattern) out(i) = pair(i);
  }
  return out;
}

Eigen::VectorXcd flip_copy2(const Eigen::VectorXcd& pair, int /*n*/, std::uint64_t mask) {
  Eigen::VectorXcd out = pair;
  dense::bit_flip(out, mask);
  return out;
}

Eigen::VectorXcd rotate_copy2(const Eigen::VectorXcd& pair, int n) {
  Eigen::VectorXcd out = pair;
  dense::hadamard_range(out, 2 * n, n, n);
  return out;
}

Eigen::VectorXcd rotate_copy1(const Eigen::VectorXcd& pair, int n) {
  Eigen::VectorXcd out = pair;
  dense::hadamard_range(out, 2 * n, 0, n);
  return out;
}

Eigen::VectorXcd copy1_given_outcome(const Eigen::VectorXcd& pair, int n, std::uint64_t outcome) {
  const Eigen::Index dn = Eigen::Index{1} << n;
  Eigen::VectorXcd out(dn);
  for (Eigen::Index x = 0; x < dn; ++x) out(x) = pair(x * dn + static_cast<Eigen::Index>(outcome));
  return out;
}

}  // namespace pure_pipeline

}  // namespace ghzpur
