#include "ghzpur/ghz_core.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ghzpur/dense_ops.hpp"

namespace ghzpur {

namespace {

void require_qubits(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi) {
    throw std::invalid_argument(std::string(what) + ": qubit count " + std::to_string(n) +
                                " outside [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
}

}  // namespace

std::string bits_to_string(std::uint64_t bits, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q) {
    if (bits & qubit_mask(n, q)) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

std::uint64_t string_to_bits(std::string_view bits) {
  if (bits.empty() || bits.size() > 32) {
    throw std::invalid_argument("bit string must have 1..32 characters");
  }
  std::uint64_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string '" + std::string(bits) +
                                  "' contains a character other than 0/1");
    }
    v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

GhzLabel::GhzLabel(int n_qubits, std::uint64_t rep, Sign sign)
    : n_(n_qubits), rep_(rep), sign_(sign) {
  if (n_qubits < 1 || n_qubits > 32) {
    throw std::invalid_argument("GhzLabel: bad qubit count " + std::to_string(n_qubits));
  }
  if (rep > all_ones(n_qubits)) {
    throw std::invalid_argument("GhzLabel: representative has more than " +
                                std::to_string(n_qubits) + " bits");
  }
  if (rep & qubit_mask(n_qubits, 0)) {
    throw std::invalid_argument("GhzLabel: representative " + bits_to_string(rep, n_qubits) +
                                " is not canonical (qubit 1 must be 0)");
  }
  if (sign != Sign::Plus && sign != Sign::Minus) {
    throw std::invalid_argument("GhzLabel: sign must be +1 or -1");
  }
}

GhzLabel GhzLabel::canonical(int n_qubits, std::uint64_t pattern, Sign sign) {
  if (n_qubits >= 1 && n_qubits <= 32 && (pattern & qubit_mask(n_qubits, 0))) {
    pattern ^= all_ones(n_qubits);
  }
  return {n_qubits, pattern, sign};
}

GhzLabel GhzLabel::from_string(std::string_view pattern, Sign sign) {
  return canonical(static_cast<int>(pattern.size()), string_to_bits(pattern), sign);
}

GhzLabel GhzLabel::from_index(int n_qubits, std::size_t index) {
  return {n_qubits, static_cast<std::uint64_t>(index >> 1),
          (index & 1u) ? Sign::Minus : Sign::Plus};
}

GhzLabel GhzLabel::single_flip(int n_qubits, int qubit) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::invalid_argument("single_flip: qubit index out of range");
  }
  return canonical(n_qubits, qubit_mask(n_qubits, qubit), Sign::Plus);
}

std::string GhzLabel::to_string() const {
  return "(" + rep_string() + (sign_ == Sign::Plus ? ",+)" : ",-)");
}

std::size_t label_count(int n_qubits) { return std::size_t{1} << n_qubits; }

std::vector<GhzLabel> all_labels(int n_qubits) {
  std::vector<GhzLabel> out;
  out.reserve(label_count(n_qubits));
  for (std::size_t i = 0; i < label_count(n_qubits); ++i) {
    out.push_back(GhzLabel::from_index(n_qubits, i));
  }
  return out;
}

PureState::PureState(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  require_qubits(n_qubits, 1, 2 * kMaxExactQubits, "PureState");
  if (amps_.size() != (Eigen::Index{1} << n_qubits)) {
    throw std::invalid_argument("PureState: amplitude count is not 2^n");
  }
  if (std::abs(amps_.squaredNorm() - 1.0) > kExactTol) {
    throw std::invalid_argument("PureState: squared norm differs from 1");
  }
}

GhzDiagonalEnsemble::GhzDiagonalEnsemble(int n_qubits, std::vector<double> weights)
    : n_(n_qubits), weights_(std::move(weights)) {
  require_qubits(n_qubits, kMinQubits, kMaxFastQubits, "GhzDiagonalEnsemble");
  if (weights_.size() != label_count(n_qubits)) {
    throw std::invalid_argument("GhzDiagonalEnsemble: expected " +
                                std::to_string(label_count(n_qubits)) + " weights");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("GhzDiagonalEnsemble: negative or NaN weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kExactTol) {
    throw std::invalid_argument("GhzDiagonalEnsemble: weights sum to " + std::to_string(sum));
  }
}

GhzDiagonalEnsemble GhzDiagonalEnsemble::pure(const GhzLabel& label) {
  std::vector<double> w(label_count(label.n_qubits()), 0.0);
  w[label.index()] = 1.0;
  return {label.n_qubits(), std::move(w)};
}

double GhzDiagonalEnsemble::weight(const GhzLabel& label) const {
  if (label.n_qubits() != n_) throw std::invalid_argument("weight: label size mismatch");
  return weights_[label.index()];
}

double GhzDiagonalEnsemble::weight(std::uint64_t rep, Sign sign) const {
  return weight(GhzLabel(n_, rep, sign));
}

DensityMatrix::DensityMatrix(int n_qubits, Eigen::MatrixXcd entries)
    : n_(n_qubits), rho_(std::move(entries)) {
  require_qubits(n_qubits, 1, 2 * kMaxExactQubits, "DensityMatrix");
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  if (rho_.rows() != d || rho_.cols() != d) {
    throw std::invalid_argument("DensityMatrix: matrix is not 2^n x 2^n");
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kExactTol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > kExactTol) {
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return {psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint()};
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::expectation(const PureState& psi) const {
  if (psi.n_qubits() != n_) throw std::invalid_argument("expectation: size mismatch");
  return (psi.amplitudes().adjoint() * rho_ * psi.amplitudes())(0, 0).real();
}

PureState ghz_label_to_state(const GhzLabel& label, int n_qubits) {
  if (label.n_qubits() != n_qubits) {
    throw std::invalid_argument("ghz_label_to_state: label has " +
                                std::to_string(label.n_qubits()) + " bits, expected " +
                                std::to_string(n_qubits));
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  const double amp = 1.0 / std::sqrt(2.0);
  v(static_cast<Eigen::Index>(label.rep())) = amp;
  v(static_cast<Eigen::Index>(label.rep() ^ all_ones(n_qubits))) = amp * sign_value(label.sign());
  return {n_qubits, std::move(v)};
}

double ensemble_fidelity(const GhzDiagonalEnsemble& ens) {
  return ens.weight(GhzLabel::target(ens.n_qubits()));
}

BinaryEnsemble build_binary_ensemble(double fidelity, const GhzLabel& error_label,
                                     int n_qubits) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw std::invalid_argument("build_binary_ensemble: F outside [0, 1]");
  }
  if (error_label.n_qubits() != n_qubits) {
    throw std::invalid_argument("build_binary_ensemble: error label size mismatch");
  }
  if (error_label.is_target()) {
    return {GhzDiagonalEnsemble::pure(error_label), true};
  }
  std::vector<double> w(label_count(n_qubits), 0.0);
  w[GhzLabel::target(n_qubits).index()] = fidelity;
  w[error_label.index()] = 1.0 - fidelity;
  return {GhzDiagonalEnsemble(n_qubits, std::move(w)), false};
}

GhzDiagonalEnsemble build_bitflip_ensemble(const std::vector<double>& weights, int n_qubits) {
  if (weights.size() != static_cast<std::size_t>(n_qubits) + 1) {
    throw std::invalid_argument("build_bitflip_ensemble: need n + 1 weights");
  }
  std::vector<double> w(label_count(n_qubits), 0.0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) throw std::invalid_argument("build_bitflip_ensemble: negative weight");
    const GhzLabel label = i == 0 ? GhzLabel::target(n_qubits)
                                  : GhzLabel::single_flip(n_qubits, static_cast<int>(i) - 1);
    // For n = 2 flips on qubit 1 and qubit 2 share a label.
    w[label.index()] += weights[i];
  }
  return {n_qubits, std::move(w)};
}

GhzDiagonalEnsemble build_werner(double x, int n_qubits) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("build_werner: x outside [0, 1]");
  const double background = (1.0 - x) / static_cast<double>(label_count(n_qubits));
  std::vector<double> w(label_count(n_qubits), background);
  w[GhzLabel::target(n_qubits).index()] = x + background;
  return {n_qubits, std::move(w)};
}

double werner_fidelity(double x, int n_qubits) {
  return x + (1.0 - x) / static_cast<double>(label_count(n_qubits));
}

DensityMatrix ensemble_to_density(const GhzDiagonalEnsemble& ens) {
  const int n = ens.n_qubits();
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (const GhzLabel& label : all_labels(n)) {
    const double w = ens.weight(label);
    if (w == 0.0) continue;
    const auto lo = static_cast<Eigen::Index>(label.rep());
    const auto hi = static_cast<Eigen::Index>(label.rep() ^ all_ones(n));
    const double s = sign_value(label.sign());
    rho(lo, lo) += 0.5 * w;
    rho(hi, hi) += 0.5 * w;
    rho(lo, hi) += 0.5 * w * s;
    rho(hi, lo) += 0.5 * w * s;
  }
  return {n, std::move(rho)};
}

PureState hadamard_all(const PureState& psi) {
  Eigen::VectorXcd v = psi.amplitudes();
  dense::hadamard_range(v, psi.n_qubits(), 0, psi.n_qubits());
  return {psi.n_qubits(), std::move(v)};
}

DensityMatrix hadamard_all(const DensityMatrix& rho) {
  Eigen::MatrixXcd m = rho.entries();
  dense::hadamard_range(m, rho.n_qubits(), 0, rho.n_qubits());
  return {rho.n_qubits(), std::move(m)};
}

Eigen::MatrixXcd ghz_gram_matrix(int n_qubits) {
  const auto labels = all_labels(n_qubits);
  const auto count = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXcd basis(Eigen::Index{1} << n_qubits, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    basis.col(i) = ghz_label_to_state(labels[static_cast<std::size_t>(i)], n_qubits).amplitudes();
  }
  return basis.adjoint() * basis;
}

}  // namespace ghzpur
