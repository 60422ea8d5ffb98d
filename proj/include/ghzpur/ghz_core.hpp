// GHZ basis, GHZ-diagonal ensembles and dense density operators.
//
// Conventions used throughout the library:
//   * qubit value 0 is |H>, 1 is |V>;
//   * a computational string is read qubit-1-first as a big-endian integer,
//     so qubit q (0-based) of an n-qubit register lives at bit (n - 1 - q);
//   * a GHZ basis state (|j> + s|~j>)/sqrt(2) is labelled by whichever of
//     j, ~j has qubit 1 equal to 0.  Relabelling the other member only costs
//     a global phase s.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ghzpur {

using Complex = std::complex<double>;

inline constexpr int kMinQubits = 2;
inline constexpr int kMaxFastQubits = 6;
inline constexpr int kMaxExactQubits = 5;
inline constexpr double kExactTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

enum class Sign : int { Plus = 1, Minus = -1 };

inline int sign_value(Sign s) { return static_cast<int>(s); }
inline Sign sign_product(Sign a, Sign b) {
  return sign_value(a) * sign_value(b) > 0 ? Sign::Plus : Sign::Minus;
}

/// Bit mask of qubit `qubit` inside an n-qubit computational index.
inline std::uint64_t qubit_mask(int n, int qubit) {
  return std::uint64_t{1} << (n - 1 - qubit);
}
inline std::uint64_t all_ones(int n) { return (std::uint64_t{1} << n) - 1; }

std::string bits_to_string(std::uint64_t bits, int n);
/// Parses a string of '0'/'1'; throws std::invalid_argument otherwise.
std::uint64_t string_to_bits(std::string_view bits);

class GhzLabel {
 public:
  /// Throws std::invalid_argument unless rep has n bits with qubit 1 clear.
  GhzLabel(int n_qubits, std::uint64_t rep, Sign sign);

  /// Label of (|pattern> + sign |~pattern>)/sqrt(2); either member of the
  /// complementary pair is accepted.
  static GhzLabel canonical(int n_qubits, std::uint64_t pattern, Sign sign);
  static GhzLabel from_string(std::string_view pattern, Sign sign);
  static GhzLabel target(int n_qubits) { return {n_qubits, 0, Sign::Plus}; }
  static GhzLabel from_index(int n_qubits, std::size_t index);

  /// Single bit flip on `qubit` applied to the target, canonicalized.
  static GhzLabel single_flip(int n_qubits, int qubit);

  int n_qubits() const { return n_; }
  std::uint64_t rep() const { return rep_; }
  Sign sign() const { return sign_; }
  std::string rep_string() const { return bits_to_string(rep_, n_); }
  std::string to_string() const;

  /// Dense index in [0, 2^n): (rep << 1) | (sign == Minus).
  std::size_t index() const {
    return static_cast<std::size_t>((rep_ << 1) | (sign_ == Sign::Minus ? 1u : 0u));
  }
  bool is_target() const { return rep_ == 0 && sign_ == Sign::Plus; }

  friend bool operator==(const GhzLabel&, const GhzLabel&) = default;

 private:
  int n_;
  std::uint64_t rep_;
  Sign sign_;
};

std::size_t label_count(int n_qubits);
std::vector<GhzLabel> all_labels(int n_qubits);

class PureState {
 public:
  /// Throws std::invalid_argument if the size is not 2^n or the norm is off
  /// by more than 1e-12.
  PureState(int n_qubits, Eigen::VectorXcd amplitudes);

  int n_qubits() const { return n_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

 private:
  int n_;
  Eigen::VectorXcd amps_;
};

class GhzDiagonalEnsemble {
 public:
  /// `weights` is indexed by GhzLabel::index().  Throws std::invalid_argument
  /// for an out-of-range n, negative weights or a sum off by more than 1e-12.
  GhzDiagonalEnsemble(int n_qubits, std::vector<double> weights);

  static GhzDiagonalEnsemble pure(const GhzLabel& label);

  int n_qubits() const { return n_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(const GhzLabel& label) const;
  double weight(std::uint64_t rep, Sign sign) const;

 private:
  int n_;
  std::vector<double> weights_;
};

class DensityMatrix {
 public:
  /// Throws std::invalid_argument if the matrix is not 2^n square, not
  /// Hermitian within 1e-12, or its trace is not 1 within 1e-12.
  DensityMatrix(int n_qubits, Eigen::MatrixXcd entries);

  static DensityMatrix from_pure(const PureState& psi);

  int n_qubits() const { return n_; }
  const Eigen::MatrixXcd& entries() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

  double min_eigenvalue() const;
  bool is_physical(double tol = kPsdTol) const { return min_eigenvalue() >= -tol; }
  /// <psi|rho|psi>
  double expectation(const PureState& psi) const;

 private:
  int n_;
  Eigen::MatrixXcd rho_;
};

PureState ghz_label_to_state(const GhzLabel& label, int n_qubits);

double ensemble_fidelity(const GhzDiagonalEnsemble& ens);

struct BinaryEnsemble {
  GhzDiagonalEnsemble ensemble;
  /// error_label was the target itself, so the result is the pure target.
  bool degenerate = false;
};

/// F on the target, 1 - F on `error_label`.
BinaryEnsemble build_binary_ensemble(double fidelity, const GhzLabel& error_label,
                                     int n_qubits);

/// weights[0] on the target, weights[i] on a bit flip of qubit i (1-based).
GhzDiagonalEnsemble build_bitflip_ensemble(const std::vector<double>& weights,
                                           int n_qubits);

/// x |target><target| + (1 - x) I / 2^n.
GhzDiagonalEnsemble build_werner(double x, int n_qubits);

/// Initial fidelity of build_werner(x, n).
double werner_fidelity(double x, int n_qubits);

DensityMatrix ensemble_to_density(const GhzDiagonalEnsemble& ens);

PureState hadamard_all(const PureState& psi);
DensityMatrix hadamard_all(const DensityMatrix& rho);

/// Gram matrix <label_i|label_j> over all_labels(n).
Eigen::MatrixXcd ghz_gram_matrix(int n_qubits);

}  // namespace ghzpur
