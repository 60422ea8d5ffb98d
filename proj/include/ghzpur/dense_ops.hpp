// In-place gate layers on dense state vectors and density operators.
//
// `n` is the total number of qubits the vector/matrix spans and `qubit` is
// 0-based in the big-endian convention of ghz_core.hpp.
#pragma once

#include <bit>
#include <cstdint>

#include <Eigen/Dense>

namespace ghzpur::dense {

inline int parity(std::uint64_t bits) { return std::popcount(bits) & 1; }
inline double parity_sign(std::uint64_t bits) { return parity(bits) ? -1.0 : 1.0; }

void hadamard(Eigen::VectorXcd& psi, int n, int qubit);
/// rho -> H rho H on one qubit.
void hadamard(Eigen::MatrixXcd& rho, int n, int qubit);

/// H on qubits [first, first + count).
void hadamard_range(Eigen::VectorXcd& psi, int n, int first, int count);
void hadamard_range(Eigen::MatrixXcd& rho, int n, int first, int count);

/// Z on every qubit set in `mask` (mask is a computational index mask).
void phase_flip(Eigen::VectorXcd& psi, std::uint64_t mask);
void phase_flip(Eigen::MatrixXcd& rho, std::uint64_t mask);

/// X on every qubit set in `mask`.
void bit_flip(Eigen::VectorXcd& psi, std::uint64_t mask);
void bit_flip(Eigen::MatrixXcd& rho, std::uint64_t mask);

/// Kronecker product a (x) b; `a` occupies the high-order qubits.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

/// Max |a - b * phase| over entries after fixing the global phase on the
/// largest entry of b.  Returns +inf if one vector vanishes and the other
/// does not.
double distance_up_to_phase(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

}  // namespace ghzpur::dense
