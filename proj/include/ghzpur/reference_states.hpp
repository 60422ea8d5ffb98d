// Published intermediate states of the QND purification protocol, written
// out ket by ket.  Built with explicit Kronecker products so they do not
// share code with the gate layers they are compared against.
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ghzpur::reference {

struct Term {
  std::string ket;
  double sign;
};

/// Sum of sign * |ket>, scaled by `scale`.
Eigen::VectorXcd from_terms(const std::vector<Term>& terms, double scale);

/// Kronecker product of single-qubit vectors, qubit 1 first.
Eigen::VectorXcd product(const std::vector<Eigen::Vector2cd>& factors);

Eigen::Vector2cd ket0();
Eigen::Vector2cd ket1();
Eigen::Vector2cd plus();   // (|0> + |1>)/sqrt(2)
Eigen::Vector2cd minus();  // (|0> - |1>)/sqrt(2)

/// One line of the three-qubit Hadamard table: (|first> + sign|~first>)/sqrt(2)
/// maps to 1/2 * sum of `expansion`.
struct HadamardRow {
  std::string name;
  std::string first;
  double sign;
  std::vector<Term> expansion;
};
const std::vector<HadamardRow>& hadamard_table();

/// Sign rows of the rotated six-photon states: prefix ket of the kept copy
/// and the 8 signs of the rotated copy over |000>..|111>.
struct SignRow {
  std::string prefix;
  std::string signs;
};
const std::vector<SignRow>& rotated_even_rows();  // from the all-even P2 target pair
const std::vector<SignRow>& rotated_odd_rows();   // from the all-even P2 error pair

/// Two-copy states after the parity projection (three qubits per copy).
Eigen::VectorXcd even_target_pair();       // (|000000> + |111111>)/sqrt(2)
Eigen::VectorXcd even_error_pair();        // (|100100> + |011011>)/sqrt(2)
Eigen::VectorXcd odd_target_pair();        // (|000111> + |111000>)/sqrt(2)
Eigen::VectorXcd odd_error_pair_qubit3();  // (|001110> + |110001>)/sqrt(2)
Eigen::VectorXcd p2_even_target_pair();    // 1/2 (|000000> + |011011> + |101101> + |110110>)
Eigen::VectorXcd p2_even_error_pair();     // 1/2 (|001001> + |010010> + |100100> + |111111>)

/// n-qubit generalizations: kept pairs and their rotated forms (copy 2
/// rotated by 45 degrees).
Eigen::VectorXcd even_target_pair(int n);
Eigen::VectorXcd even_error_pair(int n);  // error on qubit 1
Eigen::VectorXcd rotated_target_pair(int n);
Eigen::VectorXcd rotated_error_pair(int n);

}  // namespace ghzpur::reference
