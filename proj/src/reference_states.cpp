#include "ghzpur/reference_states.hpp"

#include <cmath>
#include <stdexcept>

namespace ghzpur::reference {

namespace {

std::string repeat(char c, int n) { return std::string(static_cast<std::size_t>(n), c); }

std::vector<Eigen::Vector2cd> kets(const std::string& bits) {
  std::vector<Eigen::Vector2cd> out;
  for (char c : bits) out.push_back(c == '0' ? ket0() : ket1());
  return out;
}

template <typename... Parts>
std::vector<Eigen::Vector2cd> concat(const Parts&... parts) {
  std::vector<Eigen::Vector2cd> out;
  (out.insert(out.end(), parts.begin(), parts.end()), ...);
  return out;
}

std::vector<Eigen::Vector2cd> copies(const Eigen::Vector2cd& v, int n) {
  return std::vector<Eigen::Vector2cd>(static_cast<std::size_t>(n), v);
}

}  // namespace

Eigen::VectorXcd from_terms(const std::vector<Term>& terms, double scale) {
  if (terms.empty()) throw std::invalid_argument("from_terms: no terms");
  const std::size_t n = terms.front().ket.size();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  for (const Term& t : terms) {
    if (t.ket.size() != n) throw std::invalid_argument("from_terms: ragged kets");
    Eigen::Index idx = 0;
    for (char c : t.ket) idx = idx * 2 + (c == '1' ? 1 : 0);
    v(idx) += t.sign * scale;
  }
  return v;
}

Eigen::VectorXcd product(const std::vector<Eigen::Vector2cd>& factors) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
  for (const auto& f : factors) {
    Eigen::VectorXcd next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * f(0);
      next(2 * i + 1) = v(i) * f(1);
    }
    v = std::move(next);
  }
  return v;
}

Eigen::Vector2cd ket0() { return {1.0, 0.0}; }
Eigen::Vector2cd ket1() { return {0.0, 1.0}; }
Eigen::Vector2cd plus() { return Eigen::Vector2cd(1.0, 1.0) / std::sqrt(2.0); }
Eigen::Vector2cd minus() { return Eigen::Vector2cd(1.0, -1.0) / std::sqrt(2.0); }

const std::vector<HadamardRow>& hadamard_table() {
  static const std::vector<HadamardRow> table = {
      {"Psi+", "000", +1, {{"000", +1}, {"011", +1}, {"101", +1}, {"110", +1}}},
      {"Psi-", "000", -1, {{"001", +1}, {"010", +1}, {"100", +1}, {"111", +1}}},
      {"Psi1+", "100", +1, {{"000", +1}, {"011", +1}, {"101", -1}, {"110", -1}}},
      {"Psi1-", "100", -1, {{"001", +1}, {"010", +1}, {"100", -1}, {"111", -1}}},
      {"Psi2+", "010", +1, {{"000", +1}, {"011", -1}, {"101", +1}, {"110", -1}}},
      {"Psi2-", "010", -1, {{"001", +1}, {"010", -1}, {"100", +1}, {"111", -1}}},
      {"Psi3+", "001", +1, {{"000", +1}, {"011", -1}, {"101", -1}, {"110", +1}}},
      {"Psi3-", "001", -1, {{"001", +1}, {"010", -1}, {"100", -1}, {"111", +1}}},
  };
  return table;
}

const std::vector<SignRow>& rotated_even_rows() {
  static const std::vector<SignRow> rows = {
      {"000", "++++++++"},
      {"011", "+--++--+"},
      {"101", "+-+--+-+"},
      {"110", "++----++"},
  };
  return rows;
}

const std::vector<SignRow>& rotated_odd_rows() {
  static const std::vector<SignRow> rows = {
      {"001", "+-+-+-+-"},
      {"010", "++--++--"},
      {"100", "++++----"},
      {"111", "+--+-++-"},
  };
  return rows;
}

Eigen::VectorXcd even_target_pair() {
  return from_terms({{"000000", +1}, {"111111", +1}}, 1.0 / std::sqrt(2.0));
}
Eigen::VectorXcd even_error_pair() {
  return from_terms({{"100100", +1}, {"011011", +1}}, 1.0 / std::sqrt(2.0));
}
Eigen::VectorXcd odd_target_pair() {
  return from_terms({{"000111", +1}, {"111000", +1}}, 1.0 / std::sqrt(2.0));
}
Eigen::VectorXcd odd_error_pair_qubit3() {
  return from_terms({{"001110", +1}, {"110001", +1}}, 1.0 / std::sqrt(2.0));
}
Eigen::VectorXcd p2_even_target_pair() {
  return from_terms({{"000000", +1}, {"011011", +1}, {"101101", +1}, {"110110", +1}}, 0.5);
}
Eigen::VectorXcd p2_even_error_pair() {
  return from_terms({{"001001", +1}, {"010010", +1}, {"100100", +1}, {"111111", +1}}, 0.5);
}

Eigen::VectorXcd even_target_pair(int n) {
  return from_terms({{repeat('0', 2 * n), +1}, {repeat('1', 2 * n), +1}}, 1.0 / std::sqrt(2.0));
}

Eigen::VectorXcd even_error_pair(int n) {
  const std::string a = "1" + repeat('0', n - 1);
  const std::string b = "0" + repeat('1', n - 1);
  return from_terms({{a + a, +1}, {b + b, +1}}, 1.0 / std::sqrt(2.0));
}

Eigen::VectorXcd rotated_target_pair(int n) {
  const Eigen::VectorXcd first = product(concat(kets(repeat('0', n)), copies(plus(), n)));
  const Eigen::VectorXcd second = product(concat(kets(repeat('1', n)), copies(minus(), n)));
  return (first + second) / std::sqrt(2.0);
}

Eigen::VectorXcd rotated_error_pair(int n) {
  const std::vector<Eigen::Vector2cd> m1{minus()};
  const std::vector<Eigen::Vector2cd> p1{plus()};
  const Eigen::VectorXcd first =
      product(concat(kets("1" + repeat('0', n - 1)), m1, copies(plus(), n - 1)));
  const Eigen::VectorXcd second =
      product(concat(kets("0" + repeat('1', n - 1)), p1, copies(minus(), n - 1)));
  return (first + second) / std::sqrt(2.0);
}

}  // namespace ghzpur::reference
