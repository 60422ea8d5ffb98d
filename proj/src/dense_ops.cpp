#include "ghzpur/dense_ops.hpp"

#include <cmath>
#include <limits>

namespace ghzpur::dense {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

void hadamard(Eigen::VectorXcd& psi, int n, int qubit) {
  const Eigen::Index stride = Eigen::Index{1} << (n - 1 - qubit);
  const Eigen::Index d = psi.size();
  for (Eigen::Index base = 0; base < d; base += 2 * stride) {
    for (Eigen::Index i = base; i < base + stride; ++i) {
      const auto a = psi(i);
      const auto b = psi(i + stride);
      psi(i) = (a + b) * kInvSqrt2;
      psi(i + stride) = (a - b) * kInvSqrt2;
    }
  }
}

void hadamard(Eigen::MatrixXcd& rho, int n, int qubit) {
  const Eigen::Index stride = Eigen::Index{1} << (n - 1 - qubit);
  const Eigen::Index d = rho.rows();
  // rows: H rho
  for (Eigen::Index base = 0; base < d; base += 2 * stride) {
    for (Eigen::Index i = base; i < base + stride; ++i) {
      Eigen::RowVectorXcd a = rho.row(i);
      Eigen::RowVectorXcd b = rho.row(i + stride);
      rho.row(i) = (a + b) * kInvSqrt2;
      rho.row(i + stride) = (a - b) * kInvSqrt2;
    }
  }
  // columns: (H rho) H, H is real symmetric
  for (Eigen::Index base = 0; base < d; base += 2 * stride) {
    for (Eigen::Index j = base; j < base + stride; ++j) {
      Eigen::VectorXcd a = rho.col(j);
      Eigen::VectorXcd b = rho.col(j + stride);
      rho.col(j) = (a + b) * kInvSqrt2;
      rho.col(j + stride) = (a - b) * kInvSqrt2;
    }
  }
}

void hadamard_range(Eigen::VectorXcd& psi, int n, int first, int count) {
  for (int q = first; q < first + count; ++q) hadamard(psi, n, q);
}

void hadamard_range(Eigen::MatrixXcd& rho, int n, int first, int count) {
  for (int q = first; q < first + count; ++q) hadamard(rho, n, q);
}

void phase_flip(Eigen::VectorXcd& psi, std::uint64_t mask) {
  if (mask == 0) return;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (parity(static_cast<std::uint64_t>(i) & mask)) psi(i) = -psi(i);
  }
}

void phase_flip(Eigen::MatrixXcd& rho, std::uint64_t mask) {
  if (mask == 0) return;
  const Eigen::Index d = rho.rows();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double sj = parity_sign(static_cast<std::uint64_t>(j) & mask);
    for (Eigen::Index i = 0; i < d; ++i) {
      rho(i, j) *= sj * parity_sign(static_cast<std::uint64_t>(i) & mask);
    }
  }
}

void bit_flip(Eigen::VectorXcd& psi, std::uint64_t mask) {
  if (mask == 0) return;
  Eigen::VectorXcd out(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    out(static_cast<Eigen::Index>(static_cast<std::uint64_t>(i) ^ mask)) = psi(i);
  }
  psi = std::move(out);
}

void bit_flip(Eigen::MatrixXcd& rho, std::uint64_t mask) {
  if (mask == 0) return;
  const Eigen::Index d = rho.rows();
  Eigen::MatrixXcd out(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto jj = static_cast<Eigen::Index>(static_cast<std::uint64_t>(j) ^ mask);
    for (Eigen::Index i = 0; i < d; ++i) {
      out(static_cast<Eigen::Index>(static_cast<std::uint64_t>(i) ^ mask), jj) = rho(i, j);
    }
  }
  rho = std::move(out);
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

double distance_up_to_phase(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  Eigen::Index k = 0;
  b.cwiseAbs().maxCoeff(&k);
  if (std::abs(b(k)) == 0.0) {
    return a.cwiseAbs().maxCoeff() == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  if (std::abs(a(k)) == 0.0) return (a - b).cwiseAbs().maxCoeff();
  const auto phase = (a(k) / b(k)) / std::abs(a(k) / b(k));
  return (a - b * phase).cwiseAbs().maxCoeff();
}

}  // namespace ghzpur::dense
