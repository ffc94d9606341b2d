#include "iqp/linalg.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <string>

#include "iqp/errors.hpp"

namespace iqp {

SymMatrix::SymMatrix(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() < 1 || m_.rows() != m_.cols()) {
    throw DimensionMismatch("SymMatrix: expected a square matrix of size >= 1, got " +
                            std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
  }
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m_.cols(); ++j) {
      if (m_(i, j) != m_(j, i)) {
        throw InvalidInput("SymMatrix: entry (" + std::to_string(i) + "," + std::to_string(j) +
                           ") differs from its transpose");
      }
    }
  }
}

SymMatrix SymMatrix::identity(Eigen::Index n) { return SymMatrix(Matrix::Identity(n, n)); }

SymMatrix SymMatrix::zero(Eigen::Index n) { return SymMatrix(Matrix::Zero(n, n)); }

SymMatrix SymMatrix::diagonal(const Vector& d) { return SymMatrix(Matrix(d.asDiagonal())); }

SymMatrix SymMatrix::shifted(double shift) const {
  Matrix m = m_;
  m.diagonal().array() += shift;
  return SymMatrix(std::move(m));
}

namespace {

double off_diagonal_frobenius(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

// One Jacobi rotation annihilating a(p, q); a stays symmetric.
void rotate(Matrix& a, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = a(p, k) = c * akp - s * akq;
    a(k, q) = a(q, k) = s * akp + c * akq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;
}

}  // namespace

EigenRange extreme_eigenvalues(const SymMatrix& s, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("extreme_eigenvalues: tol must be positive");
  if (!all_finite(s.dense())) throw InvalidInput("extreme_eigenvalues: non-finite matrix entry");

  Matrix a = s.dense();
  const Eigen::Index n = a.rows();
  const double norm = a.norm();
  if (norm == 0.0) return {0.0, 0.0};

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  while (off_diagonal_frobenius(a) >= tol * norm) {
    if (++sweep > kMaxSweeps) {
      throw NumericalFailure("extreme_eigenvalues: Jacobi did not converge in " +
                             std::to_string(kMaxSweeps) + " sweeps");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, p, q);
    }
  }
  const auto d = a.diagonal();
  return {d.minCoeff(), d.maxCoeff()};
}

double spectral_norm(const SymMatrix& s, double tol) {
  const auto r = extreme_eigenvalues(s, tol);
  return std::max(std::abs(r.min), std::abs(r.max));
}

Vector pd_solve(const Matrix& h, const Vector& rhs) {
  if (h.rows() != h.cols() || h.rows() != rhs.size()) {
    throw DimensionMismatch("pd_solve: matrix is " + std::to_string(h.rows()) + "x" +
                            std::to_string(h.cols()) + ", rhs has " + std::to_string(rhs.size()));
  }
  if (h.rows() == 0) return Vector(0);
  Eigen::LLT<Matrix> llt(h);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("pd_solve: Cholesky met a non-positive pivot");
  }
  return llt.solve(rhs);
}

}  // namespace iqp
