#pragma once

#include <Eigen/Core>

namespace iqp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense symmetric matrix. Symmetry is checked exactly on construction, so
/// callers that assemble a matrix from floating-point arithmetic should
/// mirror one triangle first.
class SymMatrix {
 public:
  explicit SymMatrix(Matrix entries);

  static SymMatrix identity(Eigen::Index n);
  static SymMatrix zero(Eigen::Index n);
  static SymMatrix diagonal(const Vector& d);

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& dense() const { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  /// S + shift * I
  SymMatrix shifted(double shift) const;

  bool operator==(const SymMatrix& other) const { return m_ == other.m_; }

 private:
  Matrix m_;
};

inline constexpr double kDefaultEigenTol = 1e-12;

struct EigenRange {
  double min;
  double max;
};

/// Smallest and largest eigenvalue by cyclic Jacobi rotations. Sweeps stop
/// once the off-diagonal Frobenius mass drops below tol * ||S||_F, which
/// bounds the eigenvalue error by the same quantity.
EigenRange extreme_eigenvalues(const SymMatrix& s, double tol = kDefaultEigenTol);

/// max(|lambda_min|, |lambda_max|)
double spectral_norm(const SymMatrix& s, double tol = kDefaultEigenTol);

/// Solve H y = rhs for symmetric positive definite H via Cholesky.
/// Throws NotPositiveDefinite when factorization meets a non-positive pivot.
Vector pd_solve(const Matrix& h, const Vector& rhs);
inline Vector pd_solve(const SymMatrix& h, const Vector& rhs) { return pd_solve(h.dense(), rhs); }

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

}  // namespace iqp
