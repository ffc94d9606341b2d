#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "iqp/linalg.hpp"

namespace iqp {

inline constexpr double kDefaultFeasTol = 1e-9;
inline constexpr double kDefaultActTol = 1e-8;

/// C = {x : A x >= b}. Optionally carries a point known to lie in C.
class Polyhedron {
 public:
  Polyhedron(Matrix a, Vector b, std::optional<Vector> witness = std::nullopt);

  Eigen::Index rows() const { return a_.rows(); }
  Eigen::Index dim() const { return a_.cols(); }
  const Matrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  const std::optional<Vector>& witness() const { return witness_; }

  /// A x - b
  Vector slack(const Vector& x) const;

  /// Same constraints, different witness. Throws Infeasible if the witness
  /// violates a row by more than kDefaultFeasTol.
  Polyhedron with_witness(Vector witness) const;

  /// Constraint data equality; the witness is bookkeeping and is ignored.
  bool operator==(const Polyhedron& other) const { return a_ == other.a_ && b_ == other.b_; }

 private:
  Matrix a_;
  Vector b_;
  std::optional<Vector> witness_;
};

/// minimize 0.5 x'Qx + q'x over C.
struct IqProblem {
  IqProblem(SymMatrix q_mat, Vector q_vec, Polyhedron c);

  SymMatrix Q;
  Vector q;
  Polyhedron C;

  Eigen::Index dim() const { return Q.dim(); }
  bool operator==(const IqProblem& other) const {
    return Q == other.Q && q == other.q && C == other.C;
  }
};

/// A problem together with its starting point.
struct Instance {
  IqProblem problem;
  Vector x0;
};

/// Sorted 0-based constraint indices.
using ActiveSet = std::vector<int>;

double objective(const IqProblem& p, const Vector& x);

/// min_i (A_i x - b_i) >= -feas_tol
bool is_feasible(const Polyhedron& c, const Vector& x, double feas_tol = kDefaultFeasTol);

/// Largest constraint violation max(0, max_i (b_i - A_i x)).
double max_violation(const Polyhedron& c, const Vector& x);

/// {i : |A_i x - b_i| <= act_tol}. Throws Infeasible if x violates C by more than act_tol.
ActiveSet active_set(const Polyhedron& c, const Vector& x, double act_tol = kDefaultActTol);

/// x >= 0, i x_i >= beta_i, sum_i i x_i <= 5000, with m = 2n + 1 rows.
Instance generate_family1(int n, std::uint64_t seed);

/// x >= 0, i x_i >= beta_i, 10 <= x_1 + sum_{i>=2} 0.1 i x_i <= 100, with m = 2n + 2 rows.
/// Empty draws are resampled with an advanced seed, at most 100 attempts.
Instance generate_family2(int n, std::uint64_t seed);

/// Dispatch on family number 1 or 2.
Instance generate_instance(int family, int n, std::uint64_t seed);

}  // namespace iqp
