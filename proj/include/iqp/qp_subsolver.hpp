#pragma once

#include <optional>

#include "iqp/model.hpp"

namespace iqp {

inline constexpr double kDefaultQpTol = 1e-9;

/// minimize 0.5 x'Hx + c'x subject to x in C, H positive definite.
class ConvexQp {
 public:
  /// Throws NotPositiveDefinite if H fails a Cholesky factorization.
  ConvexQp(SymMatrix h, Vector c, Polyhedron constraints);

  const SymMatrix& h() const { return h_; }
  const Vector& c() const { return c_; }
  const Polyhedron& constraints() const { return constraints_; }

 private:
  SymMatrix h_;
  Vector c_;
  Polyhedron constraints_;
};

struct QpSolution {
  Vector x;
  Vector lambda;      // one multiplier per row of A, zero off the working set
  ActiveSet active;   // final working set (linearly independent rows)
  double kkt_residual = 0.0;  // max of stationarity, infeasibility, complementarity
  int iterations = 0;
};

/// Primal active-set method with null-space equality subproblems.
///
/// The starting point is the warm start when it is feasible, otherwise the
/// polyhedron's witness, otherwise a bounded cyclic-projection phase 1.
/// Blocking ties are broken by smallest row index, as are ties among the most
/// negative multipliers. Runs are deterministic for identical inputs.
///
/// Throws Infeasible when no starting point is found and NumericalFailure
/// when the 50 (m + n) iteration cap is exceeded.
QpSolution solve_qp(const ConvexQp& qp, const std::optional<Vector>& warm_start = std::nullopt,
                    double tol = kDefaultQpTol);

/// Euclidean projection of u onto C, i.e. solve_qp with H = I, c = -u.
Vector project(const Polyhedron& c, const Vector& u, double tol = kDefaultQpTol,
               const std::optional<Vector>& warm_start = std::nullopt);

/// Find some point of C: the witness if present, otherwise cyclic projections
/// onto violated half-spaces starting at `start`. Throws Infeasible on failure.
Vector find_feasible_point(const Polyhedron& c, const Vector& start);

}  // namespace iqp
