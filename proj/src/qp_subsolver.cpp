#include "iqp/qp_subsolver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <string>

#include "iqp/errors.hpp"

namespace iqp {

namespace {

constexpr double kPivotThreshold = 1e-10;
constexpr int kPhaseOnePasses = 10000;

// Orthogonal split of R^n induced by the working-set rows A_W (k x n):
// A_W' = Y R with Y (n x k) orthonormal and R (k x k) upper triangular,
// Z (n x (n - k)) spanning the null space of A_W.
struct WorkingBasis {
  Matrix y;
  Matrix z;
  Matrix r;

  WorkingBasis(const Matrix& a, const ActiveSet& w) {
    const auto n = a.cols();
    const auto k = static_cast<Eigen::Index>(w.size());
    if (k == 0) {
      y.resize(n, 0);
      z = Matrix::Identity(n, n);
      r.resize(0, 0);
      return;
    }
    Matrix at(n, k);
    for (Eigen::Index j = 0; j < k; ++j) at.col(j) = a.row(w[static_cast<std::size_t>(j)]).transpose();
    Eigen::HouseholderQR<Matrix> qr(at);
    const Matrix q = qr.householderQ();
    y = q.leftCols(k);
    z = q.rightCols(n - k);
    r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  }

  bool in_row_space(const Vector& row) const {
    if (z.cols() == 0) return true;
    return (z.transpose() * row).norm() <= kPivotThreshold * row.norm();
  }
};

// Minimizer of 0.5 x'Hx + c'x on {x : A_W x = b_W}.
Vector equality_minimizer(const Matrix& h, const Vector& c, const WorkingBasis& basis, const Vector& b_w) {
  Vector x = Vector::Zero(h.rows());
  if (b_w.size() > 0) {
    const Vector t = basis.r.transpose().triangularView<Eigen::Lower>().solve(b_w);
    x = basis.y * t;
  }
  if (basis.z.cols() > 0) {
    const Matrix reduced = basis.z.transpose() * h * basis.z;
    const Vector rhs = -basis.z.transpose() * (h * x + c);
    x += basis.z * pd_solve(reduced, rhs);
  }
  return x;
}

// Multipliers solving A_W' lambda = g in the least-squares sense.
Vector working_multipliers(const WorkingBasis& basis, const Vector& g) {
  if (basis.y.cols() == 0) return Vector(0);
  return basis.r.triangularView<Eigen::Upper>().solve(basis.y.transpose() * g);
}

double slack_tolerance(double tol, double rhs) { return tol * (1.0 + std::abs(rhs)); }

// Near-active rows at x reduced to a linearly independent subset by
// Gram-Schmidt elimination in index order.
ActiveSet initial_working_set(const Polyhedron& c, const Vector& x, double tol) {
  const Vector s = c.slack(x);
  ActiveSet w;
  std::vector<Vector> basis;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    if (s(i) > slack_tolerance(tol, c.b()(i))) continue;
    Vector v = c.a().row(i).transpose();
    const double norm = v.norm();
    if (norm == 0.0) continue;
    for (const auto& e : basis) v -= e.dot(v) * e;
    if (v.norm() <= kPivotThreshold * norm) continue;
    basis.push_back(v / v.norm());
    w.push_back(static_cast<int>(i));
    if (static_cast<Eigen::Index>(w.size()) == c.dim()) break;
  }
  return w;
}

Vector gather(const Vector& v, const ActiveSet& w) {
  Vector out(static_cast<Eigen::Index>(w.size()));
  for (std::size_t j = 0; j < w.size(); ++j) out(static_cast<Eigen::Index>(j)) = v(w[j]);
  return out;
}

}  // namespace

ConvexQp::ConvexQp(SymMatrix h, Vector c, Polyhedron constraints)
    : h_(std::move(h)), c_(std::move(c)), constraints_(std::move(constraints)) {
  if (h_.dim() != c_.size() || h_.dim() != constraints_.dim()) {
    throw DimensionMismatch("ConvexQp: H is " + std::to_string(h_.dim()) + "x" + std::to_string(h_.dim()) +
                            ", c has " + std::to_string(c_.size()) + " entries, A has " +
                            std::to_string(constraints_.dim()) + " columns");
  }
  if (!all_finite(c_)) throw InvalidInput("ConvexQp: non-finite linear term");
  Eigen::LLT<Matrix> llt(h_.dense());
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("ConvexQp: H is not positive definite");
}

Vector find_feasible_point(const Polyhedron& c, const Vector& start) {
  if (c.witness()) return *c.witness();
  if (start.size() != c.dim()) throw DimensionMismatch("find_feasible_point: start has wrong dimension");
  Vector x = start.allFinite() ? start : Vector::Zero(c.dim());
  if (is_feasible(c, x)) return x;

  const Matrix& a = c.a();
  const Vector& b = c.b();
  Vector row_norm2(c.rows());
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    row_norm2(i) = a.row(i).squaredNorm();
    if (row_norm2(i) == 0.0 && b(i) > kDefaultFeasTol) {
      throw Infeasible("find_feasible_point: row " + std::to_string(i) + " reads 0 >= " + std::to_string(b(i)));
    }
  }
  for (int pass = 0; pass < kPhaseOnePasses; ++pass) {
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
      const double s = a.row(i).dot(x) - b(i);
      if (s < 0.0 && row_norm2(i) > 0.0) x -= (s / row_norm2(i)) * a.row(i).transpose();
    }
    if (is_feasible(c, x)) return x;
  }
  throw Infeasible("find_feasible_point: no feasible point after " + std::to_string(kPhaseOnePasses) +
                   " projection passes");
}

QpSolution solve_qp(const ConvexQp& qp, const std::optional<Vector>& warm_start, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("solve_qp: tol must be positive");
  const Polyhedron& c = qp.constraints();
  const Matrix& h = qp.h().dense();
  const Matrix& a = c.a();
  const Vector& b = c.b();
  const auto n = c.dim();
  const auto m = c.rows();

  Vector x;
  if (warm_start && warm_start->size() == n && warm_start->allFinite() && is_feasible(c, *warm_start)) {
    x = *warm_start;
  } else {
    x = find_feasible_point(c, warm_start && warm_start->size() == n ? *warm_start : Vector::Zero(n));
  }

  ActiveSet w = initial_working_set(c, x, tol);
  const long cap = 50L * static_cast<long>(m + n);

  QpSolution sol;
  for (long iter = 0;; ++iter) {
    if (iter > cap) {
      throw NumericalFailure("solve_qp: iteration cap " + std::to_string(cap) + " exceeded (cycling?)");
    }
    const WorkingBasis basis(a, w);
    const Vector x_eq = equality_minimizer(h, qp.c(), basis, gather(b, w));
    const Vector p = x_eq - x;

    if (p.norm() <= 1e-12 * (1.0 + x.norm())) {
      x = x_eq;
      const Vector lam_w = working_multipliers(basis, h * x + qp.c());
      Eigen::Index drop = -1;
      double most_negative = -tol;
      for (Eigen::Index j = 0; j < lam_w.size(); ++j) {
        if (lam_w(j) < most_negative) {
          most_negative = lam_w(j);
          drop = j;
        }
      }
      if (drop < 0) {
        sol.lambda = Vector::Zero(m);
        for (std::size_t j = 0; j < w.size(); ++j) {
          sol.lambda(w[j]) = std::max(0.0, lam_w(static_cast<Eigen::Index>(j)));
        }
        sol.iterations = static_cast<int>(iter);
        break;
      }
      w.erase(w.begin() + drop);
      continue;
    }

    // Ratio test over rows outside the working set.
    double step = 1.0;
    int blocking = -1;
    const double p_norm = p.norm();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (std::binary_search(w.begin(), w.end(), static_cast<int>(i))) continue;
      const double ap = a.row(i).dot(p);
      if (ap >= -1e-14 * a.row(i).norm() * p_norm) continue;
      if (basis.in_row_space(a.row(i).transpose())) continue;
      const double ratio = std::max(0.0, a.row(i).dot(x) - b(i)) / -ap;
      if (ratio < step) {
        step = ratio;
        blocking = static_cast<int>(i);
      }
    }
    if (blocking < 0) {
      x = x_eq;
    } else {
      x += step * p;
      w.insert(std::upper_bound(w.begin(), w.end(), blocking), blocking);
    }
  }

  sol.x = std::move(x);
  sol.active = std::move(w);
  const Vector stationarity = h * sol.x + qp.c() - a.transpose() * sol.lambda;
  const Vector slack = c.slack(sol.x);
  double complementarity = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) complementarity = std::max(complementarity, std::abs(sol.lambda(i) * slack(i)));
  sol.kkt_residual = std::max({stationarity.lpNorm<Eigen::Infinity>(), max_violation(c, sol.x), complementarity});
  return sol;
}

Vector project(const Polyhedron& c, const Vector& u, double tol, const std::optional<Vector>& warm_start) {
  if (u.size() != c.dim()) throw DimensionMismatch("project: point has wrong dimension");
  if (!u.allFinite()) throw InvalidInput("project: non-finite point");
  const ConvexQp qp(SymMatrix::identity(c.dim()), -u, c);
  return solve_qp(qp, warm_start ? warm_start : std::optional<Vector>(u), tol).x;
}

}  // namespace iqp
