#include "iqp/model.hpp"

#include <cmath>
#include <string>

#include "iqp/errors.hpp"

namespace iqp {

namespace {

void require_dim(Eigen::Index expected, Eigen::Index got, const char* what) {
  if (expected != got) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " + std::to_string(expected) +
                            ", got " + std::to_string(got));
  }
}

}  // namespace

Polyhedron::Polyhedron(Matrix a, Vector b, std::optional<Vector> witness)
    : a_(std::move(a)), b_(std::move(b)), witness_(std::move(witness)) {
  if (a_.rows() != b_.size()) {
    throw DimensionMismatch("Polyhedron: A has " + std::to_string(a_.rows()) + " rows but b has " +
                            std::to_string(b_.size()) + " entries");
  }
  if (a_.cols() < 1) throw DimensionMismatch("Polyhedron: A must have at least one column");
  if (!all_finite(a_) || !all_finite(b_)) throw InvalidInput("Polyhedron: non-finite constraint data");
  if (witness_) {
    require_dim(a_.cols(), witness_->size(), "Polyhedron witness");
    if (!is_feasible(*this, *witness_, kDefaultFeasTol)) {
      throw Infeasible("Polyhedron: stored witness violates the constraints");
    }
  }
}

Vector Polyhedron::slack(const Vector& x) const {
  require_dim(dim(), x.size(), "Polyhedron::slack");
  return a_ * x - b_;
}

Polyhedron Polyhedron::with_witness(Vector witness) const { return Polyhedron(a_, b_, std::move(witness)); }

IqProblem::IqProblem(SymMatrix q_mat, Vector q_vec, Polyhedron c)
    : Q(std::move(q_mat)), q(std::move(q_vec)), C(std::move(c)) {
  require_dim(Q.dim(), q.size(), "IqProblem q");
  require_dim(Q.dim(), C.dim(), "IqProblem constraint columns");
  if (!all_finite(Q.dense()) || !all_finite(q)) throw InvalidInput("IqProblem: non-finite data");
}

double objective(const IqProblem& p, const Vector& x) {
  require_dim(p.dim(), x.size(), "objective");
  return 0.5 * x.dot(p.Q.dense() * x) + p.q.dot(x);
}

bool is_feasible(const Polyhedron& c, const Vector& x, double feas_tol) {
  if (c.rows() == 0) {
    require_dim(c.dim(), x.size(), "is_feasible");
    return true;
  }
  return c.slack(x).minCoeff() >= -feas_tol;
}

double max_violation(const Polyhedron& c, const Vector& x) {
  if (c.rows() == 0) return 0.0;
  return std::max(0.0, -c.slack(x).minCoeff());
}

ActiveSet active_set(const Polyhedron& c, const Vector& x, double act_tol) {
  const Vector s = c.slack(x);
  ActiveSet out;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) < -act_tol) {
      throw Infeasible("active_set: point violates constraint " + std::to_string(i) + " by " +
                       std::to_string(-s(i)));
    }
    if (std::abs(s(i)) <= act_tol) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace iqp
