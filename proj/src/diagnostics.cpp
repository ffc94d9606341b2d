#include "iqp/diagnostics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "iqp/errors.hpp"
#include "iqp/qp_subsolver.hpp"
#include "iqp/rng.hpp"

namespace iqp {

double kkt_residual(const IqProblem& p, const Vector& x, double rho_ref) {
  if (!(rho_ref > 0.0)) throw InvalidInput("kkt_residual: rho_ref must be positive");
  if (!x.allFinite()) throw InvalidInput("kkt_residual: non-finite point");
  const Vector u = x - (p.Q.dense() * x + p.q) / rho_ref;
  return (x - project(p.C, u, kDefaultQpTol, x)).norm();
}

namespace {

constexpr double kRankTol = 1e-10;

// Candidate offsets along null directions of a singular reduced Hessian.
constexpr double kPieceSteps[] = {0.1, 1.0, 10.0};

struct Subsystem {
  Matrix y, z, r;
};

// QR split for the rows in `rows`; empty optional when they are dependent.
std::optional<Subsystem> split(const Matrix& a, const std::vector<int>& rows) {
  const auto n = a.cols();
  const auto k = static_cast<Eigen::Index>(rows.size());
  Subsystem s;
  if (k == 0) {
    s.y.resize(n, 0);
    s.z = Matrix::Identity(n, n);
    return s;
  }
  Matrix at(n, k);
  for (Eigen::Index j = 0; j < k; ++j) at.col(j) = a.row(rows[static_cast<std::size_t>(j)]).transpose();
  Eigen::HouseholderQR<Matrix> qr(at);
  const Matrix q = qr.householderQ();
  s.r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (std::abs(s.r(j, j)) <= kRankTol * at.col(j).norm()) return std::nullopt;
  }
  s.y = q.leftCols(k);
  s.z = q.rightCols(n - k);
  return s;
}

}  // namespace

std::vector<KktPoint> enumerate_kkt(const IqProblem& p, double rho_ref) {
  const auto n = p.dim();
  const auto m = p.C.rows();
  if (n > kEnumerateMaxDim || m > kEnumerateMaxRows) {
    throw ScaleGuard("enumerate_kkt: instance has n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                     "; the oracle is limited to n <= " + std::to_string(kEnumerateMaxDim) + " and m <= " +
                     std::to_string(kEnumerateMaxRows));
  }
  const Matrix& q_mat = p.Q.dense();
  const Matrix& a = p.C.a();
  const Vector& b = p.C.b();
  const double scale = 1.0 + std::max(q_mat.lpNorm<Eigen::Infinity>(), p.q.lpNorm<Eigen::Infinity>());
  const double feas_tol = 1e-9 * (1.0 + (m > 0 ? b.lpNorm<Eigen::Infinity>() : 0.0));

  std::vector<KktPoint> found;
  auto consider = [&](const Vector& x, const std::vector<int>& rows, const Subsystem& sys, bool representative) {
    if (m > 0 && p.C.slack(x).minCoeff() < -feas_tol) return;
    const Vector g = q_mat * x + p.q;
    Vector lam_rows(static_cast<Eigen::Index>(rows.size()));
    if (!rows.empty()) lam_rows = sys.r.triangularView<Eigen::Upper>().solve(sys.y.transpose() * g);
    const double lam_tol = 1e-9 * (1.0 + g.lpNorm<Eigen::Infinity>());
    if (lam_rows.size() > 0 && lam_rows.minCoeff() < -lam_tol) return;
    for (const auto& pt : found) {
      if ((pt.x - x).norm() <= kClusterTol) return;
    }
    KktPoint pt;
    pt.x = x;
    pt.lambda = Vector::Zero(m);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      pt.lambda(rows[j]) = std::max(0.0, lam_rows(static_cast<Eigen::Index>(j)));
    }
    pt.representative = representative;
    found.push_back(std::move(pt));
  };

  const unsigned long subsets = 1UL << m;
  for (unsigned long mask = 0; mask < subsets; ++mask) {
    std::vector<int> rows;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (mask & (1UL << i)) rows.push_back(static_cast<int>(i));
    }
    if (static_cast<Eigen::Index>(rows.size()) > n) continue;
    const auto sys = split(a, rows);
    if (!sys) continue;

    Vector x_part = Vector::Zero(n);
    if (!rows.empty()) {
      Vector b_rows(static_cast<Eigen::Index>(rows.size()));
      for (std::size_t j = 0; j < rows.size(); ++j) b_rows(static_cast<Eigen::Index>(j)) = b(rows[j]);
      x_part = sys->y * sys->r.transpose().triangularView<Eigen::Lower>().solve(b_rows);
    }
    if (sys->z.cols() == 0) {
      consider(x_part, rows, *sys, false);
      continue;
    }

    // Stationarity on the affine set: (Z'QZ) w = -Z'(Q x_part + q).
    const Matrix reduced = sys->z.transpose() * q_mat * sys->z;
    const Vector rhs = -sys->z.transpose() * (q_mat * x_part + p.q);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(reduced);
    const Vector& evals = eig.eigenvalues();
    const Matrix& evecs = eig.eigenvectors();
    Vector w0 = Vector::Zero(reduced.rows());
    std::vector<Eigen::Index> null_dirs;
    for (Eigen::Index j = 0; j < evals.size(); ++j) {
      const double proj = evecs.col(j).dot(rhs);
      if (std::abs(evals(j)) <= kRankTol * scale) {
        null_dirs.push_back(j);
        if (std::abs(proj) > 1e-9 * (1.0 + rhs.norm())) {
          w0.resize(0);
          break;
        }
      } else {
        w0 += (proj / evals(j)) * evecs.col(j);
      }
    }
    if (w0.size() == 0) continue;  // inconsistent: no stationary point on this face

    const Vector x0 = x_part + sys->z * w0;
    if (null_dirs.empty()) {
      consider(x0, rows, *sys, false);
      continue;
    }
    consider(x0, rows, *sys, true);
    for (auto j : null_dirs) {
      const Vector d = sys->z * evecs.col(j);
      for (double t : kPieceSteps) {
        consider(x0 + t * d, rows, *sys, true);
        consider(x0 - t * d, rows, *sys, true);
      }
    }
  }

  for (auto& pt : found) {
    pt.f_value = objective(p, pt.x);
    pt.active = active_set(p.C, pt.x, kDefaultActTol);
    pt.rho_ref = rho_ref;
    pt.residual = kkt_residual(p, pt.x, rho_ref);
  }
  std::sort(found.begin(), found.end(), [](const KktPoint& l, const KktPoint& r) {
    if (l.f_value != r.f_value) return l.f_value < r.f_value;
    return std::lexicographical_compare(l.x.data(), l.x.data() + l.x.size(), r.x.data(), r.x.data() + r.x.size());
  });
  return found;
}

std::vector<double> distinct_kkt_values(const std::vector<KktPoint>& points, Eigen::Index m) {
  std::vector<double> f;
  f.reserve(points.size());
  for (const auto& pt : points) f.push_back(pt.f_value);
  std::sort(f.begin(), f.end());
  std::vector<double> reps;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i == 0 || f[i] - f[i - 1] > kClusterTol) reps.push_back(f[i]);
  }
  if (m < 62 && static_cast<long>(reps.size()) > (1L << m)) {
    throw PropertyViolation("distinct_kkt_values: " + std::to_string(reps.size()) +
                            " values exceed the 2^m bound for m=" + std::to_string(m));
  }
  return reps;
}

RateEstimate rate_estimate(const std::vector<Vector>& iterates, const Vector& x_star) {
  RateEstimate out;
  const int last = static_cast<int>(iterates.size()) - 1;
  out.tail_start = last / 2 + 1;
  for (int k = std::max(1, out.tail_start); k <= last; ++k) {
    const double d = (iterates[static_cast<std::size_t>(k)] - x_star).norm();
    if (d < 1e-14) continue;
    out.k.push_back(k);
    out.per_k.push_back(std::pow(d, 1.0 / k));
  }
  if (!out.per_k.empty()) out.mu_hat = *std::max_element(out.per_k.begin(), out.per_k.end());
  return out;
}

RateEstimate rate_estimate(const DcaRun& run, const Vector& x_star) {
  if (run.status != RunStatus::converged) throw InvalidInput("rate_estimate: run did not converge");
  return rate_estimate(run.iterates, x_star);
}

namespace {

ErrorBoundProbe probe_points(const IqProblem& p, double rho, const std::vector<KktPoint>& kkt,
                             const std::vector<Vector>& points, double eps_probe) {
  ErrorBoundProbe out;
  out.eps_probe = eps_probe;
  for (const auto& pt : kkt) out.distance_overestimated |= pt.representative;
  for (const auto& x : points) {
    const double res = kkt_residual(p, x, rho);
    if (!(res > 1e-12 && res <= eps_probe)) continue;
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& pt : kkt) dist = std::min(dist, (x - pt.x).norm());
    const double ratio = dist / res;
    out.ell_hat = out.ell_hat ? std::max(*out.ell_hat, ratio) : ratio;
    ++out.samples_used;
  }
  return out;
}

}  // namespace

ErrorBoundProbe error_bound_probe_at(const IqProblem& p, double rho, const std::vector<Vector>& points,
                                     double eps_probe) {
  const auto kkt = enumerate_kkt(p, rho);
  if (kkt.empty()) return ErrorBoundProbe{std::nullopt, eps_probe, 0, false};
  return probe_points(p, rho, kkt, points, eps_probe);
}

ErrorBoundProbe error_bound_probe(const IqProblem& p, double rho, int samples, std::uint64_t seed,
                                  double eps_probe) {
  const auto kkt = enumerate_kkt(p, rho);
  if (kkt.empty()) return ErrorBoundProbe{std::nullopt, eps_probe, 0, false};
  Rng rng(seed);
  const auto n = p.dim();
  std::vector<Vector> points;
  points.reserve(static_cast<std::size_t>(std::max(samples, 0)));
  for (int s = 0; s < samples; ++s) {
    const Vector& center = kkt[static_cast<std::size_t>(s) % kkt.size()].x;
    Vector dir(n);
    for (Eigen::Index i = 0; i < n; ++i) dir(i) = rng.normal();
    const double len = dir.norm();
    if (len == 0.0) continue;
    points.push_back(project(p.C, center + (eps_probe * rng.unit() / len) * dir));
  }
  return probe_points(p, rho, kkt, points, eps_probe);
}

}  // namespace iqp
