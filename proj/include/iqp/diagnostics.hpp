#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "iqp/dca.hpp"
#include "iqp/model.hpp"

namespace iqp {

/// Projected-gradient residual ||x - P_C(x - (Qx + q) / rho_ref)||. Vanishes
/// exactly on the KKT set, for every rho_ref > 0.
double kkt_residual(const IqProblem& p, const Vector& x, double rho_ref);

struct KktPoint {
  Vector x;
  Vector lambda;       // length m
  ActiveSet active;    // rows with |A_i x - b_i| <= act tol
  double residual = 0.0;
  double rho_ref = 1.0;
  double f_value = 0.0;
  /// The equality system for this point had a nontrivial solution set; x is a
  /// sampled representative of a larger KKT piece.
  bool representative = false;
};

inline constexpr int kEnumerateMaxDim = 6;
inline constexpr int kEnumerateMaxRows = 12;
inline constexpr double kClusterTol = 1e-7;

/// All KKT points by active-set enumeration over linearly independent row
/// subsets. Throws ScaleGuard unless n <= 6 and m <= 12.
std::vector<KktPoint> enumerate_kkt(const IqProblem& p, double rho_ref = 1.0);

/// Sorted representatives of the objective values on the KKT set, clustered
/// with gap kClusterTol. Throws PropertyViolation if more than 2^m values appear.
std::vector<double> distinct_kkt_values(const std::vector<KktPoint>& points, Eigen::Index m);

struct RateEstimate {
  std::optional<double> mu_hat;  // empty when the tail window is empty
  int tail_start = 0;
  std::vector<int> k;            // iteration indices used
  std::vector<double> per_k;     // ||x^k - x*||^(1/k)
};

/// R-linear rate estimate from the last half of the trace (k > K/2), skipping
/// iterates closer than 1e-14 to x*. Throws InvalidInput for a non-converged run.
RateEstimate rate_estimate(const DcaRun& run, const Vector& x_star);

/// Same estimator over a bare sequence of iterates.
RateEstimate rate_estimate(const std::vector<Vector>& iterates, const Vector& x_star);

struct ErrorBoundProbe {
  std::optional<double> ell_hat;  // empty when no sample had residual in (1e-12, eps_probe]
  double eps_probe = 0.0;
  int samples_used = 0;
  /// Some KKT point is a representative of a non-singleton piece, so the
  /// nearest-point distance may overestimate d(x, C*).
  bool distance_overestimated = false;
};

/// Empirical estimate of the error-bound constant: max of d(x, C*) / residual
/// over feasible samples near the enumerated KKT set, where d is taken to the
/// nearest enumerated KKT point.
ErrorBoundProbe error_bound_probe(const IqProblem& p, double rho, int samples, std::uint64_t seed,
                                  double eps_probe = 1e-2);

/// Same probe with explicit sample points instead of random ones.
ErrorBoundProbe error_bound_probe_at(const IqProblem& p, double rho, const std::vector<Vector>& points,
                                     double eps_probe = 1e-2);

}  // namespace iqp
