#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "iqp/model.hpp"
#include "iqp/qp_subsolver.hpp"

namespace iqp {

/// A: projection decomposition, Q1 = rho I, Q2 = rho I - Q.
/// B: proximal decomposition, Q1 = Q + rho I, Q2 = rho I.
enum class Algorithm { A, B };

enum class RunStatus { converged, step_cap, diverged };

std::string_view to_string(Algorithm alg);
std::string_view to_string(RunStatus status);
Algorithm parse_algorithm(std::string_view text);
RunStatus parse_status(std::string_view text);

inline constexpr double kDefaultStopTol = 1e-6;
inline constexpr int kDefaultMaxSteps = 1000;
inline constexpr double kDefaultDivergenceRadius = 1e8;

struct DcaConfig {
  Algorithm algorithm = Algorithm::B;
  double rho = 1.0;
  double stop_tol = kDefaultStopTol;
  int max_steps = kDefaultMaxSteps;
  /// Require rho > ||Q|| (the regime of the local stability result for B).
  bool enforce_asymptotic_condition = false;
  double divergence_radius = kDefaultDivergenceRadius;
  /// Record the fixed-point residual of every Algorithm-B iterate.
  bool check_fixed_point = true;
  /// Throw PropertyViolation instead of only recording descent/fixed-point failures.
  bool strict_checks = false;
};

struct DcaRun {
  Algorithm algorithm = Algorithm::B;
  double rho = 0.0;
  std::vector<Vector> iterates;         // x^0 .. x^K
  std::vector<double> objective_values; // f(x^k), one per iterate
  std::vector<double> step_norms;       // ||x^{k+1} - x^k||, one per step
  /// Slack of the descent inequality per step, f(x^k) - 0.5 gamma ||dx||^2 - f(x^{k+1});
  /// NaN for steps where it is not asserted.
  std::vector<double> descent_slack;
  /// Algorithm-B fixed-point residual per step (empty for A or when disabled).
  std::vector<double> fixed_point_residuals;
  int descent_violations = 0;
  RunStatus status = RunStatus::step_cap;
  double gamma = 0.0;  // lambda_min(Q1) + lambda_min(Q2)
  double wall_time = 0.0;

  int steps() const { return static_cast<int>(step_norms.size()); }
  const Vector& final_point() const { return iterates.back(); }
  double final_objective() const { return objective_values.back(); }
};

/// Absolute slack allowed in the descent inequality on top of exact arithmetic.
double descent_allowance(double f_prev);

/// Smallest admissible rho used to start the parameter ladder:
///   A: lambda_max(Q) if positive, else 0.1
///   B: -lambda_min(Q) + 0.1 if lambda_min(Q) < 0, else 0.1
double smallest_parameter(const SymMatrix& q, Algorithm alg);

/// Throws ConfigError if cfg is inadmissible for Q.
void validate_config(const SymMatrix& q, const DcaConfig& cfg);

/// lambda_min(Q1) + lambda_min(Q2) for the decomposition selected by (alg, rho).
double descent_modulus(const SymMatrix& q, Algorithm alg, double rho);

/// x^{k+1} = P_C(x^k - (Q x^k + q) / rho)
Vector step_A(const IqProblem& p, const Vector& xk, double rho, double tol = kDefaultQpTol);

/// argmin over C of 0.5 x'Qx + q'x + 0.5 rho ||x - x^k||^2.
/// Throws ConfigError when Q + rho I is not positive definite.
Vector step_B(const IqProblem& p, const Vector& xk, double rho, double tol = kDefaultQpTol);

/// ||x - P_C(x - (M x + q_k) / rho)|| with M = Q + rho I, q_k = q - rho x^k.
/// Zero exactly when x is the Algorithm-B successor of x^k.
double fixed_point_residual(const IqProblem& p, const Vector& xk, const Vector& x, double rho,
                            double tol = kDefaultQpTol);

/// Iterate from x0 until the step norm drops to stop_tol, max_steps is reached,
/// or ||x^k|| exceeds the divergence radius.
DcaRun run(const IqProblem& p, const Vector& x0, const DcaConfig& cfg);

struct RestartOptions {
  int budget = 8;             // maximum number of additional runs
  int samples_per_attempt = 64;
  std::uint64_t seed = 0;
  double improvement = 1e-9;  // required decrease f(u) < f(x*) - improvement
};

struct RestartResult {
  std::vector<DcaRun> runs;
  std::size_t best = 0;  // index of the run with lowest final objective
  int restarts() const { return static_cast<int>(runs.size()) - 1; }
};

/// Restart scheme: after a converged run, sample feasible points along rays
/// from an anchor point, projected onto C, and rerun from the best sample that
/// strictly improves the objective. The number of restarts never exceeds
/// min(budget, 2^m).
RestartResult restart(const IqProblem& p, DcaRun first, const DcaConfig& cfg, const RestartOptions& opts);

}  // namespace iqp
