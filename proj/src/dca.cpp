#include "iqp/dca.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "iqp/errors.hpp"

namespace iqp {

std::string_view to_string(Algorithm alg) { return alg == Algorithm::A ? "A" : "B"; }

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::converged:
      return "converged";
    case RunStatus::step_cap:
      return "step_cap";
    case RunStatus::diverged:
      return "diverged";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "A" || text == "a") return Algorithm::A;
  if (text == "B" || text == "b") return Algorithm::B;
  throw ConfigError("unknown algorithm '" + std::string(text) + "' (expected A or B)");
}

RunStatus parse_status(std::string_view text) {
  if (text == "converged") return RunStatus::converged;
  if (text == "step_cap") return RunStatus::step_cap;
  if (text == "diverged") return RunStatus::diverged;
  throw ParseError("unknown run status '" + std::string(text) + "'");
}

double descent_allowance(double f_prev) { return 1e-8 * (1.0 + std::abs(f_prev)); }

double smallest_parameter(const SymMatrix& q, Algorithm alg) {
  const auto eig = extreme_eigenvalues(q);
  if (alg == Algorithm::A) return eig.max > 0.0 ? eig.max : 0.1;
  return eig.min < 0.0 ? -eig.min + 0.1 : 0.1;
}

void validate_config(const SymMatrix& q, const DcaConfig& cfg) {
  std::ostringstream why;
  if (!(cfg.rho > 0.0) || !std::isfinite(cfg.rho)) {
    why << "rho must be a positive finite number, got " << cfg.rho;
    throw ConfigError(why.str());
  }
  if (!(cfg.stop_tol > 0.0)) throw ConfigError("stop_tol must be positive");
  if (cfg.max_steps < 0) throw ConfigError("max_steps must be non-negative");
  if (!(cfg.divergence_radius > 0.0)) throw ConfigError("divergence_radius must be positive");

  const auto eig = extreme_eigenvalues(q);
  if (cfg.algorithm == Algorithm::A && eig.max > 0.0 && cfg.rho < eig.max) {
    why << "algorithm A requires rho >= lambda_max(Q) = " << eig.max << ", got " << cfg.rho;
    throw ConfigError(why.str());
  }
  if (cfg.algorithm == Algorithm::B && !(cfg.rho > -eig.min)) {
    why << "algorithm B requires rho > -lambda_min(Q) = " << -eig.min << ", got " << cfg.rho;
    throw ConfigError(why.str());
  }
  if (cfg.enforce_asymptotic_condition) {
    const double norm = std::max(std::abs(eig.min), std::abs(eig.max));
    if (!(cfg.rho > norm)) {
      why << "asymptotic mode requires rho > ||Q|| = " << norm << ", got " << cfg.rho;
      throw ConfigError(why.str());
    }
  }
}

double descent_modulus(const SymMatrix& q, Algorithm alg, double rho) {
  const auto eig = extreme_eigenvalues(q);
  if (alg == Algorithm::A) return rho + (rho - eig.max);
  return (eig.min + rho) + rho;
}

Vector step_A(const IqProblem& p, const Vector& xk, double rho, double tol) {
  const Vector u = xk - (p.Q.dense() * xk + p.q) / rho;
  return project(p.C, u, tol, xk);
}

Vector step_B(const IqProblem& p, const Vector& xk, double rho, double tol) {
  std::optional<ConvexQp> qp;
  try {
    qp.emplace(p.Q.shifted(rho), p.q - rho * xk, p.C);
  } catch (const NotPositiveDefinite&) {
    throw ConfigError("step_B: Q + rho I is not positive definite for rho = " + std::to_string(rho));
  }
  return solve_qp(*qp, xk, tol).x;
}

double fixed_point_residual(const IqProblem& p, const Vector& xk, const Vector& x, double rho, double tol) {
  const Vector grad = p.Q.dense() * x + rho * x + (p.q - rho * xk);
  return (x - project(p.C, x - grad / rho, tol, x)).norm();
}

DcaRun run(const IqProblem& p, const Vector& x0, const DcaConfig& cfg) {
  if (x0.size() != p.dim()) throw DimensionMismatch("run: x0 has wrong dimension");
  if (!x0.allFinite()) throw InvalidInput("run: x0 is not finite");
  validate_config(p.Q, cfg);

  const auto start = std::chrono::steady_clock::now();
  const double inner_tol = cfg.stop_tol / 100.0;

  DcaRun out;
  out.algorithm = cfg.algorithm;
  out.rho = cfg.rho;
  out.gamma = descent_modulus(p.Q, cfg.algorithm, cfg.rho);
  out.iterates.push_back(x0);
  out.objective_values.push_back(objective(p, x0));

  const bool x0_feasible = is_feasible(p.C, x0);
  out.status = RunStatus::step_cap;
  if (x0.norm() > cfg.divergence_radius) {
    out.status = RunStatus::diverged;
  }

  for (int k = 0; out.status != RunStatus::diverged && k < cfg.max_steps; ++k) {
    const Vector& xk = out.iterates.back();
    Vector next = cfg.algorithm == Algorithm::A ? step_A(p, xk, cfg.rho, inner_tol)
                                                : step_B(p, xk, cfg.rho, inner_tol);

    if (cfg.algorithm == Algorithm::B && cfg.check_fixed_point) {
      const double res = fixed_point_residual(p, xk, next, cfg.rho, inner_tol);
      out.fixed_point_residuals.push_back(res);
      if (cfg.strict_checks && res > 10.0 * inner_tol) {
        throw PropertyViolation("fixed-point residual " + std::to_string(res) + " at step " + std::to_string(k));
      }
    }

    const double step = (next - xk).norm();
    const double f_prev = out.objective_values.back();
    const double f_next = objective(p, next);
    if (k >= 1 || x0_feasible) {
      const double slack = f_prev - 0.5 * out.gamma * step * step - f_next;
      out.descent_slack.push_back(slack);
      if (slack < -descent_allowance(f_prev)) {
        ++out.descent_violations;
        if (cfg.strict_checks) {
          throw PropertyViolation("descent inequality fails at step " + std::to_string(k) + " by " +
                                  std::to_string(-slack));
        }
      }
    } else {
      out.descent_slack.push_back(std::numeric_limits<double>::quiet_NaN());
    }

    const bool far = next.norm() > cfg.divergence_radius;
    out.iterates.push_back(std::move(next));
    out.objective_values.push_back(f_next);
    out.step_norms.push_back(step);

    if (far) {
      out.status = RunStatus::diverged;
    } else if (step <= cfg.stop_tol) {
      out.status = RunStatus::converged;
      break;
    }
  }

  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace iqp
