#include <cmath>
#include <limits>

#include "iqp/dca.hpp"
#include "iqp/errors.hpp"
#include "iqp/rng.hpp"

namespace iqp {

namespace {

long restart_cap(int budget, Eigen::Index m) {
  const long bound = m >= 62 ? std::numeric_limits<long>::max() : (1L << m);
  return std::min<long>(budget, bound);
}

std::size_t best_run(const std::vector<DcaRun>& runs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].status != RunStatus::diverged && runs[i].final_objective() < runs[best].final_objective()) best = i;
  }
  return best;
}

}  // namespace

RestartResult restart(const IqProblem& p, DcaRun first, const DcaConfig& cfg, const RestartOptions& opts) {
  if (first.status != RunStatus::converged) {
    throw InvalidInput("restart: the initial run must have converged");
  }
  RestartResult out;
  out.runs.push_back(std::move(first));

  const long cap = restart_cap(opts.budget, p.C.rows());
  Rng rng(opts.seed);
  const auto n = p.dim();

  while (static_cast<long>(out.runs.size()) - 1 < cap) {
    const DcaRun& incumbent = out.runs[best_run(out.runs)];
    const Vector& x_star = incumbent.final_point();
    const double target = incumbent.final_objective() - opts.improvement;

    // Rays start alternately at the incumbent and at the stored witness.
    std::vector<Vector> anchors{x_star};
    if (p.C.witness()) anchors.push_back(*p.C.witness());
    double reach = 0.0;
    for (const auto& a : anchors) reach = std::max(reach, a.norm());
    reach = 10.0 * (1.0 + reach);

    std::optional<Vector> best_u;
    double best_f = target;
    for (int s = 0; s < opts.samples_per_attempt; ++s) {
      const Vector& anchor = anchors[static_cast<std::size_t>(s) % anchors.size()];
      Vector dir(n);
      for (Eigen::Index i = 0; i < n; ++i) dir(i) = rng.normal();
      const double len = dir.norm();
      if (len == 0.0) continue;
      const Vector u = project(p.C, anchor + (reach * rng.unit() / len) * dir);
      const double fu = objective(p, u);
      if (fu < best_f) {
        best_f = fu;
        best_u = u;
      }
    }
    if (!best_u) break;

    out.runs.push_back(run(p, *best_u, cfg));
    if (out.runs.back().status == RunStatus::diverged) break;
  }
  out.best = best_run(out.runs);
  return out;
}

}  // namespace iqp
