// Command-line front end: solve, sweep, compare, enumerate, gen.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "iqp/bench.hpp"
#include "iqp/dca.hpp"
#include "iqp/diagnostics.hpp"
#include "iqp/errors.hpp"
#include "iqp/problem_io.hpp"

namespace {

using iqp::Algorithm;
using Json = nlohmann::ordered_json;

constexpr int kExitError = 1;

int exit_code(iqp::RunStatus s) {
  switch (s) {
    case iqp::RunStatus::converged:
      return 0;
    case iqp::RunStatus::step_cap:
      return 2;
    case iqp::RunStatus::diverged:
      return 3;
  }
  return kExitError;
}

std::string join(const iqp::Vector& v) {
  std::ostringstream out;
  out.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << v(i);
  return out.str();
}

Json to_json(const iqp::Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json run_json(const iqp::DcaRun& r, double kkt, bool trace) {
  Json j;
  j["algorithm"] = std::string(iqp::to_string(r.algorithm));
  j["rho"] = r.rho;
  j["status"] = std::string(iqp::to_string(r.status));
  j["steps"] = r.steps();
  j["gamma"] = r.gamma;
  j["wall_time"] = r.wall_time;
  j["f_final"] = r.final_objective();
  j["kkt_residual"] = kkt;
  j["final_point"] = to_json(r.final_point());
  j["objective_values"] = r.objective_values;
  j["step_norms"] = r.step_norms;
  j["descent_violations"] = r.descent_violations;
  j["fixed_point_residuals"] = r.fixed_point_residuals;
  if (trace) {
    Json its = Json::array();
    for (const auto& x : r.iterates) its.push_back(to_json(x));
    j["iterates"] = std::move(its);
  }
  return j;
}

std::string default_results_dir() {
  if (const char* env = std::getenv("DCA_IQP_RESULTS_DIR"); env && *env) return env;
  return "results";
}

struct SolveArgs {
  std::string problem;
  std::string alg = "B";
  std::string rho = "auto";
  double tol = iqp::kDefaultStopTol;
  int max_steps = iqp::kDefaultMaxSteps;
  int restart_budget = 0;
  std::uint64_t restart_seed = 0;
  bool asymptotic = false;
  std::string json_out;
  bool trace = false;
};

int cmd_solve(const SolveArgs& a) {
  const auto inst = iqp::load_problem(a.problem);
  const auto& p = inst.problem;

  iqp::DcaConfig cfg;
  cfg.algorithm = iqp::parse_algorithm(a.alg);
  if (a.rho == "auto") {
    cfg.rho = iqp::smallest_parameter(p.Q, cfg.algorithm);
  } else {
    try {
      std::size_t used = 0;
      cfg.rho = std::stod(a.rho, &used);
      if (used != a.rho.size()) throw std::invalid_argument(a.rho);
    } catch (const std::exception&) {
      throw iqp::ConfigError("--rho expects a number or 'auto', got '" + a.rho + "'");
    }
  }
  cfg.stop_tol = a.tol;
  cfg.max_steps = a.max_steps;
  cfg.enforce_asymptotic_condition = a.asymptotic;

  std::vector<iqp::DcaRun> runs{iqp::run(p, inst.x0, cfg)};
  std::size_t best = 0;
  if (a.restart_budget > 0 && runs.front().status == iqp::RunStatus::converged) {
    iqp::RestartOptions ro;
    ro.budget = a.restart_budget;
    ro.seed = a.restart_seed;
    auto res = iqp::restart(p, std::move(runs.front()), cfg, ro);
    runs = std::move(res.runs);
    best = res.best;
  }
  const auto& r = runs[best];
  const double kkt = iqp::kkt_residual(p, r.final_point(), cfg.rho);

  std::cout << "algorithm=" << iqp::to_string(cfg.algorithm) << "\n";
  std::cout.precision(17);
  std::cout << "rho=" << cfg.rho << "\n";
  std::cout << "status=" << iqp::to_string(r.status) << "\n";
  std::cout << "steps=" << r.steps() << "\n";
  std::cout << "f=" << r.final_objective() << "\n";
  std::cout << "kkt_residual=" << kkt << "\n";
  std::cout << "x=" << join(r.final_point()) << "\n";
  if (a.restart_budget > 0) std::cout << "restarts=" << runs.size() - 1 << "\n";

  if (!a.json_out.empty()) {
    Json doc = run_json(r, kkt, a.trace);
    doc["restarts"] = runs.size() - 1;
    std::ofstream out(a.json_out);
    if (!out) throw iqp::Error("cannot open " + a.json_out + " for writing");
    out << doc.dump() << "\n";
  }
  return exit_code(r.status);
}

struct SweepArgs {
  int family = 1;
  int n = 10;
  std::uint64_t seed = 0;
  std::string alg = "B";
  std::string out;
  int ladder_cap = iqp::kDefaultLadderCap;
};

int cmd_sweep(const SweepArgs& a) {
  const auto alg = iqp::parse_algorithm(a.alg);
  const auto inst = iqp::generate_instance(a.family, a.n, a.seed);
  iqp::SweepOptions opts;
  opts.ladder_cap = a.ladder_cap;
  auto rep = iqp::sweep(inst.problem, inst.x0, alg, opts);
  rep.family = a.family;
  rep.seed = a.seed;
  const auto path = iqp::results_path(a.out.empty() ? default_results_dir() : a.out, a.family, a.n, alg, a.seed);
  iqp::emit_table(rep, path);
  std::cout << "wrote " << path.string() << " records=" << rep.records.size()
            << " truncated_at_cap=" << (rep.truncated_at_cap ? "true" : "false") << "\n";
  return 0;
}

struct CompareArgs {
  int family = 1;
  int n = 10;
  std::vector<std::uint64_t> seeds;
  int num_seeds = 20;
  std::uint64_t first_seed = 1;
  int ladder_cap = iqp::kDefaultLadderCap;
  bool serial = false;
};

int cmd_compare(const CompareArgs& a) {
  std::vector<std::uint64_t> seeds = a.seeds;
  if (seeds.empty()) {
    for (int i = 0; i < a.num_seeds; ++i) seeds.push_back(a.first_seed + static_cast<std::uint64_t>(i));
  }
  iqp::SweepOptions opts;
  opts.ladder_cap = a.ladder_cap;
  const auto sum = iqp::compare_ab(a.family, a.n, seeds, opts,
                                   a.serial ? iqp::Execution::serial : iqp::Execution::parallel);
  std::cout << "seed,steps_A,steps_B,time_A,time_B,rho_A,rho_B,f_A,f_B,monotone_A,monotone_B,error\n";
  std::cout.precision(10);
  for (const auto& r : sum.rows) {
    std::cout << r.seed << "," << r.a.steps << "," << r.b.steps << "," << r.a.time_s << "," << r.b.time_s << ","
              << r.a.rho << "," << r.b.rho << "," << r.a.f_final << "," << r.b.f_final << "," << r.a_monotone << ","
              << r.b_monotone << "," << r.error << "\n";
  }
  std::cout << "b_win_rate=" << sum.b_win_rate << "\n";
  std::cout << "b_strict_win_rate=" << sum.b_strict_win_rate << "\n";
  std::cout << "tie_rate=" << sum.tie_rate << "\n";
  std::cout << "monotone_fraction=" << sum.monotone_fraction << "\n";
  return 0;
}

int cmd_enumerate(const std::string& problem, double rho_ref) {
  const auto inst = iqp::load_problem(problem);
  const auto pts = iqp::enumerate_kkt(inst.problem, rho_ref);
  std::cout.precision(17);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::cout << "point " << i << " f=" << pts[i].f_value << " residual=" << pts[i].residual
              << " x=" << join(pts[i].x) << " lambda=" << join(pts[i].lambda) << "\n";
  }
  const auto values = iqp::distinct_kkt_values(pts, inst.problem.C.rows());
  std::cout << "points=" << pts.size() << "\n";
  std::cout << "distinct_values=" << values.size() << "\n";
  std::ostringstream vals;
  vals.precision(17);
  for (std::size_t i = 0; i < values.size(); ++i) vals << (i ? " " : "") << values[i];
  std::cout << "values=" << vals.str() << "\n";
  return 0;
}

int cmd_gen(int family, int n, std::uint64_t seed, const std::string& out) {
  const auto inst = iqp::generate_instance(family, n, seed);
  iqp::save_problem(out, inst);
  std::cout << "wrote " << out << " n=" << inst.problem.dim() << " m=" << inst.problem.C.rows() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DC-decomposition solvers for indefinite quadratic programs"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run Algorithm A or B on a problem file");
  s->add_option("problem,--problem", solve.problem, "Problem JSON file")->required()->check(CLI::ExistingFile);
  s->add_option("--alg", solve.alg, "A (projection) or B (proximal)")->check(CLI::IsMember({"A", "B"}));
  s->add_option("--rho", solve.rho, "Decomposition parameter or 'auto' for the smallest admissible one");
  s->add_option("--tol", solve.tol, "Stop when ||x^{k+1} - x^k|| <= tol")->check(CLI::PositiveNumber);
  s->add_option("--max-steps", solve.max_steps, "Step cap")->check(CLI::NonNegativeNumber);
  s->add_option("--restart-budget", solve.restart_budget, "Maximum restarts after convergence")
      ->check(CLI::NonNegativeNumber);
  s->add_option("--restart-seed", solve.restart_seed, "Seed for the restart sampler");
  s->add_flag("--asymptotic", solve.asymptotic, "Require rho > ||Q||");
  s->add_option("--json-out", solve.json_out, "Write the run as a JSON object");
  s->add_flag("--trace", solve.trace, "Include every iterate in --json-out");

  SweepArgs sw;
  auto* sp = app.add_subcommand("sweep", "Run the rho ladder on a generated instance and write a table");
  sp->add_option("--family", sw.family, "Constraint family")->required()->check(CLI::IsMember({1, 2}));
  sp->add_option("--n", sw.n, "Dimension")->required()->check(CLI::PositiveNumber);
  sp->add_option("--seed", sw.seed, "Instance seed")->required();
  sp->add_option("--alg", sw.alg, "A or B")->required()->check(CLI::IsMember({"A", "B"}));
  sp->add_option("--out", sw.out, "Results root (default $DCA_IQP_RESULTS_DIR or ./results)");
  sp->add_option("--ladder-cap", sw.ladder_cap, "Maximum rungs")->check(CLI::PositiveNumber);

  CompareArgs cmp;
  auto* cp = app.add_subcommand("compare", "A vs B at the smallest parameters over several seeds");
  cp->add_option("--family", cmp.family, "Constraint family")->required()->check(CLI::IsMember({1, 2}));
  cp->add_option("--n", cmp.n, "Dimension")->required()->check(CLI::PositiveNumber);
  cp->add_option("--seeds", cmp.seeds, "Comma-separated seed list")->delimiter(',');
  cp->add_option("--num-seeds", cmp.num_seeds, "Number of consecutive seeds when --seeds is absent")
      ->check(CLI::PositiveNumber);
  cp->add_option("--first-seed", cmp.first_seed, "First seed when --seeds is absent");
  cp->add_option("--ladder-cap", cmp.ladder_cap, "Maximum rungs per sweep")->check(CLI::PositiveNumber);
  cp->add_flag("--serial", cmp.serial, "Use the serial reference path");

  std::string enum_problem;
  double rho_ref = 1.0;
  auto* ep = app.add_subcommand("enumerate", "List every KKT point of a small instance");
  ep->add_option("problem,--problem", enum_problem, "Problem JSON file")->required()->check(CLI::ExistingFile);
  ep->add_option("--rho-ref", rho_ref, "Reference rho for the residual")->check(CLI::PositiveNumber);

  int gen_family = 1, gen_n = 10;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gp = app.add_subcommand("gen", "Write a generated instance to a problem file");
  gp->add_option("--family", gen_family, "Constraint family")->required()->check(CLI::IsMember({1, 2}));
  gp->add_option("--n", gen_n, "Dimension")->required()->check(CLI::PositiveNumber);
  gp->add_option("--seed", gen_seed, "Instance seed")->required();
  gp->add_option("--out", gen_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*sp) return cmd_sweep(sw);
    if (*cp) return cmd_compare(cmp);
    if (*ep) return cmd_enumerate(enum_problem, rho_ref);
    if (*gp) return cmd_gen(gen_family, gen_n, gen_seed, gen_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
