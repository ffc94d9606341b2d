#include "iqp/bench.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "iqp/diagnostics.hpp"
#include "iqp/errors.hpp"

namespace iqp {

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ParseError("table: bad number '" + s + "'");
  return v;
}

std::string status_text(const SweepRecord& r) { return r.error.empty() ? std::string(to_string(r.status)) : "error"; }

}  // namespace

bool SweepReport::steps_non_decreasing() const {
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].steps < records[i - 1].steps) return false;
  }
  return true;
}

std::vector<double> rho_ladder(double start, int count) {
  std::vector<double> out;
  double rho = start;
  for (int i = 0; i < count; ++i) {
    out.push_back(rho);
    rho *= kLadderFactor;
  }
  return out;
}

SweepReport sweep(const IqProblem& p, const Vector& x0, Algorithm alg, const SweepOptions& opts) {
  if (opts.ladder_cap < 1) throw ConfigError("sweep: ladder_cap must be >= 1");
  SweepReport report;
  report.algorithm = alg;
  report.n = static_cast<int>(p.dim());

  DcaConfig cfg = opts.base;
  cfg.algorithm = alg;
  const double start = opts.start_rho ? *opts.start_rho : smallest_parameter(p.Q, alg);

  for (double rho : rho_ladder(start, opts.ladder_cap)) {
    SweepRecord rec;
    rec.ordinal = static_cast<int>(report.records.size()) + 1;
    rec.rho = rho;
    cfg.rho = rho;
    try {
      const DcaRun r = run(p, x0, cfg);
      rec.steps = r.steps();
      rec.time_s = r.wall_time;
      rec.status = r.status;
      rec.f_final = r.final_objective();
      rec.kkt_residual = kkt_residual(p, r.final_point(), rho);
    } catch (const Error& e) {
      rec.error = e.what();
    }
    report.records.push_back(std::move(rec));
    const auto& last = report.records.back();
    if (!last.error.empty() || last.status != RunStatus::converged) break;
  }
  const auto& last = report.records.back();
  report.truncated_at_cap = last.error.empty() && last.status == RunStatus::step_cap;
  return report;
}

std::vector<SweepReport> sweep_seeds(int family, int n, const std::vector<std::uint64_t>& seeds, Algorithm alg,
                                     const SweepOptions& opts, Execution exec) {
  std::vector<SweepReport> out(seeds.size());
  const auto body = [&](std::size_t i) {
    SweepReport rep;
    try {
      const Instance inst = generate_instance(family, n, seeds[i]);
      rep = sweep(inst.problem, inst.x0, alg, opts);
    } catch (const Error& e) {
      SweepRecord rec;
      rec.ordinal = 1;
      rec.error = e.what();
      rep.algorithm = alg;
      rep.records.push_back(std::move(rec));
    }
    rep.family = family;
    rep.n = n;
    rep.seed = seeds[i];
    out[i] = std::move(rep);
  };

  const auto count = static_cast<long>(seeds.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  }
  return out;
}

ComparisonSummary compare_ab(int family, int n, const std::vector<std::uint64_t>& seeds, const SweepOptions& opts,
                             Execution exec) {
  const auto sweeps_a = sweep_seeds(family, n, seeds, Algorithm::A, opts, exec);
  const auto sweeps_b = sweep_seeds(family, n, seeds, Algorithm::B, opts, exec);

  ComparisonSummary sum;
  sum.family = family;
  sum.n = n;
  int compared = 0, wins = 0, strict = 0, ties = 0, monotone = 0;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    SeedComparison row;
    row.seed = seeds[i];
    row.a = sweeps_a[i].records.front();
    row.b = sweeps_b[i].records.front();
    row.a_monotone = sweeps_a[i].steps_non_decreasing();
    row.b_monotone = sweeps_b[i].steps_non_decreasing();
    if (!row.a.error.empty()) row.error = "A: " + row.a.error;
    if (!row.b.error.empty()) row.error += (row.error.empty() ? "B: " : "; B: ") + row.b.error;
    if (row.error.empty()) {
      ++compared;
      wins += row.b.steps <= row.a.steps;
      strict += row.b.steps < row.a.steps;
      ties += row.b.steps == row.a.steps;
      monotone += row.a_monotone + row.b_monotone;
    }
    sum.rows.push_back(std::move(row));
  }
  if (compared > 0) {
    sum.b_win_rate = static_cast<double>(wins) / compared;
    sum.b_strict_win_rate = static_cast<double>(strict) / compared;
    sum.tie_rate = static_cast<double>(ties) / compared;
    sum.sweeps_counted = 2 * compared;
    sum.monotone_fraction = static_cast<double>(monotone) / sum.sweeps_counted;
  }
  return sum;
}

std::string table_csv(const SweepReport& report) {
  std::string out = "no,steps,time_s,rho,f_final,kkt_residual,status\n";
  for (const auto& r : report.records) {
    out += std::to_string(r.ordinal) + "," + std::to_string(r.steps) + "," + shortest(r.time_s) + "," +
           shortest(r.rho) + "," + shortest(r.f_final) + "," + shortest(r.kkt_residual) + "," + status_text(r) + "\n";
  }
  return out;
}

std::string table_dat(const SweepReport& report) {
  std::string out = "# no steps rho\n";
  for (const auto& r : report.records) {
    out += std::to_string(r.ordinal) + " " + std::to_string(r.steps) + " " + shortest(r.rho) + "\n";
  }
  return out;
}

std::vector<SweepRecord> parse_table_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "no,steps,time_s,rho,f_final,kkt_residual,status") {
    throw ParseError("table: missing or unexpected header");
  }
  std::vector<SweepRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) throw ParseError("table: line " + std::to_string(line_no) + " has " +
                                            std::to_string(cells.size()) + " fields, expected 7");
    SweepRecord r;
    r.ordinal = std::stoi(cells[0]);
    r.steps = std::stoi(cells[1]);
    r.time_s = parse_double(cells[2]);
    r.rho = parse_double(cells[3]);
    r.f_final = parse_double(cells[4]);
    r.kkt_residual = parse_double(cells[5]);
    if (cells[6] == "error") {
      r.error = "error";
    } else {
      r.status = parse_status(cells[6]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

void emit_table(const SweepReport& report, const std::filesystem::path& csv_path) {
  if (csv_path.has_parent_path()) std::filesystem::create_directories(csv_path.parent_path());
  auto write = [](const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << body;
    if (!out) throw Error("write failed for " + path.string());
  };
  write(csv_path, table_csv(report));
  auto dat = csv_path;
  dat.replace_extension(".dat");
  write(dat, table_dat(report));
}

std::filesystem::path results_path(const std::filesystem::path& root, int family, int n, Algorithm alg,
                                   std::uint64_t seed) {
  return root / std::to_string(family) / std::to_string(n) / std::string(to_string(alg)) /
         (std::to_string(seed) + ".csv");
}

}  // namespace iqp
