#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "iqp/bench.hpp"
#include "iqp/errors.hpp"

using namespace iqp;

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Drop the time_s column from every data line.
std::string without_time(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto a = line.find(',');
    const auto b = line.find(',', line.find(',', a + 1) + 1);
    out += line.substr(0, line.find(',', a + 1)) + line.substr(b) + "\n";
  }
  return out;
}

int line_count(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

SweepRecord record(int ordinal, int steps, double rho) {
  SweepRecord r;
  r.ordinal = ordinal;
  r.steps = steps;
  r.rho = rho;
  r.time_s = 0.25 * ordinal;
  r.f_final = -1.0 / 3.0 * ordinal;
  r.kkt_residual = 1e-9;
  r.status = RunStatus::converged;
  return r;
}

}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("ladder from the smallest A parameter") {
    const auto l = rho_ladder(48.802, 5);
    const double expected[] = {48.802, 73.203, 109.805, 164.707, 247.060};
    for (int i = 0; i < 5; ++i) CHECK(std::abs(l[static_cast<std::size_t>(i)] - expected[i]) <= 1e-3);
  }

  TEST_CASE("ladder from the smallest B parameter") {
    const auto l = rho_ladder(9.380, 4);
    CHECK(std::abs(l[1] - 14.070) <= 1e-3);
    CHECK(std::abs(l[2] - 21.105) <= 1e-3);
    CHECK(std::abs(l[3] - 31.658) <= 1e-3);
  }

  TEST_CASE("ladder ratio is exactly the factor") {
    const auto l = rho_ladder(0.1, 25);
    for (std::size_t i = 1; i < l.size(); ++i) CHECK(l[i] == l[i - 1] * 1.5);
  }

  TEST_CASE("sweep with a single rung") {
    const auto inst = generate_family1(5, 2);
    SweepOptions opts;
    opts.ladder_cap = 1;
    const auto rep = sweep(inst.problem, inst.x0, Algorithm::B, opts);
    REQUIRE(rep.records.size() == 1);
    CHECK(rep.records[0].ordinal == 1);
    CHECK(rep.records[0].rho == doctest::Approx(smallest_parameter(inst.problem.Q, Algorithm::B)));
    opts.ladder_cap = 0;
    CHECK_THROWS_AS(sweep(inst.problem, inst.x0, Algorithm::B, opts), ConfigError);
  }

  TEST_CASE("sweep records follow the ladder and stop at the first failure") {
    const auto inst = generate_family1(10, 4);
    SweepOptions opts;
    opts.ladder_cap = 12;
    for (auto alg : {Algorithm::A, Algorithm::B}) {
      const auto rep = sweep(inst.problem, inst.x0, alg, opts);
      REQUIRE(!rep.records.empty());
      for (std::size_t i = 0; i < rep.records.size(); ++i) {
        CHECK(rep.records[i].ordinal == static_cast<int>(i) + 1);
        if (i > 0) CHECK(rep.records[i].rho == rep.records[i - 1].rho * 1.5);
        if (i + 1 < rep.records.size()) CHECK(rep.records[i].status == RunStatus::converged);
      }
      const auto& last = rep.records.back();
      CHECK(rep.truncated_at_cap == (last.status == RunStatus::step_cap && last.error.empty()));
      if (rep.records.size() < 12) CHECK(last.status != RunStatus::converged);
    }
  }

  TEST_CASE("step cap truncates the sweep") {
    const auto inst = generate_family1(10, 4);
    SweepOptions opts;
    opts.base.max_steps = 2;
    const auto rep = sweep(inst.problem, inst.x0, Algorithm::A, opts);
    CHECK(rep.truncated_at_cap);
    CHECK(rep.records.back().steps == 2);
  }

  TEST_CASE("csv round trip") {
    SweepReport rep;
    for (int i = 1; i <= 4; ++i) rep.records.push_back(record(i, 10 * i, 0.1 * std::pow(1.5, i - 1)));
    rep.records.back().status = RunStatus::step_cap;
    const auto back = parse_table_csv(table_csv(rep));
    REQUIRE(back.size() == rep.records.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      CHECK(back[i].ordinal == rep.records[i].ordinal);
      CHECK(back[i].steps == rep.records[i].steps);
      CHECK(back[i].time_s == rep.records[i].time_s);
      CHECK(back[i].rho == rep.records[i].rho);
      CHECK(back[i].f_final == rep.records[i].f_final);
      CHECK(back[i].kkt_residual == rep.records[i].kkt_residual);
      CHECK(back[i].status == rep.records[i].status);
    }
    CHECK_THROWS_AS(parse_table_csv("no,steps\n"), ParseError);
    CHECK_THROWS_AS(parse_table_csv("no,steps,time_s,rho,f_final,kkt_residual,status\n1,2,3\n"), ParseError);
  }

  TEST_CASE("errored rung is written as error") {
    SweepReport rep;
    rep.records.push_back(record(1, 0, 1.0));
    rep.records.back().error = "boom";
    const auto csv = table_csv(rep);
    CHECK(csv.find(",error\n") != std::string::npos);
    CHECK(parse_table_csv(csv)[0].error == "error");
  }

  TEST_CASE("table sizes") {
    SweepReport rep;
    CHECK(table_csv(rep) == "no,steps,time_s,rho,f_final,kkt_residual,status\n");
    for (int i = 1; i <= 11; ++i) rep.records.push_back(record(i, i, std::pow(1.5, i)));
    CHECK(line_count(table_csv(rep)) == 12);
    const auto dat = table_dat(rep);
    CHECK(line_count(dat) == 12);
    CHECK(dat.rfind("# no steps rho\n", 0) == 0);
    CHECK(dat.find("\n3 3 3.375\n") != std::string::npos);
  }

  TEST_CASE("emit_table writes csv and dat") {
    const fs::path root = fs::temp_directory_path() / "iqp_bench_emit";
    fs::remove_all(root);
    SweepReport rep;
    rep.records.push_back(record(1, 5, 2.0));
    const auto path = results_path(root, 1, 10, Algorithm::B, 7);
    CHECK(path == root / "1" / "10" / "B" / "7.csv");
    emit_table(rep, path);
    CHECK(read_file(path) == table_csv(rep));
    CHECK(read_file(root / "1" / "10" / "B" / "7.dat") == table_dat(rep));
    fs::remove_all(root);
  }

  TEST_CASE("serial and parallel sweeps agree except for timing") {
    const std::vector<std::uint64_t> seeds{1, 2, 3, 4};
    SweepOptions opts;
    opts.ladder_cap = 4;
    const auto s = sweep_seeds(1, 8, seeds, Algorithm::B, opts, Execution::serial);
    const auto p = sweep_seeds(1, 8, seeds, Algorithm::B, opts, Execution::parallel);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i].seed == seeds[i]);
      CHECK(p[i].seed == seeds[i]);
      CHECK(without_time(table_csv(s[i])) == without_time(table_csv(p[i])));
      CHECK(s[i].truncated_at_cap == p[i].truncated_at_cap);
    }
  }

  TEST_CASE("repeated sweeps are byte identical except time") {
    const auto inst = generate_family2(8, 3);
    SweepOptions opts;
    opts.ladder_cap = 5;
    const auto a = table_csv(sweep(inst.problem, inst.x0, Algorithm::A, opts));
    const auto b = table_csv(sweep(inst.problem, inst.x0, Algorithm::A, opts));
    CHECK(without_time(a) == without_time(b));
  }

  TEST_CASE("comparison rates are consistent") {
    SweepOptions opts;
    opts.ladder_cap = 3;
    const auto sum = compare_ab(1, 6, {1, 2, 3}, opts, Execution::serial);
    REQUIRE(sum.rows.size() == 3);
    CHECK(sum.b_win_rate == doctest::Approx(sum.b_strict_win_rate + sum.tie_rate));
    CHECK(sum.sweeps_counted <= 6);
    for (const auto& row : sum.rows) {
      CHECK(row.a.ordinal == 1);
      CHECK(row.b.ordinal == 1);
    }
  }
}
