#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "iqp/dca.hpp"
#include "iqp/model.hpp"

namespace iqp {

inline constexpr double kLadderFactor = 1.5;
inline constexpr int kDefaultLadderCap = 25;

struct SweepRecord {
  int ordinal = 0;  // 1-based rung number
  int steps = 0;
  double time_s = 0.0;
  double rho = 0.0;
  double f_final = 0.0;
  double kkt_residual = 0.0;
  RunStatus status = RunStatus::step_cap;
  std::string error;  // non-empty when the rung threw instead of finishing
};

struct SweepReport {
  Algorithm algorithm = Algorithm::B;
  int family = 0;  // 0 when the instance did not come from a generator
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<SweepRecord> records;
  bool truncated_at_cap = false;

  /// Step counts never decrease along the ladder.
  bool steps_non_decreasing() const;
};

/// rho_0, 1.5 rho_0, 1.5^2 rho_0, ... by repeated binary multiplication.
std::vector<double> rho_ladder(double start, int count);

struct SweepOptions {
  int ladder_cap = kDefaultLadderCap;
  /// Overrides smallest_parameter(Q, alg) as the first rung.
  std::optional<double> start_rho;
  DcaConfig base;  // algorithm and rho are overwritten per rung
};

/// Run the algorithm on the ladder starting at the smallest parameter, reusing
/// x0, until a rung fails to converge or ladder_cap rungs have run.
SweepReport sweep(const IqProblem& p, const Vector& x0, Algorithm alg, const SweepOptions& opts = {});

enum class Execution { serial, parallel };

/// Sweeps of one algorithm over several seeds of a generated family; each
/// seed is independent. Results are ordered by seed position either way.
std::vector<SweepReport> sweep_seeds(int family, int n, const std::vector<std::uint64_t>& seeds, Algorithm alg,
                                     const SweepOptions& opts = {}, Execution exec = Execution::parallel);

struct SeedComparison {
  std::uint64_t seed = 0;
  SweepRecord a;  // first rung of the A sweep (smallest parameter)
  SweepRecord b;
  bool a_monotone = false;
  bool b_monotone = false;
  std::string error;
};

struct ComparisonSummary {
  int family = 0;
  int n = 0;
  std::vector<SeedComparison> rows;
  double b_win_rate = 0.0;        // fraction of seeds with steps_B <= steps_A
  double b_strict_win_rate = 0.0; // fraction with steps_B < steps_A
  double tie_rate = 0.0;
  double monotone_fraction = 0.0; // over all A and B sweeps
  int sweeps_counted = 0;
};

/// Both algorithms on the same instance and x0 per seed: the first rungs give
/// the smallest-parameter comparison, the full ladders give the monotonicity
/// fraction.
ComparisonSummary compare_ab(int family, int n, const std::vector<std::uint64_t>& seeds,
                             const SweepOptions& opts = {}, Execution exec = Execution::parallel);

/// CSV "no,steps,time_s,rho,f_final,kkt_residual,status" plus a companion
/// whitespace-separated .dat ("no steps rho") next to it.
void emit_table(const SweepReport& report, const std::filesystem::path& csv_path);

std::string table_csv(const SweepReport& report);
std::string table_dat(const SweepReport& report);

/// Parse records back from table_csv output.
std::vector<SweepRecord> parse_table_csv(const std::string& text);

/// root/{family}/{n}/{algorithm}/{seed}.csv
std::filesystem::path results_path(const std::filesystem::path& root, int family, int n, Algorithm alg,
                                   std::uint64_t seed);

}  // namespace iqp
