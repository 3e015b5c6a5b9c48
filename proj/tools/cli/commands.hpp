#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spocs/io.hpp"
#include "spocs/scenario.hpp"
#include "spocs/solver.hpp"

namespace spocs::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitBadInput = 2,
  kExitIterationCap = 3,
  kExitUnreliableOracle = 4,
};

enum class RunStatus { ok, iteration_cap, unreliable_oracle, error };
const char* to_string(RunStatus s);
int exit_code(RunStatus s);

struct RunOptions {
  SolverConfig solver;              // relaxation is resized to K per instance
  SdrOracleConfig oracle;
  std::optional<double> p_sdr;      // skips the oracle when given
  double mu_sinr = 1.9;
  double mu_power = 1.0;
  double mu_psd = 1.0;

  RunOptions();
  /// Fills the relaxation vectors for an instance with `users` users.
  void bind(std::size_t users);
};

struct TrialResult {
  ProblemInstance instance;
  std::uint64_t seed = 0;
  SolveResult solve;
  Beamformer beamformer;
  std::optional<SdrEstimate> oracle;
  double p_sdr = 0.0;               // NaN when unavailable
  double sinr_min_rho = 0.0;        // linear; NaN when unavailable
  EvalRow row;
  RunStatus status = RunStatus::ok;
  std::string message;
};

/// Solves one instance, estimates P*_SDR unless supplied, and evaluates the metric.
TrialResult run_trial(ProblemInstance instance, std::uint64_t seed, RunOptions options);

/// Writes instance.json, beamformer.json, trace.csv and eval.csv into `dir`.
void write_run_files(const TrialResult& r, const std::filesystem::path& dir);

/// eval.csv contents: header plus one row.
std::string eval_csv(const TrialResult& r);

enum class Axis { antennas, users, gamma };
const char* to_string(Axis a);
Axis parse_axis(const std::string& s);

struct SweepSpec {
  Axis axis = Axis::antennas;
  std::vector<double> grid;         // N or K values, or gamma in dB
  std::size_t trials = 1;
  ScenarioSpec base;                // base.gamma is linear
  RunOptions options;
  unsigned jobs = 1;
  std::optional<std::filesystem::path> run_dir;  // per-run files when set
};

struct SweepRow {
  double grid_value = 0.0;
  std::size_t trial = 0;
  TrialResult result;
};

/// Runs every (grid value, trial) pair; rows come back sorted by (grid value, seed).
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

inline constexpr const char* kRunsHeader =
    "axis,grid_value,seed,N,K,M,gamma_db,sinr_min_rho_db,total_power,rho,p_sdr,solver_iters,"
    "solve_ns,terminated_by,oracle_reliable,status";
std::string runs_csv(const std::vector<SweepRow>& rows, Axis axis);

inline constexpr const char* kSummaryHeader =
    "axis,grid_value,trials,evaluated,failed,sinr_min_rho_db_min,sinr_min_rho_db_q25,"
    "sinr_min_rho_db_median,sinr_min_rho_db_q75,sinr_min_rho_db_max,total_power_median,"
    "solver_iters_median,solve_ns_median";
std::string summary_csv(const std::vector<SweepRow>& rows, Axis axis);

/// Linear-interpolation quantile of an unsorted sample; NaN for an empty one.
double quantile(std::vector<double> v, double q);

/// Full command-line entry point.
int run(int argc, char** argv);

}  // namespace spocs::cli
