#pragma once

// File formats. Instances and beamformers are JSON with complex numbers as
// [re, im] pairs; traces and evaluation rows are CSV with LF line endings.
// See docs/formats.md for the schemas.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spocs/problem.hpp"
#include "spocs/solver.hpp"

namespace spocs {

/// Malformed or inconsistent input file.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shortest decimal text that round-trips; "inf", "-inf", "nan" otherwise.
std::string format_number(double v);

/// Parses and validates an instance document. Throws FormatError.
ProblemInstance parse_instance(std::string_view json);
std::string instance_to_json(const ProblemInstance& instance);

Beamformer parse_beamformer(std::string_view json);
std::string beamformer_to_json(const Beamformer& w);

inline constexpr const char* kTraceHeader =
    "n,objective,rank_distance,max_sinr_residual,max_power_residual,psd_residual,rel_step,"
    "elapsed_ns";
std::string trace_to_csv(const SolverTrace& trace);

/// One evaluation record. Powers and rho are linear; *_db columns in dB.
struct EvalRow {
  std::uint64_t seed = 0;
  Index antennas = 0;
  std::size_t users = 0;
  std::size_t groups = 0;
  double gamma_db = 0.0;
  double sinr_min_rho_db = 0.0;
  double total_power = 0.0;
  double rho = 0.0;
  double p_sdr = 0.0;
  std::size_t solver_iters = 0;
  std::int64_t solve_ns = 0;
};

inline constexpr const char* kEvalHeader =
    "seed,N,K,M,gamma_db,sinr_min_rho_db,total_power,rho,p_sdr,solver_iters,solve_ns";
/// Row without trailing newline.
std::string eval_to_csv_row(const EvalRow& row);

/// Oracle record: estimate, reliability flag, bounds and residuals.
std::string sdr_estimate_to_json(const SdrEstimate& est);

std::string read_file(const std::filesystem::path& path);
/// Writes the whole content in binary mode; throws std::runtime_error on failure.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace spocs
