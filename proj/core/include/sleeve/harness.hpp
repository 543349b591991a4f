#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sleeve/ogm.hpp"

namespace sleeve {

enum class Algorithm { atpe, ogm, retrieval };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

/// Experiment grid. For atpe and ogm, `profiles` lists oracle profiles and the
/// parameter grid is h_grid / m_grid respectively. For retrieval, `profiles`
/// lists design kinds ("full", "reduced") and the param column reports the
/// design's point count.
struct ExperimentConfig {
  Algorithm algorithm = Algorithm::atpe;
  std::vector<int> n_list;
  std::vector<int> d_list;
  std::vector<std::string> profiles;
  std::vector<double> h_grid;
  std::vector<int> m_grid;
  int trials = 100;
  double init_angle = 1.0471975511965976;  // pi/3
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

/// Flat "key = value" config text; '#' starts a comment, lists are
/// comma-separated. Keys: algorithm, n_list, d_list, profiles, h_grid,
/// m_grid, trials, init_angle, seed, out_dir. Throws ParseError with the
/// offending line number.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// "pi", "pi/3", or a plain radian value.
double parse_angle(const std::string& text);

struct TrialRow {
  std::string algorithm;
  int n = 0;
  int d = 0;
  std::string profile;
  double param = 0;
  int trial = 0;
  double hs_error = 0;
  long queries = 0;
  int iterations = 0;
  long wall_ms = 0;
};

inline constexpr const char* kTrialCsvHeader =
    "algorithm,N,d,profile,param,trial,hs_error,queries,iterations,wall_ms";
inline constexpr const char* kAggregateCsvHeader =
    "algorithm,N,d,profile,param,trials,mean_hs_error,q95_hs_error";

struct ExperimentResult {
  std::vector<TrialRow> rows;
  std::string trials_csv;
  std::string aggregate_csv;
  std::string trials_path;
  std::string aggregate_path;
};

/// Run the full grid: one row per trial, trials within a cell in parallel
/// (each trial owns its oracle and RNG streams derived from the master seed),
/// rows ordered by (cell, trial) regardless of completion order. Writes
/// trials.csv and aggregate.csv under cfg.out_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string trials_to_csv(const std::vector<TrialRow>& rows);

/// Per-cell mean and 95th-percentile (nearest-rank) of hs_error.
std::string aggregate_to_csv(const std::vector<TrialRow>& rows);

/// Render an aggregate CSV as standalone SVG plots: one file per
/// (algorithm, statistic) with a log-scale error axis and one polyline per
/// (N, d, profile) cell, legend included. Returns the written paths.
std::vector<std::string> emit_plots(const std::string& csv_path, const std::string& out_dir);

/// Deterministic helper: run fn(0..n-1) on a small thread pool; the callable
/// writes into preallocated slots, so scheduling order cannot matter.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace sleeve
