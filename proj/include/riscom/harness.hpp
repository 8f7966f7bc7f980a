#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riscom/driver.hpp"
#include "riscom/scenario.hpp"

namespace riscom {

enum class Experiment { VsL, VsE, VsGamma, VsPower, PerMr };

std::string_view experiment_name(Experiment e);
/// Throws InvalidConfig.
Experiment parse_experiment(std::string_view s);

/// Units of the sweep axis: L elements, e bits, gamma_th in mW, P_max in dBm,
/// MR index (1-based) for per_mr.
struct SweepSpec {
  Experiment experiment = Experiment::VsL;
  std::vector<double> values;
  std::vector<Scheme> schemes;
  std::vector<std::uint64_t> seeds;
  ScenarioConfig scenario;
  int threads = 0;  ///< 0: hardware concurrency, capped by RISCOM_THREADS
};

struct SweepRow {
  std::string experiment;
  std::string scheme;
  double sweep_value = 0.0;
  std::uint64_t seed = 0;
  double rate_relaxed = 0.0;
  double rate_extracted = 0.0;
  double gain = 0.0;
  bool feasible = false;
  int outer_iters = 0;
  int inner_iters_total = 0;
  double wall_time = 0.0;
};

struct PointError {
  double sweep_value = 0.0;
  std::uint64_t seed = 0;
  std::string message;
};

struct SweepOutput {
  std::vector<SweepRow> rows;  ///< sorted by (experiment, scheme, sweep_value, seed)
  std::vector<PointError> errors;
};

/// Throws InvalidConfig when values are empty or not strictly increasing,
/// or seeds / schemes are empty.
void validate_spec(const SweepSpec& spec);

/// Scenario for one sweep point. Throws InvalidSweepValue.
ScenarioConfig apply_sweep_value(Experiment e, const ScenarioConfig& base, double value);

/// Runs every (scheme, value, seed); a failing point is recorded in
/// `errors` and the sweep carries on.
SweepOutput run_sweep(const SweepSpec& spec);

/// For each MR k the sensing target is moved onto MR k and the proposed
/// scheme is rerun. rate_* are MR k's own rates, gain is the two-way echo
/// gain: the beampattern gain towards MR k times the squared RIS->MR_k mean power
/// gain. sweep_value = k (1-based).
SweepOutput per_mr_profile(const ScenarioConfig& cfg, std::span<const std::uint64_t> seeds, int threads = 0);

RunResult run_point(Scheme s, const ScenarioConfig& cfg, std::uint64_t seed);

/// Worker count after applying RISCOM_THREADS.
int effective_threads(int requested);

struct SummaryRow {
  std::string experiment;
  std::string scheme;
  double sweep_value = 0.0;
  int n = 0;
  double mean_rate_relaxed = 0.0, stderr_rate_relaxed = 0.0;
  double mean_rate_extracted = 0.0, stderr_rate_extracted = 0.0;
  double mean_gain = 0.0, stderr_gain = 0.0;
  double feasible_fraction = 0.0;
};

/// Sample mean and sd / sqrt(n) (0 for n = 1).
std::pair<double, double> mean_stderr(std::span<const double> x);

/// Throws DuplicateKey on a repeated (experiment, scheme, sweep_value, seed).
void check_unique(std::span<const SweepRow> rows);
std::vector<SummaryRow> summarize(std::span<const SweepRow> rows);

extern const char* const kResultsHeader;
void write_results_csv(std::span<const SweepRow> rows, std::ostream& out);
void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out);
/// Parses what write_results_csv produced. Throws IoError.
std::vector<SweepRow> read_results_csv(std::istream& in);
/// Mean extracted rate against the sweep value, one line per scheme.
std::string svg_chart(std::string_view experiment, std::span<const SummaryRow> rows);

/// results.csv, summary.csv, <experiment>.svg. Throws IoError / DuplicateKey.
void emit(std::span<const SweepRow> rows, const std::filesystem::path& out_dir);

}  // namespace riscom
