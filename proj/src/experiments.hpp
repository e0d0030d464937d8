#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "pisigma_fnn.hpp"

namespace mtp {

/// Reads a CSV with header `label,x1,...,xs,target`. Malformed rows are
/// reported with their line number.
Dataset load_dataset(const std::filesystem::path& path, std::size_t arity);

/// FNV-1a 64-bit digest of a file's raw bytes, for fixture integrity checks.
std::uint64_t fixture_digest(const std::filesystem::path& path);

struct PartitionSpec {
  explicit PartitionSpec(std::size_t levels);
  std::size_t levels_per_input;
};

/// Full Cartesian rule grid: Gaussian centers at evenly spaced points over
/// each input's data range, widths set to the squared partition spacing,
/// intercepts at the mean target. The last input varies fastest.
std::pair<FnnParams, std::size_t> build_rule_grid(const PartitionSpec& spec,
                                                  const Dataset& data);

/// Mean absolute percentage error, in percent.
double mape(std::span<const double> targets, std::span<const double> results);

/// Sign of each input's correlation with the target; a convenience for
/// Mamdani rule bases, which need the signs supplied.
std::vector<int> estimate_signs(const Dataset& data);

struct PerRecordResult {
  std::string label;
  double target;
  double result;
  double error;  // target - result
};

struct RunReport {
  std::string method;
  TrainTrace trace;
  std::vector<PerRecordResult> per_record;
  double final_error_percent;
  double total_seconds;
  double speed_ratio_vs_baseline;
  std::size_t rule_count;
  FnnParams params;
};

struct ExperimentConfig {
  TrainConfig train;
  int timing_runs = 3;  // wall time reported as the median of this many runs
};

const char* gating_name(Gating gating);

/// Trains each method from one shared initialization and reports the
/// Table-style traces, per-record results and the speed ratio of the
/// sugeno_product baseline to the mtp_movement run.
std::vector<RunReport> run_experiment(const Dataset& data,
                                      const PartitionSpec& spec,
                                      const std::vector<Gating>& methods,
                                      const ExperimentConfig& cfg);

/// Writes `{dataset}_{method}_{seed}.records.csv`, `.trace.csv`,
/// `.summary.json` and `.params.json`; returns the summary path.
std::filesystem::path write_report(const RunReport& report,
                                   const std::string& dataset_name,
                                   std::uint64_t seed,
                                   const std::filesystem::path& outdir);

/// Acceptance bands for the full two-dataset reproduction.
struct ReproduceBands {
  static constexpr double kPrecipMtpMaxError = 12.0;      // percent
  static constexpr double kPrecipMinSpeedRatio = 1.5;
  static constexpr double kSecurityMaxError = 6.0;        // percent, both gatings
  static constexpr double kSecurityMinSpeedRatio = 1.0;
  static constexpr long kFullIterations = 32670;
  static constexpr long kQuickIterations = 2000;
};

struct ReproduceSummary {
  double precip_mtp_error = 0.0;
  double precip_sugeno_error = 0.0;
  double precip_speed_ratio = 0.0;
  double security_mtp_error = 0.0;
  double security_sugeno_error = 0.0;
  double security_speed_ratio = 0.0;
  bool bands_passed = false;
  bool quick = false;
};

/// Runs both experiments with both gatings, writes the four report bundles
/// plus `reproduce_summary.json` with a pass/fail line per band.
ReproduceSummary reproduce(const std::filesystem::path& precipitation_csv,
                           const std::filesystem::path& security_csv,
                           const std::filesystem::path& outdir, bool quick,
                           std::uint64_t seed, unsigned max_threads = 1);

}  // namespace mtp
