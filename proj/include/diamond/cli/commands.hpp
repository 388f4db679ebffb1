#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "diamond/config.hpp"
#include "diamond/optimize.hpp"

namespace diamond::cli {

/// Exit status for a run whose checks failed (errors exit with 2).
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitError = 2;

/// S matrix and metrics at one probe frequency. `freq_hz` is the absolute
/// probe frequency; without it the config detuning is used.
nlohmann::json smatrix_report(const RunConfig& config, std::optional<double> freq_hz,
                              std::optional<Convention> convention);
int cmd_smatrix(const RunConfig& config, std::optional<double> freq_hz, std::optional<Convention> convention,
                std::ostream& out);

struct SweepOutput {
  SweepResult result;
  std::string csv;
  nlohmann::json summary;
};

SweepOutput sweep_output(const RunConfig& config, unsigned workers);
/// Writes sweep.csv and sweep_summary.json into out_dir.
int cmd_sweep(const RunConfig& config, const std::filesystem::path& out_dir, unsigned workers, std::ostream& log);

struct OptimizeOutput {
  OptimumPoint seed;
  RefineResult refined;
  nlohmann::json summary;
  std::string history_csv;
};

OptimizationProblem optimization_problem(const RunConfig& config);
OptimizeOutput optimize_output(const RunConfig& config, unsigned workers);
/// Writes optimize_summary.json and optimize_history.csv into out_dir.
int cmd_optimize(const RunConfig& config, const std::filesystem::path& out_dir, unsigned workers, std::ostream& log);

struct Reproduction {
  std::string csv;
  nlohmann::json summary;
  bool pass = false;
};

/// Runs a figure preset. Throws UnknownFigure.
Reproduction reproduce(std::string_view figure, unsigned workers);
/// Writes figure_<id>.csv and figure_<id>_summary.json into out_dir.
int cmd_reproduce(std::string_view figure, const std::filesystem::path& out_dir, unsigned workers, std::ostream& log);

/// Evaluates one check object {"headline", "op", ...} against headlines.
/// Ops: near (|x - target| <= tolerance), rel (relative tolerance), ge, le,
/// range (lower <= x <= upper). Returns the check with "measured" and "pass".
nlohmann::json apply_check(const nlohmann::json& check, const nlohmann::json& headlines);

struct VerifyOptions {
  double tolerance = 1e-6;
  std::size_t probes = 10;
  std::uint64_t seed = 20240607;
  /// Probe detunings are drawn from +/- this many port-1 linewidths.
  double probe_span = 3.0;
  double settle_lifetimes = 40.0;
  double dt_fraction = 0.5;
  std::size_t inversion_trials = 1000;
  /// Count UnstableIntegration probes as reported rather than failed.
  bool allow_unstable = false;
};

nlohmann::json verify_report(const RunConfig& config, const VerifyOptions& options);
int cmd_verify(const RunConfig& config, const VerifyOptions& options, std::ostream& out);

}  // namespace diamond::cli
