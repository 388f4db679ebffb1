#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "diamond/sweep.hpp"
#include "diamond/units.hpp"

namespace diamond::cli {

/// 17 significant digits (%.17g), independent of the C locale. Non-finite values print as nan, inf, -inf.
std::string format_number(double v);

/// Columns: one per axis (param_column), R_linear, R_dB, fwd_gain_dB,
/// bwd_gain_dB, peak_detuning_hz (tracking only), flags.
std::string sweep_csv(const SweepResult& result, DbScale scale);

/// Record count, flagged count, and argmax / argmin of R with coordinates.
nlohmann::json sweep_summary(const SweepResult& result, DbScale scale);

/// One record as JSON: coordinates by parameter name plus metrics.
nlohmann::json record_json(const SweepResult& result, std::size_t index, DbScale scale);

/// Creates parent directories; throws diamond::Error if the file cannot be written.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace diamond::cli
