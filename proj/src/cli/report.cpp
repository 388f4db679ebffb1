#include "diamond/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "diamond/errors.hpp"

namespace diamond::cli {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

double db_or_nan(double linear, DbScale scale) {
  return std::isfinite(linear) && linear > 0.0 ? to_db(linear, scale)
         : linear == 0.0                       ? -std::numeric_limits<double>::infinity()
                                               : std::numeric_limits<double>::quiet_NaN();
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string sweep_csv(const SweepResult& result, DbScale scale) {
  std::string out;
  for (const auto& a : result.axes) out += param_column(a.param) + ",";
  out += "R_linear,R_dB,fwd_gain_dB,bwd_gain_dB,";
  if (result.policy.track) out += "peak_detuning_hz,";
  out += "flags\n";
  for (const auto& r : result.records) {
    for (double c : r.coordinates) out += format_number(c) + ",";
    out += format_number(r.metrics.R) + ",";
    out += format_number(db_or_nan(r.metrics.R, scale)) + ",";
    out += format_number(db_or_nan(r.metrics.forward, scale)) + ",";
    out += format_number(db_or_nan(r.metrics.backward, scale)) + ",";
    if (result.policy.track) out += format_number(cycles(r.detuning)) + ",";
    out += flags_to_string(r.metrics.flags) + "\n";
  }
  return out;
}

json record_json(const SweepResult& result, std::size_t index, DbScale scale) {
  const SweepRecord& r = result.records.at(index);
  json coords = json::object();
  for (std::size_t a = 0; a < result.axes.size(); ++a)
    coords[std::string(param_name(result.axes[a].param))] = r.coordinates[a];
  json j = {
      {"coordinates", coords},
      {"R_linear", number_or_null(r.metrics.R)},
      {"R_dB", number_or_null(db_or_nan(r.metrics.R, scale))},
      {"fwd_gain_dB", number_or_null(db_or_nan(r.metrics.forward, scale))},
      {"bwd_gain_dB", number_or_null(db_or_nan(r.metrics.backward, scale))},
      {"flags", flags_to_string(r.metrics.flags)},
  };
  if (result.policy.track) j["peak_detuning_hz"] = cycles(r.detuning);
  return j;
}

json sweep_summary(const SweepResult& result, DbScale scale) {
  std::size_t flagged = 0;
  std::optional<std::size_t> hi, lo;
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const double R = result.records[i].metrics.R;
    if (result.records[i].metrics.flags != kFlagNone || !std::isfinite(R)) {
      ++flagged;
      continue;
    }
    if (!hi || R > result.records[*hi].metrics.R) hi = i;
    if (!lo || R < result.records[*lo].metrics.R) lo = i;
  }
  json j = {{"records", result.records.size()}, {"flagged", flagged}, {"db_scale", scale == DbScale::power ? "power" : "paper"}};
  j["argmax"] = hi ? record_json(result, *hi, scale) : json(nullptr);
  j["argmin"] = lo ? record_json(result, *lo, scale) : json(nullptr);
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
  if (!f.flush()) throw Error("write failed for " + path.string());
}

}  // namespace diamond::cli
