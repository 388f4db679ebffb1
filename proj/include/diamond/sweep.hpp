#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diamond/model.hpp"

namespace diamond {

/// Every quantity a sweep or optimizer can vary. Frequencies and rates are
/// given in Hz (cycles) on the axis and converted with 2*pi when applied.
enum class Param {
  probe_frequency,  // absolute probe frequency, Hz
  detuning,         // probe minus omega, Hz
  theta,            // round-trip phase, rad, spread as theta/4 on each edge
  gamma,            // Hz
  Q1,
  Q2,
  a2bar_mag,
  a4bar_mag,
  g_mag,
  h_mag,
  f_mag,
  k_mag,  // Hz
  g_phase,
  h_phase,
  f_phase,
  k_phase,  // rad
};

std::string_view param_name(Param p);
/// Throws ValidationError on an unknown name.
Param parse_param(std::string_view name);
/// Column label with unit suffix, e.g. "detuning_hz".
std::string param_column(Param p);

enum class AxisScale { linear, log };

struct SweepAxis {
  Param param = Param::detuning;
  double start = 0.0;
  double stop = 0.0;
  std::size_t points = 1;
  AxisScale scale = AxisScale::linear;

  /// Throws ValidationError.
  void validate() const;
  double value(std::size_t i) const;

  friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

/// A fully specified evaluation: device, pumps, probe detuning and modelling choices.
struct OperatingPoint {
  DiamondParams params;
  PumpConfig pumps;
  /// Probe detuning from omega, rad/s.
  double detuning = 0.0;
  Frame frame = Frame::rotating;
  Convention convention = Convention::paper;
  /// Use the pumped (extrinsic) measure even when both pumps are zero.
  bool extrinsic = false;
};

/// Applies an axis value (in axis units) to a copy of the operating point.
OperatingPoint apply_param(OperatingPoint point, Param p, double value);
/// Current value of a parameter in axis units.
double read_param(const OperatingPoint& point, Param p);

enum RecordFlag : std::uint32_t {
  kFlagNone = 0,
  kFlagDegenerate = 1u << 0,
  kFlagSingular = 1u << 1,
};

std::string flags_to_string(std::uint32_t flags);

/// Metrics at one operating point. On a degenerate or singular evaluation the
/// affected values are NaN and the flag says why.
struct Metrics {
  double R = 0.0;
  double forward = 0.0;
  double backward = 0.0;
  double s31_sq = 0.0;
  double s13_sq = 0.0;
  std::uint32_t flags = kFlagNone;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// Never throws for degenerate or singular points; flags them instead.
Metrics evaluate(const OperatingPoint& point);

/// Probe-frequency policy: evaluate at the operating point's detuning, or
/// report the maximum of R over a detuning window.
struct WindowPolicy {
  bool track = false;
  /// Detuning window, rad/s.
  double lower = 0.0;
  double upper = 0.0;
  std::size_t points = 201;
  /// Golden-section polish around the best grid sample.
  bool refine = true;

  friend bool operator==(const WindowPolicy&, const WindowPolicy&) = default;
};

struct TrackedMetrics {
  Metrics metrics;
  /// Detuning of the maximum, rad/s (the fixed detuning when not tracking).
  double detuning = 0.0;
};

TrackedMetrics evaluate_tracked(const OperatingPoint& point, const WindowPolicy& policy);

struct SweepRecord {
  std::vector<double> coordinates;
  Metrics metrics;
  double detuning = 0.0;
};

struct SweepResult {
  std::vector<SweepAxis> axes;
  WindowPolicy policy;
  /// Row-major over the axes: the last axis varies fastest.
  std::vector<SweepRecord> records;
};

/// Serial grid evaluation, 1 or 2 axes.
SweepResult run_sweep(const OperatingPoint& base, const std::vector<SweepAxis>& axes, const WindowPolicy& policy);

/// Same records as run_sweep, computed on `workers` threads.
SweepResult run_sweep_parallel(const OperatingPoint& base, const std::vector<SweepAxis>& axes,
                               const WindowPolicy& policy, unsigned workers);

}  // namespace diamond
