#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diamond/optimize.hpp"
#include "diamond/sweep.hpp"
#include "diamond/units.hpp"

namespace diamond {

/// One hopping edge as written in a config: magnitude in Hz, phase in rad.
struct EdgeConfig {
  double mag_hz = 0.0;
  double phase_rad = 0.0;
  friend bool operator==(const EdgeConfig&, const EdgeConfig&) = default;
};

/// Device parameters in config units (Hz as cycles). Exactly one of Q or
/// Gamma is set for each port pair.
struct ParamsConfig {
  double omega_hz = 0.0;
  double Omega_hz = 0.0;
  EdgeConfig g, h, f, k;
  double gamma_hz = 0.0;
  std::optional<double> Q1;
  std::optional<double> Gamma1_hz;
  std::optional<double> Q2;
  std::optional<double> Gamma2_hz;
  friend bool operator==(const ParamsConfig&, const ParamsConfig&) = default;
};

struct WindowConfig {
  bool track = false;
  double lower_hz = 0.0;
  double upper_hz = 0.0;
  std::size_t points = 201;
  bool refine = true;
  friend bool operator==(const WindowConfig&, const WindowConfig&) = default;
};

struct SweepConfig {
  std::vector<SweepAxis> axes;
  WindowConfig window;
  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct OptimizeConfig {
  Objective objective = Objective::intrinsic_at_w;
  std::vector<FreeParam> free;
  std::size_t grid_points = 21;
  int max_evaluations = 2000;
  double tolerance = 1e-6;
  WindowConfig window;
  friend bool operator==(const OptimizeConfig&, const OptimizeConfig&) = default;
};

struct RunConfig {
  ParamsConfig params;
  PumpConfig pumps;
  double detuning_hz = 0.0;
  bool extrinsic = false;
  Convention convention = Convention::paper;
  Frame frame = Frame::rotating;
  DbScale db_scale = DbScale::power;
  std::optional<SweepConfig> sweep;
  std::optional<OptimizeConfig> optimize;
  std::string output_dir = "out";
  std::optional<unsigned> workers;

  DiamondParams device() const;
  OperatingPoint operating_point() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

WindowPolicy to_policy(const WindowConfig& w);

/// Parses and validates a JSON config. Throws ParseError (with line and
/// column) for malformed text and ValidationError naming the offending field.
RunConfig parse_config(std::string_view text);
std::string serialize_config(const RunConfig& config);

std::string_view to_string(Convention c);
std::string_view to_string(Frame f);
std::string_view to_string(DbScale s);

/// Worker count: explicit flag, then the config, then DIAMOND_WORKERS, then 1.
unsigned resolve_workers(std::optional<unsigned> flag, const RunConfig& config);

}  // namespace diamond
