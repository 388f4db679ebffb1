#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diamond/model.hpp"

namespace diamond {

/// Uniform detunings in [-halfwidth, +halfwidth] from a seeded generator.
std::vector<double> sample_detunings(double halfwidth, std::size_t count, std::uint64_t seed);

struct OracleOptions {
  /// Settling time in units of 1 / min(linewidth).
  double settle_lifetimes = 40.0;
  /// Fraction of the largest stable RK4 step.
  double dt_fraction = 1.0;
  int average_periods = 1;
};

struct OracleProbe {
  double detuning = 0.0;  // rad/s
  /// Max over the four ports of |a_out - S_n1| / max_n |S_n1|; NaN when unstable.
  double relative_error = 0.0;
  bool unstable = false;
  std::string message;
};

struct OracleReport {
  std::vector<OracleProbe> probes;
  double max_relative_error = 0.0;
  std::size_t unstable_count = 0;
};

/// Drives port 1 at each detuning, integrates to steady state and compares
/// the demodulated outputs with the standard-convention S column.
OracleReport time_domain_oracle(const DiamondParams& p, Frame frame, const std::vector<double>& detunings,
                                const OracleOptions& options = {});

struct InversionReport {
  std::size_t trials = 0;
  /// max over trials of ||A A^-1 - I||_max / ||A||_max.
  double worst_residual = 0.0;
};

/// Inverts `trials` random diagonally dominated n x n complex matrices.
InversionReport inversion_residuals(std::size_t trials, std::size_t n, std::uint64_t seed);

}  // namespace diamond
