#pragma once

#include <span>
#include <vector>

#include "diamond/linalg.hpp"

namespace diamond {

/// Monochromatic input a * e^{-i w t} into one port (zero-based mode index).
/// Its conjugate drives the matching creation-block entry.
struct Drive {
  std::size_t port = 0;
  cplx amplitude;
  double frequency = 0.0;
};

/// State magnitude above which integration is declared unstable.
inline constexpr double kUnstableMagnitude = 1e12;
/// Required bound on dt * (max absolute row sum of M).
inline constexpr double kStepBound = 0.1;

struct IntegrationResult {
  ComplexVector state;
  double time = 0.0;
};

/// Classical RK4 on d{a}/dt = M{a} - sqrt(G){a_in(t)} from `initial` (zero
/// when empty) up to t_end with step dt. Throws std::invalid_argument if dt
/// violates the stability bound and UnstableIntegration on blow-up.
IntegrationResult integrate(const ComplexMatrix& m, std::span<const double> linewidths, std::span<const Drive> drives,
                            double t_end, double dt, std::span<const cplx> initial = {});

/// {a_out} = {a_in} + sqrt(G){a} at time t, demodulated by e^{+iwt} on the
/// annihilation block and e^{-iwt} on the creation block.
ComplexVector steady_state_output(const ComplexVector& state, double t, std::span<const Drive> drives,
                                  std::span<const double> linewidths, double demodulation_frequency);

/// Largest step satisfying the stability bound for m.
double max_stable_step(const ComplexMatrix& m);

struct SteadyStateOptions {
  /// Settling time before averaging starts.
  double settle_time = 0.0;
  /// Requested step; shrunk so that a drive period holds an integer number of steps.
  double dt = 0.0;
  /// Drive periods averaged at the tail (ignored for a zero drive frequency).
  int average_periods = 1;
};

/// Integrates from rest and returns the demodulated outputs averaged over an
/// integer number of drive periods. All drives must share one frequency.
ComplexVector driven_steady_state(const ComplexMatrix& m, std::span<const double> linewidths,
                                  std::span<const Drive> drives, const SteadyStateOptions& options);

}  // namespace diamond
