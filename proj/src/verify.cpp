#include "diamond/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "diamond/errors.hpp"
#include "diamond/timedomain.hpp"

namespace diamond {

std::vector<double> sample_detunings(double halfwidth, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-halfwidth, halfwidth);
  std::vector<double> out(count);
  for (auto& d : out) d = dist(rng);
  return out;
}

OracleReport time_domain_oracle(const DiamondParams& p, Frame frame, const std::vector<double>& detunings,
                                const OracleOptions& options) {
  p.validate();
  const double reference = frame == Frame::rotating ? p.omega : 0.0;
  const ComplexMatrix m = build_diamond_matrix(p, reference);
  const auto widths = p.linewidths();
  const double slowest = *std::min_element(widths.begin(), widths.end());

  SteadyStateOptions ss;
  ss.settle_time = options.settle_lifetimes / slowest;
  ss.dt = max_stable_step(m) * options.dt_fraction;
  ss.average_periods = options.average_periods;

  OracleReport report;
  for (double det : detunings) {
    OracleProbe probe;
    probe.detuning = det;
    const double w = reference == 0.0 ? p.omega + det : det;
    const ScatteringResult s = scattering(m, widths, w, Convention::standard);
    const Drive drive{kPort1, 1.0, w};
    try {
      const ComplexVector out = driven_steady_state(m, widths, std::span(&drive, 1), ss);
      double scale = 0.0, err = 0.0;
      for (std::size_t n = 0; n < widths.size(); ++n) {
        scale = std::max(scale, std::abs(s.s(n, kPort1)));
        err = std::max(err, std::abs(out[n] - s.s(n, kPort1)));
      }
      probe.relative_error = err / scale;
      report.max_relative_error = std::max(report.max_relative_error, probe.relative_error);
    } catch (const UnstableIntegration& e) {
      probe.unstable = true;
      probe.relative_error = std::numeric_limits<double>::quiet_NaN();
      probe.message = e.what();
      ++report.unstable_count;
    }
    report.probes.push_back(probe);
  }
  return report;
}

InversionReport inversion_residuals(std::size_t trials, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  InversionReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<cplx> e(n * n);
    for (auto& v : e) v = {dist(rng), dist(rng)};
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] += static_cast<double>(n);
    const ComplexMatrix a(n, n, std::move(e));
    const ComplexMatrix r = matmul(a, invert(a)) - ComplexMatrix::identity(n);
    report.worst_residual = std::max(report.worst_residual, r.max_abs() / a.max_abs());
  }
  return report;
}

}  // namespace diamond
