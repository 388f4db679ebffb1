#include <catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "diamond/errors.hpp"
#include "diamond/model.hpp"
#include "diamond/timedomain.hpp"
#include "diamond/units.hpp"
#include "diamond/verify.hpp"
#include "support/fixtures.hpp"

using namespace diamond;

namespace {

DiamondParams passive() {
  auto p = fixtures::unoptimized();
  p.gamma = 0.0;
  return p;
}

double relative_error(const ComplexVector& out, const ScatteringResult& s, std::size_t column) {
  double scale = 0.0, err = 0.0;
  for (std::size_t n = 0; n < 4; ++n) {
    scale = std::max(scale, std::abs(s.s(n, column)));
    err = std::max(err, std::abs(out[n] - s.s(n, column)));
  }
  return err / scale;
}

}  // namespace

TEST_CASE("undriven state decays at the slowest linewidth", "[timedomain]") {
  const auto p = passive();
  const auto m = build_diamond_matrix(p, p.omega);
  std::vector<cplx> initial(8, cplx(1.0, 0.5));
  const double gmin = std::min(p.Gamma1, p.Gamma2);
  const double t_end = 4.0 / gmin;
  const auto r = integrate(m, p.linewidths(), {}, t_end, max_stable_step(m), initial);
  double norm0 = 0.0, norm1 = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    norm0 += std::norm(initial[i]);
    norm1 += std::norm(r.state[i]);
  }
  CHECK(std::sqrt(norm1) <= 1.1 * std::exp(-gmin * t_end / 2.0) * std::sqrt(norm0));
  CHECK(r.time == t_end);
}

TEST_CASE("single driven mode reaches the closed-form amplitude", "[timedomain]") {
  const double omega = 50.0, gamma = 2.0, w = 51.3;
  CouplingGraph g{{{omega, gamma}}, {}, {}};
  const auto m = build_graph_matrix(g);
  const auto widths = g.linewidths();
  const cplx A{0.8, -0.3};
  const Drive drive{0, A, w};
  const double t_end = 40.0 / gamma;
  const auto r = integrate(m, widths, std::span(&drive, 1), t_end, max_stable_step(m) * 0.25);
  const cplx expected = std::sqrt(gamma) * A / cplx(-gamma / 2.0, w - omega) * std::polar(1.0, -w * t_end);
  CHECK(std::abs(r.state[0] - expected) <= 1e-6 * std::abs(expected));

  SteadyStateOptions o{t_end, max_stable_step(m) * 0.25, 2};
  const auto out = driven_steady_state(m, widths, std::span(&drive, 1), o);
  CHECK(std::abs(out[0] - A * fixtures::single_mode_reflection(w, omega, gamma, true)) <= 1e-6 * std::abs(A));
}

TEST_CASE("steady-state output relation", "[timedomain]") {
  const std::vector<double> widths{1.0, 2.0, 1.0, 2.0};
  const ComplexVector zero(8);
  CHECK(steady_state_output(zero, 0.3, {}, widths, 5.0).max_abs() == 0.0);
  const Drive d{1, cplx(0.2, 0.4), 5.0};
  const auto out = steady_state_output(zero, 0.3, std::span(&d, 1), widths, 5.0);
  CHECK(std::abs(out[1] - d.amplitude) <= 1e-15);
  CHECK(std::abs(out[5] - std::conj(d.amplitude)) <= 1e-15);
  CHECK(std::abs(out[0]) == 0.0);
}

TEST_CASE("time-domain outputs match the frequency-domain column without parametric coupling",
          "[timedomain][oracle]") {
  const auto p = passive();
  const auto r = time_domain_oracle(p, Frame::rotating, {0.0 + 0.37 * p.Gamma1, -1.1 * p.Gamma1}, {40.0, 1.0, 1});
  CHECK(r.unstable_count == 0);
  CHECK(r.max_relative_error <= 1e-6);
}

TEST_CASE("time-domain outputs match at a stable parametric point", "[timedomain][oracle]") {
  auto p = fixtures::optimized();
  p.gamma = angular(5e6);
  const auto r = time_domain_oracle(p, Frame::rotating, {0.8 * p.Gamma1}, {40.0, 1.0, 1});
  CHECK(r.unstable_count == 0);
  CHECK(r.max_relative_error <= 1e-6);
}

TEST_CASE("port-3 output for the unoptimized device at w = omega", "[timedomain][oracle]") {
  // Rotating frame, zero detuning: the drive is static and the blocks decouple without gamma.
  const auto p = passive();
  const auto m = build_diamond_matrix(p, p.omega);
  const auto s = scattering(m, p.linewidths(), 0.0, Convention::standard);
  const Drive drive{kPort1, 1.0, 0.0};
  const auto out = driven_steady_state(m, p.linewidths(), std::span(&drive, 1),
                                       {40.0 / std::min(p.Gamma1, p.Gamma2), max_stable_step(m), 0});
  CHECK(std::abs(out[kPort3] - s.s(kPort3, kPort1)) <= 1e-6 * std::abs(s.s(kPort3, kPort1)));
  CHECK(relative_error(out, s, kPort1) <= 1e-6);
}

TEST_CASE("halving the step barely moves the steady state", "[timedomain]") {
  const auto p = passive();
  const auto m = build_diamond_matrix(p, p.omega);
  const double w = 0.6 * p.Gamma1;
  const Drive drive{kPort1, 1.0, w};
  const double settle = 20.0 / std::min(p.Gamma1, p.Gamma2);
  const auto a = driven_steady_state(m, p.linewidths(), std::span(&drive, 1), {settle, max_stable_step(m), 1});
  const auto b = driven_steady_state(m, p.linewidths(), std::span(&drive, 1), {settle, max_stable_step(m) / 2, 1});
  double diff = 0.0;
  for (std::size_t n = 0; n < 4; ++n) diff = std::max(diff, std::abs(a[n] - b[n]));
  CHECK(diff <= 1e-8 * a.max_abs());
}

TEST_CASE("step size above the stability bound is refused", "[timedomain]") {
  const auto p = passive();
  const auto m = build_diamond_matrix(p);
  CHECK_THROWS_AS(integrate(m, p.linewidths(), {}, 1e-9, 2.0 * max_stable_step(m)), std::invalid_argument);
}

TEST_CASE("parametrically unstable point is reported", "[timedomain]") {
  // Optimized intrinsic point in the rotating frame: gamma exceeds Gamma1/2.
  const auto p = fixtures::optimized();
  const auto r = time_domain_oracle(p, Frame::rotating, {0.2 * p.Gamma1}, {200.0, 1.0, 1});
  CHECK(r.unstable_count == 1);
  CHECK(r.probes[0].unstable);
  CHECK(std::isnan(r.probes[0].relative_error));
}

TEST_CASE("detuning samples are reproducible", "[timedomain]") {
  const auto a = sample_detunings(3.0, 10, 42);
  const auto b = sample_detunings(3.0, 10, 42);
  CHECK(a == b);
  for (double d : a) CHECK(std::abs(d) <= 3.0);
  CHECK(sample_detunings(3.0, 10, 43) != a);
}
