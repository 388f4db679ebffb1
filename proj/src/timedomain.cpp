#include "diamond/timedomain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <limits>
#include <string>

#include "diamond/errors.hpp"
#include "diamond/units.hpp"

namespace diamond {

namespace {

/// Dense real/imaginary split of M; the hot loop avoids std::complex multiply.
class System {
 public:
  System(const ComplexMatrix& m, std::span<const double> linewidths, std::span<const Drive> drives)
      : dim_(m.rows()), n_(linewidths.size()), drives_(drives.begin(), drives.end()) {
    if (!m.square() || dim_ != 2 * n_) throw DimensionMismatch("integrate: system matrix must be 2N x 2N");
    re_.resize(dim_ * dim_);
    im_.resize(dim_ * dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) {
        re_[r * dim_ + c] = m(r, c).real();
        im_[r * dim_ + c] = m(r, c).imag();
      }
    root_.resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i) root_[i] = std::sqrt(linewidths[i % n_]);
    for (const auto& d : drives_) {
      if (d.port >= n_) throw DimensionMismatch("drive port out of range");
    }
    xr_.resize(dim_);
    xi_.resize(dim_);
  }

  std::size_t dim() const { return dim_; }
  std::size_t drives() const { return drives_.size(); }

  /// a_in(t) for each drive, before the sqrt(G) factor.
  void inputs(double t, cplx* in) const {
    for (std::size_t i = 0; i < drives_.size(); ++i)
      in[i] = drives_[i].amplitude * std::polar(1.0, -drives_[i].frequency * t);
  }

  /// e^{-i w h} per drive, to advance `inputs` by h.
  void advance(double h, cplx* rot) const {
    for (std::size_t i = 0; i < drives_.size(); ++i) rot[i] = std::polar(1.0, -drives_[i].frequency * h);
  }

  /// out = M x - sqrt(G) a_in, x and out interleaved (re, im).
  void derivative(const cplx* in, const double* x, double* out) const {
    product(x, out);
    for (std::size_t i = 0; i < drives_.size(); ++i) {
      const std::size_t p = drives_[i].port;
      const std::size_t c = p + n_;
      out[2 * p] -= root_[p] * in[i].real();
      out[2 * p + 1] -= root_[p] * in[i].imag();
      out[2 * c] -= root_[c] * in[i].real();
      out[2 * c + 1] += root_[c] * in[i].imag();
    }
  }

 private:
  void product(const double* x, double* out) const {
    for (std::size_t c = 0; c < dim_; ++c) {
      xr_[c] = x[2 * c];
      xi_[c] = x[2 * c + 1];
    }
    for (std::size_t r = 0; r < dim_; ++r) {
      const double* mr = &re_[r * dim_];
      const double* mi = &im_[r * dim_];
      double sr = 0.0, si = 0.0;
      for (std::size_t c = 0; c < dim_; ++c) {
        sr += mr[c] * xr_[c] - mi[c] * xi_[c];
        si += mr[c] * xi_[c] + mi[c] * xr_[c];
      }
      out[2 * r] = sr;
      out[2 * r + 1] = si;
    }
  }

  std::size_t dim_;
  std::size_t n_;
  std::vector<Drive> drives_;
  std::vector<double> re_, im_;
  std::vector<double> root_;
  mutable std::vector<double> xr_, xi_;
};

class Rk4 {
 public:
  explicit Rk4(const System& sys)
      : sys_(sys), k1_(2 * sys.dim()), k2_(k1_), k3_(k1_), k4_(k1_), tmp_(k1_), in0_(sys.drives()),
        in1_(in0_), in2_(in0_), half_(in0_) {}

  void step(double t, double dt, std::vector<double>& x) {
    if (dt != cached_dt_) {
      sys_.advance(0.5 * dt, half_.data());
      cached_dt_ = dt;
    }
    sys_.inputs(t, in0_.data());
    for (std::size_t i = 0; i < in0_.size(); ++i) {
      in1_[i] = in0_[i] * half_[i];
      in2_[i] = in1_[i] * half_[i];
    }
    const std::size_t len = x.size();
    sys_.derivative(in0_.data(), x.data(), k1_.data());
    for (std::size_t i = 0; i < len; ++i) tmp_[i] = x[i] + 0.5 * dt * k1_[i];
    sys_.derivative(in1_.data(), tmp_.data(), k2_.data());
    for (std::size_t i = 0; i < len; ++i) tmp_[i] = x[i] + 0.5 * dt * k2_[i];
    sys_.derivative(in1_.data(), tmp_.data(), k3_.data());
    for (std::size_t i = 0; i < len; ++i) tmp_[i] = x[i] + dt * k3_[i];
    sys_.derivative(in2_.data(), tmp_.data(), k4_.data());
    for (std::size_t i = 0; i < len; ++i) x[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

 private:
  const System& sys_;
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
  std::vector<cplx> in0_, in1_, in2_, half_;
  double cached_dt_ = std::numeric_limits<double>::quiet_NaN();
};

void check_bounded(const std::vector<double>& x, double t) {
  for (std::size_t i = 0; i < x.size(); i += 2) {
    if (!(std::hypot(x[i], x[i + 1]) <= kUnstableMagnitude)) {
      throw UnstableIntegration("state magnitude exceeded 1e12 at t = " + std::to_string(t) +
                                " s; the operating point has no steady state");
    }
  }
}

ComplexVector unpack(const std::vector<double>& x) {
  std::vector<cplx> v(x.size() / 2);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = {x[2 * i], x[2 * i + 1]};
  return ComplexVector(std::move(v));
}

void check_step(const ComplexMatrix& m, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
  if (dt > max_stable_step(m) * (1.0 + 1e-12)) {
    throw std::invalid_argument("integrate: dt = " + std::to_string(dt) + " s exceeds the RK4 step bound " +
                                std::to_string(max_stable_step(m)) + " s");
  }
}

// Checking every step costs as much as a derivative evaluation.
constexpr long kCheckInterval = 256;

}  // namespace

double max_stable_step(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) sum += std::abs(m(r, c));
    worst = std::max(worst, sum);
  }
  return worst > 0.0 ? kStepBound / worst : std::numeric_limits<double>::infinity();
}

IntegrationResult integrate(const ComplexMatrix& m, std::span<const double> linewidths, std::span<const Drive> drives,
                            double t_end, double dt, std::span<const cplx> initial) {
  check_step(m, dt);
  const System sys(m, linewidths, drives);
  std::vector<double> x(2 * sys.dim(), 0.0);
  if (!initial.empty()) {
    if (initial.size() != sys.dim()) throw DimensionMismatch("integrate: initial state has the wrong length");
    for (std::size_t i = 0; i < initial.size(); ++i) {
      x[2 * i] = initial[i].real();
      x[2 * i + 1] = initial[i].imag();
    }
  }
  Rk4 rk(sys);
  const long steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  double t = 0.0;
  for (long s = 0; s < steps; ++s) {
    const double h = std::min(dt, t_end - t);
    rk.step(t, h, x);
    t = (s + 1 == steps) ? t_end : t + h;
    if (s % kCheckInterval == 0) check_bounded(x, t);
  }
  check_bounded(x, t);
  return {unpack(x), t};
}

ComplexVector steady_state_output(const ComplexVector& state, double t, std::span<const Drive> drives,
                                  std::span<const double> linewidths, double demodulation_frequency) {
  const std::size_t n = linewidths.size();
  if (state.size() != 2 * n) throw DimensionMismatch("steady_state_output: state length must be 2N");
  std::vector<cplx> out(2 * n);
  for (const auto& d : drives) {
    if (d.port >= n) throw DimensionMismatch("drive port out of range");
    const cplx in = d.amplitude * std::polar(1.0, -d.frequency * t);
    out[d.port] += in;
    out[d.port + n] += std::conj(in);
  }
  const cplx rot = std::polar(1.0, demodulation_frequency * t);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    out[i] += std::sqrt(linewidths[i % n]) * state[i];
    out[i] *= i < n ? rot : std::conj(rot);
  }
  return ComplexVector(std::move(out));
}

ComplexVector driven_steady_state(const ComplexMatrix& m, std::span<const double> linewidths,
                                  std::span<const Drive> drives, const SteadyStateOptions& options) {
  if (drives.empty()) throw std::invalid_argument("driven_steady_state: at least one drive required");
  const double w = drives.front().frequency;
  for (const auto& d : drives) {
    if (d.frequency != w) throw std::invalid_argument("driven_steady_state: drives must share one frequency");
  }
  check_step(m, options.dt);

  double dt = options.dt;
  long per_period = 0;
  if (w != 0.0 && options.average_periods > 0) {
    const double period = kTwoPi / std::abs(w);
    per_period = static_cast<long>(std::ceil(period / options.dt));
    dt = period / static_cast<double>(per_period);
  }
  const long settle_steps = static_cast<long>(std::ceil(options.settle_time / dt));
  const long average_steps = per_period * options.average_periods;

  const System sys(m, linewidths, drives);
  std::vector<double> x(2 * sys.dim(), 0.0);
  Rk4 rk(sys);
  // Times are s * dt rather than accumulated sums so the averaging grid is exact.
  for (long s = 0; s < settle_steps; ++s) {
    rk.step(static_cast<double>(s) * dt, dt, x);
    if (s % kCheckInterval == 0) check_bounded(x, static_cast<double>(s + 1) * dt);
  }
  check_bounded(x, static_cast<double>(settle_steps) * dt);

  if (average_steps == 0) {
    return steady_state_output(unpack(x), static_cast<double>(settle_steps) * dt, drives, linewidths, w);
  }
  std::vector<cplx> sum(sys.dim());
  for (long s = 0; s < average_steps; ++s) {
    const double t = static_cast<double>(settle_steps + s) * dt;
    const auto out = steady_state_output(unpack(x), t, drives, linewidths, w);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += out[i];
    rk.step(t, dt, x);
  }
  check_bounded(x, static_cast<double>(settle_steps + average_steps) * dt);
  for (auto& v : sum) v /= static_cast<double>(average_steps);
  return ComplexVector(std::move(sum));
}

}  // namespace diamond
