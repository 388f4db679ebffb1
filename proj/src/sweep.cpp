#include "diamond/sweep.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "diamond/errors.hpp"
#include "diamond/parallel.hpp"
#include "diamond/units.hpp"

namespace diamond {

namespace {

struct ParamInfo {
  Param param;
  std::string_view name;
  std::string_view unit;
};

constexpr std::array kParams = {
    ParamInfo{Param::probe_frequency, "probe_frequency", "hz"},
    ParamInfo{Param::detuning, "detuning", "hz"},
    ParamInfo{Param::theta, "theta", "rad"},
    ParamInfo{Param::gamma, "gamma", "hz"},
    ParamInfo{Param::Q1, "Q1", ""},
    ParamInfo{Param::Q2, "Q2", ""},
    ParamInfo{Param::a2bar_mag, "a2bar_mag", ""},
    ParamInfo{Param::a4bar_mag, "a4bar_mag", ""},
    ParamInfo{Param::g_mag, "g_mag", "hz"},
    ParamInfo{Param::h_mag, "h_mag", "hz"},
    ParamInfo{Param::f_mag, "f_mag", "hz"},
    ParamInfo{Param::k_mag, "k_mag", "hz"},
    ParamInfo{Param::g_phase, "g_phase", "rad"},
    ParamInfo{Param::h_phase, "h_phase", "rad"},
    ParamInfo{Param::f_phase, "f_phase", "rad"},
    ParamInfo{Param::k_phase, "k_phase", "rad"},
};

const ParamInfo& info(Param p) {
  for (const auto& i : kParams)
    if (i.param == p) return i;
  throw ValidationError("unknown parameter");
}

cplx& edge(DiamondParams& p, Param which) {
  switch (which) {
    case Param::g_mag:
    case Param::g_phase:
      return p.g;
    case Param::h_mag:
    case Param::h_phase:
      return p.h;
    case Param::f_mag:
    case Param::f_phase:
      return p.f;
    default:
      return p.k;
  }
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string_view param_name(Param p) { return info(p).name; }

Param parse_param(std::string_view name) {
  for (const auto& i : kParams)
    if (i.name == name) return i.param;
  throw ValidationError("unknown sweep parameter '" + std::string(name) + "'");
}

std::string param_column(Param p) {
  const auto& i = info(p);
  return i.unit.empty() ? std::string(i.name) : std::string(i.name) + "_" + std::string(i.unit);
}

void SweepAxis::validate() const {
  const std::string name(param_name(param));
  if (points < 1) throw ValidationError("axis " + name + ": points must be at least 1");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw ValidationError("axis " + name + ": endpoints must be finite");
  if (points > 1 && !(start < stop)) throw ValidationError("axis " + name + ": start must be below stop");
  if (scale == AxisScale::log && !(start > 0.0 && stop > 0.0))
    throw ValidationError("axis " + name + ": log scale needs positive endpoints");
}

double SweepAxis::value(std::size_t i) const {
  if (points == 1 || i == 0) return start;
  if (i + 1 == points) return stop;
  const double t = static_cast<double>(i) / static_cast<double>(points - 1);
  if (scale == AxisScale::log) return std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
  return start + t * (stop - start);
}

OperatingPoint apply_param(OperatingPoint point, Param p, double value) {
  auto& d = point.params;
  switch (p) {
    case Param::probe_frequency:
      point.detuning = angular(value) - d.omega;
      break;
    case Param::detuning:
      point.detuning = angular(value);
      break;
    case Param::theta: {
      const double quarter = value / 4.0;
      d.g = std::polar(std::abs(d.g), quarter);
      d.h = std::polar(std::abs(d.h), quarter);
      d.f = std::polar(std::abs(d.f), quarter);
      d.k = std::polar(std::abs(d.k), quarter);
      break;
    }
    case Param::gamma:
      d.gamma = angular(value);
      break;
    case Param::Q1:
      d.Gamma1 = linewidth_from_q(d.omega, value);
      break;
    case Param::Q2:
      d.Gamma2 = linewidth_from_q(d.Omega, value);
      break;
    case Param::a2bar_mag:
      point.pumps.a2bar = std::polar(value, std::arg(point.pumps.a2bar));
      break;
    case Param::a4bar_mag:
      point.pumps.a4bar = std::polar(value, std::arg(point.pumps.a4bar));
      break;
    case Param::g_mag:
    case Param::h_mag:
    case Param::f_mag:
    case Param::k_mag: {
      cplx& c = edge(d, p);
      c = std::polar(angular(value), std::arg(c));
      break;
    }
    case Param::g_phase:
    case Param::h_phase:
    case Param::f_phase:
    case Param::k_phase: {
      cplx& c = edge(d, p);
      c = std::polar(std::abs(c), value);
      break;
    }
  }
  return point;
}

double read_param(const OperatingPoint& point, Param p) {
  const auto& d = point.params;
  switch (p) {
    case Param::probe_frequency:
      return cycles(d.omega + point.detuning);
    case Param::detuning:
      return cycles(point.detuning);
    case Param::theta:
      return d.theta();
    case Param::gamma:
      return cycles(d.gamma);
    case Param::Q1:
      return d.q1();
    case Param::Q2:
      return d.q2();
    case Param::a2bar_mag:
      return std::abs(point.pumps.a2bar);
    case Param::a4bar_mag:
      return std::abs(point.pumps.a4bar);
    case Param::g_mag:
      return cycles(std::abs(d.g));
    case Param::h_mag:
      return cycles(std::abs(d.h));
    case Param::f_mag:
      return cycles(std::abs(d.f));
    case Param::k_mag:
      return cycles(std::abs(d.k));
    case Param::g_phase:
      return std::arg(d.g);
    case Param::h_phase:
      return std::arg(d.h);
    case Param::f_phase:
      return std::arg(d.f);
    case Param::k_phase:
      return std::arg(d.k);
  }
  return kNaN;
}

std::string flags_to_string(std::uint32_t flags) {
  if (flags == kFlagNone) return "ok";
  std::string out;
  if (flags & kFlagDegenerate) out += "degenerate";
  if (flags & kFlagSingular) out += out.empty() ? "singular" : "|singular";
  return out;
}

Metrics evaluate(const OperatingPoint& point) {
  Metrics m;
  std::optional<ScatteringResult> s;
  try {
    s = diamond_scattering(point.params, point.detuning, point.frame, point.convention);
  } catch (const SingularMatrix&) {
    return Metrics{kNaN, kNaN, kNaN, kNaN, kNaN, kFlagSingular};
  }
  const auto gains = directional_gains(*s, point.pumps);
  m.forward = gains.forward;
  m.backward = gains.backward;
  m.s31_sq = std::norm(s->transmission(kPort3, kPort1));
  m.s13_sq = std::norm(s->transmission(kPort1, kPort3));
  try {
    m.R = (point.extrinsic || point.pumps.active()) ? extrinsic_nonreciprocity(*s, point.pumps)
                                                     : intrinsic_nonreciprocity(*s);
  } catch (const DegenerateTransmission&) {
    m.R = kNaN;
    m.flags |= kFlagDegenerate;
  }
  return m;
}

namespace {

/// Ordering used for maxima: NaN ranks below everything.
bool better(double candidate, double incumbent) {
  if (std::isnan(candidate)) return false;
  return std::isnan(incumbent) || candidate > incumbent;
}

}  // namespace

TrackedMetrics evaluate_tracked(const OperatingPoint& point, const WindowPolicy& policy) {
  if (!policy.track) return {evaluate(point), point.detuning};
  if (policy.points < 1 || !(policy.lower <= policy.upper))
    throw ValidationError("tracking window must have lower <= upper and at least one point");

  auto at = [&](double detuning) {
    OperatingPoint p = point;
    p.detuning = detuning;
    return evaluate(p);
  };
  const std::size_t n = policy.points;
  auto grid = [&](std::size_t i) {
    return n == 1 ? policy.lower
                  : policy.lower + (policy.upper - policy.lower) * static_cast<double>(i) / static_cast<double>(n - 1);
  };

  std::size_t best_i = 0;
  Metrics best = at(grid(0));
  for (std::size_t i = 1; i < n; ++i) {
    const Metrics m = at(grid(i));
    if (better(m.R, best.R)) {
      best = m;
      best_i = i;
    }
  }
  double best_x = grid(best_i);
  if (!policy.refine || n < 3 || std::isnan(best.R)) return {best, best_x};

  // Golden-section search inside the neighbouring grid cells.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = grid(best_i == 0 ? 0 : best_i - 1);
  double b = grid(best_i + 1 >= n ? n - 1 : best_i + 1);
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  Metrics mc = at(c), md = at(d);
  for (int iter = 0; iter < 80 && (b - a) > 1e-12 * std::max(1.0, std::abs(best_x)); ++iter) {
    if (better(mc.R, md.R)) {
      b = d;
      d = c;
      md = mc;
      c = b - invphi * (b - a);
      mc = at(c);
    } else {
      a = c;
      c = d;
      mc = md;
      d = a + invphi * (b - a);
      md = at(d);
    }
  }
  const double x = 0.5 * (a + b);
  const Metrics mx = at(x);
  if (better(mx.R, best.R)) {
    best = mx;
    best_x = x;
  }
  return {best, best_x};
}

namespace {

void validate_axes(const std::vector<SweepAxis>& axes, const WindowPolicy& policy) {
  if (axes.empty() || axes.size() > 2) throw ValidationError("a sweep needs one or two axes");
  for (const auto& axis : axes) {
    axis.validate();
    if (policy.track && (axis.param == Param::detuning || axis.param == Param::probe_frequency))
      throw ValidationError("a probe-frequency axis cannot be combined with window tracking");
  }
}

std::size_t grid_size(const std::vector<SweepAxis>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.points;
  return n;
}

SweepRecord sweep_point(const OperatingPoint& base, const std::vector<SweepAxis>& axes, const WindowPolicy& policy,
                        std::size_t index) {
  SweepRecord record;
  std::vector<std::size_t> idx(axes.size());
  std::size_t rem = index;
  for (std::size_t a = axes.size(); a-- > 0;) {
    idx[a] = rem % axes[a].points;
    rem /= axes[a].points;
  }
  OperatingPoint point = base;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const double v = axes[a].value(idx[a]);
    record.coordinates.push_back(v);
    point = apply_param(point, axes[a].param, v);
  }
  const auto tracked = evaluate_tracked(point, policy);
  record.metrics = tracked.metrics;
  record.detuning = tracked.detuning;
  return record;
}

}  // namespace

SweepResult run_sweep(const OperatingPoint& base, const std::vector<SweepAxis>& axes, const WindowPolicy& policy) {
  return run_sweep_parallel(base, axes, policy, 1);
}

SweepResult run_sweep_parallel(const OperatingPoint& base, const std::vector<SweepAxis>& axes,
                               const WindowPolicy& policy, unsigned workers) {
  validate_axes(axes, policy);
  base.params.validate();
  SweepResult result{axes, policy, std::vector<SweepRecord>(grid_size(axes))};
  parallel_for(result.records.size(), workers,
               [&](std::size_t i) { result.records[i] = sweep_point(base, axes, policy, i); });
  return result;
}

}  // namespace diamond
