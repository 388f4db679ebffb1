#include "diamond/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "diamond/cli/presets.hpp"
#include "diamond/cli/report.hpp"
#include "diamond/errors.hpp"
#include "diamond/verify.hpp"

namespace diamond::cli {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double db(double linear, DbScale scale) {
  if (std::isnan(linear) || linear < 0.0) return kNaN;
  if (linear == 0.0) return -std::numeric_limits<double>::infinity();
  return to_db(linear, scale);
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

/// Sets key_dB_paper and key_dB_power.
void put_db(json& h, const std::string& key, double linear) {
  h[key + "_dB_paper"] = num(db(linear, DbScale::paper));
  h[key + "_dB_power"] = num(db(linear, DbScale::power));
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string scale_name(DbScale s) { return std::string(to_string(s)); }

}  // namespace

json smatrix_report(const RunConfig& config, std::optional<double> freq_hz, std::optional<Convention> convention) {
  OperatingPoint point = config.operating_point();
  if (freq_hz) point.detuning = angular(*freq_hz - config.params.omega_hz);
  if (convention) point.convention = *convention;
  const ScatteringResult s = diamond_scattering(point.params, point.detuning, point.frame, point.convention);
  const Metrics m = evaluate(point);

  json rows = json::array();
  for (std::size_t r = 0; r < s.s.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < s.s.cols(); ++c) row.push_back(cplx_json(s.s(r, c)));
    rows.push_back(row);
  }
  const DbScale scale = config.db_scale;
  return {
      {"convention", to_string(point.convention)},
      {"frame", to_string(point.frame)},
      {"db_scale", scale_name(scale)},
      {"probe_hz", config.params.omega_hz + cycles(point.detuning)},
      {"detuning_hz", cycles(point.detuning)},
      {"extrinsic", point.extrinsic || point.pumps.active()},
      {"S", rows},
      {"R_linear", num(m.R)},
      {"R_dB", num(db(m.R, scale))},
      {"fwd_gain_dB", num(db(m.forward, scale))},
      {"bwd_gain_dB", num(db(m.backward, scale))},
      {"s31_sq", num(m.s31_sq)},
      {"s13_sq", num(m.s13_sq)},
      {"flags", flags_to_string(m.flags)},
  };
}

int cmd_smatrix(const RunConfig& config, std::optional<double> freq_hz, std::optional<Convention> convention,
                std::ostream& out) {
  out << smatrix_report(config, freq_hz, convention).dump(2) << "\n";
  return 0;
}

SweepOutput sweep_output(const RunConfig& config, unsigned workers) {
  if (!config.sweep) throw ValidationError("sweep: config has no sweep section");
  SweepOutput out;
  out.result = run_sweep_parallel(config.operating_point(), config.sweep->axes, to_policy(config.sweep->window), workers);
  out.csv = sweep_csv(out.result, config.db_scale);
  out.summary = sweep_summary(out.result, config.db_scale);
  return out;
}

int cmd_sweep(const RunConfig& config, const std::filesystem::path& out_dir, unsigned workers, std::ostream& log) {
  const SweepOutput out = sweep_output(config, workers);
  write_text(out_dir / "sweep.csv", out.csv);
  write_text(out_dir / "sweep_summary.json", out.summary.dump(2) + "\n");
  log << "sweep: " << out.result.records.size() << " records written to " << (out_dir / "sweep.csv").string() << "\n";
  return 0;
}

OptimizationProblem optimization_problem(const RunConfig& config) {
  if (!config.optimize) throw ValidationError("optimize: config has no optimize section");
  OptimizationProblem problem;
  problem.objective = config.optimize->objective;
  problem.free = config.optimize->free;
  problem.base = config.operating_point();
  problem.window = to_policy(config.optimize->window);
  problem.validate();
  return problem;
}

OptimizeOutput optimize_output(const RunConfig& config, unsigned workers) {
  const OptimizationProblem problem = optimization_problem(config);
  OptimizeOutput out;
  out.seed = grid_seed(problem, config.optimize->grid_points, workers);
  RefineOptions options;
  options.tolerance = config.optimize->tolerance;
  options.max_evaluations = config.optimize->max_evaluations;
  out.refined = refine(problem, out.seed.point, options);

  auto point_json = [&](const std::vector<double>& x) {
    json j = json::object();
    for (std::size_t i = 0; i < problem.free.size(); ++i) j[std::string(param_name(problem.free[i].param))] = x[i];
    return j;
  };
  // The objective is 10 log10 of the metric.
  const double linear = std::pow(10.0, out.refined.value / 10.0);
  out.summary = {
      {"objective", objective_name(problem.objective)},
      {"db_scale", scale_name(config.db_scale)},
      {"seed", {{"point", point_json(out.seed.point)}, {"objective_dB_power", num(out.seed.value)}}},
      {"optimum", point_json(out.refined.point)},
      {"objective_dB_power", num(out.refined.value)},
      {"metric_linear", num(linear)},
      {"metric_dB", num(db(linear, config.db_scale))},
      {"evaluations", out.refined.evaluations},
      {"converged", out.refined.converged},
  };
  out.history_csv = "iteration,best_objective_dB_power\n";
  for (std::size_t i = 0; i < out.refined.history.size(); ++i)
    out.history_csv += std::to_string(i) + "," + format_number(out.refined.history[i]) + "\n";
  return out;
}

int cmd_optimize(const RunConfig& config, const std::filesystem::path& out_dir, unsigned workers, std::ostream& log) {
  const OptimizeOutput out = optimize_output(config, workers);
  write_text(out_dir / "optimize_summary.json", out.summary.dump(2) + "\n");
  write_text(out_dir / "optimize_history.csv", out.history_csv);
  log << "optimize: " << out.summary["optimum"].dump() << " objective " << format_number(out.refined.value)
      << " dB (power scale) after " << out.refined.evaluations << " evaluations\n";
  return 0;
}

namespace {

bool usable(const Metrics& m, double v) { return m.flags == kFlagNone && std::isfinite(v); }

std::optional<std::size_t> arg_best(const SweepResult& r, auto value, auto keep, bool maximize) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const auto& rec = r.records[i];
    const double v = value(rec.metrics);
    if (!usable(rec.metrics, v) || !keep(rec)) continue;
    if (!best || (maximize ? v > value(r.records[*best].metrics) : v < value(r.records[*best].metrics))) best = i;
  }
  return best;
}

const auto kAll = [](const SweepRecord&) { return true; };
const auto kR = [](const Metrics& m) { return m.R; };
const auto kFwd = [](const Metrics& m) { return m.forward; };
const auto kBwd = [](const Metrics& m) { return m.backward; };

void analyze_peak(const SweepResult& r, const OperatingPoint& base, json& h) {
  const auto i = arg_best(r, kR, kAll, true);
  if (!i) return;
  double R = r.records[*i].metrics.R;
  if (r.axes.size() == 1) {
    double at = r.records[*i].coordinates[0];
    const SweepAxis& axis = r.axes[0];
    if (axis.param == Param::detuning && axis.points >= 3) {
      const double step = (axis.stop - axis.start) / static_cast<double>(axis.points - 1);
      const WindowPolicy local{true, angular(at - step), angular(at + step), 21, true};
      const TrackedMetrics t = evaluate_tracked(base, local);
      if (usable(t.metrics, t.metrics.R) && t.metrics.R > R) {
        R = t.metrics.R;
        at = cycles(t.detuning);
      }
    }
    h["peak_at"] = at;
  } else {
    for (std::size_t a = 0; a < r.axes.size(); ++a)
      h["peak_at_" + std::string(param_name(r.axes[a].param))] = r.records[*i].coordinates[a];
  }
  h["peak_R_linear"] = R;
  put_db(h, "peak_R", R);
  if (const auto lo = arg_best(r, kR, kAll, false)) h["min_R_linear"] = r.records[*lo].metrics.R;
}

void analyze_symmetry(const SweepResult& r, json& h) {
  const std::size_t n = r.records.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = r.records[i].metrics.R, b = r.records[n - 1 - i].metrics.R;
    if (std::isfinite(a) && std::isfinite(b)) worst = std::max(worst, std::abs(a - b));
  }
  h["symmetry_max_abs_diff"] = worst;
  const auto neg = arg_best(r, kR, [](const SweepRecord& s) { return s.coordinates[0] < 0.0; }, true);
  const auto pos = arg_best(r, kR, [](const SweepRecord& s) { return s.coordinates[0] > 0.0; }, true);
  if (neg) h["peak_at_negative"] = r.records[*neg].coordinates[0];
  if (pos) h["peak_at_positive"] = r.records[*pos].coordinates[0];
}

void analyze_sides(const SweepResult& r, json& h) {
  const auto blue = arg_best(r, kR, [](const SweepRecord& s) { return s.coordinates[0] > 0.0; }, false);
  const auto red = arg_best(r, kR, [](const SweepRecord& s) { return s.coordinates[0] < 0.0; }, false);
  if (blue) {
    put_db(h, "blue_min_R", r.records[*blue].metrics.R);
    h["blue_min_at"] = r.records[*blue].coordinates[0];
  }
  if (red) {
    put_db(h, "red_min_R", r.records[*red].metrics.R);
    h["red_min_at"] = r.records[*red].coordinates[0];
  }
}

void analyze_gains(const SweepResult& r, const json& analysis, DbScale scale, json& h) {
  const auto f = arg_best(r, kFwd, kAll, true);
  const auto b = arg_best(r, kBwd, kAll, true);
  if (b) {
    put_db(h, "bwd_peak", r.records[*b].metrics.backward);
    h["bwd_peak_at"] = r.records[*b].coordinates[0];
  }
  if (!f) return;
  const Metrics& m = r.records[*f].metrics;
  put_db(h, "fwd_peak", m.forward);
  h["fwd_peak_at"] = r.records[*f].coordinates[0];
  put_db(h, "bwd_at_fwd_peak", m.backward);
  put_db(h, "isolation_at_fwd_peak", m.forward / m.backward);

  if (!analysis.contains("window_threshold_db")) return;
  const double threshold = analysis["window_threshold_db"].get<double>();
  auto level = [&](std::size_t i) { return db(r.records[i].metrics.forward, scale) - threshold; };
  auto x = [&](std::size_t i) { return r.records[i].coordinates[0]; };
  auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double a = level(inside), c = level(outside);
    return x(inside) + (x(outside) - x(inside)) * a / (a - c);
  };
  if (level(*f) < 0.0) return;
  std::size_t lo = *f, hi = *f;
  while (lo > 0 && level(lo - 1) >= 0.0) --lo;
  while (hi + 1 < r.records.size() && level(hi + 1) >= 0.0) ++hi;
  h["window_lower_hz"] = lo > 0 ? crossing(lo, lo - 1) : x(lo);
  h["window_upper_hz"] = hi + 1 < r.records.size() ? crossing(hi, hi + 1) : x(hi);
  h["window_clipped"] = lo == 0 || hi + 1 == r.records.size();
}

void analyze_points(const json& points, const OperatingPoint& base, json& h) {
  for (const auto& spec : points) {
    OperatingPoint p = base;
    for (const auto& [key, value] : spec["set"].items()) p = apply_param(p, parse_param(key), value.get<double>());
    const Metrics m = evaluate(p);
    const std::string name = spec["name"].get<std::string>();
    h[name + "_R_linear"] = num(m.R);
    put_db(h, name + "_R", m.R);
    put_db(h, name + "_fwd", m.forward);
    put_db(h, name + "_bwd", m.backward);
    h[name + "_flags"] = flags_to_string(m.flags);
  }
}

}  // namespace

json apply_check(const json& check, const json& headlines) {
  json out = check;
  const std::string key = check.at("headline").get<std::string>();
  const std::string op = check.at("op").get<std::string>();
  if (!headlines.contains(key) || !headlines[key].is_number()) {
    out["measured"] = nullptr;
    out["pass"] = false;
    return out;
  }
  const double x = headlines[key].get<double>();
  bool pass = false;
  if (op == "near") {
    pass = std::abs(x - check.at("target").get<double>()) <= check.at("tolerance").get<double>();
  } else if (op == "rel") {
    const double t = check.at("target").get<double>();
    pass = std::abs(x - t) <= check.at("tolerance").get<double>() * std::abs(t);
  } else if (op == "ge") {
    pass = x >= check.at("target").get<double>();
  } else if (op == "le") {
    pass = x <= check.at("target").get<double>();
  } else if (op == "range") {
    pass = x >= check.at("lower").get<double>() && x <= check.at("upper").get<double>();
  } else {
    throw ValidationError("check '" + key + "': unknown op '" + op + "'");
  }
  out["measured"] = x;
  out["pass"] = pass;
  return out;
}

Reproduction reproduce(std::string_view figure, unsigned workers) {
  const Preset& preset = find_preset(figure);
  const json spec = json::parse(preset.text);
  const RunConfig config = parse_config(spec.at("config").dump());
  const json& analysis = spec.at("analysis");
  const OperatingPoint base = config.operating_point();

  Reproduction out;
  json h = json::object();
  if (config.sweep) {
    const SweepOutput sweep = sweep_output(config, workers);
    out.csv = sweep.csv;
    if (analysis.value("peak", false)) analyze_peak(sweep.result, base, h);
    if (analysis.value("symmetry", false)) analyze_symmetry(sweep.result, h);
    if (analysis.value("sides", false)) analyze_sides(sweep.result, h);
    if (analysis.value("gains", false)) analyze_gains(sweep.result, analysis, config.db_scale, h);
  }
  if (analysis.contains("points")) analyze_points(analysis["points"], base, h);
  if (config.optimize) {
    const OptimizeOutput opt = optimize_output(config, workers);
    for (std::size_t i = 0; i < config.optimize->free.size(); ++i) {
      const std::string name(param_name(config.optimize->free[i].param));
      h["seed_" + name] = opt.seed.point[i];
      h["opt_" + name] = opt.refined.point[i];
    }
    h["opt_objective_dB_power"] = num(opt.refined.value);
  }

  json checks = json::array();
  out.pass = true;
  for (const auto& c : spec.at("checks")) {
    checks.push_back(apply_check(c, h));
    out.pass = out.pass && checks.back()["pass"].get<bool>();
  }
  out.summary = {
      {"figure", std::string(figure)},
      {"description", spec.at("description")},
      {"db_scale", scale_name(config.db_scale)},
      {"headlines", h},
      {"checks", checks},
      {"pass", out.pass},
      {"config", json::parse(serialize_config(config))},
  };
  return out;
}

int cmd_reproduce(std::string_view figure, const std::filesystem::path& out_dir, unsigned workers, std::ostream& log) {
  const Reproduction r = reproduce(figure, workers);
  const std::string stem = "figure_" + std::string(figure);
  if (!r.csv.empty()) write_text(out_dir / (stem + ".csv"), r.csv);
  write_text(out_dir / (stem + "_summary.json"), r.summary.dump(2) + "\n");
  for (const auto& c : r.summary["checks"])
    log << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["headline"].get<std::string>() << " = "
        << (c["measured"].is_null() ? std::string("missing") : format_number(c["measured"].get<double>())) << "\n";
  log << "figure " << figure << ": " << (r.pass ? "pass" : "FAIL") << "\n";
  return r.pass ? 0 : kExitChecksFailed;
}

json verify_report(const RunConfig& config, const VerifyOptions& options) {
  const DiamondParams p = config.device();
  json checks = json::array();
  bool pass = true;

  const auto detunings = sample_detunings(options.probe_span * p.Gamma1, options.probes, options.seed);
  OracleOptions oracle;
  oracle.settle_lifetimes = options.settle_lifetimes;
  oracle.dt_fraction = options.dt_fraction;
  const OracleReport report = time_domain_oracle(p, config.frame, detunings, oracle);
  json probes = json::array();
  for (const auto& probe : report.probes) {
    const bool ok = probe.unstable ? options.allow_unstable : probe.relative_error <= options.tolerance;
    json j = {{"detuning_hz", cycles(probe.detuning)}, {"relative_error", num(probe.relative_error)}, {"pass", ok}};
    if (probe.unstable) j["error"] = "UnstableIntegration: " + probe.message;
    probes.push_back(j);
  }
  const bool oracle_ok = std::all_of(probes.begin(), probes.end(), [](const json& j) { return j["pass"].get<bool>(); });
  checks.push_back({{"name", "time_domain_vs_frequency_domain"},
                    {"frame", to_string(config.frame)},
                    {"tolerance", options.tolerance},
                    {"max_relative_error", report.max_relative_error},
                    {"unstable_probes", report.unstable_count},
                    {"probes", probes},
                    {"pass", oracle_ok}});
  pass = pass && oracle_ok;

  const InversionReport inv = inversion_residuals(options.inversion_trials, 8, options.seed);
  const bool inv_ok = inv.worst_residual <= 1e-10;
  checks.push_back({{"name", "inversion_residual"},
                    {"trials", inv.trials},
                    {"worst_relative_residual", inv.worst_residual},
                    {"tolerance", 1e-10},
                    {"pass", inv_ok}});
  pass = pass && inv_ok;

  const double reference = config.frame == Frame::rotating ? p.omega : 0.0;
  const ComplexMatrix m = build_diamond_matrix(p, reference);
  const double structural = max_abs_diff(m, build_graph_matrix(diamond_graph(p), reference));
  const double w = (config.frame == Frame::rotating ? 0.0 : p.omega) + angular(config.detuning_hz);
  const ComplexMatrix shifted = m + cplx(0.0, w) * ComplexMatrix::identity(8);
  const double model_residual = max_abs_diff(matmul(shifted, invert(shifted)), ComplexMatrix::identity(8)) / shifted.max_abs();
  checks.push_back({{"name", "matrix_builders_agree"}, {"max_abs_diff", structural}, {"pass", structural == 0.0}});
  checks.push_back({{"name", "model_inversion_residual"},
                    {"relative_residual", model_residual},
                    {"tolerance", 1e-10},
                    {"pass", model_residual <= 1e-10}});
  pass = pass && structural == 0.0 && model_residual <= 1e-10;

  return {{"checks", checks}, {"pass", pass}};
}

int cmd_verify(const RunConfig& config, const VerifyOptions& options, std::ostream& out) {
  const json report = verify_report(config, options);
  out << report.dump(2) << "\n";
  return report["pass"].get<bool>() ? 0 : kExitChecksFailed;
}

}  // namespace diamond::cli
