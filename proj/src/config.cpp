#include "diamond/config.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "diamond/errors.hpp"

namespace diamond {

using json = nlohmann::json;

namespace {

/// JSON object plus its dotted path, for error messages.
struct Node {
  const json& j;
  std::string path;

  std::string child(std::string_view key) const {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
  }
  bool has(std::string_view key) const { return j.contains(key) && !j.at(std::string(key)).is_null(); }
  Node at(std::string_view key) const {
    if (!has(key)) throw ValidationError(child(key) + ": required field is missing");
    return {j.at(std::string(key)), child(key)};
  }

  double number() const {
    if (!j.is_number()) throw ValidationError(path + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ValidationError(path + ": must be finite");
    return v;
  }
  std::string string() const {
    if (!j.is_string()) throw ValidationError(path + ": expected a string");
    return j.get<std::string>();
  }
  bool boolean() const {
    if (!j.is_boolean()) throw ValidationError(path + ": expected true or false");
    return j.get<bool>();
  }
  std::size_t count() const {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
      throw ValidationError(path + ": expected a non-negative integer");
    return j.get<std::size_t>();
  }
  cplx complex() const {
    if (j.is_number()) return number();
    if (j.is_object()) {
      const double re = has("re") ? at("re").number() : 0.0;
      const double im = has("im") ? at("im").number() : 0.0;
      return {re, im};
    }
    throw ValidationError(path + ": expected a number or {\"re\", \"im\"}");
  }

  double number_or(std::string_view key, double fallback) const { return has(key) ? at(key).number() : fallback; }
  std::optional<double> optional_number(std::string_view key) const {
    return has(key) ? std::optional<double>(at(key).number()) : std::nullopt;
  }
};

void require_object(const Node& n) {
  if (!n.j.is_object()) throw ValidationError((n.path.empty() ? std::string("config") : n.path) + ": expected an object");
}

EdgeConfig parse_edge(const Node& n) {
  require_object(n);
  EdgeConfig e{n.number_or("mag_hz", 0.0), n.number_or("phase_rad", 0.0)};
  if (e.mag_hz < 0.0) throw ValidationError(n.child("mag_hz") + ": must be non-negative");
  return e;
}

WindowConfig parse_window(const Node& n) {
  require_object(n);
  WindowConfig w;
  if (n.has("track")) w.track = n.at("track").boolean();
  w.lower_hz = n.number_or("lower_hz", 0.0);
  w.upper_hz = n.number_or("upper_hz", 0.0);
  if (n.has("points")) w.points = n.at("points").count();
  if (n.has("refine")) w.refine = n.at("refine").boolean();
  if (w.track && (w.points < 1 || !(w.lower_hz <= w.upper_hz)))
    throw ValidationError(n.path + ": tracking window needs lower_hz <= upper_hz and points >= 1");
  return w;
}

template <typename Enum>
Enum parse_choice(const Node& n, std::initializer_list<std::pair<std::string_view, Enum>> choices) {
  const std::string s = n.string();
  for (const auto& [name, value] : choices)
    if (name == s) return value;
  throw ValidationError(n.path + ": unknown value '" + s + "'");
}

ParamsConfig parse_params(const Node& n) {
  require_object(n);
  ParamsConfig p;
  p.omega_hz = n.at("omega_hz").number();
  p.Omega_hz = n.at("Omega_hz").number();
  if (!(p.omega_hz > 0.0)) throw ValidationError(n.child("omega_hz") + ": must be positive");
  if (!(p.Omega_hz > 0.0)) throw ValidationError(n.child("Omega_hz") + ": must be positive");
  if (p.omega_hz == p.Omega_hz) throw ValidationError(n.child("Omega_hz") + ": must differ from omega_hz");
  for (auto [key, edge] : {std::pair{"g", &p.g}, {"h", &p.h}, {"f", &p.f}, {"k", &p.k}})
    if (n.has(key)) *edge = parse_edge(n.at(key));
  p.gamma_hz = n.number_or("gamma_hz", 0.0);
  if (p.gamma_hz < 0.0) throw ValidationError(n.child("gamma_hz") + ": must be non-negative");

  p.Q1 = n.optional_number("Q1");
  p.Gamma1_hz = n.optional_number("Gamma1_hz");
  p.Q2 = n.optional_number("Q2");
  p.Gamma2_hz = n.optional_number("Gamma2_hz");
  auto exactly_one = [&](const std::optional<double>& q, const std::optional<double>& gamma, const char* qk,
                         const char* gk) {
    if (q.has_value() == gamma.has_value())
      throw ValidationError(n.child(qk) + ": give exactly one of " + qk + " and " + gk);
    const double v = q ? *q : *gamma;
    if (!(v > 0.0)) throw ValidationError(n.child(q ? qk : gk) + ": must be positive");
  };
  exactly_one(p.Q1, p.Gamma1_hz, "Q1", "Gamma1_hz");
  exactly_one(p.Q2, p.Gamma2_hz, "Q2", "Gamma2_hz");
  return p;
}

SweepAxis parse_axis(const Node& n) {
  require_object(n);
  SweepAxis a;
  try {
    a.param = parse_param(n.at("param").string());
  } catch (const ValidationError& e) {
    throw ValidationError(n.child("param") + ": " + e.what());
  }
  a.start = n.at("start").number();
  a.stop = n.number_or("stop", a.start);
  a.points = n.has("points") ? n.at("points").count() : 1;
  if (n.has("scale")) a.scale = parse_choice<AxisScale>(n.at("scale"), {{"linear", AxisScale::linear}, {"log", AxisScale::log}});
  try {
    a.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(n.path + ": " + e.what());
  }
  return a;
}

SweepConfig parse_sweep(const Node& n) {
  require_object(n);
  SweepConfig s;
  const Node axes = n.at("axes");
  if (!axes.j.is_array() || axes.j.empty() || axes.j.size() > 2)
    throw ValidationError(axes.path + ": expected an array of one or two axes");
  for (std::size_t i = 0; i < axes.j.size(); ++i)
    s.axes.push_back(parse_axis({axes.j[i], axes.path + "[" + std::to_string(i) + "]"}));
  if (n.has("window")) s.window = parse_window(n.at("window"));
  if (s.window.track)
    for (const auto& a : s.axes)
      if (a.param == Param::detuning || a.param == Param::probe_frequency)
        throw ValidationError(n.child("window") + ": tracking cannot be combined with a detuning or probe-frequency axis");
  return s;
}

OptimizeConfig parse_optimize(const Node& n) {
  require_object(n);
  OptimizeConfig o;
  try {
    o.objective = parse_objective(n.at("objective").string());
  } catch (const ValidationError& e) {
    throw ValidationError(n.child("objective") + ": " + e.what());
  }
  const Node free = n.at("free");
  if (!free.j.is_array() || free.j.empty()) throw ValidationError(free.path + ": expected a non-empty array");
  for (std::size_t i = 0; i < free.j.size(); ++i) {
    const Node f{free.j[i], free.path + "[" + std::to_string(i) + "]"};
    require_object(f);
    FreeParam p;
    try {
      p.param = parse_param(f.at("param").string());
    } catch (const ValidationError& e) {
      throw ValidationError(f.child("param") + ": " + e.what());
    }
    p.lower = f.at("lower").number();
    p.upper = f.at("upper").number();
    p.log = f.has("log") ? f.at("log").boolean() : default_log_search(p.param);
    if (!(p.lower < p.upper)) throw ValidationError(f.path + ": lower must be below upper");
    if (p.log && !(p.lower > 0.0)) throw ValidationError(f.path + ": log search needs positive bounds");
    o.free.push_back(p);
  }
  if (n.has("grid_points")) o.grid_points = n.at("grid_points").count();
  if (n.has("max_evaluations")) o.max_evaluations = static_cast<int>(n.at("max_evaluations").count());
  o.tolerance = n.number_or("tolerance", o.tolerance);
  if (n.has("window")) o.window = parse_window(n.at("window"));
  if (o.grid_points < 1) throw ValidationError(n.child("grid_points") + ": must be at least 1");
  if (o.free.size() > 3) throw ValidationError(free.path + ": at most three free parameters");
  return o;
}

json edge_json(const EdgeConfig& e) { return {{"mag_hz", e.mag_hz}, {"phase_rad", e.phase_rad}}; }

json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json window_json(const WindowConfig& w) {
  return {{"track", w.track}, {"lower_hz", w.lower_hz}, {"upper_hz", w.upper_hz}, {"points", w.points}, {"refine", w.refine}};
}

}  // namespace

std::string_view to_string(Convention c) { return c == Convention::paper ? "paper" : "standard"; }
std::string_view to_string(Frame f) { return f == Frame::lab ? "lab" : "rotating"; }
std::string_view to_string(DbScale s) { return s == DbScale::power ? "power" : "paper"; }

DiamondParams RunConfig::device() const {
  DiamondParams d;
  d.omega = angular(params.omega_hz);
  d.Omega = angular(params.Omega_hz);
  d.g = std::polar(angular(params.g.mag_hz), params.g.phase_rad);
  d.h = std::polar(angular(params.h.mag_hz), params.h.phase_rad);
  d.f = std::polar(angular(params.f.mag_hz), params.f.phase_rad);
  d.k = std::polar(angular(params.k.mag_hz), params.k.phase_rad);
  d.gamma = angular(params.gamma_hz);
  d.Gamma1 = params.Q1 ? linewidth_from_q(d.omega, *params.Q1) : angular(*params.Gamma1_hz);
  d.Gamma2 = params.Q2 ? linewidth_from_q(d.Omega, *params.Q2) : angular(*params.Gamma2_hz);
  return d;
}

OperatingPoint RunConfig::operating_point() const {
  OperatingPoint p;
  p.params = device();
  p.pumps = pumps;
  p.detuning = angular(detuning_hz);
  p.frame = frame;
  p.convention = convention;
  p.extrinsic = extrinsic;
  return p;
}

WindowPolicy to_policy(const WindowConfig& w) {
  return {w.track, angular(w.lower_hz), angular(w.upper_hz), w.points, w.refine};
}

RunConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("config: malformed JSON at line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ": " + e.what());
  }
  const Node root{j, ""};
  require_object(root);

  RunConfig c;
  c.params = parse_params(root.at("params"));
  if (root.has("pumps")) {
    const Node p = root.at("pumps");
    require_object(p);
    if (p.has("a2bar")) c.pumps.a2bar = p.at("a2bar").complex();
    if (p.has("a4bar")) c.pumps.a4bar = p.at("a4bar").complex();
  }
  c.detuning_hz = root.number_or("detuning_hz", 0.0);
  if (root.has("extrinsic")) c.extrinsic = root.at("extrinsic").boolean();
  if (root.has("convention"))
    c.convention = parse_choice<Convention>(root.at("convention"),
                                            {{"paper", Convention::paper}, {"standard", Convention::standard}});
  if (root.has("frame"))
    c.frame = parse_choice<Frame>(root.at("frame"), {{"lab", Frame::lab}, {"rotating", Frame::rotating}});
  if (root.has("db_scale"))
    c.db_scale = parse_choice<DbScale>(root.at("db_scale"), {{"power", DbScale::power}, {"paper", DbScale::paper}});
  if (root.has("sweep")) c.sweep = parse_sweep(root.at("sweep"));
  if (root.has("optimize")) c.optimize = parse_optimize(root.at("optimize"));
  if (root.has("output")) {
    const Node o = root.at("output");
    require_object(o);
    if (o.has("dir")) c.output_dir = o.at("dir").string();
  }
  if (root.has("workers")) {
    const std::size_t w = root.at("workers").count();
    if (w < 1) throw ValidationError("workers: must be at least 1");
    c.workers = static_cast<unsigned>(w);
  }
  return c;
}

std::string serialize_config(const RunConfig& c) {
  json params = {
      {"omega_hz", c.params.omega_hz}, {"Omega_hz", c.params.Omega_hz}, {"g", edge_json(c.params.g)},
      {"h", edge_json(c.params.h)},    {"f", edge_json(c.params.f)},    {"k", edge_json(c.params.k)},
      {"gamma_hz", c.params.gamma_hz},
  };
  if (c.params.Q1) params["Q1"] = *c.params.Q1;
  if (c.params.Gamma1_hz) params["Gamma1_hz"] = *c.params.Gamma1_hz;
  if (c.params.Q2) params["Q2"] = *c.params.Q2;
  if (c.params.Gamma2_hz) params["Gamma2_hz"] = *c.params.Gamma2_hz;

  json j = {
      {"params", params},
      {"pumps", {{"a2bar", complex_json(c.pumps.a2bar)}, {"a4bar", complex_json(c.pumps.a4bar)}}},
      {"detuning_hz", c.detuning_hz},
      {"extrinsic", c.extrinsic},
      {"convention", to_string(c.convention)},
      {"frame", to_string(c.frame)},
      {"db_scale", to_string(c.db_scale)},
      {"output", {{"dir", c.output_dir}}},
  };
  if (c.workers) j["workers"] = *c.workers;
  if (c.sweep) {
    json axes = json::array();
    for (const auto& a : c.sweep->axes)
      axes.push_back({{"param", param_name(a.param)},
                      {"start", a.start},
                      {"stop", a.stop},
                      {"points", a.points},
                      {"scale", a.scale == AxisScale::log ? "log" : "linear"}});
    j["sweep"] = {{"axes", axes}, {"window", window_json(c.sweep->window)}};
  }
  if (c.optimize) {
    json free = json::array();
    for (const auto& f : c.optimize->free)
      free.push_back({{"param", param_name(f.param)}, {"lower", f.lower}, {"upper", f.upper}, {"log", f.log}});
    j["optimize"] = {{"objective", objective_name(c.optimize->objective)},
                     {"free", free},
                     {"grid_points", c.optimize->grid_points},
                     {"max_evaluations", c.optimize->max_evaluations},
                     {"tolerance", c.optimize->tolerance},
                     {"window", window_json(c.optimize->window)}};
  }
  return j.dump(2);
}

unsigned resolve_workers(std::optional<unsigned> flag, const RunConfig& config) {
  if (flag && *flag > 0) return *flag;
  if (config.workers) return *config.workers;
  if (const char* env = std::getenv("DIAMOND_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace diamond
