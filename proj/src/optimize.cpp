#include "diamond/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "diamond/errors.hpp"
#include "diamond/parallel.hpp"

namespace diamond {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_peak(Objective o) { return o == Objective::intrinsic_peak || o == Objective::extrinsic_peak; }

/// Box-normalized coordinate u in [0, 1] <-> parameter value.
double to_value(const FreeParam& f, double u) {
  if (u <= 0.0) return f.lower;
  if (u >= 1.0) return f.upper;
  if (f.log) return std::exp(std::log(f.lower) + u * (std::log(f.upper) - std::log(f.lower)));
  return f.lower + u * (f.upper - f.lower);
}

std::vector<double> to_values(const OptimizationProblem& p, std::span<const double> u) {
  std::vector<double> x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) x[i] = to_value(p.free[i], u[i]);
  return x;
}

double to_unit(const FreeParam& f, double x) {
  if (f.log) return (std::log(x) - std::log(f.lower)) / (std::log(f.upper) - std::log(f.lower));
  return (x - f.lower) / (f.upper - f.lower);
}

}  // namespace

std::string_view objective_name(Objective o) {
  switch (o) {
    case Objective::intrinsic_at_w:
      return "intrinsic_at_w";
    case Objective::intrinsic_peak:
      return "intrinsic_peak";
    case Objective::extrinsic_at_w:
      return "extrinsic_at_w";
    case Objective::extrinsic_peak:
      return "extrinsic_peak";
    case Objective::isolation_at_w:
      return "isolation_at_w";
  }
  return "";
}

Objective parse_objective(std::string_view name) {
  for (auto o : {Objective::intrinsic_at_w, Objective::intrinsic_peak, Objective::extrinsic_at_w,
                 Objective::extrinsic_peak, Objective::isolation_at_w}) {
    if (objective_name(o) == name) return o;
  }
  throw ValidationError("unknown objective '" + std::string(name) + "'");
}

bool default_log_search(Param p) { return p == Param::Q1 || p == Param::Q2 || p == Param::gamma; }

void OptimizationProblem::validate() const {
  if (free.empty()) throw ValidationError("optimization needs at least one free parameter");
  for (const auto& f : free) {
    const std::string name(param_name(f.param));
    if (!std::isfinite(f.lower) || !std::isfinite(f.upper) || !(f.lower < f.upper))
      throw ValidationError("free parameter " + name + ": bounds must be finite with lower < upper");
    if (f.log && !(f.lower > 0.0)) throw ValidationError("free parameter " + name + ": log search needs positive bounds");
  }
  if (is_peak(objective) && !(window.points >= 1 && window.lower <= window.upper))
    throw ValidationError("peak objective needs a detuning window");
  base.params.validate();
}

double objective_value(const OptimizationProblem& problem, std::span<const double> x) {
  OperatingPoint point = problem.base;
  try {
    for (std::size_t i = 0; i < x.size(); ++i) point = apply_param(point, problem.free[i].param, x[i]);
  } catch (const Error&) {
    return kNegInf;
  }
  const bool pumped = problem.objective == Objective::extrinsic_at_w || problem.objective == Objective::extrinsic_peak;
  point.extrinsic = pumped;
  if (!pumped) point.pumps = {};

  Metrics m;
  if (is_peak(problem.objective)) {
    WindowPolicy w = problem.window;
    w.track = true;
    m = evaluate_tracked(point, w).metrics;
  } else {
    m = evaluate(point);
  }
  const double metric = problem.objective == Objective::isolation_at_w ? m.forward / m.backward : m.R;
  if (!std::isfinite(metric) || !(metric > 0.0)) return kNegInf;
  return 10.0 * std::log10(metric);
}

GridBest grid_search_unit_box(const UnitObjective& f, std::size_t dimensions, std::size_t points_per_axis,
                              unsigned workers) {
  if (dimensions < 1 || dimensions > 3) throw ValidationError("grid search supports one to three dimensions");
  if (points_per_axis < 1) throw ValidationError("grid needs at least one point per axis");

  std::size_t total = 1;
  for (std::size_t i = 0; i < dimensions; ++i) total *= points_per_axis;
  auto unit_point = [&](std::size_t index) {
    std::vector<double> u(dimensions);
    for (std::size_t a = dimensions; a-- > 0;) {
      const std::size_t j = index % points_per_axis;
      index /= points_per_axis;
      u[a] = points_per_axis == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(points_per_axis - 1);
    }
    return u;
  };
  std::vector<double> values(total);
  parallel_for(total, workers, [&](std::size_t i) {
    const double v = f(unit_point(i));
    values[i] = std::isnan(v) ? kNegInf : v;
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < total; ++i)
    if (values[i] > values[best]) best = i;
  return {unit_point(best), values[best]};
}

OptimumPoint grid_seed(const OptimizationProblem& problem, std::size_t points_per_axis, unsigned workers) {
  problem.validate();
  if (problem.free.size() > 3) throw ValidationError("grid seeding supports at most three free parameters");
  const GridBest g = grid_search_unit_box(
      [&](std::span<const double> u) { return objective_value(problem, to_values(problem, u)); },
      problem.free.size(), points_per_axis, workers);
  return {to_values(problem, g.u), g.value};
}

SimplexResult maximize_in_unit_box(const UnitObjective& f, std::span<const double> start,
                                   const RefineOptions& options) {
  const std::size_t d = start.size();
  if (d == 0) throw ValidationError("simplex search needs at least one dimension");

  struct Vertex {
    std::vector<double> u;
    double value;
  };
  SimplexResult result;
  auto eval = [&](std::vector<double> u) {
    for (auto& c : u) c = std::clamp(c, 0.0, 1.0);
    ++result.evaluations;
    const double v = f(u);
    return Vertex{std::move(u), std::isnan(v) ? kNegInf : v};
  };

  const std::vector<double> u0(start.begin(), start.end());
  std::vector<Vertex> simplex;
  simplex.push_back(eval(u0));
  const Vertex seed_vertex = simplex.front();
  for (std::size_t i = 0; i < d; ++i) {
    // Step inwards from the nearer wall; shrink the step if it lands on a degenerate point.
    double step = u0[i] + options.initial_step <= 1.0 ? options.initial_step : -options.initial_step;
    Vertex v = simplex.front();
    for (int attempt = 0; attempt < 12; ++attempt) {
      auto u = u0;
      u[i] += step;
      v = eval(u);
      if (v.value > kNegInf) break;
      step *= attempt % 2 == 0 ? -1.0 : -0.5;
    }
    simplex.push_back(v);
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.value > b.value; };
  auto diameter = [&] {
    double m = 0.0;
    for (std::size_t j = 1; j < simplex.size(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s = std::max(s, std::abs(simplex[j].u[i] - simplex[0].u[i]));
      m = std::max(m, s);
    }
    return m;
  };

  std::stable_sort(simplex.begin(), simplex.end(), by_value);
  while (result.evaluations < options.max_evaluations) {
    if (diameter() < options.tolerance) {
      result.converged = true;
      break;
    }
    std::vector<double> centroid(d, 0.0);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) centroid[i] += simplex[j].u[i] / static_cast<double>(d);
    const Vertex& worst = simplex.back();
    auto along = [&](double t) {
      std::vector<double> u(d);
      for (std::size_t i = 0; i < d; ++i) u[i] = centroid[i] + t * (centroid[i] - worst.u[i]);
      return u;
    };

    const Vertex reflected = eval(along(1.0));
    if (reflected.value > simplex.front().value) {
      const Vertex expanded = eval(along(2.0));
      simplex.back() = expanded.value > reflected.value ? expanded : reflected;
    } else if (reflected.value > simplex[d - 1].value) {
      simplex.back() = reflected;
    } else {
      const bool outside = reflected.value > worst.value;
      const Vertex contracted = eval(along(outside ? 0.5 : -0.5));
      if (contracted.value > std::max(outside ? reflected.value : worst.value, kNegInf)) {
        simplex.back() = contracted;
      } else {
        for (std::size_t j = 1; j < simplex.size(); ++j) {
          std::vector<double> u(d);
          for (std::size_t i = 0; i < d; ++i) u[i] = simplex[0].u[i] + 0.5 * (simplex[j].u[i] - simplex[0].u[i]);
          Vertex shrunk = eval(u);
          if (shrunk.value > kNegInf) simplex[j] = std::move(shrunk);
        }
      }
    }
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    result.history.push_back(simplex.front().value);
  }

  const Vertex& best = simplex.front().value >= seed_vertex.value ? simplex.front() : seed_vertex;
  result.u = best.u;
  result.value = best.value;
  return result;
}

RefineResult refine(const OptimizationProblem& problem, std::span<const double> seed, const RefineOptions& options) {
  problem.validate();
  const std::size_t d = problem.free.size();
  if (seed.size() != d) throw ValidationError("seed has the wrong dimension");
  std::vector<double> u0(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (seed[i] < problem.free[i].lower || seed[i] > problem.free[i].upper)
      throw ValidationError("seed lies outside the box");
    u0[i] = to_unit(problem.free[i], seed[i]);
  }
  SimplexResult s = maximize_in_unit_box(
      [&](std::span<const double> u) {
        return u.size() == u0.size() && std::equal(u.begin(), u.end(), u0.begin())
                   ? objective_value(problem, seed)
                   : objective_value(problem, to_values(problem, u));
      },
      u0, options);
  RefineResult result;
  result.point = s.u == u0 ? std::vector<double>(seed.begin(), seed.end()) : to_values(problem, s.u);
  result.value = s.value;
  result.evaluations = s.evaluations;
  result.converged = s.converged;
  result.history = std::move(s.history);
  return result;
}

}  // namespace diamond
