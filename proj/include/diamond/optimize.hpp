#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "diamond/sweep.hpp"

namespace diamond {

enum class Objective {
  intrinsic_at_w,  // R at the base detuning
  intrinsic_peak,  // max of R over the tracking window
  extrinsic_at_w,  // pumped R at the base detuning
  extrinsic_peak,  // max of pumped R over the tracking window
  isolation_at_w,  // forward over backward gain at the base detuning
};

std::string_view objective_name(Objective o);
Objective parse_objective(std::string_view name);

struct FreeParam {
  Param param = Param::Q1;
  double lower = 0.0;
  double upper = 0.0;
  /// Search in log space (natural for Q factors and rates spanning decades).
  bool log = false;

  friend bool operator==(const FreeParam&, const FreeParam&) = default;
};

/// Default search space for a parameter: log for Q1, Q2 and gamma.
bool default_log_search(Param p);

struct OptimizationProblem {
  Objective objective = Objective::intrinsic_at_w;
  std::vector<FreeParam> free;
  OperatingPoint base;
  /// Window for the *_peak objectives (track is forced on for those).
  WindowPolicy window;

  /// Throws ValidationError.
  void validate() const;
};

/// Objective in dB on the power scale, 10 log10(metric). Degenerate or
/// singular points score -infinity. `x` is in parameter (axis) units.
double objective_value(const OptimizationProblem& problem, std::span<const double> x);

struct OptimumPoint {
  std::vector<double> point;
  double value = 0.0;
};

/// Exhaustive grid over the box (at most three free parameters), in the
/// search space of each parameter. Ties keep the first point in
/// lexicographic order (first parameter slowest).
OptimumPoint grid_seed(const OptimizationProblem& problem, std::size_t points_per_axis, unsigned workers = 1);

struct RefineOptions {
  /// Simplex diameter in box-normalized coordinates.
  double tolerance = 1e-6;
  int max_evaluations = 2000;
  /// Initial simplex edge as a fraction of the box width.
  double initial_step = 0.05;
};

struct RefineResult {
  std::vector<double> point;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
  /// Best objective after each simplex iteration; non-decreasing.
  std::vector<double> history;
};

/// Objective over box-normalized coordinates in [0, 1]^d. NaN counts as -infinity.
using UnitObjective = std::function<double(std::span<const double>)>;

struct SimplexResult {
  std::vector<double> u;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
  std::vector<double> history;
};

struct GridBest {
  std::vector<double> u;
  double value = 0.0;
};

/// Exhaustive grid on [0, 1]^d (d <= 3) with `points_per_axis` points per
/// axis, endpoints included. Ties keep the first point in lexicographic order.
GridBest grid_search_unit_box(const UnitObjective& f, std::size_t dimensions, std::size_t points_per_axis,
                              unsigned workers = 1);

/// Nelder-Mead maximization on the unit box with projection onto the box.
/// Never returns worse than the start point.
SimplexResult maximize_in_unit_box(const UnitObjective& f, std::span<const double> start,
                                   const RefineOptions& options = {});

/// Box-constrained Nelder-Mead (reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5) started from `seed`. Never returns worse than the seed.
RefineResult refine(const OptimizationProblem& problem, std::span<const double> seed,
                    const RefineOptions& options = {});

}  // namespace diamond
