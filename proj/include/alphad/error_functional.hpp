#pragma once

#include "alphad/preference_model.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace alphad {

inline constexpr int kDefaultGridPoints = 100;
inline constexpr int kDefaultRefineIters = 500;
/// Interior grids larger than this are coarsened to the finest grid that fits.
inline constexpr std::size_t kMaxGridPoints = 200'000;

struct ErrorMinResult {
  std::vector<double> argmin;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool refined = false;
  /// Subdivisions actually used for the grid scan.
  int grid_points = 0;
};

/// Sum of |f_i(x)| where f_i = subject - right-hand side, each f_i scaled so
/// its smallest coefficient magnitude is 1. Requires equation preferences
/// only and a strictly positive x summing to 1 within 1e-9.
/// Throws OffSimplex, NonEquationPreference.
double eval_error(const Problem& problem, std::span<const double> x);

/// Interior barycentric grid scan followed by Nelder-Mead refinement on the
/// first n-1 coordinates. Deterministic.
ErrorMinResult minimize_error(const Problem& problem, int grid_points = kDefaultGridPoints,
                              int refine_iters = kDefaultRefineIters);

/// Calls `visit` for every interior grid point (coordinates, error value).
/// Returns the number of subdivisions used.
int scan_error_grid(const Problem& problem, int grid_points,
                    const std::function<void(std::span<const double>, double)>& visit);

}  // namespace alphad
