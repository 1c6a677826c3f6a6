#pragma once

#include <vector>

#include "fracwave/rng.hpp"
#include "fracwave/time_grid.hpp"
#include "fracwave/types.hpp"

namespace fracwave::verify {

// Grünwald–Letnikov fractional derivative: an independent first-order
// approximation of the same operator the L1 scheme discretizes, used purely
// as a cross-check oracle.  Coefficients follow the binomial recurrence
// c_0 = 1, c_j = c_{j-1} (1 - (alpha+1)/j).
Vec gl_derivative(const Vec& v, double alpha, const TimeGrid& grid);

// Least-squares slope of y against x (used for observed-order fits).
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

// Observed order from an error ladder: slope of log(err) against log(step).
double observed_order(const std::vector<double>& steps,
                      const std::vector<double>& errors);

// Random smooth series on the grid with v(0) = 0 and v'(0) = 0, normalized
// to unit sup norm: (t/T)^2 * (low-order trigonometric polynomial).
Vec smooth_series(Rng& rng, const TimeGrid& grid);

// Closed-form single-mode benchmark: with forcing F(x) = cos(pi x) held
// constant in time, no damping, and zero initial data, the exact modal
// amplitude is y(t) = (1 - cos(c pi t)) / (c pi)^2.
double single_mode_amplitude(double t, double c);

}  // namespace fracwave::verify
