#pragma once

#include "fracwave/time_grid.hpp"
#include "fracwave/types.hpp"

namespace fracwave {

// Trapezoid weights dt*(1/2, 1, ..., 1, 1/2).  All space-time control and
// tracking norms use these; the transpose identity for the fractional
// derivative is stated for the rectangle rule with weight dt, and the two
// coincide on the pairings that arise (both endpoint factors vanish there).
Vec trapezoid_weights(const TimeGrid& grid);

// sum_n w_n u(:,n)' W v(:,n)  with W a sparse spatial Gram matrix.
double ip_spacetime(const Mat& u, const Mat& v, const SpMat& w,
                    const TimeGrid& grid);
double norm_spacetime(const Mat& u, const SpMat& w, const TimeGrid& grid);

// Dense-Gram variants for small (boundary) blocks.
double ip_spacetime(const Mat& u, const Mat& v, const Mat& w,
                    const TimeGrid& grid);
double norm_spacetime(const Mat& u, const Mat& w, const TimeGrid& grid);

// max_n sqrt(u(:,n)' W u(:,n))
double norm_linf_l2(const Mat& u, const SpMat& w);

// Row-wise second-order finite-difference time derivative.
Mat fd_derivative_rows(const Mat& u, double dt);

}  // namespace fracwave
