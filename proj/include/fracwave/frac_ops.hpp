#pragma once

#include "fracwave/time_grid.hpp"
#include "fracwave/types.hpp"

namespace fracwave {

// Weakly singular memory kernel t^{-alpha} / Gamma(1 - alpha).
// t must be strictly positive.
double kernel_eval(FracOrder alpha, double t);

// L1(0, T) mass of the kernel above: T^{1-alpha} / Gamma(2 - alpha).
double kernel_l1_mass(FracOrder alpha, double T);

// L1 scheme weights w_m = (m+1)^{1-alpha} - m^{1-alpha}, m = 0..count-1.
Vec l1_weights(double alpha, int count);

// Fractional integral of order alpha by product integration: the integrand
// factor v is replaced by its piecewise-linear interpolant and the kernel
// moments are integrated in closed form.  Entry n approximates
//   (1/Gamma(alpha)) \int_0^{t_n} (t_n - s)^{alpha-1} v(s) ds.
Vec rl_integral(const Vec& v, FracOrder alpha, const TimeGrid& grid);

// Caputo derivative of order alpha by the L1 scheme.  Requires v[0] = 0
// (tolerance 1e-12 relative to the series scale); entry 0 of the result is 0.
Vec caputo_derivative(const Vec& v, FracOrder alpha, const TimeGrid& grid);

// Right-sided (transposed) fractional derivative, realized by time reversal:
// flip phi, apply the L1 scheme, flip back.  Requires phi[end] = 0.
// Under the rectangle-rule inner product with weight dt this is the exact
// algebraic transpose of caputo_derivative on the compatible subspaces.
Vec adjoint_caputo(const Vec& phi, FracOrder alpha, const TimeGrid& grid);

struct CoercivityReport {
  double lhs;          // \int_0^T (D^a u, u_t) dt
  double rhs;          // printed constant  * ||D^a u||_{L2}^2
  double margin;       // lhs - rhs
  double rhs_alt;      // alternative constant * ||D^a u||_{L2}^2
  double margin_alt;   // lhs - rhs_alt
  double nonneg;       // \int_0^T (u, J^a u) dt   -- must be >= -tol*scale
  double nonneg_margin;  // nonneg + tol*scale
  double scale;        // ||u||_{L2}^2
  bool nonneg_ok;      // the only hard assertion
};

// Evaluates the dissipation functionals for a multi-DOF series (rows = DOFs,
// cols = time nodes; u(:,0) must vanish).  Both candidate forms of the
// coercivity constant are reported; only nonnegativity of (u, J^a u) is a
// hard check, the constant margins are informational.
CoercivityReport coercivity_check(const Mat& u, FracOrder alpha,
                                  const TimeGrid& grid, double tol = 1e-10);
CoercivityReport coercivity_check(const Vec& u, FracOrder alpha,
                                  const TimeGrid& grid, double tol = 1e-10);

namespace detail {

// Cores without precondition checks; alpha in (0,1) for caputo_core and
// (0,1] for rl_integral_core (alpha = 1 reproduces the trapezoid rule).
Vec caputo_core(const Vec& v, double alpha, double dt);
Vec rl_integral_core(const Vec& v, double alpha, double dt);

// Second-order finite-difference time derivative (one-sided at the ends).
Vec fd_time_derivative(const Vec& v, double dt);

}  // namespace detail

}  // namespace fracwave
