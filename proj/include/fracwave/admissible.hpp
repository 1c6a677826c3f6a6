#pragma once

#include "fracwave/boundary_signal.hpp"
#include "fracwave/time_grid.hpp"

namespace fracwave {

// Admissible control balls.  The boundary ball is measured in a surrogate
// norm: the max of four homogeneous components (sup-in-time boundary norm of
// the values, L2-in-time norm of the fractional derivative, sup norm of the
// velocity, L2 norm of the acceleration), each optionally weighted.  The
// distributed ball is a plain Hilbert ball in L2(0,T; L2).
struct AdmissibleSpec {
  double g_radius = 1.0;
  double f_radius = 1.0;
  double w_value = 1.0;
  double w_frac = 1.0;
  double w_velocity = 1.0;
  double w_accel = 1.0;

  void validate() const;
};

// Components of the boundary surrogate norm, before weighting.
struct XgComponents {
  double value_sup;   // max_t |g(t)|_B
  double frac_l2;     // |D^alpha g|_{L2(0,T;B)}
  double velocity_sup;  // max_t |g_t(t)|_B
  double accel_l2;    // |g_tt|_{L2(0,T;B)}
};

XgComponents surrogate_xg_components(const BoundarySignal& g, FracOrder alpha,
                                     const TimeGrid& grid, const Mat& bb);

double surrogate_xg_norm(const BoundarySignal& g, FracOrder alpha,
                         const TimeGrid& grid, const Mat& bb,
                         const AdmissibleSpec& spec = {});

// L2(0,T; L2) norm of a distributed control (mass-weighted, trapezoid).
double xf_norm(const Mat& f, const SpMat& mass, const TimeGrid& grid);

// Radial retraction of g onto the surrogate ball (values and stored
// derivative scaled together; compatibility and the zero state are
// preserved, and the map is idempotent) and exact Hilbert-ball projection
// of f.
struct ControlPair {
  BoundarySignal g;
  Mat f;
};

ControlPair project_admissible(const BoundarySignal& g, const Mat& f,
                               const AdmissibleSpec& spec, FracOrder alpha,
                               const TimeGrid& grid, const Mat& bb,
                               const SpMat& mass);

}  // namespace fracwave
