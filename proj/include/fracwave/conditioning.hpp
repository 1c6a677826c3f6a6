#pragma once

#include "fracwave/boundary_signal.hpp"
#include "fracwave/time_grid.hpp"

namespace fracwave {

// Compatibility conditioning of raw boundary data: mollify with the
// normalized C-infinity kernel of width epsilon, then subtract the affine
// part g(0) + t * rho(R_nu t) * g_t(0) with the smooth cutoff rho so the
// output vanishes at t = 0 in value and slope while leaving t > R/R_nu
// untouched up to the constant shift.
struct ConditioningParams {
  double epsilon;             // mollifier width, in time units
  double r = 1.0;             // cutoff plateau radius (dimensionless)
  double R = 2.0;             // cutoff support radius (dimensionless)
  double correction_rate = 0.0;  // R_nu override; 0 selects the rule
                                 // (1/epsilon) * (1 + |g_t(0)|^2)

  void validate() const;
};

// raw: boundary rows x time nodes.  boundary_weights (optional) is the
// dense boundary Gram matrix used for the |g_t(0)| norm in the rate rule;
// identity when absent.  The returned signal carries the analytically
// corrected derivative, so value and slope vanish at t = 0 to rounding.
BoundarySignal condition_boundary_data(const Mat& raw,
                                       const ConditioningParams& params,
                                       const TimeGrid& grid,
                                       const Mat* boundary_weights = nullptr);

// Discrete mollification by the compactly supported kernel
// eta(t) = C0 exp(-1/(1 - t^2)) on |t| < 1, rescaled to width epsilon and
// normalized by its full discrete mass (zero extension outside the grid).
Mat mollify_rows(const Mat& raw, double epsilon, const TimeGrid& grid);

}  // namespace fracwave
