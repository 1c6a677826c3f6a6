#pragma once

#include "fracwave/time_grid.hpp"
#include "fracwave/types.hpp"

namespace fracwave {

// Time-dependent Neumann data on the boundary nodes.  Rows follow
// mesh.boundary_nodes order, columns follow the time grid.  The time
// derivative is stored alongside the values: analytic when the caller has
// one, finite-difference otherwise.  Compatible data vanishes at t = 0 in
// both value and slope; the solver requires that before stepping.
struct BoundarySignal {
  Mat values;
  Mat dvalues;

  bool empty() const { return values.size() == 0; }
  int n_rows() const { return static_cast<int>(values.rows()); }

  static BoundarySignal zero(int n_boundary, const TimeGrid& grid);

  // Derivative filled by second-order finite differences.
  static BoundarySignal from_values(const Mat& values, const TimeGrid& grid);

  static BoundarySignal from_values(const Mat& values, const Mat& dvalues,
                                    const TimeGrid& grid);

  // Throws PreconditionError unless g(0) = 0 and g_t(0) = 0 up to
  // tol * max(1, signal scale).
  void require_compatible(double tol = 1e-12) const;
};

}  // namespace fracwave
