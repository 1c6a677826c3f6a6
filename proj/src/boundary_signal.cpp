#include "fracwave/boundary_signal.hpp"

#include <cmath>

#include "fracwave/quadrature.hpp"

namespace fracwave {

BoundarySignal BoundarySignal::zero(int n_boundary, const TimeGrid& grid) {
  BoundarySignal g;
  g.values = Mat::Zero(n_boundary, grid.n_nodes());
  g.dvalues = Mat::Zero(n_boundary, grid.n_nodes());
  return g;
}

BoundarySignal BoundarySignal::from_values(const Mat& values,
                                           const TimeGrid& grid) {
  if (values.cols() != grid.n_nodes())
    throw PreconditionError("BoundarySignal: column count != time nodes");
  BoundarySignal g;
  g.values = values;
  g.dvalues = fd_derivative_rows(values, grid.dt);
  return g;
}

BoundarySignal BoundarySignal::from_values(const Mat& values,
                                           const Mat& dvalues,
                                           const TimeGrid& grid) {
  if (values.cols() != grid.n_nodes() || dvalues.cols() != grid.n_nodes())
    throw PreconditionError("BoundarySignal: column count != time nodes");
  if (values.rows() != dvalues.rows())
    throw PreconditionError("BoundarySignal: value/derivative row mismatch");
  BoundarySignal g;
  g.values = values;
  g.dvalues = dvalues;
  return g;
}

void BoundarySignal::require_compatible(double tol) const {
  if (empty()) return;
  const double scale =
      std::max({1.0, values.cwiseAbs().maxCoeff(), dvalues.cwiseAbs().maxCoeff()});
  for (int r = 0; r < n_rows(); ++r) {
    if (std::abs(values(r, 0)) > tol * scale)
      throw PreconditionError(
          "BoundarySignal: boundary data must vanish at t = 0");
    if (std::abs(dvalues(r, 0)) > tol * scale)
      throw PreconditionError(
          "BoundarySignal: boundary data slope must vanish at t = 0");
  }
}

}  // namespace fracwave
