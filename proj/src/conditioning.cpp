#include "fracwave/conditioning.hpp"

#include <cmath>

#include "fracwave/bump.hpp"
#include "fracwave/quadrature.hpp"

namespace fracwave {

void ConditioningParams::validate() const {
  if (!(epsilon > 0.0))
    throw PreconditionError("ConditioningParams: epsilon must be positive");
  if (!(r > 0.0 && R > r))
    throw PreconditionError("ConditioningParams: need 0 < r < R");
  if (correction_rate < 0.0)
    throw PreconditionError("ConditioningParams: negative correction rate");
}

Mat mollify_rows(const Mat& raw, double epsilon, const TimeGrid& grid) {
  if (raw.cols() != grid.n_nodes())
    throw PreconditionError("mollify_rows: column count != time nodes");
  if (!(epsilon > 0.0))
    throw PreconditionError("mollify_rows: epsilon must be positive");
  const int nt = grid.n_nodes();
  const int halo = static_cast<int>(std::floor(epsilon / grid.dt));
  auto eta = [](double t) {
    const double d = 1.0 - t * t;
    return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
  };
  // Offsets with |j dt| < epsilon; the total weight plays the role of the
  // kernel normalization, so constants are reproduced exactly while values
  // outside [0, T] count as zero.
  Vec w(2 * halo + 1);
  double total = 0.0;
  for (int j = -halo; j <= halo; ++j) {
    w[j + halo] = eta(j * grid.dt / epsilon);
    total += w[j + halo];
  }
  Mat out = Mat::Zero(raw.rows(), nt);
  for (int n = 0; n < nt; ++n) {
    Vec acc = Vec::Zero(raw.rows());
    for (int j = -halo; j <= halo; ++j) {
      const int m = n + j;
      if (m < 0 || m >= nt) continue;  // zero extension
      acc += w[j + halo] * raw.col(m);
    }
    out.col(n) = acc / total;
  }
  return out;
}

BoundarySignal condition_boundary_data(const Mat& raw,
                                       const ConditioningParams& params,
                                       const TimeGrid& grid,
                                       const Mat* boundary_weights) {
  params.validate();
  if (!raw.allFinite())
    throw PreconditionError("condition_boundary_data: non-finite input");

  const Mat smooth = mollify_rows(raw, params.epsilon, grid);
  const Mat dsmooth = fd_derivative_rows(smooth, grid.dt);
  const Vec slope0 = dsmooth.col(0);

  double slope_norm_sq;
  if (boundary_weights != nullptr) {
    if (boundary_weights->rows() != raw.rows() ||
        boundary_weights->cols() != raw.rows())
      throw PreconditionError(
          "condition_boundary_data: boundary weight shape");
    slope_norm_sq = slope0.dot(*boundary_weights * slope0);
  } else {
    slope_norm_sq = slope0.squaredNorm();
  }
  const double rate = params.correction_rate > 0.0
                          ? params.correction_rate
                          : (1.0 / params.epsilon) * (1.0 + slope_norm_sq);

  const BumpFunction rho(params.r, params.R);
  Mat values(raw.rows(), raw.cols());
  Mat dvalues(raw.rows(), raw.cols());
  for (int n = 0; n < grid.n_nodes(); ++n) {
    const double t = grid.node(n);
    const double cut = rho.value(rate * t);
    const double dcut = rho.chi1(rate * t);
    values.col(n) = smooth.col(n) - smooth.col(0) - (t * cut) * slope0;
    dvalues.col(n) = dsmooth.col(n) - dcut * slope0;
  }
  // By construction both columns at t = 0 cancel exactly.
  values.col(0).setZero();
  dvalues.col(0).setZero();
  return BoundarySignal::from_values(values, dvalues, grid);
}

}  // namespace fracwave
