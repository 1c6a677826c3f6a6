#include "fracwave/quadrature.hpp"

#include <cmath>

#include "fracwave/frac_ops.hpp"

namespace fracwave {

Vec trapezoid_weights(const TimeGrid& grid) {
  Vec w = Vec::Constant(grid.n_nodes(), grid.dt);
  w[0] *= 0.5;
  w[grid.n_steps] *= 0.5;
  return w;
}

namespace {

template <class GramT>
double ip_impl(const Mat& u, const Mat& v, const GramT& w,
               const TimeGrid& grid) {
  if (u.cols() != grid.n_nodes() || v.cols() != grid.n_nodes())
    throw PreconditionError("ip_spacetime: column count != time nodes");
  if (u.rows() != v.rows() || u.rows() != w.rows())
    throw PreconditionError("ip_spacetime: row count mismatch");
  const Vec tw = trapezoid_weights(grid);
  double s = 0.0;
  for (int n = 0; n < grid.n_nodes(); ++n)
    s += tw[n] * u.col(n).dot(w * v.col(n));
  return s;
}

}  // namespace

double ip_spacetime(const Mat& u, const Mat& v, const SpMat& w,
                    const TimeGrid& grid) {
  return ip_impl(u, v, w, grid);
}

double norm_spacetime(const Mat& u, const SpMat& w, const TimeGrid& grid) {
  return std::sqrt(std::max(0.0, ip_impl(u, u, w, grid)));
}

double ip_spacetime(const Mat& u, const Mat& v, const Mat& w,
                    const TimeGrid& grid) {
  return ip_impl(u, v, w, grid);
}

double norm_spacetime(const Mat& u, const Mat& w, const TimeGrid& grid) {
  return std::sqrt(std::max(0.0, ip_impl(u, u, w, grid)));
}

double norm_linf_l2(const Mat& u, const SpMat& w) {
  double best = 0.0;
  for (int n = 0; n < u.cols(); ++n)
    best = std::max(best, u.col(n).dot(w * u.col(n)));
  return std::sqrt(std::max(0.0, best));
}

Mat fd_derivative_rows(const Mat& u, double dt) {
  Mat d(u.rows(), u.cols());
  for (int r = 0; r < u.rows(); ++r) {
    Vec row = u.row(r);
    d.row(r) = detail::fd_time_derivative(row, dt);
  }
  return d;
}

}  // namespace fracwave
