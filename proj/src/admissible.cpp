#include "fracwave/admissible.hpp"

#include <cmath>

#include "fracwave/frac_ops.hpp"
#include "fracwave/quadrature.hpp"

namespace fracwave {

void AdmissibleSpec::validate() const {
  if (!(g_radius > 0.0) || !(f_radius > 0.0))
    throw PreconditionError("AdmissibleSpec: radii must be positive");
  if (!(w_value > 0.0 && w_frac > 0.0 && w_velocity > 0.0 && w_accel > 0.0))
    throw PreconditionError("AdmissibleSpec: weights must be positive");
}

namespace {

double b_norm(const Vec& v, const Mat& bb) {
  return std::sqrt(std::max(0.0, v.dot(bb * v)));
}

}  // namespace

XgComponents surrogate_xg_components(const BoundarySignal& g, FracOrder alpha,
                                     const TimeGrid& grid, const Mat& bb) {
  if (g.empty())
    return XgComponents{0.0, 0.0, 0.0, 0.0};
  if (g.values.cols() != grid.n_nodes())
    throw PreconditionError("surrogate_xg_components: signal length");
  if (bb.rows() != g.n_rows() || bb.cols() != g.n_rows())
    throw PreconditionError("surrogate_xg_components: weight shape");

  const int nb = g.n_rows();
  const int nt = grid.n_nodes();

  Mat frac(nb, nt);
  for (int r = 0; r < nb; ++r) {
    Vec row = g.values.row(r);
    frac.row(r) = detail::caputo_core(row, alpha.value, grid.dt).transpose();
  }
  const Mat accel = fd_derivative_rows(g.dvalues, grid.dt);

  XgComponents c{0.0, 0.0, 0.0, 0.0};
  for (int n = 0; n < nt; ++n) {
    c.value_sup = std::max(c.value_sup, b_norm(g.values.col(n), bb));
    c.velocity_sup = std::max(c.velocity_sup, b_norm(g.dvalues.col(n), bb));
  }
  c.frac_l2 = norm_spacetime(frac, bb, grid);
  c.accel_l2 = norm_spacetime(accel, bb, grid);
  return c;
}

double surrogate_xg_norm(const BoundarySignal& g, FracOrder alpha,
                         const TimeGrid& grid, const Mat& bb,
                         const AdmissibleSpec& spec) {
  const XgComponents c = surrogate_xg_components(g, alpha, grid, bb);
  return std::max({spec.w_value * c.value_sup, spec.w_frac * c.frac_l2,
                   spec.w_velocity * c.velocity_sup,
                   spec.w_accel * c.accel_l2});
}

double xf_norm(const Mat& f, const SpMat& mass, const TimeGrid& grid) {
  if (f.size() == 0) return 0.0;
  return norm_spacetime(f, mass, grid);
}

ControlPair project_admissible(const BoundarySignal& g, const Mat& f,
                               const AdmissibleSpec& spec, FracOrder alpha,
                               const TimeGrid& grid, const Mat& bb,
                               const SpMat& mass) {
  spec.validate();
  ControlPair out;
  out.g = g;
  out.f = f;
  if (!g.empty()) {
    const double ng = surrogate_xg_norm(g, alpha, grid, bb, spec);
    if (ng > spec.g_radius) {
      const double s = spec.g_radius / ng;
      out.g.values *= s;
      out.g.dvalues *= s;
    }
  }
  if (f.size() != 0) {
    const double nf = xf_norm(f, mass, grid);
    if (nf > spec.f_radius) out.f *= spec.f_radius / nf;
  }
  return out;
}

}  // namespace fracwave
