#include "fracwave/frac_ops.hpp"

#include <cmath>

#include "fracwave/special.hpp"

namespace fracwave {

namespace {

// |v[0]| must vanish up to 1e-12 relative to the series scale.
void require_zero_start(double v0, double scale, const char* who) {
  if (std::abs(v0) > 1e-12 * std::max(1.0, scale))
    throw PreconditionError(std::string(who) +
                            ": series must vanish at the initial node");
}

void require_length(const Vec& v, const TimeGrid& grid, const char* who) {
  if (v.size() != grid.n_nodes())
    throw PreconditionError(std::string(who) +
                            ": series length does not match the time grid");
}

// Trapezoid rule over the grid for a per-node integrand.
double trapezoid(const Vec& f, double dt) {
  const int n = static_cast<int>(f.size());
  double s = 0.5 * (f[0] + f[n - 1]);
  for (int i = 1; i < n - 1; ++i) s += f[i];
  return s * dt;
}

}  // namespace

double kernel_eval(FracOrder alpha, double t) {
  if (!(t > 0.0))
    throw PreconditionError("kernel_eval: t must be strictly positive");
  return std::pow(t, -alpha.value) / gamma_fn(1.0 - alpha.value);
}

double kernel_l1_mass(FracOrder alpha, double T) {
  if (!(T > 0.0)) throw PreconditionError("kernel_l1_mass: T must be positive");
  return std::pow(T, 1.0 - alpha.value) / gamma_fn(2.0 - alpha.value);
}

Vec l1_weights(double alpha, int count) {
  Vec w(count);
  const double e = 1.0 - alpha;
  for (int m = 0; m < count; ++m)
    w[m] = std::pow(m + 1.0, e) - std::pow(static_cast<double>(m), e);
  return w;
}

namespace detail {

Vec caputo_core(const Vec& v, double alpha, double dt) {
  const int N = static_cast<int>(v.size()) - 1;
  const double beta = std::pow(dt, -alpha) / gamma_fn(2.0 - alpha);
  const Vec w = l1_weights(alpha, N);
  Vec dv(N);
  for (int j = 0; j < N; ++j) dv[j] = v[j + 1] - v[j];
  Vec out(N + 1);
  out[0] = 0.0;
  for (int n = 1; n <= N; ++n) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += w[n - 1 - j] * dv[j];
    out[n] = beta * s;
  }
  return out;
}

Vec rl_integral_core(const Vec& v, double alpha, double dt) {
  const int N = static_cast<int>(v.size()) - 1;
  const double da = std::pow(dt, alpha);
  // Closed-form moments of (t_n - s)^{alpha-1} against 1 and (s - t_j)/dt
  // on a subinterval at lag m = n - j.
  Vec i0(N + 1), i1(N + 1);
  for (int m = 1; m <= N; ++m) {
    const double pm = std::pow(static_cast<double>(m), alpha);
    const double pm1 = std::pow(m - 1.0, alpha);
    const double qm = std::pow(static_cast<double>(m), alpha + 1.0);
    const double qm1 = std::pow(m - 1.0, alpha + 1.0);
    i0[m] = da * (pm - pm1) / alpha;
    i1[m] = da * (m * (pm - pm1) / alpha - (qm - qm1) / (alpha + 1.0));
  }
  const double ga = gamma_fn(alpha);
  Vec out(N + 1);
  out[0] = 0.0;
  for (int n = 1; n <= N; ++n) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      const int m = n - j;
      s += v[j] * i0[m] + (v[j + 1] - v[j]) * i1[m];
    }
    out[n] = s / ga;
  }
  return out;
}

Vec fd_time_derivative(const Vec& v, double dt) {
  const int N = static_cast<int>(v.size()) - 1;
  Vec d(N + 1);
  if (N == 1) {
    d[0] = d[1] = (v[1] - v[0]) / dt;
    return d;
  }
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * dt);
  for (int n = 1; n < N; ++n) d[n] = (v[n + 1] - v[n - 1]) / (2.0 * dt);
  d[N] = (3.0 * v[N] - 4.0 * v[N - 1] + v[N - 2]) / (2.0 * dt);
  return d;
}

}  // namespace detail

Vec rl_integral(const Vec& v, FracOrder alpha, const TimeGrid& grid) {
  require_length(v, grid, "rl_integral");
  return detail::rl_integral_core(v, alpha.value, grid.dt);
}

Vec caputo_derivative(const Vec& v, FracOrder alpha, const TimeGrid& grid) {
  require_length(v, grid, "caputo_derivative");
  require_zero_start(v[0], v.cwiseAbs().maxCoeff(), "caputo_derivative");
  return detail::caputo_core(v, alpha.value, grid.dt);
}

Vec adjoint_caputo(const Vec& phi, FracOrder alpha, const TimeGrid& grid) {
  require_length(phi, grid, "adjoint_caputo");
  const int N = grid.n_steps;
  require_zero_start(phi[N], phi.cwiseAbs().maxCoeff(), "adjoint_caputo");
  Vec rev = phi.reverse();
  Vec d = detail::caputo_core(rev, alpha.value, grid.dt);
  return d.reverse();
}

CoercivityReport coercivity_check(const Mat& u, FracOrder alpha,
                                  const TimeGrid& grid, double tol) {
  if (u.cols() != grid.n_nodes())
    throw PreconditionError("coercivity_check: column count != time nodes");
  const int nt = grid.n_nodes();
  for (int r = 0; r < u.rows(); ++r)
    require_zero_start(u(r, 0), u.row(r).cwiseAbs().maxCoeff(),
                       "coercivity_check");

  Vec prod_dut = Vec::Zero(nt);   // sum_dof (D^a u) u_t
  Vec d_sq = Vec::Zero(nt);       // sum_dof (D^a u)^2
  Vec prod_uju = Vec::Zero(nt);   // sum_dof u (J^a u)
  Vec u_sq = Vec::Zero(nt);       // sum_dof u^2
  for (int r = 0; r < u.rows(); ++r) {
    Vec row = u.row(r);
    Vec d = detail::caputo_core(row, alpha.value, grid.dt);
    Vec j = detail::rl_integral_core(row, alpha.value, grid.dt);
    Vec ut = detail::fd_time_derivative(row, grid.dt);
    prod_dut += d.cwiseProduct(ut);
    d_sq += d.cwiseProduct(d);
    prod_uju += row.cwiseProduct(j);
    u_sq += row.cwiseProduct(row);
  }

  CoercivityReport rep;
  rep.lhs = trapezoid(prod_dut, grid.dt);
  const double d_l2sq = trapezoid(d_sq, grid.dt);
  rep.nonneg = trapezoid(prod_uju, grid.dt);
  rep.scale = trapezoid(u_sq, grid.dt);

  const double a = alpha.value;
  const double T = grid.horizon();
  const double c_printed = std::pow(T, a) / (2.0 * gamma_fn(1.0 - a));
  const double c_alt = std::pow(T, a - 1.0) / (2.0 * gamma_fn(a));
  rep.rhs = c_printed * d_l2sq;
  rep.margin = rep.lhs - rep.rhs;
  rep.rhs_alt = c_alt * d_l2sq;
  rep.margin_alt = rep.lhs - rep.rhs_alt;
  rep.nonneg_margin = rep.nonneg + tol * rep.scale;
  rep.nonneg_ok = rep.nonneg_margin >= 0.0;
  return rep;
}

CoercivityReport coercivity_check(const Vec& u, FracOrder alpha,
                                  const TimeGrid& grid, double tol) {
  Mat m(1, u.size());
  m.row(0) = u;
  return coercivity_check(m, alpha, grid, tol);
}

}  // namespace fracwave
