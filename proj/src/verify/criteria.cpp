#include "fracwave/verify/criteria.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fracwave/conditioning.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/frac_ops.hpp"
#include "fracwave/manifest.hpp"
#include "fracwave/manufactured.hpp"
#include "fracwave/optimize.hpp"
#include "fracwave/problem.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/runner.hpp"
#include "fracwave/special.hpp"
#include "fracwave/studies.hpp"
#include "fracwave/verify/oracles.hpp"
#include "fracwave/westervelt.hpp"

namespace fracwave::verify {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

// Conditioned sinusoidal boundary pulse used by the solver-level fixtures.
BoundarySignal conditioned_pulse(const FemMatrices& fem, const TimeGrid& grid,
                                 double amplitude, double frequency) {
  const double T = grid.horizon();
  Mat raw(fem.n_boundary(), grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n)
    raw.col(n).setConstant(amplitude *
                           std::sin(2.0 * kPi * frequency * grid.node(n) / T));
  ConditioningParams params;
  params.epsilon = 4.0 * grid.dt;
  const Mat bb = boundary_mass_dense(fem);
  return condition_boundary_data(raw, params, grid, &bb);
}

Mat sine_source(const SpaceMesh& mesh, const TimeGrid& grid, double amplitude) {
  const double T = grid.horizon();
  Mat f(mesh.n_nodes(), grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n) {
    const double envelope = amplitude * std::sin(kPi * grid.node(n) / T);
    for (int i = 0; i < mesh.n_nodes(); ++i)
      f(i, n) = envelope * std::sin(kPi * mesh.nodes(i, 0));
  }
  return f;
}

// ---------------------------------------------------------------------------
// 1. Power-rule convergence of the fractional derivative.
CriterionResult caputo_power_rule() {
  CriterionResult res{1, "caputo-power-rule", true, ""};
  std::ostringstream detail;
  const std::vector<int> steps = {64, 128, 256, 512, 1024};

  for (const double alpha : {0.3, 0.5, 0.7}) {
    const double min_order = 2.0 - alpha - 0.2;
    std::vector<double> dts, err_lin, err_quad;
    double finest_lin = 0.0;
    for (const int n : steps) {
      const TimeGrid grid(1.0 / n, n);
      Vec v_lin(grid.n_nodes()), v_quad(grid.n_nodes());
      for (int m = 0; m < grid.n_nodes(); ++m) {
        v_lin[m] = grid.node(m);
        v_quad[m] = grid.node(m) * grid.node(m);
      }
      const Vec d_lin = caputo_derivative(v_lin, FracOrder{alpha}, grid);
      const Vec d_quad = caputo_derivative(v_quad, FracOrder{alpha}, grid);
      const double truth_lin = 1.0 / gamma_fn(2.0 - alpha);
      const double truth_quad = 2.0 / gamma_fn(3.0 - alpha);
      dts.push_back(grid.dt);
      err_lin.push_back(std::abs(d_lin[n] - truth_lin));
      err_quad.push_back(std::abs(d_quad[n] - truth_quad));
      finest_lin = err_lin.back();
    }
    // The scheme reproduces piecewise-linear inputs exactly, so the linear
    // ladder bottoms out at rounding; the order bound is then vacuous and
    // the quadratic ladder supplies the genuine rate.
    const double floor = 1e-12;
    bool lin_exact = true;
    for (const double e : err_lin) lin_exact = lin_exact && (e < floor);
    const double order_lin =
        lin_exact ? std::numeric_limits<double>::infinity()
                  : observed_order(dts, err_lin);
    const double order_quad = observed_order(dts, err_quad);

    const bool ok = (finest_lin < 1e-4) &&
                    (lin_exact || order_lin >= min_order) &&
                    (order_quad >= min_order);
    res.pass = res.pass && ok;
    detail << "alpha=" << fmt(alpha) << ": e_lin(1/1024)=" << fmt(finest_lin)
           << (lin_exact ? " (exact)" : (", order=" + fmt(order_lin)))
           << ", order(t^2)=" << fmt(order_quad) << " (need>=" << fmt(min_order)
           << "); ";
  }
  res.detail = detail.str();
  return res;
}

// ---------------------------------------------------------------------------
// 2. Independent-oracle agreement on smooth series.
CriterionResult caputo_oracle_agreement() {
  CriterionResult res{2, "caputo-oracle-agreement", true, ""};
  const TimeGrid grid(1.0 / 256, 256);
  Rng rng(20260822);
  const double alphas[] = {0.3, 0.5, 0.7};
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha = alphas[trial % 3];
    const Vec v = smooth_series(rng, grid);
    const Vec l1 = caputo_derivative(v, FracOrder{alpha}, grid);
    const Vec gl = gl_derivative(v, alpha, grid);
    const double sup = v.cwiseAbs().maxCoeff();
    const double bound = 5.0 * grid.dt * sup;
    const double diff = (l1 - gl).cwiseAbs().maxCoeff();
    worst = std::max(worst, diff / bound);
    if (diff > bound) res.pass = false;
  }
  res.detail = "20 smooth series, max |L1-GL| / (5 dt |v|_inf) = " + fmt(worst);
  return res;
}

// ---------------------------------------------------------------------------
// 3. Transpose and time-reversal identities.
CriterionResult adjoint_transpose() {
  CriterionResult res{3, "adjoint-transpose", true, ""};
  const int n = 128;
  const TimeGrid grid(1.0 / n, n);
  Rng rng(77031);
  const double alphas[] = {0.3, 0.5, 0.7};
  double worst_pairing = 0.0;
  double worst_flip = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = alphas[trial % 3];
    Vec v = rng.vector(grid.n_nodes());
    Vec phi = rng.vector(grid.n_nodes());
    v[0] = 0.0;
    phi[grid.n_steps] = 0.0;

    const Vec dv = caputo_derivative(v, FracOrder{alpha}, grid);
    const Vec dphi = adjoint_caputo(phi, FracOrder{alpha}, grid);
    const double lhs = grid.dt * dv.dot(phi);
    const double rhs = grid.dt * v.dot(dphi);
    const double nv = std::sqrt(grid.dt) * v.norm();
    const double nphi = std::sqrt(grid.dt) * phi.norm();
    const double rel = std::abs(lhs - rhs) / (nv * nphi);
    worst_pairing = std::max(worst_pairing, rel);
    if (rel > 1e-12) res.pass = false;

    // Reversal identity: flipping the argument turns the right-sided
    // derivative into the left-sided one.
    const Vec flipped = dphi.reverse();
    const Vec direct = detail::caputo_core(phi.reverse(), alpha, grid.dt);
    const double scale = std::max(1.0, direct.cwiseAbs().maxCoeff());
    const double flip_err =
        (flipped - direct).cwiseAbs().maxCoeff() / scale;
    worst_flip = std::max(worst_flip, flip_err);
    if (flip_err > 1e-14) res.pass = false;
  }
  res.detail = "100 pairs: max pairing mismatch " + fmt(worst_pairing) +
               " (tol 1e-12), max reversal mismatch " + fmt(worst_flip) +
               " (tol 1e-14)";
  return res;
}

// ---------------------------------------------------------------------------
// 4. Quadratic-form nonnegativity of the fractional integral + energy bound.
CriterionResult kernel_positivity_energy() {
  CriterionResult res{4, "kernel-positivity-energy", true, ""};
  const int n = 256;
  const TimeGrid grid(1.0 / n, n);
  Rng rng(411811);
  const double alphas[] = {0.3, 0.5, 0.7};
  double worst = std::numeric_limits<double>::infinity();
  const Vec w = trapezoid_weights(grid);
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = alphas[trial % 3];
    const Vec u = rng.vector(grid.n_nodes());
    const Vec ju = rl_integral(u, FracOrder{alpha}, grid);
    double q = 0.0, scale = 0.0;
    for (int m = 0; m < grid.n_nodes(); ++m) {
      q += w[m] * u[m] * ju[m];
      scale += w[m] * u[m] * u[m];
    }
    const double margin = q + 1e-10 * scale;
    worst = std::min(worst, q / scale);
    if (margin < 0.0) res.pass = false;
  }

  // Undriven damped evolution: released from a velocity perturbation, the
  // discrete energy must never rise above its initial value.
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, 100);
  const FemMatrices fem = assemble(mesh);
  const TimeGrid tgrid(1.0 / 512, 512);
  double max_growth = 0.0;
  for (const double b : {0.1, 0.0}) {
    PhysicsParams params;
    params.c = 1.0;
    params.b = b;
    params.alpha = FracOrder{0.5};
    params.T = tgrid.horizon();
    LinearizedCoefficients coeffs;
    coeffs.u1 = Vec(mesh.n_nodes());
    for (int i = 0; i < mesh.n_nodes(); ++i)
      coeffs.u1[i] = std::sin(kPi * mesh.nodes(i, 0));
    const StateTrajectory state =
        solve_linearized(coeffs, params, mesh, fem, tgrid);
    const double growth =
        state.energy.maxCoeff() / state.energy[0] - 1.0;
    max_growth = std::max(max_growth, growth);
    if (!(state.energy.maxCoeff() <= state.energy[0] * (1.0 + 1e-6)))
      res.pass = false;
  }
  res.detail = "min (u,Ju)/|u|^2 = " + fmt(worst) +
               " (tol -1e-10); max energy growth = " + fmt(max_growth) +
               " (tol 1e-6)";
  return res;
}

// ---------------------------------------------------------------------------
// 5. Harmonic Neumann lifting against the closed-form 1D solution.
CriterionResult neumann_extension_convergence() {
  CriterionResult res{5, "neumann-extension", true, ""};
  std::vector<double> hs, errs;
  double endpoint_err = 0.0;
  for (const int nx : {8, 16, 32, 64, 128}) {
    const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, nx);
    const FemMatrices fem = assemble(mesh);
    Vec g(fem.n_boundary());
    for (int i = 0; i < fem.n_boundary(); ++i) {
      const double x = mesh.nodes(fem.boundary_nodes[i], 0);
      g[i] = (x > 0.5) ? 1.0 : 0.0;  // unit flux at x = 1, none at x = 0
    }
    const Vec G = neumann_extension(fem, g);
    Vec exact(mesh.n_nodes());
    const double sinh1 = std::sinh(1.0);
    for (int i = 0; i < mesh.n_nodes(); ++i)
      exact[i] = std::cosh(mesh.nodes(i, 0)) / sinh1;
    const Vec e = G - exact;
    const double h1 = std::sqrt(e.dot(fem.K * e) + e.dot(fem.M * e));
    hs.push_back(mesh.h);
    errs.push_back(h1);
    endpoint_err = std::abs(G[mesh.n_nodes() - 1] - std::cosh(1.0) / sinh1);
  }
  const double order = observed_order(hs, errs);
  if (order < 1.9) res.pass = false;
  if (endpoint_err > 1e-3) res.pass = false;
  res.detail = "nodal H1 order = " + fmt(order) +
               " (need >= 1.9); |G(1) - coth(1)| at h=1/128: " +
               fmt(endpoint_err);
  return res;
}

// ---------------------------------------------------------------------------
// 6. Manufactured-solution convergence of the forward solver.
CriterionResult manufactured_convergence() {
  CriterionResult res{6, "manufactured-convergence", true, ""};
  PhysicsParams params;
  params.c = 1.0;
  params.b = 0.1;
  params.alpha = FracOrder{0.5};
  params.T = 1.0;

  // Spatial ladder at a fine time step.
  std::vector<double> hs, space_errs;
  double fine_linf = 0.0;
  {
    const TimeGrid grid(1.0 / 1024, 1024);
    for (const int nx : {25, 50, 100, 200}) {
      const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, nx);
      const FemMatrices fem = assemble(mesh);
      const ManufacturedRun run = run_manufactured(mesh, fem, grid, params);
      hs.push_back(run.h);
      space_errs.push_back(run.final_l2_error);
      fine_linf = run.final_linf_error;
    }
  }
  const double space_order = observed_order(hs, space_errs);

  // Temporal ladder against a fine-step reference on the same mesh, which
  // isolates the time discretization from the spatial floor.
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, 64);
  const FemMatrices fem = assemble(mesh);
  LinearizedCoefficients ref_coeffs;
  const TimeGrid ref_grid(1.0 / 2048, 2048);
  ref_coeffs.F = manufactured_forcing(mesh, ref_grid, params);
  const StateTrajectory ref =
      solve_linearized(ref_coeffs, params, mesh, fem, ref_grid);
  const Vec ref_final = ref.u.col(ref_grid.n_steps);

  std::vector<double> dts, time_errs;
  for (const int steps : {32, 64, 128, 256}) {
    const TimeGrid grid(1.0 / steps, steps);
    LinearizedCoefficients coeffs;
    coeffs.F = manufactured_forcing(mesh, grid, params);
    const StateTrajectory state =
        solve_linearized(coeffs, params, mesh, fem, grid);
    const Vec e = state.u.col(grid.n_steps) - ref_final;
    dts.push_back(grid.dt);
    time_errs.push_back(std::sqrt(e.dot(fem.M * e)));
  }
  const double time_order = observed_order(dts, time_errs);
  const double min_time_order =
      std::min(2.0, 2.0 - params.alpha.value) - 0.2;

  if (space_order < 1.9) res.pass = false;
  if (time_order < min_time_order) res.pass = false;
  if (fine_linf >= 1e-3) res.pass = false;
  res.detail = "space order = " + fmt(space_order) +
               " (need >= 1.9), time order = " + fmt(time_order) +
               " (need >= " + fmt(min_time_order) +
               "), final sup error at (1/200, 1/1024) = " + fmt(fine_linf) +
               " (tol 1e-3)";
  return res;
}

// ---------------------------------------------------------------------------
// 7. Fixed-point iteration behavior across the nonlinearity range.
CriterionResult fixed_point_behavior() {
  CriterionResult res{7, "fixed-point", true, ""};
  std::ostringstream detail;
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, 60);
  const FemMatrices fem = assemble(mesh);
  const TimeGrid grid(1.0 / 128, 128);

  PhysicsParams linear;
  linear.c = 1.0;
  linear.b = 0.05;
  linear.alpha = FracOrder{0.5};
  linear.T = grid.horizon();

  const Mat f0 = Mat::Zero(mesh.n_nodes(), grid.n_nodes());

  // k = 0: the second sweep reproduces the first bitwise.
  {
    const BoundarySignal g = conditioned_pulse(fem, grid, 1.0, 1.0);
    const StateTrajectory state =
        solve_westervelt(g, f0, linear, mesh, fem, grid);
    if (state.fixed_point_iterations > 2) res.pass = false;
    detail << "k=0: " << state.fixed_point_iterations << " sweeps (need <=2); ";
  }

  // Small nonlinearity: geometric contraction of the update norms.
  PhysicsParams nonlinear = linear;
  nonlinear.k = Vec::Constant(mesh.n_nodes(), 0.4);
  {
    double amplitude = 1.0;
    double excursion = 0.0;
    StateTrajectory state;
    for (int attempt = 0; attempt < 4; ++attempt) {
      const BoundarySignal g = conditioned_pulse(fem, grid, amplitude, 1.0);
      state = solve_westervelt(g, f0, nonlinear, mesh, fem, grid);
      excursion = 0.0;
      for (int n = 0; n < grid.n_nodes(); ++n)
        excursion = std::max(
            excursion, (2.0 * nonlinear.k.cwiseProduct(state.u.col(n)))
                           .cwiseAbs()
                           .maxCoeff());
      if (excursion > 0.02 && excursion <= 0.1) break;
      amplitude *= 0.08 / std::max(excursion, 1e-12);
    }
    double worst_ratio = 0.0;
    const auto& norms = state.fp_update_norms;
    for (std::size_t i = 1; i + 1 < norms.size(); ++i) {
      if (norms[i] < 1e-12) break;
      worst_ratio = std::max(worst_ratio, norms[i + 1] / norms[i]);
    }
    if (excursion > 0.1 || worst_ratio >= 0.5) res.pass = false;
    detail << "max|2kp|=" << fmt(excursion) << ", contraction ratio "
           << fmt(worst_ratio) << " (need <0.5); ";
  }

  // Amplitude ramp into the degenerate regime: the solver must refuse with
  // a diagnosed violation, not produce NaNs.
  {
    bool violated = false;
    std::string ramp_note = "no violation";
    double amplitude = 1.0;
    for (int attempt = 0; attempt < 40 && !violated; ++attempt) {
      try {
        const BoundarySignal g = conditioned_pulse(fem, grid, amplitude, 1.0);
        (void)solve_westervelt(g, f0, nonlinear, mesh, fem, grid);
      } catch (const NonDegeneracyViolation& ex) {
        violated = true;
        const bool finite = std::isfinite(ex.coefficient) &&
                            std::isfinite(ex.max_2kp);
        if (!finite || ex.max_2kp < 0.9 - 1e-9) res.pass = false;
        ramp_note = "violation at max|2kp|=" + fmt(ex.max_2kp) +
                    (finite ? " (finite)" : " (NON-FINITE)");
      } catch (const FixedPointDivergence&) {
        // Divergence without a band violation: keep ramping.
      }
      amplitude *= 2.0;
    }
    if (!violated) res.pass = false;
    detail << ramp_note;
  }
  res.detail = detail.str();
  return res;
}

// ---------------------------------------------------------------------------
// 8. Finite-difference Taylor test of the reduced gradients.
struct TaylorFixture {
  ControlProblem problem;
  ControlPair base;
  ControlPair dir_g;
  ControlPair dir_f;
};

TaylorFixture make_taylor_fixture(int nx, int steps, int nu) {
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, nx);
  const TimeGrid grid(1.0 / steps, steps);
  PhysicsParams params;
  params.c = 1.0;
  params.b = 0.2;
  params.alpha = FracOrder{0.5};
  params.T = grid.horizon();

  ObjectiveSpec objective;
  objective.nu = nu;
  objective.gamma = 1e-3;
  objective.eta = 1e-3;
  objective.target = Mat(mesh.n_nodes(), grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n)
    for (int i = 0; i < mesh.n_nodes(); ++i)
      objective.target(i, n) = 0.3 * std::sin(kPi * grid.node(n)) *
                               std::cos(kPi * mesh.nodes(i, 0));

  AdmissibleSpec admissible;
  admissible.g_radius = 1e6;  // projection inactive: the test probes j itself
  admissible.f_radius = 1e6;

  ControlProblem problem(mesh, params, grid, objective, admissible);

  const int nb = mesh.n_boundary();
  Mat g0(nb, grid.n_nodes()), hg(nb, grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n) {
    const double t = grid.node(n);
    for (int i = 0; i < nb; ++i) {
      g0(i, n) = 0.2 * (1.0 + 0.4 * i) * std::sin(2.0 * kPi * t);
      hg(i, n) = (1.0 - 0.5 * i) * std::sin(3.0 * kPi * t) * t;
    }
  }

  TaylorFixture fx{std::move(problem), {}, {}, {}};
  fx.base.g = fx.problem.compatible_signal(g0);
  fx.base.f = sine_source(mesh, grid, 0.1);

  fx.dir_g = fx.problem.zero_controls();
  fx.dir_g.g = fx.problem.compatible_signal(hg);
  const double ng = fx.problem.control_norm(fx.dir_g);
  fx.dir_g.g = fx.problem.compatible_signal(hg / ng);

  fx.dir_f = fx.problem.zero_controls();
  Mat hf(mesh.n_nodes(), grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n)
    for (int i = 0; i < mesh.n_nodes(); ++i)
      hf(i, n) = std::cos(kPi * mesh.nodes(i, 0)) *
                 std::sin(2.0 * kPi * grid.node(n) / grid.horizon());
  fx.dir_f.f = hf;
  const double nf = fx.problem.control_norm(fx.dir_f);
  fx.dir_f.f = hf / nf;
  return fx;
}

CriterionResult gradient_taylor() {
  CriterionResult res{8, "gradient-taylor", true, ""};
  std::ostringstream detail;
  const std::vector<double> eps = {1e-2, 3.1622776601683794e-3, 1e-3,
                                   3.1622776601683794e-4,      1e-4,
                                   3.1622776601683795e-5,      1e-5};
  double min_slope = std::numeric_limits<double>::infinity();
  double max_slope = -min_slope;

  for (const auto [nx, steps] : {std::pair{24, 768}, std::pair{36, 1152}}) {
    for (const int nu : {1, 0}) {
      const TaylorFixture fx = make_taylor_fixture(nx, steps, nu);
      const StateTrajectory state = fx.problem.forward(fx.base.g, fx.base.f);
      const double j0 =
          fx.problem.objective_value(state, fx.base.g, fx.base.f);
      const ControlPair grad = fx.problem.gradient(fx.base, state);

      for (const ControlPair* dir : {&fx.dir_g, &fx.dir_f}) {
        const double gh = fx.problem.control_ip(grad, *dir);
        std::vector<double> rem;
        for (const double e : eps) {
          const ControlPair xe = fx.problem.axpy(fx.base, -e, *dir);
          const double je = fx.problem.evaluate(xe);
          rem.push_back(std::abs(je - j0 - e * gh));
        }
        const double slope = observed_order(eps, rem);
        min_slope = std::min(min_slope, slope);
        max_slope = std::max(max_slope, slope);
        if (slope < 1.9 || slope > 2.1) res.pass = false;
      }
    }
  }
  detail << "remainder slopes in [" << fmt(min_slope) << ", " << fmt(max_slope)
         << "] over 8 branch/weight/resolution combos (need 2.0 +/- 0.1)";
  res.detail = detail.str();
  return res;
}

// ---------------------------------------------------------------------------
// 9. Descent on a reachable target.
CriterionResult attainable_descent() {
  CriterionResult res{9, "attainable-descent", true, ""};
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, 50);
  const FemMatrices fem = assemble(mesh);
  const TimeGrid grid(1.0 / 128, 128);
  PhysicsParams params;
  params.c = 1.0;
  params.b = 0.1;
  params.alpha = FracOrder{0.5};
  params.T = grid.horizon();

  const BoundarySignal g_true = conditioned_pulse(fem, grid, 0.5, 1.0);
  const Mat f_true = sine_source(mesh, grid, 0.2);

  // Reference state = the target; it is reachable by construction.
  const StateTrajectory truth =
      solve_westervelt(g_true, f_true, params, mesh, fem, grid);

  ObjectiveSpec objective;
  objective.nu = 1;
  objective.gamma = 1e-6;
  objective.eta = 1e-6;
  objective.target = truth.u;

  AdmissibleSpec admissible;
  const Mat bb = boundary_mass_dense(fem);
  admissible.g_radius =
      1.5 * surrogate_xg_norm(g_true, params.alpha, grid, bb, admissible);
  admissible.f_radius = 1.5 * xf_norm(f_true, fem.M, grid);

  ControlProblem problem(mesh, params, grid, objective, admissible);

  OptimizerOptions opts;
  opts.max_iterations = 400;
  opts.stationarity_tol = 1e-9;
  opts.initial_step = 4.0;

  const OptResult result = optimize(problem, problem.zero_controls(), opts);

  bool strictly_decreasing = true;
  for (std::size_t i = 1; i < result.history.size(); ++i)
    if (result.history[i].objective >= result.history[i - 1].objective)
      strictly_decreasing = false;

  const StateTrajectory reached =
      problem.forward(result.control.g, result.control.f);
  const double initial =
      norm_spacetime(objective.target, fem.M, grid);  // start from rest
  const double final_err =
      norm_spacetime(reached.u - objective.target, fem.M, grid);
  const double ratio = final_err / initial;

  if (!(ratio < 0.1)) res.pass = false;
  if (!strictly_decreasing) res.pass = false;
  res.detail = "tracking residual ratio = " + fmt(ratio) +
               " (need < 0.1) after " + std::to_string(result.iterations) +
               " iterations, status " + to_string(result.status) +
               ", objective strictly decreasing: " +
               (strictly_decreasing ? "yes" : "no");
  return res;
}

// ---------------------------------------------------------------------------
// 10. Vanishing-regularization ladder on a reachable target.
CriterionResult vanishing_regularization() {
  CriterionResult res{10, "vanishing-regularization", true, ""};
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, 40);
  const FemMatrices fem = assemble(mesh);
  const TimeGrid grid(1.0 / 96, 96);
  PhysicsParams params;
  params.c = 1.0;
  params.b = 0.1;
  params.alpha = FracOrder{0.5};
  params.T = grid.horizon();

  const BoundarySignal g_true = conditioned_pulse(fem, grid, 0.4, 1.0);
  const Mat f_true = sine_source(mesh, grid, 0.15);
  const StateTrajectory truth =
      solve_westervelt(g_true, f_true, params, mesh, fem, grid);

  ObjectiveSpec objective;
  objective.nu = 1;
  objective.gamma = 1e-1;  // ladder start; the study rewrites both weights
  objective.eta = 1e-1;
  objective.target = truth.u;

  AdmissibleSpec admissible;
  const Mat bb = boundary_mass_dense(fem);
  admissible.g_radius =
      1.5 * surrogate_xg_norm(g_true, params.alpha, grid, bb, admissible);
  admissible.f_radius = 1.5 * xf_norm(f_true, fem.M, grid);

  ControlProblem problem(mesh, params, grid, objective, admissible);

  VanishingRegStudySpec spec;
  spec.optimizer.max_iterations = 80;
  spec.optimizer.stationarity_tol = 1e-10;
  spec.optimizer.initial_step = 4.0;

  const VanishingRegReport report =
      run_vanishing_regularization_study(problem, problem.zero_controls(), spec);

  std::ostringstream detail;
  detail << "tracking errors:";
  for (const auto& row : report.rows) detail << ' ' << fmt(row.tracking_error);
  const bool monotone = report.tracking_monotone(0.05);
  const bool strict_ends =
      report.rows.back().tracking_error < report.rows.front().tracking_error;
  if (!monotone || !strict_ends) res.pass = false;
  detail << "; monotone within 5%: " << (monotone ? "yes" : "no")
         << ", bottom < top: " << (strict_ends ? "yes" : "no");
  res.detail = detail.str();
  return res;
}

// ---------------------------------------------------------------------------
// 11. Compatibility conditioning of raw boundary data.
CriterionResult conditioning_compatibility() {
  CriterionResult res{11, "conditioning", true, ""};
  const int steps = 512;
  const TimeGrid grid(1.0 / steps, steps);
  Rng rng(90517);

  // Incompatible raw signals: value and slope at t = 0 must be scrubbed.
  double worst_value = 0.0, worst_slope = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Mat raw(2, grid.n_nodes());
    const double a = rng.symmetric(), b = rng.symmetric(),
                 c = rng.symmetric(), d = rng.symmetric();
    for (int n = 0; n < grid.n_nodes(); ++n) {
      const double t = grid.node(n);
      raw(0, n) = a + b * std::sin(2.0 * kPi * t) + c * t;
      raw(1, n) = d + b * std::cos(3.0 * kPi * t);
    }
    ConditioningParams params;
    params.epsilon = 4.0 * grid.dt;
    const BoundarySignal out = condition_boundary_data(raw, params, grid);
    const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
    worst_value =
        std::max(worst_value, out.values.col(0).cwiseAbs().maxCoeff() / scale);
    worst_slope = std::max(
        worst_slope, out.dvalues.col(0).cwiseAbs().maxCoeff() / scale);
    if (worst_value > 1e-12 || worst_slope > 1e-12) res.pass = false;
  }

  // Already-compatible input: conditioning must converge to it as the
  // mollifier width shrinks.
  Mat compatible(2, grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n) {
    const double t = grid.node(n);
    compatible(0, n) = t * t * std::sin(2.0 * kPi * t);
    compatible(1, n) = 0.5 * t * t * (1.0 - t);
  }
  std::vector<double> errors;
  for (const double halo : {32.0, 16.0, 8.0, 4.0}) {
    ConditioningParams params;
    params.epsilon = halo * grid.dt;
    const BoundarySignal out = condition_boundary_data(compatible, params, grid);
    double acc = 0.0;
    for (int n = 0; n < grid.n_nodes(); ++n)
      acc += grid.dt * (out.values.col(n) - compatible.col(n)).squaredNorm();
    errors.push_back(std::sqrt(acc));
  }
  bool nonincreasing = true;
  for (std::size_t i = 1; i < errors.size(); ++i)
    if (errors[i] > errors[i - 1] * (1.0 + 1e-9) + 1e-15) nonincreasing = false;
  if (!nonincreasing) res.pass = false;

  std::ostringstream detail;
  detail << "zero-state residuals: value " << fmt(worst_value) << ", slope "
         << fmt(worst_slope) << " (tol 1e-12); width-halving errors:";
  for (const double e : errors) detail << ' ' << fmt(e);
  detail << (nonincreasing ? " (nonincreasing)" : " (NOT nonincreasing)");
  res.detail = detail.str();
  return res;
}

// ---------------------------------------------------------------------------
// 12. Byte-level reproducibility of output bundles.
CriterionResult reproducibility() {
  CriterionResult res{12, "reproducibility", true, ""};
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "fracwave-repro-check";
  fs::remove_all(root);

  RunConfig config;
  config.nx = 24;
  config.steps = 48;
  config.target = "attainable";
  config.gamma = 1e-3;
  config.eta = 1e-3;
  config.opt_max_iter = 5;
  config.seed = 7;
  config.scenario = "pulse";

  auto manifest_bytes = [](const fs::path& dir) {
    std::ifstream in(dir / "manifest.txt", std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };

  const fs::path opt_a = root / "optimize-a";
  const fs::path opt_b = root / "optimize-b";
  run_optimize(config, opt_a.string());
  run_optimize(config, opt_b.string());
  const bool opt_same = manifest_bytes(opt_a) == manifest_bytes(opt_b) &&
                        !manifest_bytes(opt_a).empty();

  const fs::path sim_a = root / "simulate-a";
  const fs::path sim_b = root / "simulate-b";
  run_simulate(config, sim_a.string());
  run_simulate(config, sim_b.string());
  const bool sim_same = manifest_bytes(sim_a) == manifest_bytes(sim_b) &&
                        !manifest_bytes(sim_a).empty();

  const auto problems = verify_manifest(opt_a.string());
  fs::remove_all(root);

  if (!opt_same || !sim_same || !problems.empty()) res.pass = false;
  res.detail = std::string("optimize manifests identical: ") +
               (opt_same ? "yes" : "no") +
               ", simulate manifests identical: " + (sim_same ? "yes" : "no") +
               ", manifest self-check problems: " +
               std::to_string(problems.size());
  return res;
}

}  // namespace

CriterionResult run_criterion(int id) {
  try {
    switch (id) {
      case 1: return caputo_power_rule();
      case 2: return caputo_oracle_agreement();
      case 3: return adjoint_transpose();
      case 4: return kernel_positivity_energy();
      case 5: return neumann_extension_convergence();
      case 6: return manufactured_convergence();
      case 7: return fixed_point_behavior();
      case 8: return gradient_taylor();
      case 9: return attainable_descent();
      case 10: return vanishing_regularization();
      case 11: return conditioning_compatibility();
      case 12: return reproducibility();
      default:
        throw PreconditionError("run_criterion: unknown id " +
                                std::to_string(id));
    }
  } catch (const PreconditionError&) {
    throw;
  } catch (const std::exception& ex) {
    CriterionResult res;
    res.id = id;
    res.name = "criterion-" + std::to_string(id);
    res.pass = false;
    res.detail = std::string("exception: ") + ex.what();
    return res;
  }
}

std::vector<int> all_criteria() {
  return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> list = {
      {"frac-ops", {1, 2, 3, 4}},
      {"extension", {5}},
      {"forward", {6}},
      {"fixed-point", {7}},
      {"gradient", {8}},
      {"optimization", {9, 10}},
      {"conditioning", {11}},
      {"reproducibility", {12}},
  };
  return list;
}

std::vector<CriterionResult> run_suite(const std::string& name) {
  std::vector<int> ids;
  if (name.empty() || name == "all") {
    ids = all_criteria();
  } else {
    bool found = false;
    for (const auto& suite : suites()) {
      if (suite.name == name) {
        ids = suite.criteria;
        found = true;
        break;
      }
    }
    if (!found)
      throw PreconditionError("run_suite: unknown suite '" + name + "'");
  }
  std::vector<CriterionResult> results;
  results.reserve(ids.size());
  for (const int id : ids) results.push_back(run_criterion(id));
  return results;
}

}  // namespace fracwave::verify
