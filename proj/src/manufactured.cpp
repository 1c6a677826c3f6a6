#include "fracwave/manufactured.hpp"

#include <cmath>
#include <numbers>

#include "fracwave/special.hpp"

namespace fracwave {

namespace {
constexpr double kPi = std::numbers::pi;
}

Mat manufactured_exact(const SpaceMesh& mesh, const TimeGrid& grid) {
  Mat u(mesh.n_nodes(), grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n) {
    const double t2 = grid.node(n) * grid.node(n);
    for (int i = 0; i < mesh.n_nodes(); ++i)
      u(i, n) = t2 * std::cos(kPi * mesh.nodes(i, 0));
  }
  return u;
}

Mat manufactured_forcing(const SpaceMesh& mesh, const TimeGrid& grid,
                         const PhysicsParams& params) {
  const double c2 = params.c * params.c;
  const double alpha = params.alpha.value;
  const double frac_coef = 2.0 / gamma_fn(3.0 - alpha);
  Mat F(mesh.n_nodes(), grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n) {
    const double t = grid.node(n);
    const double amp = 2.0 + c2 * kPi * kPi * t * t +
                       params.b * kPi * kPi * frac_coef *
                           std::pow(t, 2.0 - alpha);
    for (int i = 0; i < mesh.n_nodes(); ++i)
      F(i, n) = amp * std::cos(kPi * mesh.nodes(i, 0));
  }
  return F;
}

ManufacturedRun run_manufactured(const SpaceMesh& mesh, const FemMatrices& fem,
                                 const TimeGrid& grid,
                                 const PhysicsParams& params) {
  LinearizedCoefficients coeffs;
  coeffs.F = manufactured_forcing(mesh, grid, params);
  const StateTrajectory state =
      solve_linearized(coeffs, params, mesh, fem, grid);

  const Mat exact = manufactured_exact(mesh, grid);
  const Vec err = state.u.col(grid.n_steps) - exact.col(grid.n_steps);

  ManufacturedRun run;
  run.h = mesh.h;
  run.dt = grid.dt;
  run.final_linf_error = err.cwiseAbs().maxCoeff();
  run.final_l2_error = std::sqrt(err.dot(fem.M * err));
  return run;
}

}  // namespace fracwave
