#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fracwave/adjoint.hpp"
#include "fracwave/manufactured.hpp"
#include "fracwave/verify/oracles.hpp"
#include "fracwave/westervelt.hpp"

using namespace fracwave;

namespace {

constexpr double kPi = std::numbers::pi;

PhysicsParams base_params(double T) {
  PhysicsParams p;
  p.c = 1.0;
  p.b = 0.1;
  p.alpha = FracOrder{0.5};
  p.T = T;
  return p;
}

}  // namespace

TEST_CASE("forcing built from a known field is recovered by the march") {
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, 50);
  const FemMatrices fem = assemble(mesh);
  const TimeGrid grid(1.0 / 256, 256);
  const PhysicsParams params = base_params(grid.horizon());
  const ManufacturedRun run = run_manufactured(mesh, fem, grid, params);
  CHECK(run.final_linf_error > 0.0);
  CHECK(run.final_linf_error < 5e-3);
  CHECK(run.final_l2_error < 5e-3);

  // Refining both grids shrinks the error.
  const SpaceMesh fine_mesh = SpaceMesh::interval(0.0, 1.0, 100);
  const FemMatrices fine_fem = assemble(fine_mesh);
  const TimeGrid fine_grid(1.0 / 512, 512);
  const ManufacturedRun fine =
      run_manufactured(fine_mesh, fine_fem, fine_grid, params);
  CHECK(fine.final_l2_error < 0.5 * run.final_l2_error);
}

TEST_CASE("undamped single-mode response follows the closed-form amplitude") {
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, 80);
  const FemMatrices fem = assemble(mesh);
  const TimeGrid grid(1.0 / 512, 512);
  PhysicsParams params = base_params(grid.horizon());
  params.b = 0.0;

  LinearizedCoefficients coeffs;
  coeffs.F = Mat(mesh.n_nodes(), 1);  // constant-in-time forcing
  for (int i = 0; i < mesh.n_nodes(); ++i)
    coeffs.F(i, 0) = std::cos(kPi * mesh.nodes(i, 0));
  const StateTrajectory state =
      solve_linearized(coeffs, params, mesh, fem, grid);

  double worst = 0.0, scale = 0.0;
  for (int n = 0; n < grid.n_nodes(); ++n) {
    const double exact = verify::single_mode_amplitude(grid.node(n), params.c);
    worst = std::max(worst, std::abs(state.u(0, n) - exact));
    scale = std::max(scale, std::abs(exact));
  }
  CHECK(worst < 0.01 * scale);
}

TEST_CASE("undriven undamped evolution conserves the discrete energy") {
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, 60);
  const FemMatrices fem = assemble(mesh);
  const TimeGrid grid(1.0 / 256, 256);
  PhysicsParams params = base_params(grid.horizon());
  params.b = 0.0;

  LinearizedCoefficients coeffs;
  coeffs.u1 = Vec(mesh.n_nodes());
  for (int i = 0; i < mesh.n_nodes(); ++i)
    coeffs.u1[i] = std::sin(kPi * mesh.nodes(i, 0));
  const StateTrajectory state =
      solve_linearized(coeffs, params, mesh, fem, grid);
  const double e0 = state.energy[0];
  CHECK(e0 > 0.0);
  CHECK((state.energy.array() - e0).abs().maxCoeff() < 1e-9 * e0);
}

TEST_CASE("linear problems need at most two fixed-point sweeps") {
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, 40);
  const FemMatrices fem = assemble(mesh);
  const TimeGrid grid(1.0 / 128, 128);
  const PhysicsParams params = base_params(grid.horizon());

  Mat raw(fem.n_boundary(), grid.n_nodes());
  Mat draw(fem.n_boundary(), grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n) {
    const double t = grid.node(n);
    raw.col(n).setConstant(t * t * std::sin(2.0 * kPi * t));
    draw.col(n).setConstant(2.0 * t * std::sin(2.0 * kPi * t) +
                            2.0 * kPi * t * t * std::cos(2.0 * kPi * t));
  }
  const BoundarySignal g = BoundarySignal::from_values(raw, draw, grid);
  const Mat f = Mat::Zero(mesh.n_nodes(), grid.n_nodes());

  const StateTrajectory state =
      solve_westervelt(g, f, params, mesh, fem, grid);
  CHECK(state.fixed_point_iterations <= 2);
  CHECK(fixed_point_residual(state, g, f, params, mesh, fem, grid) < 1e-8);
}

TEST_CASE("lagged-coefficient sweep stays close to the converged iteration") {
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, 40);
  const FemMatrices fem = assemble(mesh);
  const TimeGrid grid(1.0 / 256, 256);
  PhysicsParams params = base_params(grid.horizon());
  params.k = Vec::Constant(mesh.n_nodes(), 0.5);

  Mat raw(fem.n_boundary(), grid.n_nodes());
  Mat draw(fem.n_boundary(), grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n) {
    const double t = grid.node(n);
    raw.col(n).setConstant(0.05 * t * t * std::sin(2.0 * kPi * t));
    draw.col(n).setConstant(0.05 * (2.0 * t * std::sin(2.0 * kPi * t) +
                                    2.0 * kPi * t * t *
                                        std::cos(2.0 * kPi * t)));
  }
  const BoundarySignal g = BoundarySignal::from_values(raw, draw, grid);
  const Mat f = Mat::Zero(mesh.n_nodes(), grid.n_nodes());

  FixedPointOptions global;
  FixedPointOptions lagged;
  lagged.mode = FixedPointOptions::Mode::PerStepFrozen;

  const StateTrajectory a =
      solve_westervelt(g, f, params, mesh, fem, grid, global);
  const StateTrajectory b =
      solve_westervelt(g, f, params, mesh, fem, grid, lagged);
  const double scale = a.u.cwiseAbs().maxCoeff();
  CHECK(scale > 0.0);
  CHECK((a.u - b.u).cwiseAbs().maxCoeff() < 0.02 * scale);
}

TEST_CASE("dual solve satisfies its terminal conditions") {
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, 30);
  const FemMatrices fem = assemble(mesh);
  const TimeGrid grid(1.0 / 64, 64);
  const PhysicsParams params = base_params(grid.horizon());

  Mat raw(fem.n_boundary(), grid.n_nodes());
  Mat draw(fem.n_boundary(), grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n) {
    const double t = grid.node(n);
    raw.col(n).setConstant(0.3 * t * t);
    draw.col(n).setConstant(0.6 * t);
  }
  const BoundarySignal g = BoundarySignal::from_values(raw, draw, grid);
  const Mat f = Mat::Zero(mesh.n_nodes(), grid.n_nodes());
  const StateTrajectory state =
      solve_westervelt(g, f, params, mesh, fem, grid);

  AdjointData data;
  data.state = &state;
  data.target = Mat::Zero(mesh.n_nodes(), grid.n_nodes());

  SUBCASE("distributed tracking: homogeneous terminal data") {
    data.nu = 1;
    const StateTrajectory adj =
        solve_adjoint(data, params, mesh, fem, grid);
    const int last = grid.n_steps;
    CHECK(adj.u.col(last).cwiseAbs().maxCoeff() == 0.0);
    CHECK(adj.u_t.col(last).cwiseAbs().maxCoeff() == 0.0);
    // The dual state is nontrivial away from the terminal time.
    CHECK(adj.u.cwiseAbs().maxCoeff() > 0.0);
  }

  SUBCASE("final-time tracking: velocity jump carries the mismatch") {
    data.nu = 0;
    const StateTrajectory adj =
        solve_adjoint(data, params, mesh, fem, grid);
    const int last = grid.n_steps;
    CHECK(adj.u.col(last).cwiseAbs().maxCoeff() == 0.0);
    const Vec expected = -state.u.col(last);  // a = 1 when k = 0
    CHECK((adj.u_t.col(last) - expected).cwiseAbs().maxCoeff() <
          1e-12 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
  }
}
