#pragma once

#include "fracwave/assembly.hpp"
#include "fracwave/linearized.hpp"
#include "fracwave/mesh.hpp"
#include "fracwave/physics.hpp"
#include "fracwave/time_grid.hpp"

namespace fracwave {

// Closed-form benchmark for the linear damped solver on [0,1] (1D) or on a
// rectangle (y-independent):
//   u*(x,t) = t^2 cos(pi x),
// which has zero initial data, zero Neumann flux on every side, and forcing
//   F(x,t) = [2 + c^2 pi^2 t^2 + 2 b pi^2 t^{2-alpha} / Gamma(3-alpha)]
//            * cos(pi x).
Mat manufactured_exact(const SpaceMesh& mesh, const TimeGrid& grid);

Mat manufactured_forcing(const SpaceMesh& mesh, const TimeGrid& grid,
                         const PhysicsParams& params);

struct ManufacturedRun {
  double h = 0.0;
  double dt = 0.0;
  double final_linf_error = 0.0;  // nodal sup error at t = T
  double final_l2_error = 0.0;    // mass-weighted error at t = T
};

// Solves the linear problem with the manufactured forcing and reports the
// final-time errors.
ManufacturedRun run_manufactured(const SpaceMesh& mesh, const FemMatrices& fem,
                                 const TimeGrid& grid,
                                 const PhysicsParams& params);

}  // namespace fracwave
