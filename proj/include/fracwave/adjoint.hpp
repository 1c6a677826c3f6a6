#pragma once

#include "fracwave/linearized.hpp"

namespace fracwave {

// Data of the adjoint (dual) problem for tracking a target field.
//   nu = 1: distributed tracking of target over the region of interest;
//   nu = 0: final-time tracking only.
// roi is a 0/1 nodal mask; empty means the whole domain.
struct AdjointData {
  const StateTrajectory* state = nullptr;  // forward pressure trajectory
  Mat target;                              // same layout as state->u
  int nu = 1;
  Vec roi;
};

// Solves the adjoint problem by time reversal: the reversed unknown
// satisfies a linearized forward problem with a = 1 - 2 k p(T - t),
// l = n = 0, source nu * (p - target) * roi reversed in time, zero Neumann
// data, and initial velocity (1 - nu) (p(T) - target(T)) roi / a(T).
// The result is flipped back, so
//   u(:,end) = 0,
//   u_t(:,end) = -(1 - nu) (p(T) - target(T)) roi / (1 - 2 k p(T)),
// and frac holds the right-sided (transposed) fractional derivative of the
// adjoint state.
StateTrajectory solve_adjoint(const AdjointData& data,
                              const PhysicsParams& params,
                              const SpaceMesh& mesh, const FemMatrices& fem,
                              const TimeGrid& grid,
                              const SolveOptions& opts = {});

}  // namespace fracwave
