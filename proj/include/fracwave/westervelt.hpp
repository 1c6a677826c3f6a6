#pragma once

#include "fracwave/linearized.hpp"

namespace fracwave {

struct FixedPointOptions {
  enum class Mode {
    Global,         // whole-trajectory Picard iteration (production path)
    PerStepFrozen,  // single sweep with coefficients lagged by one step
  };

  int max_iter = 50;
  double tol = 1e-10;
  Mode mode = Mode::Global;
};

// Solves the quasilinear problem by freezing the coefficients at the
// previous iterate:  a = 1 - 2 k p*,  l = -2 k p*_t,  n = 0,  starting from
// p* = 0.  Convergence criterion: max-in-time L2 update below tol relative
// to the iterate size.  Throws FixedPointDivergence past max_iter,
// NonDegeneracyViolation when 1 - 2 k p leaves the configured band.
StateTrajectory solve_westervelt(const BoundarySignal& g, const Mat& f,
                                 const PhysicsParams& params,
                                 const SpaceMesh& mesh,
                                 const FemMatrices& fem, const TimeGrid& grid,
                                 const FixedPointOptions& fp = {},
                                 const SolveOptions& opts = {});

// Relative distance of one more application of the fixed-point map from the
// given trajectory; a converged solve stays within a few multiples of tol.
double fixed_point_residual(const StateTrajectory& p, const BoundarySignal& g,
                            const Mat& f, const PhysicsParams& params,
                            const SpaceMesh& mesh, const FemMatrices& fem,
                            const TimeGrid& grid,
                            const SolveOptions& opts = {});

}  // namespace fracwave
