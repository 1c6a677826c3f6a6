#pragma once

#include "fracwave/admissible.hpp"
#include "fracwave/adjoint.hpp"
#include "fracwave/gradient.hpp"
#include "fracwave/objective.hpp"
#include "fracwave/westervelt.hpp"

namespace fracwave {

// Bundles everything needed to evaluate the reduced tracking objective and
// its gradient for one discretization: mesh, assembled matrices, grid,
// physics, objective weights, and the admissible set.  The optimizer only
// talks to this class.
class ControlProblem {
 public:
  ControlProblem(SpaceMesh mesh, PhysicsParams params, TimeGrid grid,
                 ObjectiveSpec objective, AdmissibleSpec admissible,
                 FixedPointOptions fp = {}, SolveOptions solve_options = {});

  const SpaceMesh& mesh() const { return mesh_; }
  const FemMatrices& fem() const { return fem_; }
  const TimeGrid& grid() const { return grid_; }
  const PhysicsParams& params() const { return params_; }
  const ObjectiveSpec& objective() const { return objective_; }
  const AdmissibleSpec& admissible() const { return admissible_; }
  const Mat& boundary_mass() const { return boundary_mass_; }

  // Copy with different objective weights; reuses mesh and matrices.
  ControlProblem with_objective(ObjectiveSpec objective) const;

  // Wraps raw boundary values as a control living in the compatible
  // subspace: node 0 is forced to zero, stored derivatives come from finite
  // differences with the initial slope pinned to zero.  Linear combinations
  // and radial scalings of such signals stay in the subspace, so every
  // optimizer iterate remains valid Neumann data.
  BoundarySignal compatible_signal(Mat values) const;

  ControlPair zero_controls() const;

  StateTrajectory forward(const BoundarySignal& g, const Mat& f) const;
  StateTrajectory adjoint(const StateTrajectory& state) const;

  double objective_value(const StateTrajectory& state, const BoundarySignal& g,
                         const Mat& f) const;
  // Convenience: forward solve + objective in one call.
  double evaluate(const ControlPair& x) const;

  // Reduced gradient mapped into the compatible subspace.
  ControlPair gradient(const ControlPair& x, const StateTrajectory& state) const;

  ControlPair project(const ControlPair& x) const;

  // Inner product and norm of control-space directions: trapezoid in time,
  // boundary mass for g, domain mass for f.
  double control_ip(const ControlPair& a, const ControlPair& b) const;
  double control_norm(const ControlPair& a) const;

  // a - s*b, staying in the compatible subspace.
  ControlPair axpy(const ControlPair& a, double s, const ControlPair& b) const;

 private:
  SpaceMesh mesh_;
  PhysicsParams params_;
  TimeGrid grid_;
  ObjectiveSpec objective_;
  AdmissibleSpec admissible_;
  FixedPointOptions fp_;
  SolveOptions solve_options_;
  FemMatrices fem_;
  Mat boundary_mass_;
};

}  // namespace fracwave
