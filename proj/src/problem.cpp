#include "fracwave/problem.hpp"

#include <utility>

#include "fracwave/errors.hpp"
#include "fracwave/quadrature.hpp"

namespace fracwave {

ControlProblem::ControlProblem(SpaceMesh mesh, PhysicsParams params,
                               TimeGrid grid, ObjectiveSpec objective,
                               AdmissibleSpec admissible, FixedPointOptions fp,
                               SolveOptions solve_options)
    : mesh_(std::move(mesh)),
      params_(std::move(params)),
      grid_(grid),
      objective_(std::move(objective)),
      admissible_(admissible),
      fp_(fp),
      solve_options_(solve_options) {
  params_.validate(mesh_);
  admissible_.validate();
  fem_ = assemble(mesh_);
  objective_.validate(mesh_.n_nodes(), grid_.n_nodes());
  boundary_mass_ = boundary_mass_dense(fem_);
}

ControlProblem ControlProblem::with_objective(ObjectiveSpec objective) const {
  ControlProblem copy(*this);
  objective.validate(mesh_.n_nodes(), grid_.n_nodes());
  copy.objective_ = std::move(objective);
  return copy;
}

BoundarySignal ControlProblem::compatible_signal(Mat values) const {
  const auto nb = static_cast<Eigen::Index>(fem_.boundary_nodes.size());
  if (values.rows() != nb || values.cols() != grid_.n_nodes())
    throw PreconditionError("compatible_signal: values shape mismatch");
  values.col(0).setZero();
  Mat dvalues = fd_derivative_rows(values, grid_.dt);
  dvalues.col(0).setZero();
  BoundarySignal sig;
  sig.values = std::move(values);
  sig.dvalues = std::move(dvalues);
  return sig;
}

ControlPair ControlProblem::zero_controls() const {
  ControlPair x;
  x.g = BoundarySignal::zero(static_cast<int>(fem_.boundary_nodes.size()),
                             grid_);
  x.f = Mat::Zero(mesh_.n_nodes(), grid_.n_nodes());
  return x;
}

StateTrajectory ControlProblem::forward(const BoundarySignal& g,
                                        const Mat& f) const {
  return solve_westervelt(g, f, params_, mesh_, fem_, grid_, fp_,
                          solve_options_);
}

StateTrajectory ControlProblem::adjoint(const StateTrajectory& state) const {
  AdjointData data;
  data.state = &state;
  data.target = objective_.target;
  data.nu = objective_.nu;
  data.roi = objective_.roi;
  return solve_adjoint(data, params_, mesh_, fem_, grid_, solve_options_);
}

double ControlProblem::objective_value(const StateTrajectory& state,
                                       const BoundarySignal& g,
                                       const Mat& f) const {
  return evaluate_objective(state, g, f, objective_, mesh_, fem_, grid_);
}

double ControlProblem::evaluate(const ControlPair& x) const {
  const StateTrajectory state = forward(x.g, x.f);
  return objective_value(state, x.g, x.f);
}

ControlPair ControlProblem::gradient(const ControlPair& x,
                                     const StateTrajectory& state) const {
  const StateTrajectory padj = adjoint(state);
  ReducedGradient raw =
      reduced_gradient(x.g, x.f, padj, objective_, params_, fem_);
  ControlPair grad;
  grad.g = compatible_signal(std::move(raw.g));
  grad.f = std::move(raw.f);
  return grad;
}

ControlPair ControlProblem::project(const ControlPair& x) const {
  return project_admissible(x.g, x.f, admissible_, params_.alpha, grid_,
                            boundary_mass_, fem_.M);
}

double ControlProblem::control_ip(const ControlPair& a,
                                  const ControlPair& b) const {
  const double g_part =
      ip_spacetime(a.g.values, b.g.values, boundary_mass_, grid_);
  const double f_part = ip_spacetime(a.f, b.f, fem_.M, grid_);
  return g_part + f_part;
}

double ControlProblem::control_norm(const ControlPair& a) const {
  return std::sqrt(std::max(0.0, control_ip(a, a)));
}

ControlPair ControlProblem::axpy(const ControlPair& a, double s,
                                 const ControlPair& b) const {
  ControlPair out;
  out.g = compatible_signal(a.g.values - s * b.g.values);
  out.f = a.f - s * b.f;
  return out;
}

}  // namespace fracwave
