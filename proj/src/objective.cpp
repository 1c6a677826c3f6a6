#include "fracwave/objective.hpp"

#include <cmath>

#include "fracwave/quadrature.hpp"

namespace fracwave {

void ObjectiveSpec::validate(int n_nodes, int n_time) const {
  if (nu != 0 && nu != 1)
    throw PreconditionError("ObjectiveSpec: nu must be 0 or 1");
  if (!(gamma >= 0.0) || !(eta >= 0.0))
    throw PreconditionError("ObjectiveSpec: penalties must be nonnegative");
  if (target.rows() != n_nodes || target.cols() != n_time)
    throw PreconditionError("ObjectiveSpec: target layout mismatch");
  if (roi.size() != 0) {
    if (roi.size() != n_nodes)
      throw PreconditionError("ObjectiveSpec: roi size != node count");
    for (int i = 0; i < roi.size(); ++i)
      if (std::abs(roi[i]) > 1e-14 && std::abs(roi[i] - 1.0) > 1e-14)
        throw PreconditionError("ObjectiveSpec: roi mask must be 0/1 valued");
  }
}

SpMat roi_mass(const ObjectiveSpec& spec, const SpaceMesh& mesh,
               const FemMatrices& fem) {
  if (spec.roi.size() == 0) return fem.M;
  return assemble_weighted(mesh, spec.roi);
}

double evaluate_objective(const StateTrajectory& p, const BoundarySignal& g,
                          const Mat& f, const ObjectiveSpec& spec,
                          const SpaceMesh& mesh, const FemMatrices& fem,
                          const TimeGrid& grid) {
  spec.validate(mesh.n_nodes(), grid.n_nodes());
  if (p.u.rows() != mesh.n_nodes() || p.u.cols() != grid.n_nodes())
    throw PreconditionError("evaluate_objective: state layout mismatch");

  const SpMat mr = roi_mass(spec, mesh, fem);
  const Mat err = p.u - spec.target;
  double j = 0.0;

  if (spec.nu == 1) {
    j += 0.5 * ip_spacetime(err, err, mr, grid);
  } else {
    const Vec e_final = err.col(err.cols() - 1);
    j += 0.5 * e_final.dot(mr * e_final);
  }

  if (spec.gamma > 0.0 && !g.empty()) {
    const Mat bb = boundary_mass_dense(fem);
    j += 0.5 * spec.gamma * ip_spacetime(g.values, g.values, bb, grid);
  }

  if (spec.eta > 0.0 && f.size() != 0) {
    if (f.rows() != mesh.n_nodes() || f.cols() != grid.n_nodes())
      throw PreconditionError("evaluate_objective: source layout mismatch");
    j += 0.5 * spec.eta * ip_spacetime(f, f, fem.M, grid);
  }
  return j;
}

}  // namespace fracwave
