#include "fracwave/gradient.hpp"

#include "fracwave/errors.hpp"

namespace fracwave {

ReducedGradient reduced_gradient(const BoundarySignal& g, const Mat& f,
                                 const StateTrajectory& padj,
                                 const ObjectiveSpec& spec,
                                 const PhysicsParams& params,
                                 const FemMatrices& fem) {
  const auto nb = static_cast<Eigen::Index>(fem.boundary_nodes.size());
  const Eigen::Index nt = padj.u.cols();
  if (g.values.rows() != nb || g.values.cols() != nt)
    throw PreconditionError("reduced_gradient: boundary control shape mismatch");
  if (f.rows() != padj.u.rows() || f.cols() != nt)
    throw PreconditionError("reduced_gradient: distributed control shape mismatch");
  if (padj.frac.rows() != padj.u.rows() || padj.frac.cols() != nt)
    throw PreconditionError("reduced_gradient: adjoint trajectory lacks fractional history");

  ReducedGradient out;
  out.g.resize(nb, nt);
  const double c2 = params.c * params.c;
  for (Eigen::Index i = 0; i < nb; ++i) {
    const Eigen::Index node = fem.boundary_nodes[static_cast<std::size_t>(i)];
    // The boundary load pairs the dual state against c^2 g + b D^a g, so its
    // transpose carries the right-sided fractional derivative of the dual
    // state with the same (positive) weight as the wave term.
    out.g.row(i) = c2 * padj.u.row(node) + params.b * padj.frac.row(node);
  }
  out.g += spec.gamma * g.values;
  out.f = padj.u + spec.eta * f;
  return out;
}

}  // namespace fracwave
