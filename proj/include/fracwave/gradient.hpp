#pragma once

#include "fracwave/admissible.hpp"
#include "fracwave/adjoint.hpp"
#include "fracwave/objective.hpp"

namespace fracwave {

// L2 Riesz representatives of the reduced objective derivative.
//   grad_g = trace(c^2 p_adj - b D~^alpha p_adj) + gamma g   on the boundary
//   grad_f = p_adj + eta f                                   in the domain
// padj.frac carries the right-sided fractional derivative of the adjoint
// state (the time-reversed solve fills it), so the boundary formula is the
// exact transpose of the forcing term the forward solve applies.
struct ReducedGradient {
  Mat g;  // boundary rows x time nodes
  Mat f;  // nodes x time nodes
};

ReducedGradient reduced_gradient(const BoundarySignal& g, const Mat& f,
                                 const StateTrajectory& padj,
                                 const ObjectiveSpec& spec,
                                 const PhysicsParams& params,
                                 const FemMatrices& fem);

}  // namespace fracwave
