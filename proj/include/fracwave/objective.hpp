#pragma once

#include "fracwave/assembly.hpp"
#include "fracwave/boundary_signal.hpp"
#include "fracwave/linearized.hpp"

namespace fracwave {

// Tracking functional
//   J = nu/2 |p - target|^2_{L2(0,T; L2(roi))}
//     + (1-nu)/2 |p(T) - target(T)|^2_{L2(roi)}
//     + gamma/2 |g|^2_{L2(0,T; boundary)}
//     + eta/2 |f|^2_{L2(0,T; L2)}.
// Space norms use the (roi-masked) P1 mass matrices, time integrals the
// trapezoid rule.
struct ObjectiveSpec {
  Mat target;     // nodes x time nodes
  int nu = 1;     // 1: distributed tracking, 0: final time only
  double gamma = 0.0;  // boundary control penalty
  double eta = 0.0;    // distributed control penalty
  Vec roi;        // 0/1 nodal mask; empty = whole domain

  void validate(int n_nodes, int n_time) const;
};

double evaluate_objective(const StateTrajectory& p, const BoundarySignal& g,
                          const Mat& f, const ObjectiveSpec& spec,
                          const SpaceMesh& mesh, const FemMatrices& fem,
                          const TimeGrid& grid);

// The roi-masked mass matrix used by the tracking terms.
SpMat roi_mass(const ObjectiveSpec& spec, const SpaceMesh& mesh,
               const FemMatrices& fem);

}  // namespace fracwave
