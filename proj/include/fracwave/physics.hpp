#pragma once

#include "fracwave/mesh.hpp"
#include "fracwave/time_grid.hpp"
#include "fracwave/types.hpp"

namespace fracwave {

// Material and model parameters for the damped nonlinear wave problem
//   ((1 - 2 k p) p_t)_t - c^2 lap(p) - b lap(D_t^alpha p) = f.
struct PhysicsParams {
  double c = 1.0;        // wave speed
  double b = 0.0;        // fractional attenuation coefficient
  FracOrder alpha{0.5};  // memory order
  Vec k;                 // nodal nonlinearity field; empty means k = 0
  double T = 1.0;        // time horizon

  double b_max = 100.0;       // admissible attenuation bound
  double k_small_bound = 1.0; // smallness bound on the k surrogate norm

  // c > 0, 0 <= b <= b_max, T > 0, k sized to the mesh and small enough.
  void validate(const SpaceMesh& mesh) const;

  bool has_k() const { return k.size() != 0; }
};

// Surrogate smallness norm for the nonlinearity field:
// max(|k|_inf, element-wise |grad k|_inf).
double k_surrogate_norm(const Vec& k, const SpaceMesh& mesh);

// Attenuation coefficient rescaling b * c^{-2} * (L/c)^{-alpha}; separate so
// it can be evaluated at the alpha = 1 end of the range as well.
double attenuation_scale(double b, double c, double L, double alpha);

// Rescale to unit wave speed: x -> x/L, t -> t c/L, p -> p/p_ref.  Returns
// parameters with c = 1, T = T c/L, b and k rescaled accordingly.
PhysicsParams nondimensionalize(const PhysicsParams& p, double L,
                                double p_ref);

// Inverse of the above given the original wave speed.
PhysicsParams redimensionalize(const PhysicsParams& p, double L, double p_ref,
                               double c_original);

}  // namespace fracwave
