#pragma once

#include <vector>

#include "fracwave/assembly.hpp"
#include "fracwave/boundary_signal.hpp"
#include "fracwave/physics.hpp"
#include "fracwave/time_grid.hpp"

namespace fracwave {

// Coefficients of the linearized problem
//   a u_tt - c^2 lap(u) - b lap(D_t^alpha u) + l u_t + n u = F,
//   c^2 du/dn + b D_t^alpha du/dn = c^2 g + b D_t^alpha g on the boundary,
//   u(0) = 0, u_t(0) = u1.
// Space-time fields are nodes x time-nodes matrices.  A single-column field
// is treated as constant in time; an empty field takes its default
// (a = 1, l = n = 0, F = 0).
struct LinearizedCoefficients {
  Mat a;
  Mat l;
  Mat n;
  Mat F;
  BoundarySignal g;
  Vec u1;
};

struct SolveOptions {
  double a_lower = 0.1;  // non-degeneracy band for the leading coefficient
  double a_upper = 4.0;
};

// Trajectory of one linear(ized) solve.  frac holds the L1 fractional
// derivative of u accumulated along the march (equals applying the L1
// operator to the finished series).  energy is
//   E(t_n) = 1/2 u_t' M_a u_t + 1/2 c^2 u' K u.
struct StateTrajectory {
  Mat u;
  Mat u_t;
  Mat frac;
  Vec energy;
  int fixed_point_iterations = 0;
  std::vector<double> fp_update_norms;  // relative Picard update per iterate

  int n_time_nodes() const { return static_cast<int>(u.cols()); }
  Vec final_state() const { return u.col(u.cols() - 1); }
};

// Newmark average-acceleration march (beta = 1/4, gamma = 1/2) with the L1
// memory term split into an implicit current increment and an explicit
// history sum.  One sparse symmetric solve per step.
StateTrajectory solve_linearized(const LinearizedCoefficients& coeffs,
                                 const PhysicsParams& params,
                                 const SpaceMesh& mesh,
                                 const FemMatrices& fem, const TimeGrid& grid,
                                 const SolveOptions& opts = {});

namespace detail {

// Per-step coefficient slices for the core march.  fill(s, ...) may leave
// outputs empty to request defaults; when it is called, trajectory columns
// 0..max(s-1, 0) are final, so lagged sources can read the partial solve
// through the trajectory bound before stepping starts.
class CoefficientSource {
 public:
  virtual ~CoefficientSource() = default;
  virtual void fill(int s, Vec& a, Vec& l, Vec& n, Vec& F) const = 0;
  virtual bool time_constant() const { return false; }
  virtual void bind(const StateTrajectory&) {}
};

StateTrajectory integrate(CoefficientSource& src, const BoundarySignal& g,
                          const Vec& u1, const PhysicsParams& params,
                          const SpaceMesh& mesh, const FemMatrices& fem,
                          const TimeGrid& grid, const SolveOptions& opts);

}  // namespace detail

}  // namespace fracwave
