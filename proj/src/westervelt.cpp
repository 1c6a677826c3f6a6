#include "fracwave/westervelt.hpp"

#include <cmath>
#include <limits>

namespace fracwave {

namespace {

// max-in-time M-weighted L2 norm of a space-time field.
double linf_l2(const Mat& u, const SpMat& m) {
  double best = 0.0;
  for (int n = 0; n < u.cols(); ++n)
    best = std::max(best, u.col(n).dot(m * u.col(n)));
  return std::sqrt(std::max(0.0, best));
}

// Coefficient fields frozen at a given trajectory.
LinearizedCoefficients freeze(const Vec& k, const Mat& p, const Mat& p_t,
                              const Mat& f, const BoundarySignal& g) {
  LinearizedCoefficients c;
  if (k.size()) {
    c.a.resize(p.rows(), p.cols());
    c.l.resize(p.rows(), p.cols());
    for (int s = 0; s < p.cols(); ++s) {
      c.a.col(s) = Vec::Ones(p.rows()) - 2.0 * k.cwiseProduct(p.col(s));
      c.l.col(s) = -2.0 * k.cwiseProduct(p_t.col(s));
    }
  }
  c.F = f;
  c.g = g;
  return c;
}

// Lagged-coefficient source for the single-sweep mode: slice s uses the
// state at step s-1 of the trajectory being built.
class LaggedSource final : public detail::CoefficientSource {
 public:
  LaggedSource(const Vec& k, const Mat& f) : k_(k), f_(f) {}

  void bind(const StateTrajectory& traj) override { traj_ = &traj; }

  void fill(int s, Vec& a, Vec& l, Vec& n, Vec& F) const override {
    (void)n;
    const int lag = std::max(s - 1, 0);
    if (k_.size()) {
      a = 1.0 - 2.0 * k_.array() * traj_->u.col(lag).array();
      l = -2.0 * k_.array() * traj_->u_t.col(lag).array();
    }
    if (f_.size()) F = f_.col(f_.cols() == 1 ? 0 : s);
  }

 private:
  const Vec& k_;
  const Mat& f_;
  const StateTrajectory* traj_ = nullptr;
};

void check_field_nondegeneracy(const Mat& a, const SpaceMesh& mesh,
                               const TimeGrid& grid,
                               const SolveOptions& opts) {
  if (a.size() == 0) return;
  for (int s = 0; s < a.cols(); ++s) {
    int imin = 0, imax = 0;
    const double amin = a.col(s).minCoeff(&imin);
    const double amax = a.col(s).maxCoeff(&imax);
    const double exc = std::max(std::abs(1.0 - amin), std::abs(1.0 - amax));
    if (amin < opts.a_lower)
      throw NonDegeneracyViolation(
          "fixed-point iterate violates the non-degeneracy lower bound", amin,
          mesh.nodes(imin, 0), grid.node(s), exc);
    if (amax > opts.a_upper)
      throw NonDegeneracyViolation(
          "fixed-point iterate violates the non-degeneracy upper bound", amax,
          mesh.nodes(imax, 0), grid.node(s), exc);
  }
}

}  // namespace

StateTrajectory solve_westervelt(const BoundarySignal& g, const Mat& f,
                                 const PhysicsParams& params,
                                 const SpaceMesh& mesh, const FemMatrices& fem,
                                 const TimeGrid& grid,
                                 const FixedPointOptions& fp,
                                 const SolveOptions& opts) {
  params.validate(mesh);
  if (f.size() && f.rows() != mesh.n_nodes())
    throw PreconditionError("solve_westervelt: source field row count");
  if (f.size() && f.cols() != 1 && f.cols() != grid.n_nodes())
    throw PreconditionError("solve_westervelt: source field column count");

  if (fp.mode == FixedPointOptions::Mode::PerStepFrozen) {
    LaggedSource src(params.k, f);
    StateTrajectory traj =
        detail::integrate(src, g, Vec(), params, mesh, fem, grid, opts);
    traj.fixed_point_iterations = 1;
    return traj;
  }

  Mat p_prev = Mat::Zero(mesh.n_nodes(), grid.n_nodes());
  Mat pt_prev = Mat::Zero(mesh.n_nodes(), grid.n_nodes());
  StateTrajectory traj;
  double rel_update = std::numeric_limits<double>::infinity();
  std::vector<double> updates;

  for (int m = 1; m <= fp.max_iter; ++m) {
    LinearizedCoefficients c = freeze(params.k, p_prev, pt_prev, f, g);
    check_field_nondegeneracy(c.a, mesh, grid, opts);
    traj = solve_linearized(c, params, mesh, fem, grid, opts);

    const double diff = linf_l2(traj.u - p_prev, fem.M);
    const double scale = linf_l2(traj.u, fem.M);
    rel_update = (scale > 0.0) ? diff / scale : diff;
    updates.push_back(rel_update);

    if (rel_update <= fp.tol) {
      traj.fixed_point_iterations = m;
      traj.fp_update_norms = updates;
      return traj;
    }
    p_prev = traj.u;
    pt_prev = traj.u_t;
  }
  throw FixedPointDivergence(
      "fixed-point iteration did not converge within the iteration budget",
      fp.max_iter, rel_update);
}

double fixed_point_residual(const StateTrajectory& p, const BoundarySignal& g,
                            const Mat& f, const PhysicsParams& params,
                            const SpaceMesh& mesh, const FemMatrices& fem,
                            const TimeGrid& grid, const SolveOptions& opts) {
  LinearizedCoefficients c = freeze(params.k, p.u, p.u_t, f, g);
  StateTrajectory next = solve_linearized(c, params, mesh, fem, grid, opts);
  const double scale = linf_l2(p.u, fem.M);
  const double diff = linf_l2(next.u - p.u, fem.M);
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace fracwave
