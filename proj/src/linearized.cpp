#include "fracwave/linearized.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <string>

#include "fracwave/frac_ops.hpp"
#include "fracwave/special.hpp"

namespace fracwave {

namespace {

// Newmark average-acceleration parameters.
constexpr double kBeta = 0.25;
constexpr double kGamma = 0.5;

// Symmetric factorization with an LU fallback for the rare case where the
// damping contribution spoils positive definiteness.
class StepSolver {
 public:
  void compute(const SpMat& a) {
    ldlt_.compute(a);
    use_lu_ = (ldlt_.info() != Eigen::Success);
    if (use_lu_) {
      lu_.compute(a);
      if (lu_.info() != Eigen::Success)
        throw NumericalBlowup("time step system factorization failed", -1,
                              0.0);
    }
  }
  Vec solve(const Vec& rhs) const {
    return use_lu_ ? Vec(lu_.solve(rhs)) : Vec(ldlt_.solve(rhs));
  }

 private:
  Eigen::SimplicialLDLT<SpMat> ldlt_;
  Eigen::SparseLU<SpMat> lu_;
  bool use_lu_ = false;
};

void check_leading_coefficient(const Vec& a, const SpaceMesh& mesh, double t,
                               const SolveOptions& opts) {
  if (a.size() == 0) return;
  int imin = 0, imax = 0;
  const double amin = a.minCoeff(&imin);
  const double amax = a.maxCoeff(&imax);
  const double excursion = std::max(std::abs(1.0 - amin), std::abs(1.0 - amax));
  if (amin < opts.a_lower)
    throw NonDegeneracyViolation(
        "leading coefficient fell below the non-degeneracy bound", amin,
        mesh.nodes(imin, 0), t, excursion);
  if (amax > opts.a_upper)
    throw NonDegeneracyViolation(
        "leading coefficient exceeded the non-degeneracy bound", amax,
        mesh.nodes(imax, 0), t, excursion);
}

// Wraps dense coefficient fields; single-column fields broadcast in time.
class DenseSource final : public detail::CoefficientSource {
 public:
  DenseSource(const LinearizedCoefficients& c, int n_nodes, int n_time)
      : c_(c) {
    auto check = [&](const Mat& f, const char* name) {
      if (f.size() == 0) return;
      if (f.rows() != n_nodes)
        throw PreconditionError(std::string("solve_linearized: field ") +
                                name + " has wrong row count");
      if (f.cols() != 1 && f.cols() != n_time)
        throw PreconditionError(std::string("solve_linearized: field ") +
                                name + " has wrong column count");
    };
    check(c.a, "a");
    check(c.l, "l");
    check(c.n, "n");
    check(c.F, "F");
  }

  void fill(int s, Vec& a, Vec& l, Vec& n, Vec& F) const override {
    auto take = [s](const Mat& f, Vec& out) {
      if (f.size() == 0) return;
      out = f.col(f.cols() == 1 ? 0 : s);
    };
    take(c_.a, a);
    take(c_.l, l);
    take(c_.n, n);
    take(c_.F, F);
  }

  bool time_constant() const override {
    return c_.a.cols() <= 1 && c_.l.cols() <= 1 && c_.n.cols() <= 1;
  }

 private:
  const LinearizedCoefficients& c_;
};

}  // namespace

namespace detail {

StateTrajectory integrate(CoefficientSource& src, const BoundarySignal& g,
                          const Vec& u1, const PhysicsParams& params,
                          const SpaceMesh& mesh, const FemMatrices& fem,
                          const TimeGrid& grid, const SolveOptions& opts) {
  const int nn = mesh.n_nodes();
  const int N = grid.n_steps;
  const double dt = grid.dt;
  const double alpha = params.alpha.value;
  const double c2 = params.c * params.c;
  const double b = params.b;
  const double beta_a = std::pow(dt, -alpha) / gamma_fn(2.0 - alpha);

  if (std::abs(grid.horizon() - params.T) > 1e-9 * std::max(1.0, params.T))
    throw PreconditionError(
        "integrate: time grid does not span the configured horizon");
  if (u1.size() != 0 && u1.size() != nn)
    throw PreconditionError("integrate: u1 size != node count");

  // Boundary forcing c^2 g + b D^alpha g, precomputed for all steps.
  Mat gforce;
  if (!g.empty()) {
    if (g.n_rows() != fem.n_boundary())
      throw PreconditionError("integrate: boundary signal row count");
    if (g.values.cols() != grid.n_nodes())
      throw PreconditionError("integrate: boundary signal length");
    g.require_compatible();
    gforce = c2 * g.values;
    if (b != 0.0)
      for (int r = 0; r < g.n_rows(); ++r) {
        Vec row = g.values.row(r);
        gforce.row(r) += b * caputo_core(row, alpha, dt).transpose();
      }
  }

  const Vec w = l1_weights(alpha, std::max(N, 1));

  StateTrajectory traj;
  traj.u = Mat::Zero(nn, N + 1);
  traj.u_t = Mat::Zero(nn, N + 1);
  traj.frac = Mat::Zero(nn, N + 1);
  traj.energy = Vec::Zero(N + 1);
  if (u1.size() != 0) traj.u_t.col(0) = u1;
  src.bind(traj);

  Mat dU = Mat::Zero(nn, N);  // step increments, the L1 memory

  Vec a_s, l_s, n_s, F_s;
  auto boundary_term = [&](int s) -> Vec {
    if (g.empty()) return Vec();
    Vec bd = fem.B * scatter_boundary(gforce.col(s), fem);
    return bd;
  };

  // Weighted matrices at the initial slice; defaults fall back to M.
  src.fill(0, a_s, l_s, n_s, F_s);
  check_leading_coefficient(a_s, mesh, 0.0, opts);
  SpMat Ma = a_s.size() ? assemble_weighted(mesh, a_s) : fem.M;
  {
    Vec rhs = Vec::Zero(nn);
    if (F_s.size()) rhs += fem.M * F_s;
    Vec bd = boundary_term(0);
    if (bd.size()) rhs += bd;
    if (l_s.size() && u1.size())
      rhs -= assemble_weighted(mesh, l_s) * traj.u_t.col(0);
    StepSolver s0;
    s0.compute(Ma);
    // Consistent initial acceleration to start the Newmark recursion.
    Vec acc = s0.solve(rhs);
    traj.energy[0] = 0.5 * traj.u_t.col(0).dot(Ma * traj.u_t.col(0));
    StepSolver stepper;
    bool factored = false;
    const bool constant = src.time_constant();
    for (int n = 0; n < N; ++n) {
      const double t_next = grid.node(n + 1);
      a_s.resize(0);
      l_s.resize(0);
      n_s.resize(0);
      F_s.resize(0);
      src.fill(n + 1, a_s, l_s, n_s, F_s);
      check_leading_coefficient(a_s, mesh, t_next, opts);

      const SpMat* Ma_next = &fem.M;
      SpMat Ma_store;
      if (a_s.size()) {
        Ma_store = assemble_weighted(mesh, a_s);
        Ma_next = &Ma_store;
      }
      SpMat Ml, Mn;
      const bool has_l = l_s.size() > 0;
      const bool has_n = n_s.size() > 0;
      if (has_l) Ml = assemble_weighted(mesh, l_s);
      if (has_n) Mn = assemble_weighted(mesh, n_s);

      if (!factored || !constant) {
        SpMat A = *Ma_next;
        A += (kBeta * dt * dt) * ((c2 + b * beta_a) * fem.K).eval();
        if (has_l) A += (kGamma * dt) * Ml;
        if (has_n) A += (kBeta * dt * dt) * Mn;
        stepper.compute(A);
        factored = true;
      }

      const Vec u_n = traj.u.col(n);
      const Vec v_n = traj.u_t.col(n);
      Vec utilde = u_n + dt * v_n + (0.5 - kBeta) * dt * dt * acc;
      Vec vtilde = v_n + (1.0 - kGamma) * dt * acc;

      // Explicit L1 history sum_{j<n} w_{n-j} (u^{j+1} - u^j).
      Vec hist = Vec::Zero(nn);
      if (n > 0) {
        Vec wrev(n);
        for (int j = 0; j < n; ++j) wrev[j] = w[n - j];
        hist = beta_a * (dU.leftCols(n) * wrev);
      }

      Vec rhs = Vec::Zero(nn);
      if (F_s.size()) rhs += fem.M * F_s;
      Vec bd = boundary_term(n + 1);
      if (bd.size()) rhs += bd;
      rhs -= c2 * (fem.K * utilde);
      rhs -= b * (fem.K * (beta_a * (utilde - u_n) + hist));
      if (has_l) rhs -= Ml * vtilde;
      if (has_n) rhs -= Mn * utilde;

      acc = stepper.solve(rhs);
      traj.u.col(n + 1) = utilde + kBeta * dt * dt * acc;
      traj.u_t.col(n + 1) = vtilde + kGamma * dt * acc;
      dU.col(n) = traj.u.col(n + 1) - u_n;
      traj.frac.col(n + 1) = beta_a * dU.col(n) + hist;

      if (!traj.u.col(n + 1).allFinite() || !traj.u_t.col(n + 1).allFinite())
        throw NumericalBlowup("non-finite state during time stepping", n + 1,
                              t_next);

      traj.energy[n + 1] =
          0.5 * traj.u_t.col(n + 1).dot(*Ma_next * traj.u_t.col(n + 1)) +
          0.5 * c2 * traj.u.col(n + 1).dot(fem.K * traj.u.col(n + 1));
    }
  }
  return traj;
}

}  // namespace detail

StateTrajectory solve_linearized(const LinearizedCoefficients& coeffs,
                                 const PhysicsParams& params,
                                 const SpaceMesh& mesh, const FemMatrices& fem,
                                 const TimeGrid& grid,
                                 const SolveOptions& opts) {
  params.validate(mesh);
  DenseSource src(coeffs, mesh.n_nodes(), grid.n_nodes());
  return detail::integrate(src, coeffs.g, coeffs.u1, params, mesh, fem, grid,
                           opts);
}

}  // namespace fracwave
