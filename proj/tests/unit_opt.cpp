#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fracwave/optimize.hpp"
#include "fracwave/problem.hpp"
#include "fracwave/studies.hpp"

using namespace fracwave;

namespace {

constexpr double kPi = std::numbers::pi;

ControlProblem small_problem(int nu, double gamma, double eta,
                             double g_radius = 10.0, double f_radius = 10.0) {
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, 24);
  const TimeGrid grid(1.0 / 48, 48);
  PhysicsParams params;
  params.c = 1.0;
  params.b = 0.05;
  params.alpha = FracOrder{0.5};
  params.T = grid.horizon();

  ObjectiveSpec objective;
  objective.nu = nu;
  objective.gamma = gamma;
  objective.eta = eta;
  objective.target = Mat::Zero(mesh.n_nodes(), grid.n_nodes());

  AdmissibleSpec admissible;
  admissible.g_radius = g_radius;
  admissible.f_radius = f_radius;

  return ControlProblem(mesh, params, grid, objective, admissible);
}

ControlPair sample_controls(const ControlProblem& problem, double g_amp,
                            double f_amp) {
  const TimeGrid& grid = problem.grid();
  const SpaceMesh& mesh = problem.mesh();
  Mat g_raw(problem.fem().n_boundary(), grid.n_nodes());
  Mat f(mesh.n_nodes(), grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n) {
    const double t = grid.node(n);
    g_raw.col(n).setConstant(g_amp * std::sin(2.0 * kPi * t));
    for (int i = 0; i < mesh.n_nodes(); ++i)
      f(i, n) = f_amp * std::sin(kPi * mesh.nodes(i, 0)) * std::sin(kPi * t);
  }
  ControlPair x;
  x.g = problem.compatible_signal(g_raw);
  x.f = f;
  return x;
}

}  // namespace

TEST_CASE("self-tracking gradient reduces to the penalty terms") {
  ControlProblem base = small_problem(1, 2e-3, 3e-3);
  const ControlPair x = sample_controls(base, 0.4, 0.2);
  const StateTrajectory state = base.forward(x.g, x.f);

  // Make the state itself the target: the mismatch vanishes, the dual state
  // is zero, and only the quadratic penalties remain in the gradient.
  ObjectiveSpec objective = base.objective();
  objective.target = state.u;
  const ControlProblem problem = base.with_objective(objective);

  const StateTrajectory state2 = problem.forward(x.g, x.f);
  const ControlPair grad = problem.gradient(x, state2);

  const Mat expected_g = problem.compatible_signal(x.g.values).values * 2e-3;
  CHECK((grad.g.values - expected_g).cwiseAbs().maxCoeff() <
        1e-10 * std::max(1.0, expected_g.cwiseAbs().maxCoeff()));
  const Mat expected_f = 3e-3 * x.f;
  CHECK((grad.f - expected_f).cwiseAbs().maxCoeff() <
        1e-10 * std::max(1.0, expected_f.cwiseAbs().maxCoeff()));
}

TEST_CASE("projection lands inside the balls and is idempotent") {
  ControlProblem problem = small_problem(1, 1e-3, 1e-3, 0.05, 0.03);
  const ControlPair big = sample_controls(problem, 5.0, 4.0);
  const ControlPair p1 = problem.project(big);

  const double gn = surrogate_xg_norm(p1.g, problem.params().alpha,
                                      problem.grid(), problem.boundary_mass(),
                                      problem.admissible());
  const double fn = xf_norm(p1.f, problem.fem().M, problem.grid());
  CHECK(gn <= 0.05 * (1.0 + 1e-12));
  CHECK(fn <= 0.03 * (1.0 + 1e-12));

  const ControlPair p2 = problem.project(p1);
  CHECK((p2.g.values - p1.g.values).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((p2.f - p1.f).cwiseAbs().maxCoeff() < 1e-12);

  // Compatibility survives the retraction.
  p1.g.require_compatible();
}

TEST_CASE("zero target and zero start converge immediately") {
  ControlProblem problem = small_problem(1, 1e-3, 1e-3);
  OptimizerOptions opts;
  const OptResult result = optimize(problem, problem.zero_controls(), opts);
  CHECK(result.status == OptStatus::Converged);
  CHECK(result.iterations == 0);
  CHECK(result.objective == 0.0);
  CHECK(result.stationarity <= opts.stationarity_tol);
}

TEST_CASE("overwhelming penalties drive the controls to the origin") {
  ControlProblem base = small_problem(1, 1e6, 1e6);
  // A small nonzero target keeps the tracking term from being trivial.
  ObjectiveSpec objective = base.objective();
  objective.target.setConstant(1e-2);
  const ControlProblem problem = base.with_objective(objective);

  OptimizerOptions opts;
  opts.max_iterations = 150;
  opts.stationarity_tol = 1e-10;
  const OptResult result =
      optimize(problem, sample_controls(problem, 0.2, 0.1), opts);
  CHECK(problem.control_norm(result.control) < 1e-4);
}

TEST_CASE("objective history is strictly decreasing across iterates") {
  ControlProblem base = small_problem(1, 1e-5, 1e-5);
  const ControlPair truth = sample_controls(base, 0.3, 0.15);
  const StateTrajectory truth_state = base.forward(truth.g, truth.f);
  ObjectiveSpec objective = base.objective();
  objective.target = truth_state.u;
  const ControlProblem problem = base.with_objective(objective);

  OptimizerOptions opts;
  opts.max_iterations = 25;
  opts.initial_step = 4.0;
  const OptResult result = optimize(problem, problem.zero_controls(), opts);
  REQUIRE(result.history.size() > 2);
  for (std::size_t i = 1; i < result.history.size(); ++i)
    CHECK(result.history[i].objective < result.history[i - 1].objective);
  CHECK(result.objective < result.history.front().objective);
}

TEST_CASE("perturbation study reports one row per ladder entry") {
  ControlProblem base = small_problem(1, 1e-4, 1e-4);
  const ControlPair truth = sample_controls(base, 0.25, 0.1);
  ObjectiveSpec objective = base.objective();
  objective.target = base.forward(truth.g, truth.f).u;
  const ControlProblem problem = base.with_objective(objective);

  PerturbationStudySpec spec;
  spec.deltas = {0.1, 0.05};
  spec.seed = 42;
  spec.optimizer.max_iterations = 8;
  spec.optimizer.initial_step = 4.0;

  const PerturbationReport report =
      run_target_perturbation_study(problem, problem.zero_controls(), spec);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].delta == 0.1);
  CHECK(report.rows[1].delta == 0.05);
  for (const auto& row : report.rows) {
    CHECK(std::isfinite(row.control_distance));
    CHECK(std::isfinite(row.objective));
  }
  const std::string csv = to_csv(report);
  CHECK(csv.find("delta,control_distance,objective") != std::string::npos);

  // Same spec, same seed: the report is reproducible.
  const PerturbationReport again =
      run_target_perturbation_study(problem, problem.zero_controls(), spec);
  CHECK(to_csv(again) == csv);
}

TEST_CASE("regularization ladder study records every level") {
  ControlProblem base = small_problem(1, 1e-1, 1e-1);
  const ControlPair truth = sample_controls(base, 0.25, 0.1);
  ObjectiveSpec objective = base.objective();
  objective.target = base.forward(truth.g, truth.f).u;
  const ControlProblem problem = base.with_objective(objective);

  VanishingRegStudySpec spec;
  spec.gammas = {1e-2, 1e-3, 1e-4};
  spec.optimizer.max_iterations = 10;
  spec.optimizer.initial_step = 4.0;

  const VanishingRegReport report = run_vanishing_regularization_study(
      problem, problem.zero_controls(), spec);
  REQUIRE(report.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(report.rows[i].gamma == spec.gammas[i]);
    CHECK(std::isfinite(report.rows[i].tracking_error));
  }
  const std::string csv = to_csv(report);
  CHECK(csv.find("gamma,tracking_error,objective") != std::string::npos);
}
