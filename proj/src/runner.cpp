#include "fracwave/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fracwave/array_io.hpp"
#include "fracwave/conditioning.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/format.hpp"
#include "fracwave/manifest.hpp"
#include "fracwave/manufactured.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/studies.hpp"

namespace fracwave {
namespace {

constexpr double kPi = std::numbers::pi;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("runner: cannot write " + path);
  out << text;
}

double max_2kp(const PhysicsParams& params, const Mat& u) {
  if (!params.has_k()) return 0.0;
  double worst = 0.0;
  for (Eigen::Index n = 0; n < u.cols(); ++n) {
    const double m =
        (2.0 * params.k.cwiseProduct(u.col(n))).cwiseAbs().maxCoeff();
    worst = std::max(worst, m);
  }
  return worst;
}

std::string nondegeneracy_report(const RunConfig& config,
                                 const PhysicsParams& params, const Mat& u) {
  const double excursion = max_2kp(params, u);
  std::ostringstream out;
  out << "a_lower = " << g17(config.a_lower) << '\n'
      << "a_upper = " << g17(config.a_upper) << '\n'
      << "max_2kp = " << g17(excursion) << '\n'
      << "min_coefficient = " << g17(1.0 - excursion) << '\n'
      << "status = ok\n";
  return out.str();
}

std::string energy_csv(const TimeGrid& grid, const Vec& energy) {
  std::ostringstream out;
  out << "t,energy\n";
  for (int n = 0; n < grid.n_nodes(); ++n)
    out << g17(grid.node(n)) << ',' << g17(energy[n]) << '\n';
  return out.str();
}

std::string iterates_csv(const OptResult& result) {
  std::ostringstream out;
  out << "iteration,objective,stationarity,step,backtracks\n";
  for (const auto& rec : result.history)
    out << rec.iteration << ',' << g17(rec.objective) << ','
        << g17(rec.stationarity) << ',' << g17(rec.step) << ','
        << rec.backtracks << '\n';
  return out.str();
}

Vec roi_mask(const RunConfig& config, const SpaceMesh& mesh) {
  if (config.roi == "all") return Vec();
  Vec mask = Vec::Zero(mesh.n_nodes());
  const double mid = 0.5 * (config.xmin + config.xmax);
  for (int i = 0; i < mesh.n_nodes(); ++i)
    if (mesh.nodes(i, 0) <= mid) mask[i] = 1.0;
  return mask;
}

}  // namespace

ControlPair builtin_drive(const RunConfig& config,
                          const ControlProblem& problem) {
  const TimeGrid& grid = problem.grid();
  const SpaceMesh& mesh = problem.mesh();
  const double T = grid.horizon();

  Mat raw(mesh.n_boundary(), grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n) {
    const double t = grid.node(n);
    const double v =
        config.g_amplitude * std::sin(2.0 * kPi * config.g_frequency * t / T);
    raw.col(n).setConstant(v);
  }
  const ConditioningParams conditioning = config.make_conditioning(grid.dt);
  const Mat bb = problem.boundary_mass();
  ControlPair drive;
  drive.g = condition_boundary_data(raw, conditioning, grid, &bb);

  drive.f = Mat::Zero(mesh.n_nodes(), grid.n_nodes());
  if (config.f_amplitude != 0.0) {
    const double width = config.xmax - config.xmin;
    for (int n = 0; n < grid.n_nodes(); ++n) {
      const double envelope =
          config.f_amplitude * std::sin(kPi * grid.node(n) / T);
      for (int i = 0; i < mesh.n_nodes(); ++i) {
        const double xi = (mesh.nodes(i, 0) - config.xmin) / width;
        drive.f(i, n) = envelope * std::sin(kPi * xi);
      }
    }
  }
  // Retract into the admissible set so the drive is always a feasible point.
  return problem.project(drive);
}

ControlProblem build_problem(const RunConfig& config) {
  const SpaceMesh mesh = config.make_mesh();
  const TimeGrid grid = config.make_grid();
  const PhysicsParams physics = config.make_physics(mesh);

  ObjectiveSpec objective;
  objective.nu = static_cast<int>(config.nu);
  objective.gamma = config.gamma;
  objective.eta = config.eta;
  objective.roi = roi_mask(config, mesh);
  objective.target = Mat::Zero(mesh.n_nodes(), grid.n_nodes());

  ControlProblem problem(mesh, physics, grid, objective,
                         config.make_admissible(), config.make_fixed_point(),
                         config.make_solve_options());

  if (config.target == "zero") return problem;

  if (config.target.rfind("file:", 0) == 0) {
    const std::string path = config.target.substr(5);
    const ArrayFile file = read_array(path);
    if (file.values.rows() != mesh.n_nodes() ||
        file.values.cols() != grid.n_nodes())
      throw ConfigError("config: target file '" + path +
                            "' does not match the mesh/time layout",
                        "target", 0);
    ObjectiveSpec with_target = problem.objective();
    with_target.target = file.values;
    return problem.with_objective(std::move(with_target));
  }

  // Attainable: the target is the state reached by the built-in drive.
  const ControlPair drive = builtin_drive(config, problem);
  const StateTrajectory state = problem.forward(drive.g, drive.f);
  ObjectiveSpec with_target = problem.objective();
  with_target.target = state.u;
  return problem.with_objective(std::move(with_target));
}

RunOutcome run_simulate(const RunConfig& config, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  RunOutcome outcome;
  outcome.out_dir = out_dir;

  write_text(out_dir + "/config.txt", serialize_config(config));
  outcome.artifacts.push_back("config.txt");

  const SpaceMesh mesh = config.make_mesh();
  const FemMatrices fem = assemble(mesh);
  const TimeGrid grid = config.make_grid();
  const PhysicsParams physics = config.make_physics(mesh);

  std::ostringstream summary;
  summary << "scenario = " << config.scenario << '\n'
          << "nodes = " << mesh.n_nodes() << '\n'
          << "elements = " << mesh.n_elements() << '\n'
          << "steps = " << grid.n_steps << '\n'
          << "dt = " << g17(grid.dt) << '\n'
          << "h = " << g17(mesh.h) << '\n';

  if (config.scenario == "manufactured") {
    if (config.k != 0.0)
      throw ConfigError(
          "config: key 'scenario' manufactured requires k = 0 (linear "
          "benchmark)",
          "scenario", 0);
    // Error-vs-resolution ladder, coarsened from the configured finest level.
    std::ostringstream csv;
    csv << "h,dt,final_linf,final_l2\n";
    ManufacturedRun finest;
    for (const int divisor : {8, 4, 2, 1}) {
      const int nx = std::max(4, config.nx / divisor);
      const int steps = std::max(4, config.steps / divisor);
      const SpaceMesh level_mesh =
          (config.dimension == 1)
              ? SpaceMesh::interval(config.xmin, config.xmax, nx)
              : SpaceMesh::rectangle(config.xmin, config.xmax, config.ymin,
                                     config.ymax, nx,
                                     std::max(2, config.ny / divisor));
      const FemMatrices level_fem = assemble(level_mesh);
      const TimeGrid level_grid(config.horizon / steps, steps);
      const PhysicsParams level_physics = config.make_physics(level_mesh);
      const ManufacturedRun run =
          run_manufactured(level_mesh, level_fem, level_grid, level_physics);
      csv << g17(run.h) << ',' << g17(run.dt) << ',' << g17(run.final_linf_error)
          << ',' << g17(run.final_l2_error) << '\n';
      finest = run;
    }
    write_text(out_dir + "/convergence.csv", csv.str());
    outcome.artifacts.push_back("convergence.csv");

    LinearizedCoefficients coeffs;
    coeffs.F = manufactured_forcing(mesh, grid, physics);
    const StateTrajectory state =
        solve_linearized(coeffs, physics, mesh, fem, grid,
                         config.make_solve_options());
    write_array(out_dir + "/trajectory.bin", state.u,
                {grid.dt, mesh.h, config.alpha});
    write_text(out_dir + "/energy.csv", energy_csv(grid, state.energy));
    write_text(out_dir + "/nondegeneracy.txt",
               nondegeneracy_report(config, physics, state.u));
    outcome.artifacts.push_back("trajectory.bin");
    outcome.artifacts.push_back("energy.csv");
    outcome.artifacts.push_back("nondegeneracy.txt");

    summary << "final_linf_error = " << g17(finest.final_linf_error) << '\n'
            << "final_l2_error = " << g17(finest.final_l2_error) << '\n';
  } else {
    BoundarySignal g = BoundarySignal::zero(mesh.n_boundary(), grid);
    Mat f = Mat::Zero(mesh.n_nodes(), grid.n_nodes());
    if (config.scenario == "pulse") {
      // Reuse the problem machinery for the conditioned drive.
      RunConfig zero_target = config;
      zero_target.target = "zero";
      const ControlProblem problem = build_problem(zero_target);
      const ControlPair drive = builtin_drive(config, problem);
      g = drive.g;
      f = drive.f;
    }
    const StateTrajectory state =
        solve_westervelt(g, f, physics, mesh, fem, grid,
                         config.make_fixed_point(), config.make_solve_options());

    write_array(out_dir + "/trajectory.bin", state.u,
                {grid.dt, mesh.h, config.alpha});
    write_text(out_dir + "/energy.csv", energy_csv(grid, state.energy));
    write_text(out_dir + "/nondegeneracy.txt",
               nondegeneracy_report(config, physics, state.u));
    outcome.artifacts.push_back("trajectory.bin");
    outcome.artifacts.push_back("energy.csv");
    outcome.artifacts.push_back("nondegeneracy.txt");

    summary << "picard_iterations = " << state.fixed_point_iterations << '\n'
            << "final_sup = " << g17(state.u.col(grid.n_steps).cwiseAbs().maxCoeff())
            << '\n'
            << "energy_initial = " << g17(state.energy[0]) << '\n'
            << "energy_final = " << g17(state.energy[grid.n_steps]) << '\n'
            << "energy_max = " << g17(state.energy.maxCoeff()) << '\n';
  }

  outcome.summary = summary.str();
  write_text(out_dir + "/summary.txt", outcome.summary);
  outcome.artifacts.push_back("summary.txt");

  write_manifest(out_dir, outcome.artifacts);
  outcome.artifacts.push_back("manifest.txt");
  return outcome;
}

RunOutcome run_optimize(const RunConfig& config, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  RunOutcome outcome;
  outcome.out_dir = out_dir;

  write_text(out_dir + "/config.txt", serialize_config(config));
  outcome.artifacts.push_back("config.txt");

  const ControlProblem problem = build_problem(config);
  const ControlPair init = problem.zero_controls();
  const OptimizerOptions opts = config.make_optimizer();

  std::ostringstream summary;
  summary << "study = " << config.study << '\n';

  if (config.study == "perturbation") {
    PerturbationStudySpec spec;
    spec.deltas = {0.1, 0.05, 0.025, 0.0125};
    spec.seed = config.seed;
    spec.optimizer = opts;
    const PerturbationReport report =
        run_target_perturbation_study(problem, init, spec);
    write_text(out_dir + "/perturbation.csv", to_csv(report));
    outcome.artifacts.push_back("perturbation.csv");
    summary << "baseline_objective = " << g17(report.baseline_objective) << '\n'
            << "distances_nonincreasing = "
            << (report.distances_nonincreasing() ? "yes" : "no") << '\n';
  } else if (config.study == "vanishing-reg") {
    VanishingRegStudySpec spec;
    spec.optimizer = opts;
    const VanishingRegReport report =
        run_vanishing_regularization_study(problem, init, spec);
    write_text(out_dir + "/vanishing_reg.csv", to_csv(report));
    outcome.artifacts.push_back("vanishing_reg.csv");
    summary << "tracking_monotone = "
            << (report.tracking_monotone() ? "yes" : "no") << '\n';
  } else {
    const OptResult result = optimize(problem, init, opts);
    write_text(out_dir + "/iterates.csv", iterates_csv(result));
    outcome.artifacts.push_back("iterates.csv");

    write_array(out_dir + "/controls_g.bin", result.control.g.values,
                {problem.grid().dt, problem.mesh().h, config.alpha});
    write_array(out_dir + "/controls_f.bin", result.control.f,
                {problem.grid().dt, problem.mesh().h, config.alpha});
    outcome.artifacts.push_back("controls_g.bin");
    outcome.artifacts.push_back("controls_f.bin");

    const StateTrajectory state =
        problem.forward(result.control.g, result.control.f);
    write_array(out_dir + "/trajectory.bin", state.u,
                {problem.grid().dt, problem.mesh().h, config.alpha});
    outcome.artifacts.push_back("trajectory.bin");

    const double tracking_initial =
        norm_spacetime(problem.objective().target, problem.fem().M,
                       problem.grid());
    const double tracking_final =
        norm_spacetime(state.u - problem.objective().target, problem.fem().M,
                       problem.grid());
    summary << "status = " << to_string(result.status) << '\n'
            << "iterations = " << result.iterations << '\n'
            << "objective = " << g17(result.objective) << '\n'
            << "stationarity = " << g17(result.stationarity) << '\n'
            << "tracking_initial = " << g17(tracking_initial) << '\n'
            << "tracking_final = " << g17(tracking_final) << '\n';
  }

  outcome.summary = summary.str();
  write_text(out_dir + "/summary.txt", outcome.summary);
  outcome.artifacts.push_back("summary.txt");

  write_manifest(out_dir, outcome.artifacts);
  outcome.artifacts.push_back("manifest.txt");
  return outcome;
}

}  // namespace fracwave
