#include "fracwave/optimize.hpp"

#include "fracwave/errors.hpp"

namespace fracwave {

void OptimizerOptions::validate() const {
  if (max_iterations < 1)
    throw PreconditionError("optimizer: max_iterations must be positive");
  if (!(stationarity_tol > 0.0))
    throw PreconditionError("optimizer: stationarity_tol must be positive");
  if (!(armijo_c1 > 0.0 && armijo_c1 < 1.0))
    throw PreconditionError("optimizer: armijo_c1 must lie in (0,1)");
  if (!(shrink > 0.0 && shrink < 1.0))
    throw PreconditionError("optimizer: shrink must lie in (0,1)");
  if (!(initial_step > 0.0))
    throw PreconditionError("optimizer: initial_step must be positive");
  if (max_backtracks < 0)
    throw PreconditionError("optimizer: max_backtracks must be nonnegative");
}

const char* to_string(OptStatus status) {
  switch (status) {
    case OptStatus::Converged:
      return "converged";
    case OptStatus::MaxIterations:
      return "max_iterations";
    case OptStatus::LineSearchStall:
      return "line_search_stall";
  }
  return "unknown";
}

OptResult optimize(const ControlProblem& problem, const ControlPair& start,
                   const OptimizerOptions& options) {
  options.validate();

  OptResult result;
  ControlPair x = problem.project(start);
  StateTrajectory state = problem.forward(x.g, x.f);
  double j = problem.objective_value(state, x.g, x.f);

  for (int it = 0; it < options.max_iterations; ++it) {
    const ControlPair grad = problem.gradient(x, state);

    // Stationarity of the projected gradient map at the probe step.
    const double s0 = options.initial_step;
    const ControlPair probe = problem.project(problem.axpy(x, s0, grad));
    const double stationarity =
        problem.control_norm(problem.axpy(probe, 1.0, x)) / s0;

    OptIterate rec;
    rec.iteration = it;
    rec.objective = j;
    rec.stationarity = stationarity;

    if (stationarity <= options.stationarity_tol) {
      result.history.push_back(rec);
      result.control = x;
      result.objective = j;
      result.stationarity = stationarity;
      result.status = OptStatus::Converged;
      result.iterations = it;
      return result;
    }

    // Armijo backtracking along the projected-gradient arc.
    double step = options.initial_step;
    bool accepted = false;
    for (int bt = 0; bt <= options.max_backtracks; ++bt) {
      const ControlPair cand = problem.project(problem.axpy(x, step, grad));
      const ControlPair move = problem.axpy(x, 1.0, cand);  // x - cand
      const double predicted = problem.control_ip(grad, move);
      const StateTrajectory cand_state = problem.forward(cand.g, cand.f);
      const double jc = problem.objective_value(cand_state, cand.g, cand.f);
      // Strict decrease is required on top of the sufficient-decrease bound:
      // at the numerical floor the bound can hold with equality, and
      // accepting such a step would loop without progress.
      if (jc <= j - options.armijo_c1 * predicted && jc < j) {
        x = cand;
        state = cand_state;
        j = jc;
        rec.step = step;
        rec.backtracks = bt;
        accepted = true;
        break;
      }
      step *= options.shrink;
    }

    result.history.push_back(rec);

    if (!accepted) {
      result.control = x;
      result.objective = j;
      result.stationarity = stationarity;
      result.status = OptStatus::LineSearchStall;
      result.iterations = it;
      return result;
    }
  }

  // Final stationarity snapshot for the exhausted budget.
  const ControlPair grad = problem.gradient(x, state);
  const ControlPair probe =
      problem.project(problem.axpy(x, options.initial_step, grad));
  result.control = x;
  result.objective = j;
  result.stationarity =
      problem.control_norm(problem.axpy(probe, 1.0, x)) / options.initial_step;
  result.status = OptStatus::MaxIterations;
  result.iterations = options.max_iterations;
  return result;
}

}  // namespace fracwave
