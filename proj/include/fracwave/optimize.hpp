#pragma once

#include <vector>

#include "fracwave/problem.hpp"

namespace fracwave {

struct OptimizerOptions {
  int max_iterations = 200;
  // Converged when || project(x - s0*grad) - x || / s0 <= stationarity_tol
  // with the unit probe step s0 = initial_step.
  double stationarity_tol = 1e-8;
  double armijo_c1 = 1e-4;
  double shrink = 0.5;
  double initial_step = 1.0;
  int max_backtracks = 30;

  void validate() const;
};

enum class OptStatus { Converged, MaxIterations, LineSearchStall };

const char* to_string(OptStatus status);

struct OptIterate {
  int iteration = 0;
  double objective = 0.0;
  double stationarity = 0.0;
  double step = 0.0;   // accepted step length (0 on the stalled iteration)
  int backtracks = 0;  // shrinks performed before acceptance
};

struct OptResult {
  ControlPair control;
  double objective = 0.0;
  double stationarity = 0.0;
  OptStatus status = OptStatus::MaxIterations;
  int iterations = 0;
  std::vector<OptIterate> history;
};

// Projected gradient descent with Armijo backtracking.  Each trial step is
// projected onto the admissible set before the sufficient-decrease test, so
// every iterate is feasible.
OptResult optimize(const ControlProblem& problem, const ControlPair& start,
                   const OptimizerOptions& options = {});

}  // namespace fracwave
