#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracwave/optimize.hpp"

namespace fracwave {

// Parallelism cap for study drivers: FRACWAVE_THREADS if set (clamped to at
// least 1), otherwise 1.  Individual optimizations stay sequential; only
// independent ladder runs fan out.
int study_parallelism();

struct PerturbationStudySpec {
  std::vector<double> deltas;  // descending ladder of perturbation sizes
  std::uint64_t seed = 0;
  OptimizerOptions optimizer;
};

struct PerturbationRow {
  double delta = 0.0;
  double control_distance = 0.0;  // || x(delta) - x(0) || in the control norm
  double objective = 0.0;
  double stationarity = 0.0;
  int iterations = 0;
  OptStatus status = OptStatus::MaxIterations;
};

struct PerturbationReport {
  std::vector<PerturbationRow> rows;  // same order as spec.deltas
  double baseline_objective = 0.0;
  int baseline_iterations = 0;
  // Distances nonincreasing as delta shrinks, allowing a relative slack.
  bool distances_nonincreasing(double slack = 0.05) const;
};

// Optimizes the base problem, then re-optimizes against target + delta*noise
// for each ladder entry (noise fixed by the seed, unit sup norm, scaled only
// by delta) and records the control-space distance to the baseline optimum.
// Perturbed runs warm-start at the baseline optimum and fan out across
// study_parallelism() workers.
PerturbationReport run_target_perturbation_study(const ControlProblem& problem,
                                                 const ControlPair& init,
                                                 const PerturbationStudySpec& spec);

struct VanishingRegStudySpec {
  std::vector<double> gammas = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  OptimizerOptions optimizer;
};

struct VanishingRegRow {
  double gamma = 0.0;
  double tracking_error = 0.0;  // || S(g,f) - target || in L2(L2)
  double objective = 0.0;
  double stationarity = 0.0;
  int iterations = 0;
  OptStatus status = OptStatus::MaxIterations;
};

struct VanishingRegReport {
  std::vector<VanishingRegRow> rows;  // same order as spec.gammas
  // Tracking errors nonincreasing down the ladder, with relative slack.
  bool tracking_monotone(double slack = 0.05) const;
};

// Solves the tracking problem down a descending regularization ladder with
// eta tied to gamma, warm-starting each level at the previous optimum
// (continuation), and records the tracking error per level.  The problem's
// target should be attainable (generated by a forward solve) for the
// monotone-decrease property to be meaningful.
VanishingRegReport run_vanishing_regularization_study(
    const ControlProblem& problem, const ControlPair& init,
    const VanishingRegStudySpec& spec);

// CSV renderings (header row + one line per ladder entry).
std::string to_csv(const PerturbationReport& report);
std::string to_csv(const VanishingRegReport& report);

}  // namespace fracwave
