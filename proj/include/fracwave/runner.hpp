#pragma once

#include <string>
#include <vector>

#include "fracwave/config.hpp"
#include "fracwave/problem.hpp"

namespace fracwave {

struct RunOutcome {
  std::string out_dir;
  std::vector<std::string> artifacts;  // names relative to out_dir
  std::string summary;                 // contents of summary.txt
};

// Forward simulation: writes config.txt, trajectory.bin, energy.csv,
// nondegeneracy.txt, summary.txt (+ convergence.csv for the manufactured
// scenario) and a manifest covering all of them.
RunOutcome run_simulate(const RunConfig& config, const std::string& out_dir);

// Optimization (or one of the study drivers when config.study != none):
// writes config.txt, iterates.csv / study CSVs, final controls and state,
// summary.txt, and the manifest.
RunOutcome run_optimize(const RunConfig& config, const std::string& out_dir);

// Assembles the control problem a config describes, including the target
// (zero, attainable via a forward solve with the built-in drive, or loaded
// from an array file) and the region-of-interest mask.
ControlProblem build_problem(const RunConfig& config);

// The built-in drive used by the pulse scenario and attainable targets:
// a conditioned sinusoidal boundary pulse plus an optional smooth
// distributed source.
ControlPair builtin_drive(const RunConfig& config, const ControlProblem& problem);

}  // namespace fracwave
