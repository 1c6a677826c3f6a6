#pragma once

#include <string>
#include <vector>

namespace fracwave::verify {

// One verification criterion: a self-contained property check with pinned
// tolerances that builds its own fixtures and reports measured margins.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured orders / margins / statuses
};

// Runs one criterion (ids 1..12).  Throws PreconditionError for unknown ids;
// internal solver errors are caught and reported as failures.
CriterionResult run_criterion(int id);

std::vector<int> all_criteria();

// Named groups for the verification CLI.
struct Suite {
  std::string name;
  std::vector<int> criteria;
};

const std::vector<Suite>& suites();

// Criteria of one suite, or every criterion for the empty name / "all".
// Throws PreconditionError for unknown suite names.
std::vector<CriterionResult> run_suite(const std::string& name);

}  // namespace fracwave::verify
