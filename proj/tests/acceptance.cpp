// Acceptance harness: runs the numbered verification criteria and prints one
// pass/fail line each.  With no arguments every criterion runs; otherwise
// each argument selects one by number (the ctest registration runs them one
// per test so failures localize).
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "fracwave/verify/criteria.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  } else {
    ids = fracwave::verify::all_criteria();
  }

  bool all_pass = true;
  for (const int id : ids) {
    const fracwave::verify::CriterionResult r =
        fracwave::verify::run_criterion(id);
    std::printf("[%s] criterion %2d %-26s %s\n", r.pass ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && r.pass;
  }
  return all_pass ? EXIT_SUCCESS : EXIT_FAILURE;
}
