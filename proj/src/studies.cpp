#include "fracwave/studies.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "fracwave/format.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/rng.hpp"

namespace fracwave {
namespace {

// Runs job(i) for i in [0, n) on up to `workers` threads.  Row slots are
// indexed, so results land in ladder order no matter the schedule.
void parallel_for(int n, int workers, const std::function<void(int)>& job) {
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

int study_parallelism() {
  const char* env = std::getenv("FRACWAVE_THREADS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || value < 1) return 1;
  return static_cast<int>(std::min<long>(value, 64));
}

bool PerturbationReport::distances_nonincreasing(double slack) const {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].control_distance > rows[i - 1].control_distance * (1.0 + slack))
      return false;
  }
  return true;
}

PerturbationReport run_target_perturbation_study(
    const ControlProblem& problem, const ControlPair& init,
    const PerturbationStudySpec& spec) {
  PerturbationReport report;

  const OptResult base = optimize(problem, init, spec.optimizer);
  report.baseline_objective = base.objective;
  report.baseline_iterations = base.iterations;

  // One noise field, drawn once and scaled by each delta, so the ladder
  // varies only in magnitude.
  Rng rng(spec.seed);
  Mat noise = rng.matrix(problem.objective().target.rows(),
                         problem.objective().target.cols());
  const double amp = noise.cwiseAbs().maxCoeff();
  if (amp > 0.0) noise /= amp;

  const int n = static_cast<int>(spec.deltas.size());
  report.rows.resize(static_cast<std::size_t>(n));
  parallel_for(n, study_parallelism(), [&](int i) {
    const double delta = spec.deltas[static_cast<std::size_t>(i)];
    ObjectiveSpec perturbed = problem.objective();
    perturbed.target = problem.objective().target + delta * noise;
    const ControlProblem sub = problem.with_objective(std::move(perturbed));
    const OptResult res = optimize(sub, base.control, spec.optimizer);

    PerturbationRow row;
    row.delta = delta;
    row.control_distance =
        problem.control_norm(problem.axpy(res.control, 1.0, base.control));
    row.objective = res.objective;
    row.stationarity = res.stationarity;
    row.iterations = res.iterations;
    row.status = res.status;
    report.rows[static_cast<std::size_t>(i)] = row;
  });

  return report;
}

bool VanishingRegReport::tracking_monotone(double slack) const {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].tracking_error > rows[i - 1].tracking_error * (1.0 + slack))
      return false;
  }
  return true;
}

VanishingRegReport run_vanishing_regularization_study(
    const ControlProblem& problem, const ControlPair& init,
    const VanishingRegStudySpec& spec) {
  VanishingRegReport report;
  report.rows.reserve(spec.gammas.size());

  // Continuation down the ladder: each level starts where the previous one
  // stopped, which keeps the weakly regularized problems well behaved.
  ControlPair warm = problem.project(init);
  for (const double gamma : spec.gammas) {
    ObjectiveSpec weights = problem.objective();
    weights.gamma = gamma;
    weights.eta = gamma;
    const ControlProblem sub = problem.with_objective(std::move(weights));
    const OptResult res = optimize(sub, warm, spec.optimizer);
    warm = res.control;

    const StateTrajectory state = sub.forward(res.control.g, res.control.f);
    const Mat err = state.u - problem.objective().target;

    VanishingRegRow row;
    row.gamma = gamma;
    row.tracking_error = norm_spacetime(err, sub.fem().M, sub.grid());
    row.objective = res.objective;
    row.stationarity = res.stationarity;
    row.iterations = res.iterations;
    row.status = res.status;
    report.rows.push_back(row);
  }

  return report;
}

std::string to_csv(const PerturbationReport& report) {
  std::ostringstream out;
  out << "delta,control_distance,objective,stationarity,iterations,status\n";
  for (const auto& row : report.rows) {
    out << g17(row.delta) << ',' << g17(row.control_distance) << ','
        << g17(row.objective) << ',' << g17(row.stationarity) << ','
        << row.iterations << ',' << to_string(row.status) << '\n';
  }
  return out.str();
}

std::string to_csv(const VanishingRegReport& report) {
  std::ostringstream out;
  out << "gamma,tracking_error,objective,stationarity,iterations,status\n";
  for (const auto& row : report.rows) {
    out << g17(row.gamma) << ',' << g17(row.tracking_error) << ','
        << g17(row.objective) << ',' << g17(row.stationarity) << ','
        << row.iterations << ',' << to_string(row.status) << '\n';
  }
  return out.str();
}

}  // namespace fracwave
