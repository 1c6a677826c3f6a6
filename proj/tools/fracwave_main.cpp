#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "fracwave/config.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/runner.hpp"
#include "fracwave/verify/criteria.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  std::string study;
};

fracwave::RunConfig load(const CommonArgs& args) {
  fracwave::RunConfig config =
      args.config_path.empty() ? fracwave::RunConfig{}
                               : fracwave::parse_config_file(args.config_path);
  if (!args.out_dir.empty()) config.out = args.out_dir;
  if (args.seed >= 0) config.seed = static_cast<std::uint64_t>(args.seed);
  if (!args.study.empty()) config.study = args.study;
  return config;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config_path,
                  "Configuration file (key = value sections)")
      ->check(CLI::ExistingFile);
  cmd->add_option("-o,--out", args.out_dir,
                  "Output directory (overrides the config)");
  cmd->add_option("--seed", args.seed, "RNG seed (overrides the config)");
}

int run_verify(const std::string& suite) {
  const auto results = fracwave::verify::run_suite(suite);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("[%s] %2d %-28s %s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  std::printf("%s: %zu criteria, %s\n",
              suite.empty() ? "all" : suite.c_str(), results.size(),
              all_pass ? "all passed" : "FAILURES present");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional-attenuation wave simulation and boundary control"};
  app.require_subcommand(1);

  CommonArgs sim_args, opt_args;
  std::string suite = "all";

  CLI::App* simulate =
      app.add_subcommand("simulate", "Run the forward solver and write the "
                                     "trajectory, energy, and summary bundle");
  add_common(simulate, sim_args);

  CLI::App* optimize =
      app.add_subcommand("optimize", "Run the control optimizer (or a study) "
                                     "and write the result bundle");
  add_common(optimize, opt_args);
  optimize->add_option("--study", opt_args.study,
                       "Study to run instead of a single optimization "
                       "(none, perturbation, vanishing-reg)");

  CLI::App* verify = app.add_subcommand(
      "verify", "Run the built-in verification criteria and report pass/fail");
  verify->add_option("--suite", suite,
                     "Criteria group: all, frac-ops, extension, forward, "
                     "fixed-point, gradient, optimization, conditioning, "
                     "reproducibility");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const fracwave::RunConfig config = load(sim_args);
      const fracwave::RunOutcome outcome =
          fracwave::run_simulate(config, config.out);
      std::printf("%s", outcome.summary.c_str());
      std::printf("wrote %zu artifacts to %s\n", outcome.artifacts.size(),
                  outcome.out_dir.c_str());
      return 0;
    }
    if (optimize->parsed()) {
      const fracwave::RunConfig config = load(opt_args);
      const fracwave::RunOutcome outcome =
          fracwave::run_optimize(config, config.out);
      std::printf("%s", outcome.summary.c_str());
      std::printf("wrote %zu artifacts to %s\n", outcome.artifacts.size(),
                  outcome.out_dir.c_str());
      return 0;
    }
    return run_verify(suite);
  } catch (const fracwave::ConfigError& ex) {
    std::fprintf(stderr, "config error: %s\n", ex.what());
    return 2;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}
