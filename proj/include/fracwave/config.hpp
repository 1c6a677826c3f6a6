#pragma once

#include <cstdint>
#include <string>

#include "fracwave/admissible.hpp"
#include "fracwave/conditioning.hpp"
#include "fracwave/mesh.hpp"
#include "fracwave/optimize.hpp"
#include "fracwave/physics.hpp"
#include "fracwave/time_grid.hpp"
#include "fracwave/westervelt.hpp"

namespace fracwave {

// Full run description, parsed from a strict sectioned key=value file.
// Unknown sections, unknown keys, duplicate keys, and malformed values are
// fatal with line diagnostics; missing keys take the defaults below, and
// serialize_config() always writes every key so files round-trip exactly.
struct RunConfig {
  // [physics]
  double c = 1.0;
  double b = 0.05;
  double alpha = 0.5;
  double k = 0.0;

  // [mesh]
  int dimension = 1;
  double xmin = 0.0;
  double xmax = 1.0;
  int nx = 100;
  double ymin = 0.0;
  double ymax = 1.0;
  int ny = 10;

  // [time]
  double horizon = 1.0;
  int steps = 256;

  // [objective]
  double nu = 1.0;
  double gamma = 1e-3;
  double eta = 1e-3;
  std::string target = "zero";  // zero | attainable | file:PATH
  std::string roi = "all";      // all | left-half

  // [admissible]
  double g_radius = 10.0;
  double f_radius = 10.0;
  double w_value = 1.0;
  double w_frac = 1.0;
  double w_velocity = 1.0;
  double w_accel = 1.0;

  // [controls] — drive shapes for the simulate scenarios
  double g_amplitude = 1.0;
  double g_frequency = 1.0;
  double f_amplitude = 0.0;

  // [solver]
  std::string mode = "global";  // global | per-step
  double tol = 1e-10;
  int max_iter = 50;
  double a_lower = 0.1;
  double a_upper = 4.0;

  // [optimizer]
  int opt_max_iter = 200;
  double opt_tol = 1e-8;
  double armijo_c1 = 1e-4;
  double shrink = 0.5;
  double step0 = 1.0;
  int max_backtracks = 30;

  // [conditioning]
  double epsilon = 0.0;  // 0 = automatic (4*dt)
  double bump_r = 1.0;
  double bump_R = 2.0;
  double rate = 0.0;  // 0 = automatic

  // [run]
  std::string scenario = "zero";  // zero | pulse | manufactured
  std::string study = "none";     // none | perturbation | vanishing-reg
  std::uint64_t seed = 0;
  std::string out = "out";

  // Builders for the domain objects (deep validation happens there).
  SpaceMesh make_mesh() const;
  TimeGrid make_grid() const;
  PhysicsParams make_physics(const SpaceMesh& mesh) const;
  AdmissibleSpec make_admissible() const;
  FixedPointOptions make_fixed_point() const;
  SolveOptions make_solve_options() const;
  OptimizerOptions make_optimizer() const;
  ConditioningParams make_conditioning(double dt) const;
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Canonical rendering: fixed section and key order, %.17g numbers.
std::string serialize_config(const RunConfig& config);

}  // namespace fracwave
