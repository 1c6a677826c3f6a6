#pragma once

#include "fracwave/errors.hpp"
#include "fracwave/types.hpp"

namespace fracwave {

// Fractional differentiation order, restricted to the open interval (0, 1).
struct FracOrder {
  double value;

  explicit FracOrder(double a) : value(a) {
    if (!(a > 0.0 && a < 1.0))
      throw PreconditionError("FracOrder: alpha must lie in (0, 1)");
  }
};

// Uniform partition of [0, T]: nodes t_n = n*dt for n = 0..n_steps.
struct TimeGrid {
  double dt;
  int n_steps;

  TimeGrid(double dt_, int n_steps_) : dt(dt_), n_steps(n_steps_) {
    if (!(dt > 0.0)) throw PreconditionError("TimeGrid: dt must be positive");
    if (n_steps < 1) throw PreconditionError("TimeGrid: need n_steps >= 1");
  }

  int n_nodes() const { return n_steps + 1; }
  double node(int n) const { return n * dt; }
  double horizon() const { return n_steps * dt; }
};

}  // namespace fracwave
