#pragma once

#include <stdexcept>
#include <string>

namespace fracwave {

// Violated operation precondition or invalid argument.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Leading coefficient left the configured [a_lower, a_upper] band.
// Carries the offending location and the attained coefficient excursion.
class NonDegeneracyViolation : public std::runtime_error {
public:
  NonDegeneracyViolation(const std::string& what, double coefficient, double x,
                         double t, double max_2kp)
      : std::runtime_error(what), coefficient(coefficient), x(x), t(t),
        max_2kp(max_2kp) {}

  double coefficient;  // value of the leading coefficient at (x, t)
  double x;
  double t;
  double max_2kp;      // max |1 - a| seen so far
};

// Non-finite state detected during time stepping.
class NumericalBlowup : public std::runtime_error {
public:
  NumericalBlowup(const std::string& what, int step, double t)
      : std::runtime_error(what), step(step), t(t) {}

  int step;
  double t;
};

// Picard iteration failed to reach the requested tolerance.
class FixedPointDivergence : public std::runtime_error {
public:
  FixedPointDivergence(const std::string& what, int iterations,
                       double last_update)
      : std::runtime_error(what), iterations(iterations),
        last_update(last_update) {}

  int iterations;
  double last_update;  // relative update norm at the final iterate
};

// Configuration file problem; carries the offending key and line.
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& what, std::string key = {}, int line = 0)
      : std::runtime_error(what), key(std::move(key)), line(line) {}

  std::string key;
  int line;
};

}  // namespace fracwave
