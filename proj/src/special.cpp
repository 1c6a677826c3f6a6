#include "fracwave/special.hpp"

#include <cmath>
#include <numbers>

#include "fracwave/errors.hpp"

namespace fracwave {

namespace {

constexpr double kG = 7.0;
constexpr double kCoef[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

double gamma_fn(double x) {
  if (std::isnan(x)) throw PreconditionError("gamma_fn: nan argument");
  if (x <= 0.0 && x == std::floor(x))
    throw PreconditionError("gamma_fn: pole at nonpositive integer");
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::numbers::pi /
           (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double acc = kCoef[0];
  for (int i = 1; i < 9; ++i) acc += kCoef[i] / (z + i);
  const double t = z + kG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) *
         std::exp(-t) * acc;
}

}  // namespace fracwave
