#include "fracwave/verify/oracles.hpp"

#include <cmath>
#include <numbers>

#include "fracwave/errors.hpp"

namespace fracwave::verify {

Vec gl_derivative(const Vec& v, double alpha, const TimeGrid& grid) {
  if (v.size() != grid.n_nodes())
    throw PreconditionError("gl_derivative: series does not match the grid");
  const int n_nodes = grid.n_nodes();
  Vec coeff(n_nodes);
  coeff[0] = 1.0;
  for (int j = 1; j < n_nodes; ++j)
    coeff[j] = coeff[j - 1] * (1.0 - (alpha + 1.0) / j);
  const double scale = std::pow(grid.dt, -alpha);
  Vec out = Vec::Zero(n_nodes);
  for (int n = 0; n < n_nodes; ++n) {
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) acc += coeff[j] * v[n - j];
    out[n] = scale * acc;
  }
  return out;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw PreconditionError("ls_slope: need two or more samples");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw PreconditionError("ls_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

double observed_order(const std::vector<double>& steps,
                      const std::vector<double>& errors) {
  std::vector<double> lx(steps.size());
  std::vector<double> ly(errors.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    lx[i] = std::log(steps[i]);
    ly[i] = std::log(errors[i]);
  }
  return ls_slope(lx, ly);
}

Vec smooth_series(Rng& rng, const TimeGrid& grid) {
  const double T = grid.horizon();
  const double a0 = rng.symmetric();
  const double a1 = rng.symmetric();
  const double a2 = rng.symmetric();
  const double a3 = rng.symmetric();
  Vec v(grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n) {
    const double s = grid.node(n) / T;
    v[n] = s * s *
           (a0 + a1 * std::sin(std::numbers::pi * s) +
            a2 * std::cos(std::numbers::pi * s) + a3 * s);
  }
  const double sup = v.cwiseAbs().maxCoeff();
  if (sup > 0.0) v /= sup;
  return v;
}

double single_mode_amplitude(double t, double c) {
  const double w = c * std::numbers::pi;
  return (1.0 - std::cos(w * t)) / (w * w);
}

}  // namespace fracwave::verify
