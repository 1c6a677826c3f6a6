#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fracwave/errors.hpp"
#include "fracwave/frac_ops.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/special.hpp"
#include "fracwave/verify/oracles.hpp"

using namespace fracwave;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);
}  // namespace

TEST_CASE("gamma function matches closed forms") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(3.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(kSqrtPi).epsilon(1e-14));
  CHECK(gamma_fn(1.5) == doctest::Approx(0.5 * kSqrtPi).epsilon(1e-14));
  CHECK(gamma_fn(4.5) ==
        doctest::Approx(3.5 * 2.5 * 1.5 * 0.5 * kSqrtPi).epsilon(1e-13));
  // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
  const double x = 0.3;
  CHECK(gamma_fn(x) * gamma_fn(1.0 - x) ==
        doctest::Approx(kPi / std::sin(kPi * x)).epsilon(1e-13));
}

TEST_CASE("memory weights are positive, decreasing, and start at one") {
  for (const double alpha : {0.2, 0.5, 0.8}) {
    const Vec w = l1_weights(alpha, 200);
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
    for (int m = 0; m < w.size(); ++m) CHECK(w[m] > 0.0);
    for (int m = 1; m < w.size(); ++m) CHECK(w[m] < w[m - 1]);
    // Telescoping sum: sum of the first M weights is M^{1-alpha}.
    CHECK(w.sum() == doctest::Approx(std::pow(200.0, 1.0 - alpha)).epsilon(1e-12));
  }
}

TEST_CASE("kernel mass matches the integrated kernel") {
  const FracOrder alpha{0.4};
  const double T = 2.5;
  // Midpoint-rule refinement of the kernel integral as a cross-check.
  const int n = 200000;
  const double dt = T / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += kernel_eval(alpha, (i + 0.5) * dt) * dt;
  CHECK(kernel_l1_mass(alpha, T) == doctest::Approx(acc).epsilon(1e-4));
}

TEST_CASE("fractional integral of order one is the trapezoid antiderivative") {
  const int n = 64;
  const TimeGrid grid(1.0 / n, n);
  Vec v(grid.n_nodes());
  for (int m = 0; m < grid.n_nodes(); ++m)
    v[m] = std::cos(3.0 * grid.node(m));
  const Vec j = detail::rl_integral_core(v, 1.0, grid.dt);
  // Trapezoid cumulative sum.
  double acc = 0.0;
  for (int m = 1; m < grid.n_nodes(); ++m) {
    acc += 0.5 * grid.dt * (v[m - 1] + v[m]);
    CHECK(j[m] == doctest::Approx(acc).epsilon(1e-12));
  }
  CHECK(j[0] == 0.0);
}

TEST_CASE("fractional integral reproduces the power-function formula") {
  // J^a t = t^{1+a} / Gamma(2+a); the piecewise-linear integrand is exact.
  const int n = 128;
  const TimeGrid grid(1.0 / n, n);
  for (const double alpha : {0.3, 0.6, 0.9}) {
    Vec v(grid.n_nodes());
    for (int m = 0; m < grid.n_nodes(); ++m) v[m] = grid.node(m);
    const Vec j = rl_integral(v, FracOrder{alpha}, grid);
    for (int m = 0; m < grid.n_nodes(); ++m) {
      const double t = grid.node(m);
      const double exact = std::pow(t, 1.0 + alpha) / gamma_fn(2.0 + alpha);
      CHECK(j[m] == doctest::Approx(exact).epsilon(1e-10));
    }
  }
}

TEST_CASE("fractional derivative is exact on linear growth") {
  const int n = 100;
  const TimeGrid grid(1.0 / n, n);
  for (const double alpha : {0.25, 0.5, 0.75}) {
    Vec v(grid.n_nodes());
    for (int m = 0; m < grid.n_nodes(); ++m) v[m] = grid.node(m);
    const Vec d = caputo_derivative(v, FracOrder{alpha}, grid);
    for (int m = 1; m < grid.n_nodes(); ++m) {
      const double exact =
          std::pow(grid.node(m), 1.0 - alpha) / gamma_fn(2.0 - alpha);
      CHECK(d[m] == doctest::Approx(exact).epsilon(1e-12));
    }
    CHECK(d[0] == 0.0);
  }
}

TEST_CASE("fractional derivative rejects a nonzero initial value") {
  const TimeGrid grid(0.01, 100);
  Vec v = Vec::Ones(grid.n_nodes());
  CHECK_THROWS_AS((void)caputo_derivative(v, FracOrder{0.5}, grid),
                  PreconditionError);
}

TEST_CASE("transposed derivative pairs exactly against the forward one") {
  const int n = 96;
  const TimeGrid grid(1.0 / n, n);
  Rng rng(1234);
  Vec v = rng.vector(grid.n_nodes());
  Vec phi = rng.vector(grid.n_nodes());
  v[0] = 0.0;
  phi[n] = 0.0;
  const FracOrder alpha{0.6};
  const double lhs = caputo_derivative(v, alpha, grid).dot(phi);
  const double rhs = v.dot(adjoint_caputo(phi, alpha, grid));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("difference-quotient oracle tracks the scheme on a smooth series") {
  const int n = 256;
  const TimeGrid grid(1.0 / n, n);
  Rng rng(555);
  const Vec v = verify::smooth_series(rng, grid);
  const double alpha = 0.5;
  const Vec a = caputo_derivative(v, FracOrder{alpha}, grid);
  const Vec b = verify::gl_derivative(v, alpha, grid);
  CHECK((a - b).cwiseAbs().maxCoeff() < 5.0 * grid.dt);
}

TEST_CASE("dissipation functional reports nonnegative quadratic form") {
  const int n = 128;
  const TimeGrid grid(1.0 / n, n);
  Rng rng(8080);
  Mat u = rng.matrix(3, grid.n_nodes());
  u.col(0).setZero();
  const CoercivityReport report = coercivity_check(u, FracOrder{0.5}, grid);
  CHECK(report.nonneg_ok);
  CHECK(report.nonneg_margin >= 0.0);
  CHECK(report.scale > 0.0);
}

TEST_CASE("trapezoid weights integrate cubics over the grid exactly enough") {
  const int n = 200;
  const TimeGrid grid(0.5 / n, n);
  const Vec w = trapezoid_weights(grid);
  CHECK(w.size() == grid.n_nodes());
  CHECK(w.sum() == doctest::Approx(grid.horizon()).epsilon(1e-14));
  double acc = 0.0;
  for (int m = 0; m < grid.n_nodes(); ++m) acc += w[m] * grid.node(m);
  CHECK(acc == doctest::Approx(0.5 * grid.horizon() * grid.horizon())
                   .epsilon(1e-14));
}
