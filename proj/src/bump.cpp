#include "fracwave/bump.hpp"

#include <cmath>
#include <functional>

#include "fracwave/errors.hpp"

namespace fracwave {

namespace {

// exp(-1/t) extended by zero to t <= 0; C-infinity on the real line.
double transition(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Adaptive Simpson on [a, b].
double simpson(const std::function<double(double)>&, double, double);

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double simpson(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, 1e-15, 48);
}

}  // namespace

BumpFunction::BumpFunction(double r, double R) : r_(r), R_(R) {
  if (!(r > 0.0 && R > r))
    throw PreconditionError("BumpFunction: need 0 < r < R");
  norm_ = simpson([this](double t) { return f1(t); }, r_, R_);
  if (!(norm_ > 0.0))
    throw PreconditionError("BumpFunction: degenerate normalization");
}

double BumpFunction::f1(double t) const {
  return transition(t - r_) * transition(R_ - t);
}

double BumpFunction::value(double tau) const {
  const double t = std::abs(tau);
  if (t <= r_) return 1.0;
  if (t >= R_) return 0.0;
  return simpson([this](double s) { return f1(s); }, t, R_) / norm_;
}

double BumpFunction::derivative(double tau) const {
  const double t = std::abs(tau);
  if (t <= r_ || t >= R_) return 0.0;
  const double d = -f1(t) / norm_;
  return tau >= 0.0 ? d : -d;
}

double BumpFunction::chi1(double s) const {
  return value(s) + s * derivative(s);
}

double bump_function(double tau, double r, double R) {
  return BumpFunction(r, R).value(tau);
}

}  // namespace fracwave
