#pragma once

namespace fracwave {

// Smooth cutoff built from exp(-1/t) pieces: equals 1 for |tau| <= r,
// vanishes for |tau| >= R, and decreases monotonically in between as the
// normalized right tail integral of exp(-1/(t-r)) exp(-1/(R-t)).
class BumpFunction {
 public:
  BumpFunction(double r, double R);  // requires 0 < r < R

  double value(double tau) const;

  // d/dtau of value; available in closed form since the value is the
  // integral of -f1 (the plateau regions differentiate to zero exactly).
  double derivative(double tau) const;

  // chi_1(s) = value(s) + s * derivative(s): derivative of s -> s*value(s),
  // the factor appearing when differentiating the compatibility correction.
  double chi1(double s) const;

  double r() const { return r_; }
  double R() const { return R_; }

 private:
  double f1(double t) const;

  double r_, R_, norm_;
};

// One-shot evaluation.
double bump_function(double tau, double r, double R);

}  // namespace fracwave
