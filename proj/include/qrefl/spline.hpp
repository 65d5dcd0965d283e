#pragma once

#include <vector>

namespace qrefl {

/// Natural cubic spline on a uniform grid x0 + i h. Evaluates value and the
/// first two derivatives; outside the grid it extrapolates linearly from the
/// nearest end (second derivative zero there, matching the natural condition).
class UniformCubicSpline {
 public:
  struct Sample {
    double f, df, d2f;
  };

  UniformCubicSpline() = default;
  UniformCubicSpline(double x0, double h, std::vector<double> values);

  Sample operator()(double x) const;
  double x_front() const { return x0_; }
  double x_back() const { return x0_ + h_ * static_cast<double>(y_.size() - 1); }
  const std::vector<double>& values() const { return y_; }

 private:
  double x0_ = 0.0;
  double h_ = 1.0;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

}  // namespace qrefl
