#include "qrefl/spline.hpp"

#include <cmath>
#include <stdexcept>

namespace qrefl {

UniformCubicSpline::UniformCubicSpline(double x0, double h, std::vector<double> values)
    : x0_(x0), h_(h), y_(std::move(values)) {
  const std::size_t n = y_.size();
  if (n < 4) throw std::invalid_argument("UniformCubicSpline: need at least 4 knots");
  if (!(h > 0.0)) throw std::invalid_argument("UniformCubicSpline: step must be positive");
  // Thomas algorithm for m[i-1] + 4 m[i] + m[i+1] = 6 (y[i-1] - 2y[i] + y[i+1]) / h^2.
  m_.assign(n, 0.0);
  std::vector<double> c(n, 0.0), d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double rhs = 6.0 * (y_[i - 1] - 2.0 * y_[i] + y_[i + 1]) / (h * h);
    const double denom = 4.0 - (i > 1 ? c[i - 1] : 0.0);
    c[i] = 1.0 / denom;
    d[i] = (rhs - (i > 1 ? d[i - 1] : 0.0)) / denom;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = d[i] - c[i] * m_[i + 1];
  }
}

UniformCubicSpline::Sample UniformCubicSpline::operator()(double x) const {
  const std::size_t n = y_.size();
  const double t = (x - x0_) / h_;
  if (t <= 0.0 || t >= static_cast<double>(n - 1)) {
    const bool low = t <= 0.0;
    const std::size_t i = low ? 0 : n - 2;
    // slope at the end knot from the cubic on the end interval
    const double slope = low ? (y_[1] - y_[0]) / h_ - h_ * (2.0 * m_[0] + m_[1]) / 6.0
                             : (y_[n - 1] - y_[n - 2]) / h_ + h_ * (m_[n - 2] + 2.0 * m_[n - 1]) / 6.0;
    const double xe = low ? x0_ : x0_ + h_ * static_cast<double>(n - 1);
    const double ye = low ? y_[0] : y_[n - 1];
    (void)i;
    return {ye + slope * (x - xe), slope, 0.0};
  }
  auto i = static_cast<std::size_t>(t);
  if (i >= n - 1) i = n - 2;
  const double a = static_cast<double>(i + 1) - t;  // weight of knot i
  const double b = 1.0 - a;
  const double h2 = h_ * h_;
  const double f = a * y_[i] + b * y_[i + 1] +
                   ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h2 / 6.0;
  const double df = (y_[i + 1] - y_[i]) / h_ - (3.0 * a * a - 1.0) * h_ * m_[i] / 6.0 +
                    (3.0 * b * b - 1.0) * h_ * m_[i + 1] / 6.0;
  const double d2f = a * m_[i] + b * m_[i + 1];
  return {f, df, d2f};
}

}  // namespace qrefl
