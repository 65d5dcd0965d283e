#include "doctest.h"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qrefl/csv.hpp"
#include "qrefl/spline.hpp"

using namespace qrefl;

TEST_CASE("cubic reproduced away from the ends") {
  const double x0 = -1.0, h = 0.01;
  std::vector<double> y;
  for (int i = 0; i <= 400; ++i) y.push_back(std::sin(x0 + h * i));
  UniformCubicSpline s(x0, h, y);
  for (double x = -0.5; x < 2.5; x += 0.0137) {
    const auto v = s(x);
    CHECK(v.f == doctest::Approx(std::sin(x)).epsilon(1e-8));
    CHECK(v.df == doctest::Approx(std::cos(x)).epsilon(1e-5));
    CHECK(v.d2f == doctest::Approx(-std::sin(x)).scale(1.0).epsilon(1e-3));
  }
}

TEST_CASE("knots interpolated exactly; linear extrapolation") {
  std::vector<double> y{0.0, 1.0, 4.0, 9.0, 16.0};
  UniformCubicSpline s(0.0, 1.0, y);
  for (int i = 0; i < 5; ++i) CHECK(s(i).f == doctest::Approx(y[i]).epsilon(1e-14));
  CHECK(s.x_front() == 0.0);
  CHECK(s.x_back() == 4.0);
  const auto end = s(4.0);
  const auto out = s(6.0);
  CHECK(out.f == doctest::Approx(end.f + 2.0 * end.df));
  CHECK(out.df == doctest::Approx(end.df));
  CHECK(out.d2f == 0.0);
  CHECK(s(-1.0).d2f == 0.0);
}

TEST_CASE("linear data has zero curvature") {
  std::vector<double> y;
  for (int i = 0; i < 10; ++i) y.push_back(3.0 - 2.0 * i);
  UniformCubicSpline s(0.0, 1.0, y);
  for (double x = 0.0; x <= 9.0; x += 0.3) {
    CHECK(s(x).df == doctest::Approx(-2.0));
    CHECK(std::abs(s(x).d2f) < 1e-12);
  }
}

TEST_CASE("csv number format") {
  CHECK(csv::number(1.0) == "1.00000000e+00");
  CHECK(csv::number(-2.5e-7) == "-2.50000000e-07");
  std::ostringstream os;
  csv::header(os, {"a", "b"});
  CHECK(os.str() == "a,b\n");
}

TEST_CASE("spline construction errors") {
  CHECK_THROWS_AS(UniformCubicSpline(0.0, 1.0, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(UniformCubicSpline(0.0, 0.0, {1.0, 2.0, 3.0, 4.0}), std::invalid_argument);
}
