#include "doctest.h"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <stdexcept>

#include "qrefl/catalog.hpp"
#include "qrefl/materials.hpp"
#include "qrefl/units.hpp"

using namespace qrefl;
using C = PhysicalConstants;

namespace {

double phi_oracle(double eps) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [eps](double t) {
    const double p = 1.0 + t;
    const double s = std::sqrt(eps - 1.0 + p * p);
    const double r_tm = (eps * p - s) / (eps * p + s);
    const double r_te = (s - p) / (s + p);
    return 0.5 * ((2 * p * p - 1) * r_tm + r_te) / std::pow(p, 4);
  };
  return integrator.integrate(f, 1e-14);
}

AtomSurfacePair rb_si() { return Catalog::builtin().pair("Rb87", "Si"); }

}  // namespace

TEST_CASE("phi agrees with an independent quadrature") {
  for (double eps : {1.01, 2.0, 4.0, 12.0, 100.0, 1e4}) {
    CAPTURE(eps);
    CHECK(phi(eps) == doctest::Approx(phi_oracle(eps)).epsilon(1e-9));
  }
  CHECK(phi(12.0) == doctest::Approx(0.68475).epsilon(1e-4));
}

TEST_CASE("phi limits and monotonicity") {
  CHECK(phi(1e8) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(phi(1.0 + 1e-6) < 1e-5);
  double prev = 0.0;
  for (double eps = 1.1; eps < 1e3; eps *= 1.7) {
    const double p = phi(eps);
    CHECK(p > prev);
    CHECK(p <= 1.0);
    prev = p;
  }
  CHECK_THROWS_AS(phi(1.0), std::domain_error);
  CHECK_THROWS_AS(phi(0.5), std::domain_error);
}

TEST_CASE("validation of species and surfaces") {
  Species s{"X", 1e-25, 1e-29, 1e-7};
  CHECK_NOTHROW(s.validate());
  s.mass = 0.0;
  CHECK_THROWS_AS(s.validate(), std::domain_error);
  Surface w{"W", 1.0, {}};
  CHECK_THROWS_AS(w.validate(), std::domain_error);
  w.static_permittivity = 3.0;
  CHECK_NOTHROW(w.validate());
  w.phi_override = 1.5;
  CHECK_THROWS_AS(w.validate(), std::domain_error);
}

TEST_CASE("Rb on Si coefficients") {
  const auto pair = rb_si();
  CHECK(c4(pair) / C::electron_volt == doctest::Approx(7.6e-37).epsilon(1e-12));
  CHECK(pair.beta4() == doctest::Approx(std::sqrt(2 * pair.mass() * pair.c4()) / C::hbar).epsilon(1e-14));
  CHECK(beta4(pair) == pair.beta4());

  const double a0 = units::cubic_angstrom(47.25);
  const double eps = 12.0;
  CHECK(c3(pair, 300.0) == doctest::Approx(a0 * C::k_B * 300.0 * (eps - 1) / (4 * (eps + 1))).epsilon(1e-14));
  CHECK(c3(pair, 0.0) == 0.0);
  CHECK_THROWS_AS(c3(pair, -1.0), std::domain_error);

  const double expected_c2 = M_PI * a0 * C::k_B * C::k_B * (1200.0 * 1200.0 - 300.0 * 300.0) * (eps + 1) /
                             (12 * C::hbar * C::c * std::sqrt(eps - 1));
  CHECK(c2(pair, 300.0, 1200.0) == doctest::Approx(expected_c2).epsilon(1e-14));
  CHECK(c2(pair, 300.0, 300.0) == 0.0);
  CHECK(c2(pair, 1200.0, 300.0) == doctest::Approx(-expected_c2).epsilon(1e-14));
  CHECK(beta0(pair, 300.0, 1200.0) ==
        doctest::Approx(2 * pair.mass() * expected_c2 / (C::hbar * C::hbar)).epsilon(1e-14));
}

TEST_CASE("analytic exponent of the three species at 300/1200 K") {
  const auto cat = Catalog::builtin();
  auto gamma = [&](const char* name) {
    const auto p = cat.pair(name, "Si");
    return std::sqrt(1.0 + 4.0 * beta0(p, 300.0, 1200.0));
  };
  CHECK(gamma("Rb87") == doctest::Approx(6.5).epsilon(0.01));
  CHECK(gamma("He4*") == doctest::Approx(1.7).epsilon(0.01));
  CHECK(gamma("He4") == doctest::Approx(1.004).epsilon(0.001));
}

TEST_CASE("C4 scales with polarizability on the same surface") {
  const auto cat = Catalog::builtin();
  const double r = cat.pair("He4*", "Si").c4() / cat.pair("Rb87", "Si").c4();
  CHECK(r == doctest::Approx(46.8 / 47.25).epsilon(1e-12));
}

TEST_CASE("C4 override and computed value") {
  Species s{"X", units::amu_to_kg(7), units::cubic_angstrom(10.0), 100e-9};
  Surface w{"W", 5.0, {}};
  AtomSurfacePair computed(s, w);
  CHECK(computed.c4() == doctest::Approx(3 * s.static_polarizability * C::hbar * C::c * phi(5.0) / (8 * M_PI))
                             .epsilon(1e-12));
  AtomSurfacePair fixed(s, w, 1e-55);
  CHECK(fixed.c4() == 1e-55);
}

TEST_CASE("temperature validity warning") {
  const auto pair = rb_si();
  CHECK_FALSE(temperature_warning(pair, 300.0).has_value());
  const double bound = 0.1 * C::hbar * C::c / (C::k_B * pair.transition_length());
  CHECK(temperature_warning(pair, 2.0 * bound).has_value());
}
