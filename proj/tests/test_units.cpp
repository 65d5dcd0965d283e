#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "qrefl/units.hpp"

using namespace qrefl;
using C = PhysicalConstants;

TEST_CASE("thermal wavelength") {
  // hbar c / k_B = 2.28986e-3 m K
  CHECK(thermal_wavelength(300.0) == doctest::Approx(7.6328772e-6).epsilon(1e-7));
  CHECK(thermal_wavelength(1200.0) == doctest::Approx(thermal_wavelength(300.0) / 4.0).epsilon(1e-14));
  CHECK_THROWS_AS(thermal_wavelength(0.0), std::domain_error);
  CHECK_THROWS_AS(thermal_wavelength(-1.0), std::domain_error);
}

TEST_CASE("incidence conversions agree") {
  const double m = units::amu_to_kg(87.0);
  const auto a = incidence_from_velocity(0.49e-3, m);
  CHECK(a.wavenumber == doctest::Approx(m * 0.49e-3 / C::hbar).epsilon(1e-14));
  CHECK(a.energy == doctest::Approx(0.5 * m * 0.49e-3 * 0.49e-3).epsilon(1e-14));
  // 87 u at 0.49 mm/s carries about 1.256 nK
  CHECK(units::joule_to_nK(a.energy) == doctest::Approx(1.2562).epsilon(1e-3));

  const auto b = incidence_from_energy(a.energy, m);
  CHECK(b.velocity == doctest::Approx(a.velocity).epsilon(1e-14));
  CHECK(b.wavenumber == doctest::Approx(a.wavenumber).epsilon(1e-14));

  const double beta4 = 1.7786e-6;
  const auto c = incidence_from_k_beta4(0.68, beta4, m);
  CHECK(k_beta4(c, beta4) == doctest::Approx(0.68).epsilon(1e-14));
  CHECK(c.energy_kelvin() == doctest::Approx(0.41e-9).epsilon(0.02));
}

TEST_CASE("incidence rejects invalid input") {
  const double m = units::amu_to_kg(4.0);
  CHECK_THROWS_AS(incidence_from_velocity(-1.0, m), std::domain_error);
  CHECK_THROWS_AS(incidence_from_velocity(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(incidence_from_energy(-1.0, m), std::domain_error);
  CHECK_THROWS_AS(k_beta4(incidence_from_velocity(1.0, m), 0.0), std::domain_error);
}

TEST_CASE("unit helpers") {
  CHECK(units::cubic_angstrom(47.25) == doctest::Approx(47.25e-30).epsilon(1e-14));
  CHECK(units::ev_to_joule(1.0) == C::electron_volt);
  CHECK(units::joule_to_kelvin(units::kelvin_to_joule(3.5)) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(units::joule_to_nK(C::k_B * 1e-9) == doctest::Approx(1.0).epsilon(1e-15));
}
