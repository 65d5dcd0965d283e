#include "qrefl/units.hpp"

#include <stdexcept>

namespace qrefl {

using C = PhysicalConstants;

double thermal_wavelength(double temperature) {
  if (!(temperature > 0.0)) {
    throw std::domain_error("thermal_wavelength: temperature must be positive");
  }
  return C::hbar * C::c / (C::k_B * temperature);
}

Incidence incidence_from_velocity(double velocity, double mass) {
  if (!(velocity >= 0.0)) throw std::domain_error("incidence: velocity must be non-negative");
  if (!(mass > 0.0)) throw std::domain_error("incidence: mass must be positive");
  Incidence inc;
  inc.velocity = velocity;
  inc.mass = mass;
  inc.wavenumber = mass * velocity / C::hbar;
  inc.energy = 0.5 * mass * velocity * velocity;
  return inc;
}

Incidence incidence_from_energy(double energy, double mass) {
  if (!(energy >= 0.0)) throw std::domain_error("incidence: energy must be non-negative");
  if (!(mass > 0.0)) throw std::domain_error("incidence: mass must be positive");
  return incidence_from_velocity(std::sqrt(2.0 * energy / mass), mass);
}

Incidence incidence_from_k_beta4(double k_beta4_value, double beta4, double mass) {
  if (!(beta4 > 0.0)) throw std::domain_error("incidence: beta4 must be positive");
  if (!(k_beta4_value >= 0.0)) throw std::domain_error("incidence: k*beta4 must be non-negative");
  return incidence_from_velocity(k_beta4_value * C::hbar / (beta4 * mass), mass);
}

double k_beta4(const Incidence& incidence, double beta4) {
  if (!(beta4 > 0.0)) throw std::domain_error("k_beta4: beta4 must be positive");
  return incidence.wavenumber * beta4;
}

}  // namespace qrefl
