#pragma once

#include <cmath>

namespace qrefl {

/// CODATA 2018 exact/recommended values, SI.
struct PhysicalConstants {
  static constexpr double hbar = 1.054571817e-34;           // J s
  static constexpr double c = 299792458.0;                  // m/s
  static constexpr double k_B = 1.380649e-23;               // J/K
  static constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
  static constexpr double electron_volt = 1.602176634e-19;  // J
  static constexpr double angstrom = 1e-10;                 // m
};

namespace units {

inline constexpr double nm = 1e-9;
inline constexpr double um = 1e-6;
inline constexpr double mm_per_s = 1e-3;
inline constexpr double nK = 1e-9;

constexpr double kelvin_to_joule(double t) { return t * PhysicalConstants::k_B; }
constexpr double joule_to_kelvin(double e) { return e / PhysicalConstants::k_B; }
constexpr double joule_to_nK(double e) { return joule_to_kelvin(e) / nK; }
constexpr double ev_to_joule(double e) { return e * PhysicalConstants::electron_volt; }
constexpr double amu_to_kg(double m) { return m * PhysicalConstants::atomic_mass_unit; }
constexpr double cubic_angstrom(double v) {
  return v * PhysicalConstants::angstrom * PhysicalConstants::angstrom * PhysicalConstants::angstrom;
}

}  // namespace units

/// Incidence state of an atom approaching the surface at normal incidence.
/// velocity, wavenumber and energy are kept mutually consistent.
struct Incidence {
  double velocity = 0.0;    // m/s
  double wavenumber = 0.0;  // 1/m
  double energy = 0.0;      // J
  double mass = 0.0;        // kg

  double energy_kelvin() const { return units::joule_to_kelvin(energy); }
};

/// hbar c / (k_B T). Throws std::domain_error for T <= 0.
double thermal_wavelength(double temperature);

/// Throws std::domain_error for v < 0 or m <= 0.
Incidence incidence_from_velocity(double velocity, double mass);

/// Inverse of E = hbar^2 k^2 / 2m. Throws std::domain_error for E < 0 or m <= 0.
Incidence incidence_from_energy(double energy, double mass);

/// Incidence at a prescribed value of k_i * beta4.
Incidence incidence_from_k_beta4(double k_beta4, double beta4, double mass);

/// Dimensionless k_i * beta4. Throws std::domain_error for beta4 <= 0.
double k_beta4(const Incidence& incidence, double beta4);

}  // namespace qrefl
