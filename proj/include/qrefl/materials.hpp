#pragma once

#include <optional>
#include <string>

namespace qrefl {

/// An atomic species. SI fields; polarizability is the Gaussian
/// polarizability volume in m^3.
struct Species {
  std::string name;
  double mass = 0.0;                  // kg
  double static_polarizability = 0.0; // m^3
  double transition_length = 0.0;     // m, lambda_tr / 2 pi

  /// Throws std::domain_error unless all fields are positive.
  void validate() const;
};

/// A dielectric half-space.
struct Surface {
  std::string name;
  double static_permittivity = 0.0;
  std::optional<double> phi_override;

  /// Throws std::domain_error unless eps > 1 (and 0 < phi <= 1 when set).
  void validate() const;
};

/// Static Casimir-Polder reduction factor of a dielectric wall relative to a
/// perfect conductor,
///
///   phi(eps) = 1/2 int_1^inf dp p^-4 [(2p^2 - 1) r_TM(p) + r_TE(p)],
///
/// evaluated by adaptive quadrature. phi -> 1 for eps -> inf and -> 0 for
/// eps -> 1. Throws std::domain_error for eps <= 1.
double phi(double static_permittivity);

/// Surface factor in use: the override when present, otherwise phi(eps).
double surface_phi(const Surface& surface);

/// Atom-surface combination. C4 is computed from species and surface unless
/// overridden.
class AtomSurfacePair {
 public:
  AtomSurfacePair(Species species, Surface surface, std::optional<double> c4_override = {});

  const Species& species() const { return species_; }
  const Surface& surface() const { return surface_; }
  double mass() const { return species_.mass; }
  double polarizability() const { return species_.static_polarizability; }
  double permittivity() const { return surface_.static_permittivity; }
  double transition_length() const { return species_.transition_length; }

  /// J m^4.
  double c4() const { return c4_; }
  /// sqrt(2 m C4) / hbar, m.
  double beta4() const { return beta4_; }

 private:
  Species species_;
  Surface surface_;
  double c4_;
  double beta4_;
};

/// 3 alpha0 hbar c phi / (8 pi), J m^4; the pair's C4 (honours overrides).
double c4(const AtomSurfacePair& pair);

/// Lifshitz coefficient alpha0 k_B T (eps - 1) / (4 (eps + 1)), J m^3.
/// Throws std::domain_error for T < 0.
double c3(const AtomSurfacePair& pair, double temperature);

/// Non-equilibrium coefficient
///   pi alpha0 k_B^2 (T_E^2 - T_S^2)(eps + 1) / (12 hbar c sqrt(eps - 1)), J m^2.
/// Positive (repulsive) iff T_E > T_S.
double c2(const AtomSurfacePair& pair, double surface_temperature, double environment_temperature);

double beta4(const AtomSurfacePair& pair);

/// 2 m C2 / hbar^2 (dimensionless).
double beta0(const AtomSurfacePair& pair, double surface_temperature, double environment_temperature);

/// Non-empty when a temperature exceeds the validity bound
/// k_B T > 0.1 hbar c / l below which thermal photon absorption is negligible.
std::optional<std::string> temperature_warning(const AtomSurfacePair& pair, double temperature);

}  // namespace qrefl
