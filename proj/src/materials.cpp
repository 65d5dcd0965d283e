#include "qrefl/materials.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qrefl/quadrature.hpp"
#include "qrefl/simd/kernels.hpp"
#include "qrefl/units.hpp"

namespace qrefl {

using C = PhysicalConstants;

void Species::validate() const {
  if (!(mass > 0.0)) throw std::domain_error("species " + name + ": mass must be positive");
  if (!(static_polarizability > 0.0)) {
    throw std::domain_error("species " + name + ": polarizability must be positive");
  }
  if (!(transition_length > 0.0)) {
    throw std::domain_error("species " + name + ": transition length must be positive");
  }
}

void Surface::validate() const {
  if (!(static_permittivity > 1.0)) {
    throw std::domain_error("surface " + name + ": static permittivity must exceed 1");
  }
  if (phi_override && !(*phi_override > 0.0 && *phi_override <= 1.0)) {
    throw std::domain_error("surface " + name + ": phi override must lie in (0, 1]");
  }
}

double phi(double eps) {
  if (!(eps > 1.0)) throw std::domain_error("phi: permittivity must exceed 1");
  // p = 1/u
  const auto& k = simd::active_kernels();
  auto integrand = [&](std::span<const double> u, std::span<double> y) {
    std::array<double, 32> p{};
    for (std::size_t i = 0; i < u.size(); ++i) p[i] = 1.0 / u[i];
    k.fresnel_weight(p.data(), y.data(), u.size(), eps);
    for (std::size_t i = 0; i < u.size(); ++i) y[i] *= u[i] * u[i];
  };
  const auto res = integrate_gk21(integrand, 0.0, 1.0, {.rel_tol = 1e-12, .abs_tol = 1e-300});
  if (!res.converged) throw numerical_error("phi: quadrature did not converge", res.error);
  return 0.5 * res.value;
}

double surface_phi(const Surface& surface) {
  return surface.phi_override ? *surface.phi_override : phi(surface.static_permittivity);
}

AtomSurfacePair::AtomSurfacePair(Species species, Surface surface, std::optional<double> c4_override)
    : species_(std::move(species)), surface_(std::move(surface)) {
  species_.validate();
  surface_.validate();
  if (c4_override) {
    if (!(*c4_override > 0.0)) throw std::domain_error("C4 override must be positive");
    c4_ = *c4_override;
  } else {
    c4_ = 3.0 * species_.static_polarizability * C::hbar * C::c * surface_phi(surface_) /
          (8.0 * std::numbers::pi);
  }
  beta4_ = std::sqrt(2.0 * species_.mass * c4_) / C::hbar;
}

double c4(const AtomSurfacePair& pair) { return pair.c4(); }

double c3(const AtomSurfacePair& pair, double temperature) {
  if (!(temperature >= 0.0)) throw std::domain_error("c3: temperature must be non-negative");
  const double eps = pair.permittivity();
  return pair.polarizability() * C::k_B * temperature * (eps - 1.0) / (4.0 * (eps + 1.0));
}

double c2(const AtomSurfacePair& pair, double ts, double te) {
  if (!(ts >= 0.0) || !(te >= 0.0)) throw std::domain_error("c2: temperatures must be non-negative");
  const double eps = pair.permittivity();
  return std::numbers::pi * pair.polarizability() * C::k_B * C::k_B * (te * te - ts * ts) *
         (eps + 1.0) / (12.0 * C::hbar * C::c * std::sqrt(eps - 1.0));
}

double beta4(const AtomSurfacePair& pair) { return pair.beta4(); }

double beta0(const AtomSurfacePair& pair, double ts, double te) {
  return 2.0 * pair.mass() * c2(pair, ts, te) / (C::hbar * C::hbar);
}

std::optional<std::string> temperature_warning(const AtomSurfacePair& pair, double temperature) {
  const double bound = 0.1 * C::hbar * C::c / (pair.transition_length() * C::k_B);
  if (temperature > bound) {
    return "temperature " + std::to_string(temperature) + " K exceeds the validity bound " +
           std::to_string(bound) + " K for " + pair.species().name;
  }
  return std::nullopt;
}

}  // namespace qrefl
