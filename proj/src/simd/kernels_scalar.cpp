#include <cmath>

#include "qrefl/simd/kernels.hpp"

namespace qrefl::simd {
namespace {

inline double bose(double y) {
  return std::exp(-y) / -std::expm1(-y);
}

void thermal_difference(const double* x, double* out, std::size_t n, double decay, double rho_s,
                        double rho_e) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    out[i] = xi == 0.0 ? 0.0 : xi * xi * xi * std::exp(-decay * xi) * (bose(rho_s * xi) - bose(rho_e * xi));
  }
}

inline double fresnel(double p, double eps) {
  const double s = std::sqrt(eps - 1.0 + p * p);
  const double em1 = eps - 1.0;
  const double r_tm = em1 * ((eps + 1.0) * p * p - 1.0) / ((eps * p + s) * (eps * p + s));
  const double r_te = em1 / ((s + p) * (s + p));
  return (2.0 * p * p - 1.0) * r_tm + r_te;
}

void fresnel_weight(const double* p, double* out, std::size_t n, double eps) {
  for (std::size_t i = 0; i < n; ++i) out[i] = fresnel(p[i], eps);
}

void matsubara(const double* p, double* out, std::size_t n, double A, double eps) {
  for (std::size_t i = 0; i < n; ++i) {
    const double q = std::exp(-A * p[i]);
    const double one_minus_q = -std::expm1(-A * p[i]);
    const double d2 = one_minus_q * one_minus_q;
    out[i] = fresnel(p[i], eps) * q * (1.0 + 4.0 * q + q * q) / (d2 * d2);
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar, "scalar", &thermal_difference, &fresnel_weight,
                                 &matsubara};
  return table;
}

}  // namespace qrefl::simd
