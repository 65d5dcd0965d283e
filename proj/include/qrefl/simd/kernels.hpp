#pragma once

// Batched integrand kernels behind the potential quadratures.
//
// Every kernel has a scalar reference implementation and, on x86-64 builds,
// an AVX2/FMA variant. The variant is chosen once at runtime from CPUID; set
// QREFL_SIMD=scalar in the environment to force the reference path.

#include <cstddef>

namespace qrefl::simd {

/// out[i] = x^3 e^{-decay x} (n(rho_s x) - n(rho_e x)),  n(y) = 1/(e^y - 1).
/// A rho of +infinity encodes a zero temperature (n == 0); out = 0 at x = 0.
/// The AVX2 variant flushes results below about 1e-300 to zero.
using ThermalDifferenceFn = void (*)(const double* x, double* out, std::size_t n, double decay,
                                     double rho_s, double rho_e);

/// out[i] = f(p) = (2p^2 - 1) r_TM(p) + r_TE(p) for a dielectric of static
/// permittivity eps, s = sqrt(eps - 1 + p^2),
/// r_TM = (eps p - s)/(eps p + s), r_TE = (s - p)/(s + p).
using FresnelWeightFn = void (*)(const double* p, double* out, std::size_t n, double eps);

/// out[i] = f(p) * q (1 + 4q + q^2) / (1 - q)^4 with q = e^{-A p}; the closed
/// form of sum_{l>=1} (A l)^3 e^{-A l p} divided by A^3.
using MatsubaraFn = void (*)(const double* p, double* out, std::size_t n, double A, double eps);

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  ThermalDifferenceFn thermal_difference;
  FresnelWeightFn fresnel_weight;
  MatsubaraFn matsubara;
};

/// Reference implementation; always available.
const KernelTable& scalar_kernels();

/// AVX2/FMA implementation, or nullptr when not compiled in or not supported
/// by the running CPU.
const KernelTable* avx2_kernels();

/// The table selected for this process (first call decides).
const KernelTable& active_kernels();

}  // namespace qrefl::simd
