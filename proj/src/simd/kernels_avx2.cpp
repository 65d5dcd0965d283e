// Compiled with -mavx2 -mfma. Only reached after a CPUID check.
#include <immintrin.h>

#include <cstddef>

#include "qrefl/simd/kernels.hpp"

namespace qrefl::simd {
namespace {

// exp(y) for y <= 0 (all call sites), |error| ~ 1 ulp. Range reduction by
// ln 2 followed by a degree-13 Taylor polynomial on |r| <= ln(2)/2.
// Returns 0 below -708 where the scalar path would produce denormals.
inline __m256d exp_nonpositive(__m256d y) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d lower = _mm256_set1_pd(-708.0);

  const __m256d underflow = _mm256_cmp_pd(y, lower, _CMP_LT_OQ);
  y = _mm256_max_pd(y, lower);
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(y, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, y);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  static constexpr double inv_fact[14] = {1.0,
                                          1.0,
                                          1.0 / 2,
                                          1.0 / 6,
                                          1.0 / 24,
                                          1.0 / 120,
                                          1.0 / 720,
                                          1.0 / 5040,
                                          1.0 / 40320,
                                          1.0 / 362880,
                                          1.0 / 3628800,
                                          1.0 / 39916800,
                                          1.0 / 479001600,
                                          1.0 / 6227020800.0};
  __m256d poly = _mm256_set1_pd(inv_fact[13]);
  for (int k = 12; k >= 0; --k) poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(inv_fact[k]));

  // 2^n from the exponent bits; n in [-1022, 0] here.
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  __m256i bits = _mm256_cvtepi32_epi64(n32);
  bits = _mm256_add_epi64(bits, _mm256_set1_epi64x(1023));
  bits = _mm256_slli_epi64(bits, 52);
  const __m256d scale = _mm256_castsi256_pd(bits);
  return _mm256_andnot_pd(underflow, _mm256_mul_pd(poly, scale));
}

// -expm1(-y) for y >= 0 given e = exp(-y). Series below 0.5, 1 - e above.
inline __m256d one_minus_exp_neg(__m256d y, __m256d e) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d z = _mm256_sub_pd(_mm256_setzero_pd(), y);
  // expm1(z) = z (1 + z/2 (1 + z/3 (1 + ... (1 + z/16))))
  __m256d acc = _mm256_set1_pd(1.0);
  for (int k = 16; k >= 2; --k) {
    acc = _mm256_fmadd_pd(_mm256_mul_pd(z, _mm256_set1_pd(1.0 / k)), acc, _mm256_set1_pd(1.0));
  }
  const __m256d series = _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(z, acc));
  const __m256d direct = _mm256_sub_pd(_mm256_set1_pd(1.0), e);
  const __m256d small = _mm256_cmp_pd(y, half, _CMP_LT_OQ);
  return _mm256_blendv_pd(direct, series, small);
}

inline __m256d bose(__m256d y) {
  // y may be +inf (zero temperature): e = 0, denominator 1.
  const __m256d finite_y = _mm256_min_pd(y, _mm256_set1_pd(1e300));
  const __m256d e = exp_nonpositive(_mm256_sub_pd(_mm256_setzero_pd(), finite_y));
  return _mm256_div_pd(e, one_minus_exp_neg(finite_y, e));
}

inline __m256d fresnel(__m256d p, __m256d eps) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d p2 = _mm256_mul_pd(p, p);
  const __m256d s = _mm256_sqrt_pd(_mm256_add_pd(_mm256_sub_pd(eps, one), p2));
  const __m256d em1 = _mm256_sub_pd(eps, one);
  const __m256d ep_s = _mm256_add_pd(_mm256_mul_pd(eps, p), s);
  const __m256d s_p = _mm256_add_pd(s, p);
  const __m256d tm_num = _mm256_mul_pd(em1, _mm256_fmsub_pd(_mm256_add_pd(eps, one), p2, one));
  const __m256d r_tm = _mm256_div_pd(tm_num, _mm256_mul_pd(ep_s, ep_s));
  const __m256d r_te = _mm256_div_pd(em1, _mm256_mul_pd(s_p, s_p));
  const __m256d w = _mm256_fmsub_pd(_mm256_set1_pd(2.0), p2, one);
  return _mm256_fmadd_pd(w, r_tm, r_te);
}

void thermal_difference(const double* x, double* out, std::size_t n, double decay, double rho_s,
                        double rho_e) {
  const __m256d vdecay = _mm256_set1_pd(decay);
  const __m256d vrs = _mm256_set1_pd(rho_s);
  const __m256d vre = _mm256_set1_pd(rho_e);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    const __m256d x3 = _mm256_mul_pd(_mm256_mul_pd(xi, xi), xi);
    const __m256d damp = exp_nonpositive(_mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(vdecay, xi)));
    const __m256d diff = _mm256_sub_pd(bose(_mm256_mul_pd(vrs, xi)), bose(_mm256_mul_pd(vre, xi)));
    const __m256d zero = _mm256_cmp_pd(xi, _mm256_setzero_pd(), _CMP_EQ_OQ);
    _mm256_storeu_pd(out + i, _mm256_andnot_pd(zero, _mm256_mul_pd(_mm256_mul_pd(x3, damp), diff)));
  }
  if (i < n) scalar_kernels().thermal_difference(x + i, out + i, n - i, decay, rho_s, rho_e);
}

void fresnel_weight(const double* p, double* out, std::size_t n, double eps) {
  const __m256d veps = _mm256_set1_pd(eps);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, fresnel(_mm256_loadu_pd(p + i), veps));
  if (i < n) scalar_kernels().fresnel_weight(p + i, out + i, n - i, eps);
}

void matsubara(const double* p, double* out, std::size_t n, double A, double eps) {
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d vA = _mm256_set1_pd(A);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d pi = _mm256_loadu_pd(p + i);
    const __m256d y = _mm256_mul_pd(vA, pi);
    const __m256d q = exp_nonpositive(_mm256_sub_pd(_mm256_setzero_pd(), y));
    const __m256d d = one_minus_exp_neg(y, q);
    const __m256d d2 = _mm256_mul_pd(d, d);
    const __m256d num = _mm256_mul_pd(q, _mm256_fmadd_pd(q, _mm256_add_pd(four, q), one));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(fresnel(pi, veps), _mm256_div_pd(num, _mm256_mul_pd(d2, d2))));
  }
  if (i < n) scalar_kernels().matsubara(p + i, out + i, n - i, A, eps);
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{Isa::avx2, "avx2", &thermal_difference, &fresnel_weight,
                                 &matsubara};
  return table;
}

}  // namespace qrefl::simd
