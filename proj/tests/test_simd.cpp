#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qrefl/simd/kernels.hpp"

using namespace qrefl::simd;

namespace {

// Relative difference; magnitudes below 1e-290 count as zero.
double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max(std::abs(a[i]), std::abs(b[i]));
    if (scale < 1e-290) continue;
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

std::vector<double> log_uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  std::vector<double> v(n);
  for (auto& x : v) x = std::exp(u(rng));
  return v;
}

}  // namespace

TEST_CASE("scalar table is complete") {
  const auto& s = scalar_kernels();
  CHECK(s.isa == Isa::scalar);
  CHECK(s.thermal_difference != nullptr);
  CHECK(s.fresnel_weight != nullptr);
  CHECK(s.matsubara != nullptr);
}

TEST_CASE("scalar kernels match direct formulas") {
  const double eps = 12.0;
  const std::vector<double> p{1.0, 1.5, 3.0, 40.0};
  std::vector<double> out(p.size());
  scalar_kernels().fresnel_weight(p.data(), out.data(), p.size(), eps);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double s = std::sqrt(eps - 1.0 + p[i] * p[i]);
    const double expected = (2 * p[i] * p[i] - 1) * (eps * p[i] - s) / (eps * p[i] + s) + (s - p[i]) / (s + p[i]);
    CHECK(out[i] == doctest::Approx(expected).epsilon(1e-15));
  }

  const double A = 0.7;
  scalar_kernels().matsubara(p.data(), out.data(), p.size(), A, eps);
  std::vector<double> f(p.size());
  scalar_kernels().fresnel_weight(p.data(), f.data(), p.size(), eps);
  for (std::size_t i = 0; i < p.size(); ++i) {
    double sum = 0.0;
    for (int l = 1; l < 400; ++l) sum += std::pow(l, 3) * std::exp(-A * l * p[i]);
    CHECK(out[i] == doctest::Approx(f[i] * sum).epsilon(1e-12));
  }

  const std::vector<double> x{0.01, 0.5, 3.0, 30.0};
  scalar_kernels().thermal_difference(x.data(), out.data(), x.size(), 0.2, 4.0, 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double expected =
        std::pow(x[i], 3) * std::exp(-0.2 * x[i]) * (1.0 / std::expm1(4.0 * x[i]) - 1.0 / std::expm1(x[i]));
    CHECK(out[i] == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("dispatch honours QREFL_SIMD") {
  const auto& active = active_kernels();
  const char* forced = std::getenv("QREFL_SIMD");
  if (forced != nullptr && std::string(forced) == "scalar") {
    CHECK(active.isa == Isa::scalar);
  } else if (avx2_kernels() != nullptr) {
    CHECK(active.isa == Isa::avx2);
  } else {
    CHECK(active.isa == Isa::scalar);
  }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const KernelTable* v = avx2_kernels();
  if (v == nullptr) {
    MESSAGE("AVX2 variant not available on this build or CPU; equivalence not exercised");
    return;
  }
  const auto& s = scalar_kernels();
  std::mt19937_64 rng(20240611);
  const double inf = std::numeric_limits<double>::infinity();

  for (std::size_t n : {1u, 3u, 4u, 21u, 1003u}) {
    CAPTURE(n);
    const auto x = log_uniform(rng, n, 1e-6, 800.0);
    std::vector<double> a(n), b(n);
    for (double decay : {0.0, 0.3, 25.0}) {
      for (auto [rs, re] : {std::pair{4.0, 1.0}, std::pair{1.0, 4.0}, std::pair{inf, 1.0}, std::pair{1.0, inf}}) {
        s.thermal_difference(x.data(), a.data(), n, decay, rs, re);
        v->thermal_difference(x.data(), b.data(), n, decay, rs, re);
        CHECK(max_rel_diff(a, b) < 1e-13);
      }
    }

    const auto p = log_uniform(rng, n, 1.0, 1e4);
    for (double eps : {1.5, 12.0, 1e4}) {
      s.fresnel_weight(p.data(), a.data(), n, eps);
      v->fresnel_weight(p.data(), b.data(), n, eps);
      CHECK(max_rel_diff(a, b) < 1e-13);
      for (double A : {1e-6, 0.01, 1.0, 60.0, 700.0}) {
        s.matsubara(p.data(), a.data(), n, A, eps);
        v->matsubara(p.data(), b.data(), n, A, eps);
        CHECK(max_rel_diff(a, b) < 1e-12);
      }
    }
  }
}

TEST_CASE("thermal kernel at x = 0 and near the exponent limit") {
  const std::vector<double> x{0.0, 1e-300, 1.0, 300.0, 1e5};
  std::vector<double> a(x.size()), b(x.size());
  scalar_kernels().thermal_difference(x.data(), a.data(), x.size(), 1.0, 2.0, 1.0);
  CHECK(a[0] == 0.0);
  for (double v : a) CHECK(std::isfinite(v));

  const KernelTable* v = avx2_kernels();
  if (v == nullptr) return;
  v->thermal_difference(x.data(), b.data(), x.size(), 1.0, 2.0, 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CAPTURE(x[i]);
    CHECK(std::isfinite(b[i]));
    CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-13));
  }
}
