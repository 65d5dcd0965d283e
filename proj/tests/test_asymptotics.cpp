#include "doctest.h"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qrefl/asymptotics.hpp"
#include "qrefl/catalog.hpp"
#include "qrefl/units.hpp"

using namespace qrefl;
using C = PhysicalConstants;

namespace {

std::vector<std::pair<double, double>> synthetic(double b, double gamma, std::size_t n) {
  // (b v)^gamma spans [1e-3, 5]
  const double v_lo = std::pow(1e-3, 1.0 / gamma) / b;
  const double v_hi = std::pow(5.0, 1.0 / gamma) / b;
  std::vector<std::pair<double, double>> out;
  for (double v : log_spaced(v_lo, v_hi, n)) out.emplace_back(v, r2_nonequilibrium_asymptote(v, b, gamma));
  return out;
}

}  // namespace

TEST_CASE("closed forms") {
  CHECK(r2_equilibrium_asymptote(0.0) == 1.0);
  CHECK(r2_equilibrium_asymptote(0.25) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(std::log(r2_equilibrium_asymptote(0.3)) - std::log(r2_equilibrium_asymptote(0.1)) ==
        doctest::Approx(-4.0 * 0.2).epsilon(1e-14));
  CHECK_THROWS_AS(r2_equilibrium_asymptote(-1e-3), std::domain_error);

  const double b = 2.0 / units::mm_per_s;  // 2 s/mm in s/m
  CHECK(r2_nonequilibrium_asymptote(0.0, b, 6.5) == 1.0);
  CHECK(r2_nonequilibrium_asymptote(0.3e-3, b, 6.5) == doctest::Approx(0.965).epsilon(1e-3));
  CHECK(r2_nonequilibrium_asymptote(0.3e-3, b, 6.5) == doctest::Approx(std::exp(-std::pow(0.6, 6.5))).epsilon(1e-15));
  CHECK(r2_nonequilibrium_asymptote(0.1, 3.0, 1.0) == doctest::Approx(std::exp(-0.3)).epsilon(1e-15));
  CHECK_THROWS_AS(r2_nonequilibrium_asymptote(-1.0, b, 2.0), std::domain_error);
  CHECK_THROWS_AS(r2_nonequilibrium_asymptote(1.0, 0.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(r2_nonequilibrium_asymptote(1.0, b, 0.5), std::domain_error);
}

TEST_CASE("gamma = 1 identifies b = 4 m beta4 / hbar") {
  const auto pair = Catalog::builtin().pair("Rb87", "Si");
  const double b = 4.0 * pair.mass() * pair.beta4() / C::hbar;
  for (double kb : {0.001, 0.01, 0.1}) {
    const double v = kb * C::hbar / (pair.mass() * pair.beta4());
    CHECK(r2_nonequilibrium_asymptote(v, b, 1.0) == doctest::Approx(r2_equilibrium_asymptote(kb)).epsilon(1e-13));
  }
}

TEST_CASE("analytic exponent") {
  const auto cat = Catalog::builtin();
  const auto rb = cat.pair("Rb87", "Si");
  CHECK(gamma_analytic(rb, 300.0, 300.0) == 1.0);
  CHECK(gamma_analytic(rb, 1200.0, 300.0) == 1.0);
  CHECK(gamma_analytic(rb, 300.0, 1200.0) == doctest::Approx(6.5).epsilon(0.1));
  CHECK(gamma_analytic(cat.pair("He4*", "Si"), 300.0, 1200.0) == doctest::Approx(1.7).epsilon(0.1));
  const double he = gamma_analytic(cat.pair("He4", "Si"), 300.0, 1200.0);
  CHECK(std::abs((he - 1.0) - 0.004) < 0.005);
  CHECK_THROWS_AS(gamma_analytic(rb, -1.0, 300.0), std::domain_error);

  double prev = 1.0;
  for (double te = 350.0; te <= 2000.0; te += 50.0) {
    const double g = gamma_analytic(rb, 300.0, te);
    CHECK(g > prev);
    prev = g;
  }
}

TEST_CASE("fit exactly inverts its own model") {
  for (double b_mm : {0.1, 0.7, 2.0, 10.0}) {
    for (double gamma : {1.0, 1.004, 1.7, 6.5, 10.0}) {
      CAPTURE(b_mm);
      CAPTURE(gamma);
      const double b = b_mm / units::mm_per_s;
      const auto data = synthetic(b, gamma, 12);
      const auto fit = fit_asymptote(std::span<const std::pair<double, double>>(data));
      CHECK(fit.gamma_fit == doctest::Approx(gamma).epsilon(1e-10));
      CHECK(fit.b_fit == doctest::Approx(b).epsilon(1e-10));
      CHECK(fit.residual < 1e-10);
      CHECK(fit.points == 12);
      CHECK(fit.v_min == doctest::Approx(data.front().first));
      CHECK(fit.v_max == doctest::Approx(data.back().first));
    }
  }
}

TEST_CASE("fit admissibility") {
  const double b = 2e3;
  auto data = synthetic(b, 6.5, 6);
  data.emplace_back(1e-4, 1.0);
  data.emplace_back(2e-4, 0.0);
  data.emplace_back(-1.0, 0.5);
  const auto fit = fit_asymptote(std::span<const std::pair<double, double>>(data));
  CHECK(fit.points == 6);
  CHECK(fit.gamma_fit == doctest::Approx(6.5).epsilon(1e-10));

  const auto few = synthetic(b, 6.5, 4);
  CHECK_THROWS_AS(fit_asymptote(std::span<const std::pair<double, double>>(few)), std::domain_error);

  std::vector<FitPoint> decreasing;
  for (double v : {1.0, 2.0, 3.0, 4.0, 5.0}) decreasing.push_back({v, 1.0 / v});
  CHECK_THROWS_AS(fit_asymptote(std::span<const FitPoint>(decreasing)), std::domain_error);

  std::vector<FitPoint> deep;
  for (double v : {1.0, 2.0, 3.0, 4.0, 5.0}) deep.push_back({v, 20.0 * v});
  CHECK_THROWS_AS(fit_asymptote(std::span<const FitPoint>(deep)), std::domain_error);

  std::vector<FitPoint> sublinear;
  for (double v : {1.0, 2.0, 3.0, 4.0, 5.0}) sublinear.push_back({v, 1e-3 * std::pow(v, 0.9)});
  CHECK(fit_asymptote(std::span<const FitPoint>(sublinear)).gamma_fit == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("barrier scales") {
  const auto pair = Catalog::builtin().pair("Rb87", "Si");
  const PotentialModel m(pair, 300.0, 1200.0);
  const auto barrier = find_barrier(m);
  const auto s = barrier_scales(pair, barrier, pair.mass());
  CHECK(s.t_bar == doctest::Approx(barrier.u_bar_kelvin()).epsilon(1e-12));
  CHECK(s.v_bar == doctest::Approx(0.49e-3).epsilon(0.02));
  CHECK(s.k_beta4_bar == doctest::Approx(1.21).epsilon(0.1));
  CHECK(s.k_beta4_bar == doctest::Approx(pair.mass() * s.v_bar * pair.beta4() / C::hbar).epsilon(1e-14));
  CHECK_THROWS_AS(barrier_scales(pair, BarrierInfo{}, pair.mass()), std::domain_error);
}

TEST_CASE("default fit window") {
  const auto pair = Catalog::builtin().pair("Rb87", "Si");
  const double to_kb = pair.mass() * pair.beta4() / C::hbar;
  const auto [lo, hi] = default_fit_window(PotentialModel(pair, 300.0, 1200.0));
  const auto kb_bar =
      barrier_scales(pair, find_barrier(PotentialModel(pair, 300.0, 1200.0)), pair.mass()).k_beta4_bar;
  CHECK(lo * to_kb == doctest::Approx(0.02 * kb_bar));
  CHECK(hi * to_kb == doctest::Approx(0.25 * kb_bar));
  const auto [elo, ehi] = default_fit_window(PotentialModel(pair, 0.0, 0.0));
  CHECK(elo * to_kb == doctest::Approx(0.005));
  CHECK(ehi * to_kb == doctest::Approx(0.03));

  const auto he = Catalog::builtin().pair("He4", "Si");
  const auto [hlo, hhi] = default_fit_window(PotentialModel(he, 300.0, 1200.0));
  const double he_kb = he.mass() * he.beta4() / C::hbar;
  CHECK(hlo * he_kb >= kMinimumKBeta4);
  CHECK(hhi > hlo);
}

TEST_CASE("log spacing and fit CSV") {
  const auto v = log_spaced(1.0, 100.0, 3);
  REQUIRE(v.size() == 3);
  CHECK(v[1] == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(log_spaced(2.0, 5.0, 1).front() == 2.0);
  CHECK_THROWS_AS(log_spaced(0.0, 1.0, 3), std::domain_error);
  CHECK_THROWS_AS(log_spaced(1.0, 2.0, 0), std::domain_error);

  FitReport r{"Rb87", "Si", 300.0, 1200.0, {6.5, 2000.0, 1e-4, 2e-4, 0.01, 12}, 6.48};
  std::ostringstream os;
  write_fit_csv(os, std::span<const FitReport>(&r, 1));
  CHECK(os.str() ==
        "species,surface,T_S,T_E,gamma_fit,b_fit_s_per_m,gamma_analytic,residual\n"
        "Rb87,Si,3.00000000e+02,1.20000000e+03,6.50000000e+00,2.00000000e+03,6.48000000e+00,1.00000000e-02\n");
}
