#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qrefl/potential.hpp"
#include "qrefl/scattering.hpp"

namespace qrefl {

/// exp(-4 k_i beta4). Throws std::domain_error for negative input.
double r2_equilibrium_asymptote(double k_beta4);

/// sqrt(1 + 4 beta0); 1 when T_E <= T_S.
double gamma_analytic(const AtomSurfacePair& pair, double surface_temperature, double environment_temperature);

/// exp(-(b v)^gamma). Throws std::domain_error unless v >= 0, b > 0, gamma >= 1.
double r2_nonequilibrium_asymptote(double velocity, double b, double gamma);

struct FitPoint {
  double velocity = 0.0;      // m/s
  double minus_log_r2 = 0.0;  // -ln|R|^2
};

/// Points with -ln|R|^2 outside (min_minus_log_r2, max_minus_log_r2) are
/// dropped before fitting.
struct FitOptions {
  double min_minus_log_r2 = 1e-12;
  double max_minus_log_r2 = 13.815510557964274;  // |R|^2 = 1e-6
  std::size_t min_points = 5;
};

struct AsymptoteFit {
  double gamma_fit = 0.0;
  double b_fit = 0.0;  // s/m
  double v_min = 0.0;
  double v_max = 0.0;
  double residual = 0.0;  // RMS in ln(-ln|R|^2)
  std::size_t points = 0;
};

/// Least squares of ln(-ln|R|^2) = gamma ln v + gamma ln b. Throws
/// std::domain_error with fewer than min_points admissible points or a
/// non-positive fitted gamma. Equilibrium curves fit slightly below 1.
AsymptoteFit fit_asymptote(std::span<const FitPoint> points, const FitOptions& options = {});
/// Same on (v, |R|^2) pairs; |R|^2 >= 1 is excluded.
AsymptoteFit fit_asymptote(std::span<const std::pair<double, double>> v_r2, const FitOptions& options = {});
/// Same on converged points of a solver curve, using the absorbed flux for -ln|R|^2.
AsymptoteFit fit_asymptote(std::span<const CurvePoint> curve, const FitOptions& options = {});

struct BarrierScales {
  double v_bar = 0.0;        // m/s
  double k_beta4_bar = 0.0;  // dimensionless
  double t_bar = 0.0;        // K
};

/// Throws std::domain_error when the barrier does not exist.
BarrierScales barrier_scales(const AtomSurfacePair& pair, const BarrierInfo& barrier, double mass);

/// Low-velocity window for fitting: k_i beta4 in [0.02, 0.25] (k_i beta4)_bar
/// when a barrier exists, [0.005, 0.03] otherwise; never below the solver minimum.
std::pair<double, double> default_fit_window(const PotentialModel& model);

/// n log-spaced velocities over [v_lo, v_hi].
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

struct FitReport {
  std::string species;
  std::string surface;
  double ts = 0.0;
  double te = 0.0;
  AsymptoteFit fit;
  double gamma_analytic = 0.0;
};

/// CSV with header `species,surface,T_S,T_E,gamma_fit,b_fit_s_per_m,gamma_analytic,residual`.
void write_fit_csv(std::ostream& os, std::span<const FitReport> reports);

}  // namespace qrefl
