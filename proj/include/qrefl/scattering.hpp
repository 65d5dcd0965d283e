#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrefl/potential.hpp"
#include "qrefl/units.hpp"

namespace qrefl {

/// Tabulation range used for scattering: [1 pm, 10 m] at 64 points per decade.
inline constexpr double kScatteringTableMin = 1e-12;
inline constexpr double kScatteringTableMax = 10.0;
inline constexpr int kScatteringTablePointsPerDecade = 64;
/// Smallest k_i beta4 accepted by the solver.
inline constexpr double kMinimumKBeta4 = 1e-5;

/// `model` with the scattering table attached (returned unchanged if it
/// already carries a table).
PotentialModel prepare_for_scattering(const PotentialModel& model);

struct ScatteringProblem {
  /// Throws std::domain_error for non-positive energy or k_i beta4 below
  /// kMinimumKBeta4. Attaches the scattering table when the model has none.
  ScatteringProblem(const PotentialModel& model, Incidence incidence);

  PotentialModel model;
  double mass;
  Incidence incidence;
};

struct SolverSettings {
  double badlands_threshold = 1e-3;
  double inner_depth_ratio = 100.0;
  double outer_smallness = 1e-6;
  double step_rel_tol = 1e-10;
  bool estimate_convergence = true;

  /// Throws configuration_error unless all positive and badlands_threshold < 1.
  void validate() const;
};

struct ReflectionResult {
  std::complex<double> amplitude;  // reflected / incident at r_outer
  double probability = 0.0;        // |R|^2 clipped to [0, 1]
  double raw_probability = 0.0;    // |R|^2 before clipping
  double transmission = 0.0;       // absorbed flux fraction 1/|a|^2
  double unitarity_defect = 0.0;   // raw_probability + transmission - 1
  double r_inner = 0.0;
  double r_outer = 0.0;
  double badlands_inner = 0.0;
  double badlands_outer = 0.0;
  double convergence_estimate = 0.0;  // 0 when not estimated
  bool converged = false;
  std::size_t steps = 0;

  /// -ln|R|^2; from the absorbed flux, -ln(1 - T), when T < 1/2.
  double minus_log_probability() const;
};

struct LocalMomentum {
  double magnitude = 0.0;  // |p| in kg m/s
  bool forbidden = false;  // E_i < U(r)
};

/// Throws std::domain_error for r <= 0.
LocalMomentum local_momentum(const ScatteringProblem& problem, double r);

/// |d(hbar/p)/dr|. Throws std::domain_error in the forbidden region.
double badlands(const ScatteringProblem& problem, double r);

/// Throws configuration_error when no admissible matching point exists and
/// numerical_error when the integrator fails.
ReflectionResult reflection_coefficient(const ScatteringProblem& problem, const SolverSettings& settings = {});

struct CurvePoint {
  double velocity = 0.0;
  Incidence incidence;
  std::optional<ReflectionResult> result;
  std::string error;  // non-empty when the point failed

  bool converged() const { return result.has_value() && result->converged; }
};

/// Independent solves in parallel; failures are recorded per point.
std::vector<CurvePoint> reflection_curve(const PotentialModel& model, double mass, std::span<const double> velocities,
                                         const SolverSettings& settings = {});

/// CSV with header `v_m_per_s,E_nK,k_beta4,R2,converged`.
void write_curve_csv(std::ostream& os, std::span<const CurvePoint> curve, double beta4);

}  // namespace qrefl
