#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "qrefl/materials.hpp"
#include "qrefl/quadrature.hpp"
#include "qrefl/spline.hpp"

namespace qrefl {

/// Thermal-equilibrium interpolating function used in U_eq.
enum class GModel {
  /// Matsubara sum of the Lifshitz formula for static alpha0 and eps0.
  lifshitz,
  /// G(x) = 1 + a/x, the sum of the two asymptotic forms.
  pade,
};

/// G(x) in U_eq = -(k_B T alpha0 / 4 r^3) (eps-1)/(eps+1) G(x), x = r / lambda_T.
/// Both models satisfy G -> 1 for x -> inf and
/// G -> 3 phi lambda_T (eps+1) / (2 pi r (eps-1)) for x -> 0.
double g_function(GModel model, double x, double eps);

struct PotentialOptions {
  double quad_rel_tol = 1e-8;
  GModel g_model = GModel::lifshitz;
};

class PotentialTable;

/// Atom-surface pair at surface temperature T_S and environment temperature
/// T_E. Immutable; copies share any attached table.
class PotentialModel {
 public:
  PotentialModel(AtomSurfacePair pair, double surface_temperature, double environment_temperature,
                 PotentialOptions options = {});

  const AtomSurfacePair& pair() const { return pair_; }
  double surface_temperature() const { return ts_; }
  double environment_temperature() const { return te_; }
  const PotentialOptions& options() const { return options_; }
  double quad_rel_tol() const { return options_.quad_rel_tol; }
  bool equilibrium() const { return ts_ == te_; }

  /// C3(T_E) and C2(T_S, T_E) of the pair.
  double c3() const { return c3_; }
  double c2() const { return c2_; }

  /// Short-range-normalised equilibrium factor, U_eq = -C4 Theta(x) / (r^3 (r+l))
  /// with x = (r + l) / lambda_{T_E}; Theta(0) = 1 and
  /// Theta ~ (2 pi x / 3 phi)(eps-1)/(eps+1) for large x.
  double theta(double x) const;

  const PotentialTable* table() const { return table_.get(); }
  /// Copy with `table` attached; throws std::invalid_argument if the table
  /// was built for different temperatures, pair or options.
  PotentialModel with_table(PotentialTable table) const;

 private:
  AtomSurfacePair pair_;
  double ts_;
  double te_;
  PotentialOptions options_;
  double c3_;
  double c2_;
  double theta_scale_;  // 2 pi / (3 phi), phi consistent with the G model
  std::shared_ptr<const PotentialTable> table_;
};

/// U and its first two radial derivatives.
struct PotentialSample {
  double u = 0.0;
  double du = 0.0;
  double d2u = 0.0;
};

/// Tabulated U_full on a log-spaced grid. U_eq is stored through the smooth
/// factor ln Theta(s) and U_neq through w = U_neq (r^2 + r_c^2), both as
/// cubic splines in s = ln r, which keeps value and derivatives accurate.
class PotentialTable {
 public:
  const std::vector<double>& r_grid() const { return r_grid_; }
  const std::vector<double>& u_values() const { return u_values_; }
  int interpolant_order() const { return 3; }
  double r_min() const { return r_grid_.front(); }
  double r_max() const { return r_grid_.back(); }

  /// Interpolated U, U', U''. Outside the grid the components continue with
  /// their asymptotic forms (flat near the surface, C2/r^2 with a 1/r
  /// correction far away).
  PotentialSample sample(double r) const;
  double operator()(double r) const { return sample(r).u; }

 private:
  friend PotentialTable tabulate(const PotentialModel&, double, double, int);
  friend class PotentialModel;

  std::vector<double> r_grid_;
  std::vector<double> u_values_;
  UniformCubicSpline log_theta_;
  UniformCubicSpline neq_weight_;
  double c4_ = 0.0;
  double l_ = 0.0;
  double rc2_ = 0.0;
  double c2_ = 0.0;
  bool has_neq_ = false;
  // identity of the model the table belongs to
  double ts_ = 0.0;
  double te_ = 0.0;
  double beta4_ = 0.0;
  PotentialOptions options_;
};

struct NeqValue {
  double value = 0.0;
  double error = 0.0;
};

/// Equilibrium part at T_E: -C4 Theta(x) / (r^3 (r + l)) with x = (r+l)/lambda_T,
/// Theta = (2 pi x / 3 phi) (eps-1)/(eps+1) G(x). Throws std::domain_error for r <= 0.
double u_eq(const PotentialModel& model, double r);

/// Non-equilibrium term by adaptive quadrature over (omega, t) after the
/// analytic r' integral. Exactly 0 at T_S == T_E. Throws numerical_error when
/// the quadrature misses quad_rel_tol.
double u_neq(const PotentialModel& model, double r);
NeqValue u_neq_with_error(const PotentialModel& model, double r);

/// u_eq + u_neq, through the attached table when r lies inside it.
double u_full(const PotentialModel& model, double r);
/// u_eq + u_neq by direct evaluation, ignoring any table.
double u_full_direct(const PotentialModel& model, double r);

/// C2 / r^2.
double c2_asymptote(const PotentialModel& model, double r);

struct BarrierInfo {
  bool exists = false;
  double r_bar = 0.0;  // m
  double u_bar = 0.0;  // J
  double u_bar_kelvin() const;
};

/// Global maximum of u_full on [l, 1e3 lambda] for T_E > T_S, refined to a
/// relative position tolerance of 1e-4; exists=false otherwise.
BarrierInfo find_barrier(const PotentialModel& model);

/// Throws std::domain_error unless 0 < r_min < r_max and points_per_decade >= 16.
PotentialTable tabulate(const PotentialModel& model, double r_min, double r_max,
                        int points_per_decade);

/// CSV with header `r_m,u_J,u_nK`, one row per grid point.
void write_table_csv(std::ostream& os, const PotentialTable& table);

}  // namespace qrefl
