#include "qrefl/potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "qrefl/csv.hpp"
#include "qrefl/parallel.hpp"
#include "qrefl/simd/kernels.hpp"
#include "qrefl/units.hpp"

namespace qrefl {

using C = PhysicalConstants;
using std::numbers::pi;

namespace {

// S(x) = 1/2 sum'_l J(4 pi l x); l = 0 in closed form, l >= 1 as one p integral.
double lifshitz_s(double x, double eps, double rel_tol) {
  const double A = 4.0 * pi * x;
  const double static_term = 2.0 * (eps - 1.0) / (eps + 1.0);
  const auto& k = simd::active_kernels();
  auto integrand = [&](std::span<const double> p, std::span<double> y) {
    k.matsubara(p.data(), y.data(), p.size(), A, eps);
  };
  const double p_end = 1.0 + 60.0 / A;
  const auto br = geometric_breakpoints(1.0, p_end, 2.0, false);
  const auto res = integrate_gk21(integrand, std::span<const double>(br),
                                  {.rel_tol = rel_tol,
                                   .abs_tol = 0.1 * rel_tol * static_term / (A * A * A),
                                   .max_intervals = 4000});
  if (!res.converged) throw numerical_error("Lifshitz G: quadrature did not converge", res.error);
  return 0.5 * (static_term + A * A * A * res.value);
}

double theta_tolerance(const PotentialOptions& opts) { return std::min(1e-11, 1e-2 * opts.quad_rel_tol); }

}  // namespace

double g_function(GModel model, double x, double eps) {
  if (!(x > 0.0)) throw std::domain_error("g_function: x must be positive");
  if (!(eps > 1.0)) throw std::domain_error("g_function: permittivity must exceed 1");
  if (model == GModel::pade) {
    return 1.0 + 3.0 * phi(eps) * (eps + 1.0) / (2.0 * pi * (eps - 1.0) * x);
  }
  return (eps + 1.0) / (eps - 1.0) * lifshitz_s(x, eps, 1e-12);
}

PotentialModel::PotentialModel(AtomSurfacePair pair, double ts, double te, PotentialOptions options)
    : pair_(std::move(pair)), ts_(ts), te_(te), options_(options) {
  if (!(ts >= 0.0) || !(te >= 0.0)) throw std::domain_error("PotentialModel: temperatures must be non-negative");
  if (!(options.quad_rel_tol > 0.0 && options.quad_rel_tol <= 1e-3)) {
    throw std::domain_error("PotentialModel: quad_rel_tol must lie in (0, 1e-3]");
  }
  c3_ = qrefl::c3(pair_, te_);
  c2_ = qrefl::c2(pair_, ts_, te_);
  if (options_.g_model == GModel::lifshitz) {
    theta_scale_ = 2.0 * pi / (3.0 * phi(pair_.permittivity()));
  } else {
    // phi implied by the pair's C4
    const double eps = pair_.permittivity();
    const double phi_eff = 8.0 * pi * pair_.c4() / (3.0 * pair_.polarizability() * C::hbar * C::c);
    theta_scale_ = 2.0 * pi * (eps - 1.0) / (3.0 * phi_eff * (eps + 1.0));
  }
}

double PotentialModel::theta(double x) const {
  if (te_ == 0.0) return 1.0;
  if (options_.g_model == GModel::pade) return 1.0 + theta_scale_ * x;
  return theta_scale_ * x * lifshitz_s(x, pair_.permittivity(), theta_tolerance(options_));
}

PotentialModel PotentialModel::with_table(PotentialTable table) const {
  if (table.ts_ != ts_ || table.te_ != te_ || table.beta4_ != pair_.beta4() ||
      table.options_.g_model != options_.g_model ||
      table.options_.quad_rel_tol != options_.quad_rel_tol) {
    throw std::invalid_argument("with_table: table was built for a different model");
  }
  PotentialModel copy = *this;
  copy.table_ = std::make_shared<const PotentialTable>(std::move(table));
  return copy;
}

double u_eq(const PotentialModel& model, double r) {
  if (!(r > 0.0)) throw std::domain_error("u_eq: r must be positive");
  const double l = model.pair().transition_length();
  const double short_range = -model.pair().c4() / (r * r * r * (r + l));
  if (model.environment_temperature() == 0.0) return short_range;
  const double x = (r + l) / thermal_wavelength(model.environment_temperature());
  return short_range * model.theta(x);
}

NeqValue u_neq_with_error(const PotentialModel& model, double r) {
  if (!(r > 0.0)) throw std::domain_error("u_neq: r must be positive");
  if (model.equilibrium()) return {0.0, 0.0};

  const double ts = model.surface_temperature();
  const double te = model.environment_temperature();
  const double t_hot = std::max(ts, te);
  const double lambda_hot = thermal_wavelength(t_hot);
  const double inf = std::numeric_limits<double>::infinity();
  // Bose factors in x = omega lambda_hot / c; rho = lambda_T / lambda_hot.
  const double rho_s = ts > 0.0 ? t_hot / ts : inf;
  const double rho_e = te > 0.0 ? t_hot / te : inf;
  const double eps = model.pair().permittivity();
  const double s = std::sqrt(eps - 1.0);
  const double tol = model.quad_rel_tol();
  const auto& k = simd::active_kernels();

  // X(a) = int_0^inf x^3 e^{-a x} [n(rho_s x) - n(rho_e x)] dx
  auto frequency_integral = [&](double a) {
    auto f = [&](std::span<const double> x, std::span<double> y) {
      k.thermal_difference(x.data(), y.data(), x.size(), a, rho_s, rho_e);
    };
    const double x_max = 50.0 / (1.0 + a);
    const std::array<double, 4> br{0.0, 0.05 * x_max, 0.25 * x_max, x_max};
    const auto res = integrate_gk21(f, std::span<const double>(br),
                                    {.rel_tol = 0.05 * tol, .abs_tol = 0.0, .max_intervals = 500});
    if (!res.converged) throw numerical_error("u_neq: frequency quadrature did not converge", res.error);
    return res.value;
  };

  // t = s sin(theta)
  auto angular = [&](std::span<const double> theta, std::span<double> y) {
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double sn = std::sin(theta[i]);
      const double cs = std::cos(theta[i]);
      const double t = s * sn;
      const double t2 = t * t;
      const double fresnel = 1.0 + eps * (2.0 * t2 + 1.0) / (1.0 + t2 * (eps + 1.0));
      y[i] = sn * cs * cs * fresnel * frequency_integral(2.0 * r * t / lambda_hot);
    }
  };
  const double theta_c = lambda_hot / (2.0 * r * s);
  std::vector<double> br = {0.0, 0.5 * pi};
  if (theta_c < 0.25 * pi) br = geometric_breakpoints(theta_c, 0.5 * pi, 4.0, true);
  const auto res = integrate_gk21(angular, std::span<const double>(br),
                                  {.rel_tol = tol, .abs_tol = 0.0, .max_intervals = 2000});
  const double prefactor =
      -2.0 * C::hbar * model.pair().polarizability() * C::c * s / (pi * std::pow(lambda_hot, 4));
  if (!res.converged) {
    throw numerical_error("u_neq: angular quadrature did not converge", std::abs(prefactor * res.error));
  }
  return {prefactor * res.value, std::abs(prefactor * res.error)};
}

double u_neq(const PotentialModel& model, double r) { return u_neq_with_error(model, r).value; }

double u_full_direct(const PotentialModel& model, double r) { return u_eq(model, r) + u_neq(model, r); }

double u_full(const PotentialModel& model, double r) {
  if (const auto* t = model.table(); t != nullptr && r >= t->r_min() && r <= t->r_max()) {
    return (*t)(r);
  }
  return u_full_direct(model, r);
}

double c2_asymptote(const PotentialModel& model, double r) {
  if (!(r > 0.0)) throw std::domain_error("c2_asymptote: r must be positive");
  return model.c2() / (r * r);
}

double BarrierInfo::u_bar_kelvin() const { return units::joule_to_kelvin(u_bar); }

BarrierInfo find_barrier(const PotentialModel& model) {
  BarrierInfo info;
  const double ts = model.surface_temperature();
  const double te = model.environment_temperature();
  if (!(te > ts)) return info;

  const double r_lo = model.pair().transition_length();
  const double r_hi = 1e3 * thermal_wavelength(ts > 0.0 ? ts : te);
  const int per_decade = 40;
  const int n = static_cast<int>(std::ceil(per_decade * std::log10(r_hi / r_lo))) + 1;
  const double ds = std::log(r_hi / r_lo) / (n - 1);
  std::vector<double> u(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    u[i] = u_full(model, r_lo * std::exp(ds * static_cast<double>(i)));
  });
  const auto it = std::max_element(u.begin(), u.end());
  const auto imax = static_cast<int>(it - u.begin());
  if (!(*it > 0.0) || imax == 0 || imax == n - 1) return info;

  auto neg_u = [&](double s) { return -u_full(model, std::exp(s)); };
  const double s_lo = std::log(r_lo) + ds * (imax - 1);
  const double s_hi = std::log(r_lo) + ds * (imax + 1);
  const auto [s_best, neg_best] = boost::math::tools::brent_find_minima(neg_u, s_lo, s_hi, 30);

  const double r_bar = std::exp(s_best);
  const double u_bar = -neg_best;
  const double left = u_full(model, r_bar * (1.0 - 1e-3));
  const double right = u_full(model, r_bar * (1.0 + 1e-3));
  if (!(u_bar > 0.0 && left < u_bar && right < u_bar)) return info;
  info.exists = true;
  info.r_bar = r_bar;
  info.u_bar = u_bar;
  return info;
}

PotentialTable tabulate(const PotentialModel& model, double r_min, double r_max, int points_per_decade) {
  if (!(r_min > 0.0) || !(r_max > r_min)) throw std::domain_error("tabulate: need 0 < r_min < r_max");
  if (points_per_decade < 16) throw std::domain_error("tabulate: points_per_decade must be >= 16");

  const auto n = static_cast<std::size_t>(std::ceil(points_per_decade * std::log10(r_max / r_min))) + 1;
  const double s0 = std::log(r_min);
  const double h = std::log(r_max / r_min) / static_cast<double>(n - 1);

  PotentialTable t;
  t.r_grid_.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.r_grid_[i] = std::exp(s0 + h * static_cast<double>(i));
  t.r_grid_.front() = r_min;
  t.r_grid_.back() = r_max;
  t.c4_ = model.pair().c4();
  t.l_ = model.pair().transition_length();
  t.c2_ = model.c2();
  t.has_neq_ = !model.equilibrium();
  t.ts_ = model.surface_temperature();
  t.te_ = model.environment_temperature();
  t.beta4_ = model.pair().beta4();
  t.options_ = model.options();

  std::vector<double> log_theta(n, 0.0);
  std::vector<double> neq(n, 0.0);
  const double te = model.environment_temperature();
  const double lambda_e = te > 0.0 ? thermal_wavelength(te) : 0.0;
  parallel_for(n, [&](std::size_t i) {
    const double r = t.r_grid_[i];
    if (te > 0.0) log_theta[i] = std::log(model.theta((r + t.l_) / lambda_e));
    if (t.has_neq_) neq[i] = u_neq(model, r);
  });

  // w = U_neq (r^2 + r_c^2), r_c^2 = C2 / U_neq(r_min)
  std::vector<double> weight(n, 0.0);
  if (t.has_neq_) {
    const double u0 = neq.front();
    t.rc2_ = (u0 != 0.0 && t.c2_ / u0 > 0.0) ? t.c2_ / u0 : lambda_e * lambda_e;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = t.r_grid_[i];
      weight[i] = neq[i] * (r * r + t.rc2_);
    }
  }
  t.log_theta_ = UniformCubicSpline(s0, h, std::move(log_theta));
  t.neq_weight_ = UniformCubicSpline(s0, h, std::move(weight));

  t.u_values_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = t.r_grid_[i];
    const double theta = std::exp(t.log_theta_.values()[i]);
    t.u_values_[i] = -t.c4_ * theta / (r * r * r * (r + t.l_)) + neq[i];
  }
  return t;
}

PotentialSample PotentialTable::sample(double r) const {
  const double s = std::log(r);
  const double l = l_;

  // -C4 / D with D = r^3 (r + l)
  const double D = r * r * r * (r + l);
  const double D1 = 4.0 * r * r * r + 3.0 * l * r * r;
  const double D2 = 12.0 * r * r + 6.0 * l * r;
  const double P = -c4_ / D;
  const double P1 = c4_ * D1 / (D * D);
  const double P2 = c4_ * (D2 * D - 2.0 * D1 * D1) / (D * D * D);

  const auto lt = log_theta_(s);
  const double th = std::exp(lt.f);
  const double th1 = th * lt.df / r;
  const double th2 = th * (lt.df * lt.df + lt.d2f - lt.df) / (r * r);

  PotentialSample out;
  out.u = P * th;
  out.du = P1 * th + P * th1;
  out.d2u = P2 * th + 2.0 * P1 * th1 + P * th2;
  if (!has_neq_) return out;

  double w = 0.0, w1 = 0.0, w2 = 0.0;  // w and its r-derivatives
  if (s < neq_weight_.x_front()) {
    w = neq_weight_.values().front();
  } else if (s > neq_weight_.x_back()) {
    const double r_end = r_grid_.back();
    const double excess = (neq_weight_.values().back() - c2_) * r_end;
    w = c2_ + excess / r;
    w1 = -excess / (r * r);
    w2 = 2.0 * excess / (r * r * r);
  } else {
    const auto ws = neq_weight_(s);
    w = ws.f;
    w1 = ws.df / r;
    w2 = (ws.d2f - ws.df) / (r * r);
  }
  const double q = r * r + rc2_;
  const double q1 = 2.0 * r;
  out.u += w / q;
  out.du += (w1 * q - w * q1) / (q * q);
  out.d2u += w2 / q - 2.0 * w1 * q1 / (q * q) - 2.0 * w / (q * q) + 2.0 * w * q1 * q1 / (q * q * q);
  return out;
}

void write_table_csv(std::ostream& os, const PotentialTable& table) {
  csv::header(os, {"r_m", "u_J", "u_nK"});
  for (std::size_t i = 0; i < table.r_grid().size(); ++i) {
    const double u = table.u_values()[i];
    os << csv::number(table.r_grid()[i]) << ',' << csv::number(u) << ',' << csv::number(units::joule_to_nK(u))
       << '\n';
  }
}

}  // namespace qrefl
