#include "qrefl/scattering.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <boost/numeric/odeint/integrate/integrate_adaptive.hpp>
#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "qrefl/csv.hpp"
#include "qrefl/errors.hpp"
#include "qrefl/parallel.hpp"

namespace qrefl {

namespace odeint = boost::numeric::odeint;
using C = PhysicalConstants;
using cplx = std::complex<double>;

PotentialModel prepare_for_scattering(const PotentialModel& model) {
  if (model.table() != nullptr) return model;
  return model.with_table(
      tabulate(model, kScatteringTableMin, kScatteringTableMax, kScatteringTablePointsPerDecade));
}

ScatteringProblem::ScatteringProblem(const PotentialModel& m, Incidence inc)
    : model(prepare_for_scattering(m)), mass(m.pair().mass()), incidence(inc) {
  if (!(incidence.energy > 0.0)) throw std::domain_error("ScatteringProblem: incidence energy must be positive");
  if (std::abs(incidence.mass - mass) > 1e-12 * mass) {
    throw std::domain_error("ScatteringProblem: incidence mass differs from the species mass");
  }
  if (k_beta4(incidence, model.pair().beta4()) < kMinimumKBeta4 * (1.0 - 1e-12)) {
    throw std::domain_error(
        "ScatteringProblem: k_i beta4 below 1e-5; use the low-velocity asymptotes "
        "(r2_equilibrium_asymptote / r2_nonequilibrium_asymptote) instead");
  }
}

void SolverSettings::validate() const {
  if (!(badlands_threshold > 0.0 && badlands_threshold < 1.0)) {
    throw configuration_error("solver: badlands_threshold must lie in (0, 1)");
  }
  if (!(inner_depth_ratio > 0.0)) throw configuration_error("solver: inner_depth_ratio must be positive");
  if (!(outer_smallness > 0.0)) throw configuration_error("solver: outer_smallness must be positive");
  if (!(step_rel_tol > 0.0)) throw configuration_error("solver: step_rel_tol must be positive");
}

double ReflectionResult::minus_log_probability() const {
  if (transmission < 0.5) return -std::log1p(-transmission);
  return -std::log(raw_probability);
}

namespace {

// K = k(r)^2 = 2m (E - U) / hbar^2 and its first derivative.
struct LocalK {
  double k2;
  double dk2;
  double u;
};

class Wave {
 public:
  explicit Wave(const ScatteringProblem& p)
      : table_(*p.model.table()), scale_(2.0 * p.mass / (C::hbar * C::hbar)), energy_(p.incidence.energy) {}

  LocalK at(double r) const {
    const auto s = table_.sample(r);
    return {scale_ * (energy_ - s.u), -scale_ * s.du, s.u};
  }
  double k2(double r) const { return scale_ * (energy_ - table_(r)); }
  double energy() const { return energy_; }

 private:
  const PotentialTable& table_;
  double scale_;
  double energy_;
};

double badlands_of(const LocalK& k) { return std::abs(k.dk2) / (2.0 * std::pow(k.k2, 1.5)); }

constexpr double kScanRatio = 1.0746078283213176;  // 10^(1/32)

double find_inner(const Wave& w, const SolverSettings& s, double start) {
  for (double r = start; r > 1e-20; r /= kScanRatio) {
    const auto k = w.at(r);
    if (k.u < -s.inner_depth_ratio * w.energy() && k.k2 > 0.0 && badlands_of(k) < s.badlands_threshold) return r;
  }
  throw configuration_error("no admissible inner matching point above 1e-20 m");
}

double find_outer(const Wave& w, const SolverSettings& s, double start) {
  for (double r = start; r < 1e4; r *= kScanRatio) {
    const auto k = w.at(r);
    if (std::abs(k.u) < s.outer_smallness * w.energy() && k.k2 > 0.0 && badlands_of(k) < s.badlands_threshold) {
      return r;
    }
  }
  throw configuration_error("no admissible outer matching point below 1e4 m");
}

struct Solve {
  cplx a;  // incident amplitude at r_outer, normalised state
  cplx b;  // reflected amplitude
  double log_scale;
  std::size_t steps;
};

using State = std::array<double, 4>;

// u'' = -K u integrated outward in chunks. Within a chunk the state is
// (u, u'/kappa) with kappa fixed; it is renormalised between chunks.
Solve integrate(const Wave& w, double r_in, double r_out, double tol) {
  const auto kin = w.at(r_in);
  const double k = std::sqrt(kin.k2);
  const double dk = kin.dk2 / (2.0 * k);
  cplx u = 1.0 / std::sqrt(k);
  cplx du = cplx(-dk / (2.0 * k), -k) * u;

  double log_scale = 0.0;
  std::size_t steps = 0;
  // error relative to |x| only
  using Stepper = odeint::runge_kutta_fehlberg78<State>;
  using Checker = odeint::default_error_checker<double, Stepper::algebra_type, Stepper::operations_type>;
  odeint::controlled_runge_kutta<Stepper, Checker> stepper(Checker(tol, tol, 1.0, 0.0));
  const double chunk_ratio = std::pow(2.0, 0.25);
  const auto n_chunks = static_cast<std::size_t>(std::ceil(std::log(r_out / r_in) / std::log(chunk_ratio)));
  const double growth = std::pow(r_out / r_in, 1.0 / static_cast<double>(n_chunks));

  double r = r_in;
  for (std::size_t c = 0; c < n_chunks; ++c) {
    const double r_next = c + 1 == n_chunks ? r_out : r * growth;
    const double kappa = std::sqrt(std::abs(w.k2(r))) + 1.0 / r;
    const double norm = std::sqrt(std::norm(u) + std::norm(du / kappa));
    u /= norm;
    du /= norm;
    log_scale += std::log(norm);

    // tau = kappa (r - r_chunk)
    State x{u.real(), u.imag(), du.real() / kappa, du.imag() / kappa};
    const double r0 = r;
    auto rhs = [&](const State& y, State& dy, double tau) {
      const double kk = w.k2(r0 + tau / kappa) / (kappa * kappa);
      dy[0] = y[2];
      dy[1] = y[3];
      dy[2] = -kk * y[0];
      dy[3] = -kk * y[1];
    };
    const double tau_end = (r_next - r) * kappa;
    steps += odeint::integrate_adaptive(stepper, rhs, x, 0.0, tau_end, std::min(0.1, tau_end));
    if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || !std::isfinite(x[2]) || !std::isfinite(x[3])) {
      throw numerical_error("scattering: integrator produced a non-finite state", tol);
    }
    u = {x[0], x[1]};
    du = cplx(x[2], x[3]) * kappa;
    r = r_next;
  }

  const auto kout = w.at(r_out);
  const double ko = std::sqrt(kout.k2);
  const double dko = kout.dk2 / (2.0 * ko);
  const double amp = 1.0 / std::sqrt(ko);
  const cplx phi_minus = amp;
  const cplx phi_plus = amp;
  const cplx dphi_minus = cplx(-dko / (2.0 * ko), -ko) * amp;
  const cplx dphi_plus = cplx(-dko / (2.0 * ko), ko) * amp;
  const cplx wronskian(0.0, 2.0);
  return {(u * dphi_plus - du * phi_plus) / wronskian, (du * phi_minus - u * dphi_minus) / wronskian, log_scale,
          steps};
}

ReflectionResult solve_at(const Wave& w, double r_in, double r_out, double tol) {
  const auto s = integrate(w, r_in, r_out, tol);
  ReflectionResult res;
  res.amplitude = s.b / s.a;
  res.raw_probability = std::norm(res.amplitude);
  res.transmission = std::exp(-2.0 * (s.log_scale + std::log(std::abs(s.a))));
  res.unitarity_defect = res.raw_probability + res.transmission - 1.0;
  res.probability = std::clamp(res.raw_probability, 0.0, 1.0);
  res.r_inner = r_in;
  res.r_outer = r_out;
  res.badlands_inner = badlands_of(w.at(r_in));
  res.badlands_outer = badlands_of(w.at(r_out));
  res.steps = s.steps;
  return res;
}

}  // namespace

LocalMomentum local_momentum(const ScatteringProblem& problem, double r) {
  if (!(r > 0.0)) throw std::domain_error("local_momentum: r must be positive");
  const double diff = problem.incidence.energy - u_full(problem.model, r);
  return {std::sqrt(2.0 * problem.mass * std::abs(diff)), diff < 0.0};
}

double badlands(const ScatteringProblem& problem, double r) {
  if (!(r > 0.0)) throw std::domain_error("badlands: r must be positive");
  const auto k = Wave(problem).at(r);
  if (!(k.k2 > 0.0)) throw std::domain_error("badlands: r lies in the classically forbidden region");
  return badlands_of(k);
}

ReflectionResult reflection_coefficient(const ScatteringProblem& problem, const SolverSettings& settings) {
  settings.validate();
  const Wave w(problem);
  const double l = problem.model.pair().transition_length();
  const auto barrier = find_barrier(problem.model);
  const double r_in = find_inner(w, settings, l);
  const double r_out = find_outer(w, settings, barrier.exists ? std::max(l, barrier.r_bar) : l);

  auto res = solve_at(w, r_in, r_out, settings.step_rel_tol);
  if (!settings.estimate_convergence) {
    res.converged = std::abs(res.unitarity_defect) < 1e-6;
    return res;
  }
  const auto refined = solve_at(w, 0.5 * r_in, 2.0 * r_out, 0.5 * settings.step_rel_tol);
  res.convergence_estimate = std::abs(refined.probability - res.probability);
  res.converged = res.convergence_estimate < 1e-4 && std::abs(res.unitarity_defect) < 1e-6;
  return res;
}

std::vector<CurvePoint> reflection_curve(const PotentialModel& model, double mass, std::span<const double> velocities,
                                         const SolverSettings& settings) {
  settings.validate();
  const auto tabulated = prepare_for_scattering(model);
  std::vector<CurvePoint> out(velocities.size());
  parallel_for(velocities.size(), [&](std::size_t i) {
    auto& pt = out[i];
    pt.velocity = velocities[i];
    try {
      pt.incidence = incidence_from_velocity(velocities[i], mass);
      pt.result = reflection_coefficient(ScatteringProblem(tabulated, pt.incidence), settings);
    } catch (const std::exception& e) {
      pt.error = e.what();
    }
  });
  return out;
}

void write_curve_csv(std::ostream& os, std::span<const CurvePoint> curve, double beta4) {
  csv::header(os, {"v_m_per_s", "E_nK", "k_beta4", "R2", "converged"});
  for (const auto& pt : curve) {
    const double e = pt.incidence.energy;
    os << csv::number(pt.velocity) << ',' << csv::number(units::joule_to_nK(e)) << ','
       << csv::number(pt.incidence.wavenumber * beta4) << ','
       << csv::number(pt.result ? pt.result->probability : std::nan("")) << ',' << (pt.converged() ? 1 : 0) << '\n';
  }
}

}  // namespace qrefl
