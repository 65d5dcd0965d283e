#include "qrefl/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "qrefl/csv.hpp"

namespace qrefl {

double r2_equilibrium_asymptote(double k_beta4) {
  if (!(k_beta4 >= 0.0)) throw std::domain_error("r2_equilibrium_asymptote: k_i beta4 must be >= 0");
  return std::exp(-4.0 * k_beta4);
}

double gamma_analytic(const AtomSurfacePair& pair, double ts, double te) {
  if (!(ts >= 0.0) || !(te >= 0.0)) throw std::domain_error("gamma_analytic: temperatures must be >= 0");
  if (te <= ts) return 1.0;
  return std::sqrt(1.0 + 4.0 * beta0(pair, ts, te));
}

double r2_nonequilibrium_asymptote(double v, double b, double gamma) {
  if (!(v >= 0.0) || !(b > 0.0) || !(gamma >= 1.0)) {
    throw std::domain_error("r2_nonequilibrium_asymptote: need v >= 0, b > 0, gamma >= 1");
  }
  return std::exp(-std::pow(b * v, gamma));
}

AsymptoteFit fit_asymptote(std::span<const FitPoint> points, const FitOptions& options) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : points) {
    if (!(p.velocity > 0.0) || !std::isfinite(p.velocity)) continue;
    if (!(p.minus_log_r2 > options.min_minus_log_r2 && p.minus_log_r2 < options.max_minus_log_r2)) continue;
    xy.emplace_back(std::log(p.velocity), std::log(p.minus_log_r2));
  }
  if (xy.size() < options.min_points) {
    throw std::domain_error("fit_asymptote: " + std::to_string(xy.size()) + " admissible points, need " +
                            std::to_string(options.min_points));
  }
  const auto n = static_cast<double>(xy.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw std::domain_error("fit_asymptote: velocities must not all coincide");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (const auto& [x, y] : xy) ss += std::pow(y - (intercept + slope * x), 2);

  AsymptoteFit fit;
  fit.gamma_fit = slope;
  fit.b_fit = std::exp(intercept / slope);
  fit.residual = std::sqrt(ss / n);
  fit.points = xy.size();
  const auto [lo, hi] = std::minmax_element(xy.begin(), xy.end());
  fit.v_min = std::exp(lo->first);
  fit.v_max = std::exp(hi->first);
  if (!(fit.gamma_fit > 0.0)) {
    throw std::domain_error("fit_asymptote: -ln|R|^2 does not grow with velocity (exponent " +
                            std::to_string(fit.gamma_fit) + ")");
  }
  return fit;
}

AsymptoteFit fit_asymptote(std::span<const std::pair<double, double>> v_r2, const FitOptions& options) {
  std::vector<FitPoint> pts;
  for (const auto& [v, r2] : v_r2) {
    if (!(r2 > 0.0 && r2 < 1.0)) continue;
    pts.push_back({v, -std::log(r2)});
  }
  return fit_asymptote(std::span<const FitPoint>(pts), options);
}

AsymptoteFit fit_asymptote(std::span<const CurvePoint> curve, const FitOptions& options) {
  std::vector<FitPoint> pts;
  for (const auto& c : curve) {
    if (c.converged()) pts.push_back({c.velocity, c.result->minus_log_probability()});
  }
  return fit_asymptote(std::span<const FitPoint>(pts), options);
}

BarrierScales barrier_scales(const AtomSurfacePair& pair, const BarrierInfo& barrier, double mass) {
  if (!barrier.exists) throw std::domain_error("barrier_scales: the potential has no barrier");
  if (!(mass > 0.0)) throw std::domain_error("barrier_scales: mass must be positive");
  BarrierScales s;
  s.v_bar = std::sqrt(2.0 * barrier.u_bar / mass);
  s.k_beta4_bar = mass * s.v_bar * pair.beta4() / PhysicalConstants::hbar;
  s.t_bar = std::pow(PhysicalConstants::hbar * s.k_beta4_bar / pair.beta4(), 2) / (2.0 * mass * PhysicalConstants::k_B);
  return s;
}

std::pair<double, double> default_fit_window(const PotentialModel& model) {
  const auto& pair = model.pair();
  const auto barrier = find_barrier(model);
  double lo = 0.005, hi = 0.03;
  if (barrier.exists) {
    const double kb = barrier_scales(pair, barrier, pair.mass()).k_beta4_bar;
    lo = 0.02 * kb;
    hi = 0.25 * kb;
  }
  lo = std::max(lo, kMinimumKBeta4);
  hi = std::max(hi, 4.0 * lo);
  const double to_v = PhysicalConstants::hbar / (pair.mass() * pair.beta4());
  return {lo * to_v, hi * to_v};
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo) || n == 0) throw std::domain_error("log_spaced: need 0 < lo <= hi and n >= 1");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = lo * std::pow(hi / lo, t);
  }
  v.front() = lo;
  if (n > 1) v.back() = hi;
  return v;
}

void write_fit_csv(std::ostream& os, std::span<const FitReport> reports) {
  csv::header(os, {"species", "surface", "T_S", "T_E", "gamma_fit", "b_fit_s_per_m", "gamma_analytic", "residual"});
  for (const auto& r : reports) {
    os << r.species << ',' << r.surface << ',' << csv::number(r.ts) << ',' << csv::number(r.te) << ','
       << csv::number(r.fit.gamma_fit) << ',' << csv::number(r.fit.b_fit) << ',' << csv::number(r.gamma_analytic)
       << ',' << csv::number(r.fit.residual) << '\n';
  }
}

}  // namespace qrefl
