#include "qrefl/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "qrefl/asymptotics.hpp"
#include "qrefl/csv.hpp"
#include "qrefl/errors.hpp"
#include "qrefl/keyvalue.hpp"
#include "qrefl/parallel.hpp"

namespace qrefl {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(sep, start);
    const auto piece = trim(s.substr(start, pos == std::string_view::npos ? s.size() - start : pos - start));
    if (!piece.empty()) out.push_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double number(std::string_view value, std::string_view key) {
  try {
    return parse_double(trim(value), key);
  } catch (const std::invalid_argument& e) {
    throw configuration_error(e.what());
  }
}

std::size_t count_value(std::string_view value, std::string_view key) {
  const double v = number(value, key);
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e7) {
    throw configuration_error(std::string(key) + ": expected a positive integer");
  }
  return static_cast<std::size_t>(v);
}

SweepKind parse_sweep(std::string_view v) {
  const auto s = trim(v);
  if (s == "velocity") return SweepKind::velocity;
  if (s == "k_beta4") return SweepKind::k_beta4;
  if (s == "temperature") return SweepKind::temperature;
  throw configuration_error("sweep: expected velocity, k_beta4 or temperature, got '" + s + "'");
}

GModel parse_g_model(std::string_view v) {
  const auto s = trim(v);
  if (s == "lifshitz") return GModel::lifshitz;
  if (s == "pade") return GModel::pade;
  throw configuration_error("g_model: expected lifshitz or pade, got '" + s + "'");
}

void apply_key(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "species") {
    c.species = split(value, ',');
  } else if (key == "surface") {
    c.surface = trim(value);
  } else if (key == "catalog") {
    c.catalog_path = trim(value);
  } else if (key == "ts") {
    for (auto& t : c.temperatures) t.ts = number(value, key);
  } else if (key == "te") {
    for (auto& t : c.temperatures) t.te = number(value, key);
  } else if (key == "temperature_pairs") {
    c.temperatures = parse_temperature_pairs(value);
  } else if (key == "velocity_mm_s") {
    c.velocity = number(value, key) * units::mm_per_s;
  } else if (key == "k_beta4") {
    c.k_beta4 = number(value, key);
  } else if (key == "sweep") {
    c.sweep = parse_sweep(value);
  } else if (key == "v_min_mm_s" || key == "k_beta4_min" || key == "t_min") {
    c.range_min = number(value, key) * (key == "v_min_mm_s" ? units::mm_per_s : 1.0);
  } else if (key == "v_max_mm_s" || key == "k_beta4_max" || key == "t_max") {
    c.range_max = number(value, key) * (key == "v_max_mm_s" ? units::mm_per_s : 1.0);
  } else if (key == "count") {
    c.count = count_value(value, key);
  } else if (key == "spacing") {
    const auto s = trim(value);
    if (s != "log" && s != "linear") throw configuration_error("spacing: expected log or linear");
    c.log_spacing = s == "log";
  } else if (key == "fit_k_beta4_min") {
    c.fit_k_beta4_min = number(value, key);
  } else if (key == "fit_k_beta4_max") {
    c.fit_k_beta4_max = number(value, key);
  } else if (key == "fit_count") {
    c.fit_count = count_value(value, key);
  } else if (key == "r_min_um") {
    c.r_min = number(value, key) * units::um;
  } else if (key == "r_max_um") {
    c.r_max = number(value, key) * units::um;
  } else if (key == "r_points") {
    c.r_points = count_value(value, key);
  } else if (key == "quad_rel_tol") {
    c.potential.quad_rel_tol = number(value, key);
  } else if (key == "g_model") {
    c.potential.g_model = parse_g_model(value);
  } else if (key == "badlands_threshold") {
    c.solver.badlands_threshold = number(value, key);
  } else if (key == "inner_depth_ratio") {
    c.solver.inner_depth_ratio = number(value, key);
  } else if (key == "outer_smallness") {
    c.solver.outer_smallness = number(value, key);
  } else if (key == "step_rel_tol") {
    c.solver.step_rel_tol = number(value, key);
  } else if (key == "out") {
    c.out = trim(value);
  } else {
    throw configuration_error("unknown configuration key '" + key + "'");
  }
}

std::string format_temperature(double t) {
  std::ostringstream s;
  s << t;
  return s.str();
}

// One output stream per block: stdout when no path is configured, the path
// itself for a single block, and `stem_suffix.ext` for several blocks.
class Sink {
 public:
  Sink(std::string path, std::ostream& fallback, std::size_t blocks)
      : path_(std::move(path)), fallback_(fallback), blocks_(blocks) {}

  std::ostream& open(const std::string& suffix) {
    if (path_.empty()) {
      if (opened_++ > 0) fallback_ << '\n';
      return fallback_;
    }
    std::string target = path_;
    if (blocks_ > 1) {
      const auto dot = path_.find_last_of('.');
      const auto slash = path_.find_last_of('/');
      const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
      target = has_ext ? path_.substr(0, dot) + "_" + suffix + path_.substr(dot) : path_ + "_" + suffix;
    }
    file_ = std::ofstream(target, std::ios::binary);
    if (!file_) throw configuration_error("cannot open output file '" + target + "'");
    ++opened_;
    return file_;
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::size_t blocks_;
  std::size_t opened_ = 0;
  std::ofstream file_;
};

std::string block_suffix(const std::string& species, const TemperaturePair& t) {
  return species + "_ts" + format_temperature(t.ts) + "_te" + format_temperature(t.te);
}

template <class Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const catalog_error& e) {
    log << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const configuration_error& e) {
    log << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const numerical_error& e) {
    log << "error: " << e.what() << " (achieved error " << e.achieved_error() << ")\n";
    return exit_convergence;
  } catch (const std::domain_error& e) {
    log << "error: " << e.what() << '\n';
    return exit_config;
  }
}

void require_fixed_temperatures(const RunConfig& c) {
  if (c.sweep == SweepKind::temperature) {
    throw configuration_error("temperature sweeps are only available in the sweep command");
  }
}

Incidence incidence_for(const RunConfig& c, const AtomSurfacePair& pair) {
  if (c.velocity) return incidence_from_velocity(*c.velocity, pair.mass());
  if (c.k_beta4) return incidence_from_k_beta4(*c.k_beta4, pair.beta4(), pair.mass());
  throw configuration_error("a velocity (velocity_mm_s / --velocity) or k_beta4 is required");
}

}  // namespace

bool TemperaturePair::sweeps_ts() const { return std::isnan(ts); }
bool TemperaturePair::sweeps_te() const { return std::isnan(te); }

std::vector<TemperaturePair> parse_temperature_pairs(std::string_view text) {
  std::vector<TemperaturePair> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, '/');
    if (parts.size() != 2) throw configuration_error("temperature pair '" + item + "' is not of the form TS/TE");
    auto temperature = [](const std::string& p, std::string_view what) {
      return p == "*" ? std::numeric_limits<double>::quiet_NaN() : number(p, what);
    };
    out.push_back({temperature(parts[0], "T_S"), temperature(parts[1], "T_E")});
  }
  if (out.empty()) throw configuration_error("temperature_pairs: no pairs given");
  return out;
}

void apply_config_text(RunConfig& config, std::string_view text) {
  std::vector<KeyValue> entries;
  try {
    entries = parse_key_values(text);
  } catch (const std::invalid_argument& e) {
    throw configuration_error(e.what());
  }
  for (const auto& kv : entries) {
    try {
      apply_key(config, kv.key, kv.value);
    } catch (const configuration_error& e) {
      throw configuration_error("line " + std::to_string(kv.line) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    throw configuration_error(e.what());
  }
  apply_config_text(config, text);
}

void apply_figure_preset(RunConfig& c, int figure) {
  c.species = {"Rb87"};
  c.surface = "Si";
  switch (figure) {
    case 1:
      c.temperatures = {{300.0, 1200.0}, {0.0, 0.0}, {300.0, 300.0}, {1200.0, 300.0}};
      c.r_min = 0.05e-6;
      c.r_max = 30e-6;
      c.r_points = 400;
      break;
    case 2:
      c.temperatures = {{300.0, 1200.0}, {0.0, 0.0}, {300.0, 300.0}};
      c.sweep = SweepKind::velocity;
      c.range_min = 0.02e-3;
      c.range_max = 2e-3;
      c.count = 80;
      c.log_spacing = true;
      break;
    case 3:
      c.species = {"Rb87", "He4*", "He4"};
      c.temperatures = {{300.0, 1200.0}};
      c.sweep = SweepKind::k_beta4;
      c.range_min = 1e-5;
      c.range_max = 10.0;
      c.count = 91;
      c.log_spacing = true;
      break;
    case 4:
      c.temperatures = parse_temperature_pairs("0/*, 300/*, */1200, */300");
      c.sweep = SweepKind::temperature;
      c.k_beta4 = 0.68;
      c.range_min = 0.0;
      c.range_max = 1200.0;
      c.count = 49;
      c.log_spacing = false;
      break;
    default:
      throw configuration_error("--figure: expected 1, 2, 3 or 4");
  }
}

Catalog RunConfig::load_catalog() const {
  return catalog_path.empty() ? Catalog::builtin() : Catalog::load(catalog_path);
}

void RunConfig::validate(const Catalog& catalog) const {
  if (species.empty()) throw configuration_error("no species given");
  for (const auto& s : species) (void)catalog.pair(s, surface);
  if (temperatures.empty()) throw configuration_error("no temperatures given");
  const bool temperature_sweep = sweep == SweepKind::temperature;
  for (const auto& t : temperatures) {
    const int swept = int{t.sweeps_ts()} + int{t.sweeps_te()};
    if (temperature_sweep && swept != 1) {
      throw configuration_error("temperature sweeps need exactly one '*' per pair, e.g. 300/*");
    }
    if (!temperature_sweep && swept != 0) throw configuration_error("'*' temperatures need sweep = temperature");
    if (!(t.ts >= 0.0 || t.sweeps_ts()) || !(t.te >= 0.0 || t.sweeps_te())) {
      throw configuration_error("temperatures must be >= 0 K");
    }
  }
  if (velocity && !(*velocity > 0.0)) throw configuration_error("velocity must be positive");
  if (k_beta4 && !(*k_beta4 > 0.0)) throw configuration_error("k_beta4 must be positive");
  if (temperature_sweep ? !(range_min >= 0.0) : !(range_min > 0.0)) {
    throw configuration_error("sweep range must be positive");
  }
  if (!(range_max >= range_min)) throw configuration_error("sweep range is empty");
  if (log_spacing && !(range_min > 0.0)) throw configuration_error("log spacing needs a positive range start");
  if (!(r_min > 0.0) || !(r_max > r_min)) throw configuration_error("need 0 < r_min < r_max");
  if (!(potential.quad_rel_tol > 0.0 && potential.quad_rel_tol <= 1e-3)) {
    throw configuration_error("quad_rel_tol must lie in (0, 1e-3]");
  }
  if (fit_k_beta4_min && fit_k_beta4_max && !(*fit_k_beta4_max > *fit_k_beta4_min)) {
    throw configuration_error("fit window is empty");
  }
  solver.validate();
}

std::vector<double> RunConfig::sweep_values() const {
  if (log_spacing) return log_spaced(range_min, range_max, count);
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    v[i] = count == 1 ? range_min
                      : range_min + (range_max - range_min) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return v;
}

int cmd_potential(const RunConfig& config, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    const auto catalog = config.load_catalog();
    config.validate(catalog);
    require_fixed_temperatures(config);
    Sink sink(config.out, out, config.species.size() * config.temperatures.size());
    const auto radii = log_spaced(config.r_min, config.r_max, config.r_points);
    for (const auto& sp : config.species) {
      const auto pair = catalog.pair(sp, config.surface);
      for (const auto& t : config.temperatures) {
        const PotentialModel model(pair, t.ts, t.te, config.potential);
        std::vector<double> u(radii.size());
        parallel_for(radii.size(), [&](std::size_t i) { u[i] = u_full_direct(model, radii[i]); });
        const bool repulsive = t.te > t.ts;
        auto& os = sink.open(block_suffix(sp, t));
        if (repulsive) {
          csv::header(os, {"r_m", "u_nK", "c2_asymptote_nK"});
        } else {
          csv::header(os, {"r_m", "u_nK"});
        }
        for (std::size_t i = 0; i < radii.size(); ++i) {
          os << csv::number(radii[i]) << ',' << csv::number(units::joule_to_nK(u[i]));
          if (repulsive) os << ',' << csv::number(units::joule_to_nK(c2_asymptote(model, radii[i])));
          os << '\n';
        }
        const auto barrier = find_barrier(model);
        log << sp << '/' << config.surface << " T_S=" << t.ts << " K T_E=" << t.te << " K";
        if (barrier.exists) {
          log << ": barrier " << units::joule_to_nK(barrier.u_bar) << " nK at " << barrier.r_bar / units::um << " um";
        }
        log << '\n';
        if (const auto w = temperature_warning(pair, std::max(t.ts, t.te))) log << "warning: " << *w << '\n';
      }
    }
    return int{exit_ok};
  });
}

int cmd_reflect(const RunConfig& config, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    const auto catalog = config.load_catalog();
    config.validate(catalog);
    require_fixed_temperatures(config);
    const auto& sp = config.species.front();
    const auto& t = config.temperatures.front();
    const auto pair = catalog.pair(sp, config.surface);
    const auto inc = incidence_for(config, pair);
    const ScatteringProblem problem(PotentialModel(pair, t.ts, t.te, config.potential), inc);
    const auto r = reflection_coefficient(problem, config.solver);

    Sink sink(config.out, out, 1);
    auto& os = sink.open("");
    os << "species: " << sp << '\n'
       << "surface: " << config.surface << '\n'
       << "T_S_K: " << csv::number(t.ts) << '\n'
       << "T_E_K: " << csv::number(t.te) << '\n'
       << "v_m_per_s: " << csv::number(inc.velocity) << '\n'
       << "E_nK: " << csv::number(units::joule_to_nK(inc.energy)) << '\n'
       << "k_beta4: " << csv::number(k_beta4(inc, pair.beta4())) << '\n'
       << "R2: " << csv::number(r.probability) << '\n'
       << "R2_raw: " << csv::number(r.raw_probability) << '\n'
       << "transmission: " << csv::number(r.transmission) << '\n'
       << "unitarity_defect: " << csv::number(r.unitarity_defect) << '\n'
       << "r_inner_m: " << csv::number(r.r_inner) << '\n'
       << "r_outer_m: " << csv::number(r.r_outer) << '\n'
       << "badlands_inner: " << csv::number(r.badlands_inner) << '\n'
       << "badlands_outer: " << csv::number(r.badlands_outer) << '\n'
       << "convergence_estimate: " << csv::number(r.convergence_estimate) << '\n'
       << "converged: " << (r.converged ? "yes" : "no") << '\n';
    if (!r.converged) {
      log << "error: solution not converged (convergence_estimate " << r.convergence_estimate << ")\n";
      return int{exit_convergence};
    }
    return int{exit_ok};
  });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    const auto catalog = config.load_catalog();
    config.validate(catalog);
    const auto values = config.sweep_values();
    Sink sink(config.out, out, config.species.size() * config.temperatures.size());
    std::size_t failures = 0;

    for (const auto& sp : config.species) {
      const auto pair = catalog.pair(sp, config.surface);
      for (const auto& t : config.temperatures) {
        if (config.sweep == SweepKind::velocity || config.sweep == SweepKind::k_beta4) {
          std::vector<double> velocities = values;
          if (config.sweep == SweepKind::k_beta4) {
            for (auto& v : velocities) v = incidence_from_k_beta4(v, pair.beta4(), pair.mass()).velocity;
          }
          const auto curve =
              reflection_curve(PotentialModel(pair, t.ts, t.te, config.potential), pair.mass(), velocities, config.solver);
          for (const auto& p : curve) {
            if (!p.converged()) {
              ++failures;
              if (!p.error.empty()) log << "point v=" << p.velocity << " m/s: " << p.error << '\n';
            }
          }
          write_curve_csv(sink.open(block_suffix(sp, t)), curve, pair.beta4());
          continue;
        }

        const bool vary_te = t.sweeps_te();
        const auto inc = incidence_for(config, pair);
        std::vector<CurvePoint> points(values.size());
        parallel_for(values.size(), [&](std::size_t i) {
          auto& p = points[i];
          p.velocity = inc.velocity;
          p.incidence = inc;
          try {
            const double ts = vary_te ? t.ts : values[i];
            const double te = vary_te ? values[i] : t.te;
            const ScatteringProblem problem(PotentialModel(pair, ts, te, config.potential), inc);
            p.result = reflection_coefficient(problem, config.solver);
          } catch (const std::exception& e) {
            p.error = e.what();
          }
        });
        auto& os = sink.open(sp + (vary_te ? "_te_sweep_ts" + format_temperature(t.ts)
                                           : "_ts_sweep_te" + format_temperature(t.te)));
        csv::header(os, {"T_S", "T_E", "v_m_per_s", "E_nK", "k_beta4", "R2", "converged"});
        for (std::size_t i = 0; i < values.size(); ++i) {
          const auto& p = points[i];
          if (!p.converged()) {
            ++failures;
            if (!p.error.empty()) log << "point T=" << values[i] << " K: " << p.error << '\n';
          }
          os << csv::number(vary_te ? t.ts : values[i]) << ',' << csv::number(vary_te ? values[i] : t.te) << ','
             << csv::number(inc.velocity) << ',' << csv::number(units::joule_to_nK(inc.energy)) << ','
             << csv::number(k_beta4(inc, pair.beta4())) << ','
             << csv::number(p.result ? p.result->probability : std::nan("")) << ',' << (p.converged() ? 1 : 0)
             << '\n';
        }
      }
    }
    if (failures > 0) log << "warning: " << failures << " point(s) did not converge\n";
    return int{exit_ok};
  });
}

int cmd_fit(const RunConfig& config, std::ostream& out, std::ostream& log) {
  return guarded(log, [&]() -> int {
    const auto catalog = config.load_catalog();
    config.validate(catalog);
    require_fixed_temperatures(config);
    std::vector<FitReport> reports;
    for (const auto& sp : config.species) {
      const auto pair = catalog.pair(sp, config.surface);
      for (const auto& t : config.temperatures) {
        const auto model = prepare_for_scattering(PotentialModel(pair, t.ts, t.te, config.potential));
        auto [v_lo, v_hi] = default_fit_window(model);
        const double to_v = PhysicalConstants::hbar / (pair.mass() * pair.beta4());
        if (config.fit_k_beta4_min) v_lo = *config.fit_k_beta4_min * to_v;
        if (config.fit_k_beta4_max) v_hi = *config.fit_k_beta4_max * to_v;
        const auto curve = reflection_curve(model, pair.mass(), log_spaced(v_lo, v_hi, config.fit_count), config.solver);
        FitReport rep{sp, config.surface, t.ts, t.te, {}, gamma_analytic(pair, t.ts, t.te)};
        try {
          rep.fit = fit_asymptote(std::span<const CurvePoint>(curve));
        } catch (const std::domain_error& e) {
          log << "error: " << sp << " T_S=" << t.ts << " T_E=" << t.te << ": " << e.what() << '\n';
          return exit_fit;
        }
        log << sp << " T_S=" << t.ts << " T_E=" << t.te << ": gamma_fit=" << rep.fit.gamma_fit
            << " b_fit=" << rep.fit.b_fit * 1e-3 << " s/mm over k_beta4 in [" << v_lo / to_v << ", " << v_hi / to_v
            << "]\n";
        reports.push_back(rep);
      }
    }
    Sink sink(config.out, out, 1);
    write_fit_csv(sink.open(""), reports);
    return exit_ok;
  });
}

}  // namespace qrefl
