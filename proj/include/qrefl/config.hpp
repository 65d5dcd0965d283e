#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrefl/catalog.hpp"
#include "qrefl/potential.hpp"
#include "qrefl/scattering.hpp"

namespace qrefl {

/// In a temperature sweep each TemperaturePair has exactly one swept member,
/// written `*` in text and stored as NaN.
enum class SweepKind { velocity, k_beta4, temperature };

struct TemperaturePair {
  double ts = 0.0;
  double te = 0.0;

  bool sweeps_ts() const;
  bool sweeps_te() const;
};

/// Everything a CLI run needs. Built from defaults, then a figure preset,
/// then a key = value file, then command-line flags.
struct RunConfig {
  std::vector<std::string> species{"Rb87"};
  std::string surface = "Si";
  std::string catalog_path;  // empty: built-in catalog
  std::vector<TemperaturePair> temperatures{{300.0, 1200.0}};

  std::optional<double> velocity;  // m/s, single-point runs
  std::optional<double> k_beta4;   // alternative to velocity; fixed value in temperature sweeps

  SweepKind sweep = SweepKind::velocity;
  double range_min = 0.02e-3;  // m/s, dimensionless or K depending on sweep
  double range_max = 2e-3;
  std::size_t count = 60;
  bool log_spacing = true;

  std::optional<double> fit_k_beta4_min;
  std::optional<double> fit_k_beta4_max;
  std::size_t fit_count = 12;

  double r_min = 0.05e-6;  // m
  double r_max = 30e-6;
  std::size_t r_points = 400;

  PotentialOptions potential;
  SolverSettings solver;
  std::string out;  // empty: stdout

  /// Throws configuration_error on inconsistent values and catalog_error on
  /// unknown names.
  void validate(const Catalog& catalog) const;
  Catalog load_catalog() const;
  /// Sweep abscissae in the sweep's own unit.
  std::vector<double> sweep_values() const;
};

/// Applies `key = value` lines to `config`. Throws configuration_error on
/// unknown keys or malformed values.
void apply_config_text(RunConfig& config, std::string_view text);
void apply_config_file(RunConfig& config, const std::string& path);

/// Parameter sets of the four published figures. Throws configuration_error
/// for other numbers.
void apply_figure_preset(RunConfig& config, int figure);

/// Parses "300/1200, 0/0" as (T_S/T_E) pairs; `*` marks a swept temperature.
std::vector<TemperaturePair> parse_temperature_pairs(std::string_view text);

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_convergence = 3, exit_fit = 4 };

/// Subcommand bodies. Results go to config.out (or `out` when empty);
/// diagnostics go to `log`. Each returns an ExitCode.
int cmd_potential(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_reflect(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_fit(const RunConfig& config, std::ostream& out, std::ostream& log);

}  // namespace qrefl
