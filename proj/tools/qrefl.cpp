#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qrefl/config.hpp"
#include "qrefl/errors.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<int> figure;
  std::optional<std::string> species;
  std::optional<std::string> surface;
  std::optional<std::string> catalog;
  std::optional<double> ts;
  std::optional<double> te;
  std::optional<std::string> pairs;
  std::optional<double> velocity_mm_s;
  std::optional<double> k_beta4;
  std::optional<std::string> sweep;
  std::optional<double> range_min;
  std::optional<double> range_max;
  std::optional<std::size_t> count;
  std::optional<std::string> out;
  std::optional<double> tol;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "key = value configuration file");
  cmd->add_option("--figure", f.figure, "parameter preset of figure 1, 2, 3 or 4")->check(CLI::Range(1, 4));
  cmd->add_option("--species", f.species, "species name(s), comma separated");
  cmd->add_option("--surface", f.surface, "surface name");
  cmd->add_option("--catalog", f.catalog, "material catalog file");
  cmd->add_option("--ts", f.ts, "surface temperature in K");
  cmd->add_option("--te", f.te, "environment temperature in K");
  cmd->add_option("--pairs", f.pairs, "temperature pairs TS/TE, comma separated; * marks the swept one");
  cmd->add_option("--out", f.out, "output path (default: stdout)");
  cmd->add_option("--tol", f.tol, "relative quadrature tolerance of the potential");
}

std::string join_key(const std::string& key, const std::string& value) { return key + " = " + value + "\n"; }

std::string number_text(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

qrefl::RunConfig build(const Flags& f) {
  qrefl::RunConfig c;
  if (f.figure) qrefl::apply_figure_preset(c, *f.figure);
  if (!f.config.empty()) qrefl::apply_config_file(c, f.config);

  std::string text;
  if (f.species) text += join_key("species", *f.species);
  if (f.surface) text += join_key("surface", *f.surface);
  if (f.catalog) text += join_key("catalog", *f.catalog);
  if (f.pairs) text += join_key("temperature_pairs", *f.pairs);
  if (f.ts) text += join_key("ts", number_text(*f.ts));
  if (f.te) text += join_key("te", number_text(*f.te));
  if (f.velocity_mm_s) text += join_key("velocity_mm_s", number_text(*f.velocity_mm_s));
  if (f.k_beta4) text += join_key("k_beta4", number_text(*f.k_beta4));
  if (f.sweep) text += join_key("sweep", *f.sweep);
  if (f.count) text += join_key("count", std::to_string(*f.count));
  if (f.out) text += join_key("out", *f.out);
  if (f.tol) text += join_key("quad_rel_tol", number_text(*f.tol));
  qrefl::apply_config_text(c, text);

  // range bounds are given in the unit of the active sweep
  const double scale = c.sweep == qrefl::SweepKind::velocity ? qrefl::units::mm_per_s : 1.0;
  if (f.range_min) c.range_min = *f.range_min * scale;
  if (f.range_max) c.range_max = *f.range_max * scale;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum reflection of ultracold atoms from thermal non-equilibrium atom-surface potentials"};
  app.require_subcommand(1);
  Flags f;

  auto* potential = app.add_subcommand("potential", "tabulate U(r) in nK");
  auto* reflect = app.add_subcommand("reflect", "|R|^2 at one incidence velocity");
  auto* sweep = app.add_subcommand("sweep", "|R|^2 over velocity, k_beta4 or temperature");
  auto* fit = app.add_subcommand("fit", "fit exp(-(b v)^gamma) at low velocity");
  for (auto* cmd : {potential, reflect, sweep, fit}) add_common(cmd, f);
  for (auto* cmd : {reflect, sweep}) {
    cmd->add_option("--velocity", f.velocity_mm_s, "incidence velocity in mm/s");
    cmd->add_option("--k-beta4", f.k_beta4, "incidence as k_i beta4");
  }
  sweep->add_option("--sweep", f.sweep, "velocity, k_beta4 or temperature");
  sweep->add_option("--min", f.range_min, "range start (mm/s, k_beta4 or K)");
  sweep->add_option("--max", f.range_max, "range end (mm/s, k_beta4 or K)");
  sweep->add_option("--count", f.count, "number of points");

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  qrefl::RunConfig config;
  try {
    config = build(f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qrefl::exit_config;
  }
  if (name == "potential") return qrefl::cmd_potential(config, std::cout, std::cerr);
  if (name == "reflect") return qrefl::cmd_reflect(config, std::cout, std::cerr);
  if (name == "sweep") return qrefl::cmd_sweep(config, std::cout, std::cerr);
  return qrefl::cmd_fit(config, std::cout, std::cerr);
}
