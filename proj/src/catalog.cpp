#include "qrefl/catalog.hpp"

#include <algorithm>
#include <stdexcept>

#include "qrefl/errors.hpp"
#include "qrefl/keyvalue.hpp"
#include "qrefl/units.hpp"

namespace qrefl {
namespace {

// Mirrors data/catalog.txt.
constexpr std::string_view kBuiltin = R"catalog(# Default species and surface catalog.
# Units: mass in u, polarizability as Gaussian volume in cubic angstrom,
# transition length l = lambda_tr / 2 pi in nm.

[species]
name = Rb87
mass_u = 87
polarizability_A3 = 47.25
transition_length_nm = 130

# metastable triplet helium; l not measured here, same default as Rb
[species]
name = He4*
mass_u = 4
polarizability_A3 = 46.8
transition_length_nm = 130

[species]
name = He4
mass_u = 4
polarizability_A3 = 0.205
transition_length_nm = 130

# phi fixed so that Rb87 on Si gives C4 = 7.6e-37 eV m^4; all species on Si
# then scale linearly with polarizability
[surface]
name = Si
permittivity = 12
phi = 0.682879246813824

[pair]
species = Rb87
surface = Si
c4_eV_m4 = 7.6e-37
)catalog";

struct Record {
  std::string section;
  int line = 0;
  std::vector<KeyValue> entries;

  const KeyValue* find(std::string_view key) const {
    for (const auto& e : entries) {
      if (e.key == key) return &e;
    }
    return nullptr;
  }
  double number(std::string_view key) const {
    return parse_double(find(key)->value, section + "." + std::string(key));
  }
  // Value of the first present key, scaled by its unit factor.
  std::optional<double> scaled(std::initializer_list<std::pair<std::string_view, double>> keys) const {
    for (const auto& [k, factor] : keys) {
      if (find(k) != nullptr) return number(k) * factor;
    }
    return std::nullopt;
  }
  std::string text(std::string_view key) const {
    const auto* e = find(key);
    if (e == nullptr || e->value.empty()) {
      throw catalog_error("[" + section + "] record at line " + std::to_string(line) +
                          ": missing '" + std::string(key) + "'");
    }
    return e->value;
  }
  double required(std::initializer_list<std::pair<std::string_view, double>> keys) const {
    if (auto v = scaled(keys)) return *v;
    throw catalog_error("[" + section + "] record at line " + std::to_string(line) + ": missing '" +
                        std::string(keys.begin()->first) + "'");
  }
};

}  // namespace

std::string_view Catalog::builtin_text() { return kBuiltin; }

Catalog Catalog::builtin() { return parse(kBuiltin); }

Catalog Catalog::load(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    throw catalog_error(e.what());
  }
  return parse(text);
}

Catalog Catalog::parse(std::string_view text) {
  std::vector<Record> records;
  try {
    for (auto& kv : parse_key_values(text)) {
      if (kv.record < 0) throw catalog_error("line " + std::to_string(kv.line) + ": entry outside a record");
      if (static_cast<int>(records.size()) <= kv.record) {
        records.resize(kv.record + 1);
        records[kv.record].section = kv.section;
        records[kv.record].line = kv.line;
      }
      records[kv.record].entries.push_back(std::move(kv));
    }
  } catch (const std::invalid_argument& e) {
    throw catalog_error(e.what());
  }

  Catalog cat;
  try {
    for (const auto& r : records) {
      if (r.section == "species") {
        Species s;
        s.name = r.text("name");
        s.mass = r.required({{"mass_kg", 1.0}, {"mass_u", PhysicalConstants::atomic_mass_unit}});
        s.static_polarizability = r.required(
            {{"polarizability_m3", 1.0}, {"polarizability_A3", units::cubic_angstrom(1.0)}});
        s.transition_length =
            r.required({{"transition_length_m", 1.0}, {"transition_length_nm", units::nm}});
        cat.add(std::move(s));
      } else if (r.section == "surface") {
        Surface s;
        s.name = r.text("name");
        s.static_permittivity = r.required({{"permittivity", 1.0}});
        s.phi_override = r.scaled({{"phi", 1.0}});
        cat.add(std::move(s));
      } else if (r.section == "pair") {
        PairOverride p;
        p.species = r.text("species");
        p.surface = r.text("surface");
        p.c4 = r.required({{"c4_J_m4", 1.0}, {"c4_eV_m4", PhysicalConstants::electron_volt}});
        cat.add(std::move(p));
      } else {
        throw catalog_error("line " + std::to_string(r.line) + ": unknown record type [" + r.section + "]");
      }
    }
  } catch (const std::invalid_argument& e) {
    throw catalog_error(e.what());
  } catch (const std::domain_error& e) {
    throw catalog_error(e.what());
  }
  return cat;
}

void Catalog::add(Species s) {
  s.validate();
  std::erase_if(species_, [&](const Species& o) { return o.name == s.name; });
  species_.push_back(std::move(s));
}

void Catalog::add(Surface s) {
  s.validate();
  std::erase_if(surfaces_, [&](const Surface& o) { return o.name == s.name; });
  surfaces_.push_back(std::move(s));
}

void Catalog::add(PairOverride p) {
  if (!(p.c4 > 0.0)) throw catalog_error("pair " + p.species + "/" + p.surface + ": C4 must be positive");
  std::erase_if(overrides_, [&](const PairOverride& o) {
    return o.species == p.species && o.surface == p.surface;
  });
  overrides_.push_back(std::move(p));
}

const Species& Catalog::species(std::string_view name) const {
  for (const auto& s : species_) {
    if (s.name == name) return s;
  }
  throw catalog_error("unknown species '" + std::string(name) + "'");
}

const Surface& Catalog::surface(std::string_view name) const {
  for (const auto& s : surfaces_) {
    if (s.name == name) return s;
  }
  throw catalog_error("unknown surface '" + std::string(name) + "'");
}

AtomSurfacePair Catalog::pair(std::string_view species_name, std::string_view surface_name) const {
  std::optional<double> c4;
  for (const auto& o : overrides_) {
    if (o.species == species_name && o.surface == surface_name) c4 = o.c4;
  }
  return AtomSurfacePair(species(species_name), surface(surface_name), c4);
}

}  // namespace qrefl
