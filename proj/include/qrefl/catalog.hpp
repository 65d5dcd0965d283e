#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrefl/materials.hpp"

namespace qrefl {

/// Species and surfaces by name, plus per-pair C4 overrides.
///
/// Text format, one record per [section]:
///
///   [species]
///   name = Rb87
///   mass_u = 87                 # or mass_kg
///   polarizability_A3 = 47.25   # or polarizability_m3
///   transition_length_nm = 130  # or transition_length_m
///
///   [surface]
///   name = Si
///   permittivity = 12
///   phi = 0.682879              # optional
///
///   [pair]
///   species = Rb87
///   surface = Si
///   c4_eV_m4 = 7.6e-37          # or c4_J_m4
class Catalog {
 public:
  struct PairOverride {
    std::string species;
    std::string surface;
    double c4 = 0.0;  // J m^4
  };

  /// Rb87, He4* (metastable triplet), He4 on Si.
  static Catalog builtin();
  static std::string_view builtin_text();
  /// Throws catalog_error on malformed records.
  static Catalog parse(std::string_view text);
  static Catalog load(const std::string& path);

  void add(Species s);
  void add(Surface s);
  void add(PairOverride p);

  /// Throw catalog_error when the name is unknown.
  const Species& species(std::string_view name) const;
  const Surface& surface(std::string_view name) const;
  AtomSurfacePair pair(std::string_view species_name, std::string_view surface_name) const;

  const std::vector<Species>& all_species() const { return species_; }
  const std::vector<Surface>& all_surfaces() const { return surfaces_; }

 private:
  std::vector<Species> species_;
  std::vector<Surface> surfaces_;
  std::vector<PairOverride> overrides_;
};

}  // namespace qrefl
