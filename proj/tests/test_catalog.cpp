#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "qrefl/catalog.hpp"
#include "qrefl/errors.hpp"
#include "qrefl/keyvalue.hpp"
#include "qrefl/units.hpp"

using namespace qrefl;

TEST_CASE("builtin catalog contents") {
  const auto cat = Catalog::builtin();
  CHECK(cat.all_species().size() == 3);
  const auto& rb = cat.species("Rb87");
  CHECK(rb.mass == doctest::Approx(units::amu_to_kg(87)));
  CHECK(rb.static_polarizability == doctest::Approx(units::cubic_angstrom(47.25)));
  CHECK(cat.species("He4").static_polarizability == doctest::Approx(units::cubic_angstrom(0.205)));
  CHECK(cat.surface("Si").static_permittivity == 12.0);
  CHECK_THROWS_AS(cat.species("Cs133"), catalog_error);
  CHECK_THROWS_AS(cat.surface("Au"), catalog_error);
  CHECK_THROWS_AS(cat.pair("Rb87", "Au"), catalog_error);
}

TEST_CASE("shipped data file matches the builtin catalog") {
  const auto text = read_text_file(QREFL_SOURCE_DIR "/data/catalog.txt");
  CHECK(text == Catalog::builtin_text());
}

TEST_CASE("parse alternative units and overrides") {
  const auto cat = Catalog::parse(R"(
[species]
name = X
mass_kg = 1e-26
polarizability_m3 = 2e-30
transition_length_m = 1e-7

[surface]
name = Glass
permittivity = 2.25

[pair]
species = X
surface = Glass
c4_J_m4 = 3e-56
)");
  CHECK(cat.species("X").mass == 1e-26);
  CHECK(cat.species("X").transition_length == 1e-7);
  CHECK(cat.pair("X", "Glass").c4() == 3e-56);
  CHECK_FALSE(cat.surface("Glass").phi_override.has_value());
}

TEST_CASE("malformed records are rejected") {
  CHECK_THROWS_AS(Catalog::parse("[species]\nname = X\nmass_u = 1\n"), catalog_error);
  CHECK_THROWS_AS(Catalog::parse("[surface]\nname = S\npermittivity = 0.5\n"), std::exception);
  CHECK_THROWS_AS(Catalog::parse("[planet]\nname = Mars\n"), catalog_error);
  CHECK_THROWS(Catalog::parse("[species]\nname = X\nmass_u = abc\npolarizability_A3 = 1\ntransition_length_nm = 1\n"));
  CHECK_THROWS(Catalog::parse("[surface]\nno equals sign here\n"));
}

TEST_CASE("load from file and missing file") {
  const std::string path = "qrefl_test_catalog.txt";
  {
    std::ofstream f(path);
    f << "[surface]\nname = Sapphire\npermittivity = 9.4\n";
  }
  const auto cat = Catalog::load(path);
  CHECK(cat.surface("Sapphire").static_permittivity == 9.4);
  std::remove(path.c_str());
  CHECK_THROWS(Catalog::load("definitely/not/here.txt"));
}

TEST_CASE("key-value parser") {
  const auto kv = parse_key_values("a = 1\n# c\n[s]\nb = two  # trailing\n[s]\nb=3\n");
  REQUIRE(kv.size() == 3);
  CHECK(kv[0].section.empty());
  CHECK(kv[0].record == -1);
  CHECK(kv[1].section == "s");
  CHECK(kv[1].value == "two");
  CHECK(kv[2].record == kv[1].record + 1);
  CHECK(kv[2].line == 6);
  CHECK(parse_double("1.5e3", "x") == 1500.0);
  CHECK_THROWS_AS(parse_double("1.5x", "x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double("", "x"), std::invalid_argument);
}
