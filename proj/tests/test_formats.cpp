#include "doctest.h"

#include "unihecke/formats.hpp"

using namespace unihecke;

TEST_CASE("group specs round-trip for the whole catalog") {
  for (const auto &name : builtin_names()) {
    CAPTURE(name);
    GroupSpec g = builtin_group(name);
    std::string text = write_group_spec(g);
    GroupSpec h = parse_group_spec(text);
    CHECK(h.name == g.name);
    CHECK(h.datum.same_structure(g.datum));
    CHECK(h.frobenius == g.frobenius);
    CHECK(h.delta0 == g.delta0);
    REQUIRE(h.builtin_facets.size() == g.builtin_facets.size());
    for (std::size_t i = 0; i < h.builtin_facets.size(); ++i) {
      CHECK(h.builtin_facets[i].J == g.builtin_facets[i].J);
      CHECK(h.builtin_facets[i].exponents == g.builtin_facets[i].exponents);
    }
    CHECK(write_group_spec(h) == text);
  }
}

TEST_CASE("group spec errors name the line") {
  CHECK_THROWS_AS(parse_group_spec("rank: 1\nroots: [[2],[-2]]\n"), FormatError);
  CHECK_THROWS_WITH_AS(parse_group_spec("rank: 1\ncolour: 3\n"), doctest::Contains("line 2"), FormatError);
  CHECK_THROWS_AS(parse_group_spec("rank: [1\n"), FormatError);
  CHECK_THROWS_AS(parse_group_spec("rank: 2\nroots: [[1]]\ncoroots: [[1]]\nsimple_indices: [0]\n"), FormatError);
  GroupSpec g = parse_group_spec(
      "# comment\nrank: 1\nroots: [[2],[-2]]  # roots\ncoroots: [[1],[-1]]\nsimple_indices: [0]\n");
  CHECK(g.datum.rank == 1);
  CHECK(g.builtin_facets.size() == 1);
  CHECK(load_group("builtin:PGL3").datum.same_structure(builtin_group("PGL3").datum));
  CHECK_THROWS(load_group("builtin:E8"));
  CHECK_THROWS_AS(load_group("/nonexistent/spec"), FormatError);
}

TEST_CASE("parameter tables round-trip") {
  ParameterTable t = parse_parameter_table("# t\nA1 [] iwahori : 0=1 1=2\nA1 [1] cusp :\n2A2 [0] x : 1=3\n");
  CHECK(t.entries.size() == 3);
  CHECK((t.entries[{"A1", {}, "iwahori"}] == std::map<long, Int>{{0, 1}, {1, 2}}));
  CHECK(parse_parameter_table(write_parameter_table(t)).entries == t.entries);
  CHECK_THROWS_AS(parse_parameter_table("A1 [] iwahori 0=1\n"), FormatError);
  CHECK_THROWS_AS(parse_parameter_table("A1 [] iwahori : 0=x\n"), FormatError);
  CHECK_THROWS_AS(parse_parameter_table("A1 [] iwahori : 0=-1\n"), FormatError);
}

TEST_CASE("component catalogs round-trip") {
  ComponentCatalog c = ComponentCatalog::builtin();
  ComponentCatalog d = parse_component_catalog(write_component_catalog(c));
  REQUIRE(d.groups.size() == c.groups.size());
  for (const auto &[name, gc] : c.groups) {
    CAPTURE(name);
    const auto &other = d.groups.at(name);
    REQUIRE(other.padic.size() == gc.padic.size());
    REQUIRE(other.galois.size() == gc.galois.size());
    for (std::size_t i = 0; i < gc.galois.size(); ++i) {
      CHECK(other.galois[i].levi == gc.galois[i].levi);
      CHECK(other.galois[i].lambda == gc.galois[i].lambda);
      CHECK(other.galois[i].lambda_star == gc.galois[i].lambda_star);
    }
  }
  CHECK_THROWS_AS(parse_component_catalog("padic SL2 facet=[] colour=red\n"), FormatError);
  CHECK_THROWS_AS(parse_component_catalog("adelic SL2\n"), FormatError);
}

TEST_CASE("comparison reports round-trip through JSON") {
  for (const auto &name : {"SL2", "PGL3", "SU3", "InnerPGL2"}) {
    CAPTURE(name);
    GroupComparison gc = compare_group(builtin_group(name), ComponentCatalog::builtin(), ParameterTable::builtin());
    for (const auto &r : gc.reports) {
      std::string j = comparison_to_json(r);
      ComparisonReport back = comparison_from_json(j);
      CHECK(comparison_to_json(back) == j);
      CHECK(back.isomorphic == r.isomorphic);
      CHECK(comparison_to_text(back) == comparison_to_text(r));
      CHECK(comparison_to_text(r).find(r.isomorphic ? "verdict: isomorphic" : "verdict: mismatch") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(comparison_from_json("{\"group\": 1}"), FormatError);
}
