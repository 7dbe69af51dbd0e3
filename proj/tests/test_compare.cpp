#include "doctest.h"

#include "support.hpp"

using namespace unihecke;
using unihecke::testing::facet;
using unihecke::testing::iwahori;
using unihecke::testing::iwahori_hecke;

TEST_CASE("affine type labels") {
  auto label = [](const std::string &n) {
    GroupSpec g = builtin_group(n);
    return affine_type_label(g.galois(), g.marking());
  };
  CHECK(label("SL2") == "A1");
  CHECK(label("SU3") == "2A2");
  CHECK(label("SU4") == "2A3");
  CHECK(label("InnerPGL2") == "A1/0");
  CHECK(label("GL1") == "T1");
}

TEST_CASE("parameter table lookups") {
  ParameterTable t = ParameterTable::builtin();
  IwahoriWeylDatum d = iwahori("SL2");
  CHECK(t.lookup(d, {}, "iwahori") == std::map<long, Int>{{0, 1}, {1, 1}});
  CHECK(t.lookup(d, {1}, "cusp") == std::map<long, Int>{{0, 1}});
  CHECK_THROWS_AS(t.lookup(d, {0}, "unknown"), std::invalid_argument);
  CHECK(free_nodes(d, {1}) == std::vector<long>{0});
}

TEST_CASE("unitary Iwahori data carry unequal labels") {
  auto su3 = iwahori_hecke("SU3");
  REQUIRE(su3.size() == 1);
  CHECK(su3[0].lambda == std::vector<Int>{3});
  CHECK(su3[0].lambda_star == std::vector<Int>{1});
  auto su4 = iwahori_hecke("SU4");
  REQUIRE(su4.size() == 1);
  std::multiset<Int> labels(su4[0].lambda.begin(), su4[0].lambda.end());
  CHECK(labels == std::multiset<Int>{1, 2});
}

TEST_CASE("the inner form has one facet datum per character of Omega_f,tor") {
  auto data = iwahori_hecke("InnerPGL2");
  CHECK(data.size() == 2);
  for (const auto &d : data) CHECK(d.R.rank == 0);
}

TEST_CASE("every builtin group matches and compares isomorphically") {
  auto catalog = ComponentCatalog::builtin();
  auto table = ParameterTable::builtin();
  for (const auto &name : builtin_names()) {
    CAPTURE(name);
    GroupSpec g = builtin_group(name);
    GroupComparison gc = compare_group(g, catalog, table);
    for (const auto &e : gc.matching.errors) FAIL_CHECK(e);
    CHECK(gc.ok());
    for (const auto &r : gc.reports) {
      CAPTURE(r.padic_component);
      CHECK(r.isomorphic);
      CHECK(r.v_exponent == "1/2");
      CHECK(r.omega_padic == r.omega_galois);
    }
  }
}

TEST_CASE("Omega parts of the split comparisons") {
  auto catalog = ComponentCatalog::builtin();
  auto table = ParameterTable::builtin();
  auto omega = [&](const std::string &n) { return compare_group(builtin_group(n), catalog, table).reports.front().omega_padic; };
  CHECK(omega("PGL3").torsion_invariants == std::vector<BigInt>{3});
  CHECK(omega("PGL2").torsion_invariants == std::vector<BigInt>{2});
  CHECK(omega("SL2").is_trivial());
  CHECK(omega("GL2").free_rank == 1);
}

TEST_CASE("a corrupted label table is a mismatch with a per-root witness") {
  IwahoriWeylDatum d = iwahori("SL3");
  FacetData f = facet(d, {});
  AffineHeckeDatum P = build_from_facet(f, {{0, 2}, {1, 2}, {2, 2}}, "SL3 corrupted").data.front();
  GroupSpec g = builtin_group("SL3");
  MatchReport m = match_components(g, ComponentCatalog::builtin(), ParameterTable::builtin());
  REQUIRE(m.matches.size() == 1);
  ComparisonReport r = compare_hecke_algebras(P, m.matches[0].galois.hecke("SL3 galois"), m.matches[0].torus_iso);
  CHECK_FALSE(r.isomorphic);
  CHECK(r.witness.find("simple root") != std::string::npos);
  CHECK(std::count_if(r.parameter_check.begin(), r.parameter_check.end(), [](const RootParameterCheck &c) { return !c.ok; }) == 2);
}

TEST_CASE("a wrong torus identification is caught") {
  GroupSpec g = builtin_group("Sp4");
  MatchReport m = match_components(g, ComponentCatalog::builtin(), ParameterTable::builtin());
  REQUIRE(m.matches.size() == 1);
  const auto &x = m.matches[0];
  Mat bad = x.torus_iso;
  for (auto &r : bad) r[0] = 2 * r[0];
  ComparisonReport r = compare_hecke_algebras(x.padic.hecke.data[0], x.galois.hecke("Sp4 galois"), bad);
  CHECK_FALSE(r.isomorphic);
}

TEST_CASE("cuspidal vertex components of SL2 and PGL2") {
  for (const auto &name : {"SL2", "PGL2"}) {
    CAPTURE(name);
    GroupComparison gc = compare_group(builtin_group(name), ComponentCatalog::builtin(), ParameterTable::builtin());
    REQUIRE(gc.reports.size() == 2);
    const auto &cusp = gc.reports[1];
    CHECK(cusp.isomorphic);
    CHECK_FALSE(cusp.v_constrained);
  }
}

TEST_CASE("weakly unramified characters and Omega") {
  const std::map<std::string, std::size_t> orders = {{"PGL2", 2}, {"PGL3", 3}, {"SL2", 1}, {"SL3", 1}, {"SO5", 2}};
  for (const auto &[name, n] : orders) {
    CAPTURE(name);
    GroupSpec g = builtin_group(name);
    auto x = weakly_unramified_group(g.galois());
    CHECK(x.group.order() == n);
    CHECK(x.group == iwahori(name).omega());
  }
  CHECK(weakly_unramified_group(builtin_group("GL2").galois()).group.free_rank == 1);
}

TEST_CASE("twist equivariance of the component matching") {
  for (const auto &name : {"PGL2", "PGL3", "SO5", "GL2", "SL2"}) {
    CAPTURE(name);
    GroupSpec g = builtin_group(name);
    auto x = weakly_unramified_group(g.galois());
    MatchReport m = match_components(g, ComponentCatalog::builtin(), ParameterTable::builtin());
    for (const auto &match : m.matches) {
      auto rep = check_twist_equivariance(g, match, x);
      CHECK_MESSAGE(rep.ok, rep.witness);
    }
  }
}

TEST_CASE("adjoint invariance of facet data") {
  const std::map<std::string, BigInt> index = {{"SL2", 2}, {"PGL2", 1}, {"SL3", 3}, {"PGL3", 1}, {"Sp4", 2},
                                               {"SO5", 1}, {"G2", 1},   {"SU3", 1}, {"SU4", 2}};
  ParameterTable table = ParameterTable::builtin();
  for (const auto &[name, i] : index) {
    CAPTURE(name);
    AdjointReport r = check_adjoint_invariance(builtin_group(name), {}, table);
    for (const auto &c : r.checks) CHECK_MESSAGE(c.ok, c.name << ": " << c.detail);
    CHECK(r.ok);
    CHECK(r.index == i);
    CHECK(r.center_order == i);
  }
  AdjointReport vertex = check_adjoint_invariance(builtin_group("Sp4"), {0}, table);
  CHECK(vertex.ok);
  CHECK(vertex.index == 1);
}

TEST_CASE("the adjoint group has the simple roots as lattice basis") {
  GroupSpec ad = adjoint_group(builtin_group("SL3"));
  CHECK(center_character_order(ad.datum) == 1);
  CHECK(validate_and_classify(ad.datum).types == std::vector<std::string>{"A2"});
}
