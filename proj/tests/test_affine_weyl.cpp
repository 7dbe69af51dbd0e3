#include "doctest.h"

#include "support.hpp"

#include <map>
#include <set>

using namespace unihecke;
using unihecke::testing::facet;
using unihecke::testing::iwahori;

namespace {

// Word length in the affine node reflections, by breadth-first search.
std::map<AffineWeylElement, std::size_t> bfs_lengths(const IwahoriWeylDatum &d, std::size_t depth) {
  std::map<AffineWeylElement, std::size_t> dist{{d.identity(), 0}};
  std::vector<AffineWeylElement> frontier{d.identity()};
  for (std::size_t k = 1; k <= depth; ++k) {
    std::vector<AffineWeylElement> next;
    for (const auto &x : frontier)
      for (const auto &n : d.nodes()) {
        auto y = d.multiply(x, n.reflection);
        if (dist.emplace(y, k).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return dist;
}

}  // namespace

TEST_CASE("Omega and translation groups of the catalog") {
  struct Frozen {
    std::size_t nodes, w0, omega_free;
    std::vector<BigInt> omega_torsion;
  };
  const std::map<std::string, Frozen> frozen = {
      {"SL2", {2, 2, 0, {}}},   {"PGL2", {2, 2, 0, {2}}}, {"SL3", {3, 6, 0, {}}},   {"PGL3", {3, 6, 0, {3}}},
      {"Sp4", {3, 8, 0, {}}},   {"SO5", {3, 8, 0, {2}}},  {"GL2", {2, 2, 1, {}}},   {"GL1", {0, 1, 1, {}}},
      {"G2", {3, 12, 0, {}}},   {"SU3", {2, 2, 0, {}}},   {"SU4", {3, 8, 0, {}}},   {"InnerPGL2", {0, 1, 0, {2}}}};
  for (const auto &[name, f] : frozen) {
    CAPTURE(name);
    IwahoriWeylDatum d = iwahori(name);
    CHECK(d.nodes().size() == f.nodes);
    CHECK(d.finite_weyl().order() == f.w0);
    CHECK(d.omega().free_rank == f.omega_free);
    CHECK(d.omega().torsion_invariants == f.omega_torsion);
  }
}

TEST_CASE("length agrees with word length in the node reflections") {
  for (const auto &name : {"SL2", "PGL3", "Sp4", "G2", "SU3", "SU4"}) {
    CAPTURE(name);
    IwahoriWeylDatum d = iwahori(name);
    for (const auto &[g, len] : bfs_lengths(d, 4)) {
      CHECK(d.length(g) == len);
      CHECK(d.in_lambda_af(d.factor(g).wa.translation));
    }
  }
}

TEST_CASE("length-zero elements permute the nodes and have length zero") {
  for (const auto &name : {"PGL2", "PGL3", "SO5", "InnerPGL2"}) {
    CAPTURE(name);
    IwahoriWeylDatum d = iwahori(name);
    REQUIRE(d.omega().is_finite());
    for (std::size_t k = 0; k < d.omega_dim(); ++k) {
      Vec c(d.omega_dim(), 0);
      c[k] = 1;
      AffineWeylElement w = d.omega_element(c);
      CHECK(d.length(w) == 0);
      auto perm = d.omega_permutation(c);
      CHECK(std::set<std::size_t>(perm.begin(), perm.end()).size() == d.nodes().size());
      CHECK(d.omega_class(w) == d.omega_reduce(c));
    }
  }
}

TEST_CASE("unique W_af x Omega factorisation at radius 3") {
  for (const auto &name : builtin_names()) {
    CAPTURE(name);
    auto c = check_wa_omega_factorisation(iwahori(name), 3);
    CHECK_MESSAGE(c.ok, c.detail);
  }
}

TEST_CASE("group law of the Iwahori-Weyl group") {
  IwahoriWeylDatum d = iwahori("SO5");
  auto ball = bfs_lengths(d, 3);
  std::vector<AffineWeylElement> elems;
  for (const auto &[g, len] : ball) elems.push_back(g);
  for (std::size_t i = 0; i < elems.size(); i += 7)
    for (std::size_t j = 0; j < elems.size(); j += 11) {
      const auto &a = elems[i], &b = elems[j];
      CHECK(d.multiply(a, d.inverse(a)) == d.identity());
      QVec x = d.interior_point();
      CHECK(d.act(d.multiply(a, b), x) == d.act(a, d.act(b, x)));
    }
}

TEST_CASE("folding lands in the closed alcove") {
  IwahoriWeylDatum d = iwahori("G2");
  QVec x{Rat(7, 3), Rat(-5, 2)};
  AffineWeylElement u = d.fold(x);
  QVec y = d.act(u, x);
  for (std::size_t i = 0; i < d.nodes().size(); ++i) CHECK(d.node_value(i, y) >= 0);
}

TEST_CASE("Iwahori facet data") {
  for (const auto &name : builtin_names()) {
    CAPTURE(name);
    IwahoriWeylDatum d = iwahori(name);
    FacetData f = facet(d, {});
    CHECK(f.all_ok());
    CHECK(f.S_f_af.size() == d.nodes().size());
    CHECK(f.W0_J.size() == d.finite_weyl().order());
    CHECK(f.S_f_labels.size() == f.XJ.size());
  }
}

TEST_CASE("vertex and edge facets of C2-type groups") {
  for (const auto &name : {"Sp4", "SO5", "SU4"}) {
    IwahoriWeylDatum d = iwahori(name);
    for (long j : {0, 1, 2}) {
      CAPTURE(name);
      CAPTURE(j);
      FacetData f = facet(d, {j});
      CHECK(f.all_ok());
      CHECK(f.S_f_af.size() == 2);
      CHECK(f.W0_J.size() == 2);
      CHECK(f.Rf_types == std::vector<std::string>{"A1"});
    }
    for (const auto &J : std::vector<std::vector<long>>{{0, 1}, {0, 2}, {1, 2}}) {
      FacetData f = facet(d, J);
      CHECK(f.all_ok());
      CHECK(f.S_f_af.empty());
      CHECK(f.XJ.empty());
    }
  }
}

TEST_CASE("Coxeter matrices of the Iwahori facets") {
  IwahoriWeylDatum a2 = iwahori("SL3");
  CHECK(coxeter_matrix(a2, facet(a2, {}).S_f_af) == Mat{{1, 3, 3}, {3, 1, 3}, {3, 3, 1}});
  IwahoriWeylDatum a1 = iwahori("SL2");
  CHECK(coxeter_matrix(a1, facet(a1, {}).S_f_af) == Mat{{1, 0}, {0, 1}});
  IwahoriWeylDatum g2 = iwahori("G2");
  Mat m = coxeter_matrix(g2, facet(g2, {}).S_f_af);
  std::multiset<Int> entries;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) entries.insert(m[i][j]);
  CHECK(entries == std::multiset<Int>{2, 3, 6});
}

TEST_CASE("A2 edges break the involution construction") {
  IwahoriWeylDatum d = iwahori("SL3");
  for (long j : {0, 1, 2}) CHECK_THROWS_AS(analyze_facet(d, {j}), FacetConstructionError);
}
