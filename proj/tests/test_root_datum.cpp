#include "doctest.h"

#include "support.hpp"

#include <set>

using namespace unihecke;

namespace {

// Closure of the simple reflection matrices by plain breadth-first search.
std::set<Mat> brute_force_weyl(const BasedRootDatum &d) {
  std::vector<Mat> gens;
  for (auto i : d.simple) {
    Mat s = identity_mat(d.rank);
    for (std::size_t r = 0; r < d.rank; ++r)
      for (std::size_t c = 0; c < d.rank; ++c) s[r][c] -= d.roots[i][r] * d.coroots[i][c];
    gens.push_back(s);
  }
  std::set<Mat> seen{identity_mat(d.rank)};
  std::vector<Mat> todo{identity_mat(d.rank)};
  while (!todo.empty()) {
    Mat m = todo.back();
    todo.pop_back();
    for (const auto &s : gens) {
      Mat n = mat_mul(s, m);
      if (seen.insert(n).second) todo.push_back(n);
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("every builtin group satisfies the root datum axioms") {
  for (const auto &name : builtin_names()) {
    CAPTURE(name);
    GroupSpec g = builtin_group(name);
    auto v = validate_and_classify(g.datum);
    CHECK_MESSAGE(v.ok, v.error);
    CHECK(dual(dual(g.datum)).same_structure(g.datum));
    CHECK(validate_and_classify(dual(g.datum)).ok);
  }
}

TEST_CASE("classification of the builtin types") {
  const std::map<std::string, std::vector<std::string>> expected = {
      {"SL2", {"A1"}}, {"PGL2", {"A1"}}, {"SL3", {"A2"}}, {"PGL3", {"A2"}}, {"Sp4", {"C2"}}, {"SO5", {"B2"}},
      {"GL2", {"A1"}}, {"GL1", {}},      {"G2", {"G2"}},  {"SU3", {"A2"}},  {"SU4", {"A3"}}, {"InnerPGL2", {"A1"}}};
  for (const auto &[name, types] : expected) {
    CAPTURE(name);
    CHECK(validate_and_classify(builtin_group(name).datum).types == types);
  }
}

TEST_CASE("Weyl group orders against brute-force closure") {
  const std::map<std::string, std::size_t> frozen = {{"SL2", 2}, {"SL3", 6},  {"Sp4", 8}, {"SO5", 8},
                                                     {"G2", 12}, {"SU4", 24}, {"GL1", 1}, {"GL2", 2}};
  for (const auto &[name, order] : frozen) {
    CAPTURE(name);
    BasedRootDatum d = builtin_group(name).datum;
    auto brute = brute_force_weyl(d);
    WeylGroup w(RootSystem{d});
    CHECK(brute.size() == order);
    CHECK(w.size() == order);
    CHECK(weyl_group_order_formula(validate_and_classify(d)) == order);
    std::set<Mat> ours;
    for (const auto &e : w.elements()) ours.insert(e.matrix);
    CHECK(ours == brute);
  }
}

TEST_CASE("Weyl group words are reduced and consistent") {
  WeylGroup w(RootSystem{builtin_group("G2").datum});
  const RootSystem &rs = w.roots();
  for (std::size_t i = 0; i < w.size(); ++i) {
    Mat m = identity_mat(rs.rank());
    for (auto p : w[i].word) m = mat_mul(m, rs.reflection(rs.datum().simple[p]));
    CHECK(m == w[i].matrix);
    // Length equals the number of positive roots sent negative.
    std::size_t inv = 0;
    for (auto r : rs.positive_roots())
      if (!rs.is_positive(w[i].perm[r])) ++inv;
    CHECK(inv == w[i].length());
  }
  CHECK(w[w.longest()].length() == 6);
}

TEST_CASE("invalid data are rejected with a witness") {
  BasedRootDatum bad;
  bad.rank = 1;
  bad.roots = {{2}, {-2}};
  bad.coroots = {{2}, {-2}};
  bad.simple = {0};
  auto v = validate_and_classify(bad);
  CHECK_FALSE(v.ok);
  CHECK(v.error.find("pairing") != std::string::npos);

  BasedRootDatum not_closed;
  not_closed.rank = 2;
  not_closed.roots = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  not_closed.coroots = {{2, -1}, {-1, 2}, {-2, 1}, {1, -2}};
  not_closed.simple = {0, 1};
  CHECK_FALSE(validate_and_classify(not_closed).ok);
}

TEST_CASE("from_simple_roots reproduces the builtin root sets") {
  for (const auto &name : {"SL3", "Sp4", "G2"}) {
    CAPTURE(name);
    BasedRootDatum d = builtin_group(name).datum;
    std::vector<Vec> sr, sc;
    for (auto i : d.simple) {
      sr.push_back(d.roots[i]);
      sc.push_back(d.coroots[i]);
    }
    BasedRootDatum e = from_simple_roots(name, d.rank, sr, sc);
    CHECK(std::set<Vec>(e.roots.begin(), e.roots.end()) == std::set<Vec>(d.roots.begin(), d.roots.end()));
    CHECK(std::set<Vec>(e.coroots.begin(), e.coroots.end()) == std::set<Vec>(d.coroots.begin(), d.coroots.end()));
  }
}

TEST_CASE("adjoint datum and center character group") {
  auto [ad, m] = adjoint_datum(builtin_group("SL3").datum);
  CHECK(validate_and_classify(ad).ok);
  CHECK(m.index == 3);
  CHECK(center_character_order(builtin_group("SL2").datum) == 2);
  CHECK(center_character_order(builtin_group("PGL2").datum) == 1);
  CHECK(center_character_order(builtin_group("SL3").datum) == 3);
  CHECK(center_character_order(builtin_group("GL2").datum) == 0);
}

TEST_CASE("standard Levi sub-datum of Sp4") {
  BasedRootDatum d = builtin_group("Sp4").datum;
  for (std::size_t p = 0; p < 2; ++p) {
    BasedRootDatum L = standard_levi_datum(d, {p});
    CHECK(L.num_roots() == 2);
    CHECK(validate_and_classify(L).ok);
  }
  CHECK(standard_levi_datum(d, {}).num_roots() == 0);
  CHECK(standard_levi_datum(d, {0, 1}).num_roots() == 8);
}
