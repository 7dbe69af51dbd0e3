#include "doctest.h"

#include "support.hpp"

using namespace unihecke;
using unihecke::testing::context;

namespace {

// Weyl elements commuting with every Galois element, by direct search.
std::size_t commuting_weyl_elements(const GaloisDatum &g) {
  WeylGroup w(RootSystem{g.base});
  std::size_t n = 0;
  for (const auto &e : w.elements()) {
    bool ok = true;
    for (const auto &s : g.elements) ok = ok && mat_mul(s, e.matrix) == mat_mul(e.matrix, s);
    n += ok;
  }
  return n;
}

}  // namespace

TEST_CASE("Galois closure and finite order") {
  CHECK(builtin_group("SL3").galois().order() == 1);
  CHECK(builtin_group("SU3").galois().order() == 2);
  CHECK(builtin_group("SU4").galois().order() == 2);
  GroupSpec g = builtin_group("SL3");
  CHECK_THROWS_AS(make_galois_datum(g.datum, {Mat{{1, 1}, {0, 1}}}), std::invalid_argument);
  // The swap of simple roots preserves Delta; its negative does not.
  GroupSpec u = builtin_group("SU3");
  Mat neg = u.frobenius;
  for (auto &r : neg)
    for (auto &x : r) x = -x;
  CHECK_THROWS_AS(make_galois_datum(u.datum, {neg}), std::invalid_argument);
}

TEST_CASE("the two relative Weyl constructions agree on every builtin group") {
  for (const auto &name : builtin_names()) {
    CAPTURE(name);
    auto ctx = context(builtin_group(name));
    auto direct = relative_weyl_group(*ctx, WeylPath::direct);
    auto dualw = relative_weyl_group(*ctx, WeylPath::dual);
    CHECK(same_matrix_group(direct, dualw));
    CHECK(generated_by_simple_reflections(direct));
  }
}

TEST_CASE("relative Weyl orders of quasi-split groups equal the Frobenius centralizer") {
  const std::map<std::string, std::size_t> frozen = {{"SL3", 6}, {"SU3", 2}, {"SU4", 8}, {"G2", 12}, {"Sp4", 8}};
  for (const auto &[name, order] : frozen) {
    CAPTURE(name);
    GroupSpec g = builtin_group(name);
    auto w = relative_weyl_group(g.galois(), g.marking(), WeylPath::direct);
    CHECK(w.order() == order);
    CHECK(commuting_weyl_elements(g.galois()) == order);
  }
}

TEST_CASE("restricted root systems") {
  auto su3 = context(builtin_group("SU3"))->relative;
  CHECK(su3.dim() == 1);
  CHECK_FALSE(su3.reduced);
  CHECK(su3.types == std::vector<std::string>{"BC1"});
  CHECK(su3.restricted_roots.size() == 4);

  auto su4 = context(builtin_group("SU4"))->relative;
  CHECK(su4.dim() == 2);
  CHECK(su4.reduced);
  CHECK(su4.restricted_roots.size() == 8);

  auto inner = context(builtin_group("InnerPGL2"))->relative;
  CHECK(inner.dim() == 0);
  CHECK(inner.restricted_roots.empty());
  CHECK(relative_weyl_group(builtin_group("InnerPGL2").galois(), builtin_group("InnerPGL2").marking(),
                            WeylPath::direct)
            .order() == 1);
}

TEST_CASE("relative orbits and markings") {
  GroupSpec g = builtin_group("SU4");
  auto orbits = relative_orbits(g.galois(), g.marking());
  REQUIRE(orbits.size() == 2);
  CHECK(orbits[0] == std::vector<std::size_t>{0, 2});
  CHECK(orbits[1] == std::vector<std::size_t>{1});
  GroupSpec s = builtin_group("SU3");
  CHECK_THROWS(check_marking(s.galois(), AnisotropicMarking{{0}}));
}
