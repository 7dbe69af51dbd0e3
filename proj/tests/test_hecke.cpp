#include "doctest.h"

#include "support.hpp"
#include "unihecke/iwahori_matsumoto.hpp"

#include <random>

using namespace unihecke;
using unihecke::testing::a1_unequal;
using unihecke::testing::a2_with_flip;
using unihecke::testing::iwahori_hecke;

namespace {

std::vector<AffineHeckeDatum> sample_data() {
  std::vector<AffineHeckeDatum> out;
  for (const auto &name : {"SL2", "PGL2", "SL3", "Sp4", "GL2", "SU3", "SU4"})
    for (auto &d : iwahori_hecke(name)) out.push_back(d);
  out.push_back(a2_with_flip());
  out.push_back(a1_unequal(3, 1));
  return out;
}

HeckeElement pow_word(const HeckeAlgebra &H, std::size_t a, std::size_t b, Int m) {
  HeckeElement e = H.one();
  for (Int k = 0; k < m; ++k) e = H.multiply(e, H.N_simple(k % 2 == 0 ? a : b));
  return e;
}

}  // namespace

TEST_CASE("quadratic relation of the normalized generators") {
  for (const auto &d : sample_data()) {
    CAPTURE(d.name);
    HeckeAlgebra H(d);
    for (std::size_t p = 0; p < d.R.num_simple(); ++p) {
      HeckeElement s = H.N_simple(p);
      HeckeElement rhs = s.scaled(H.label_difference(p, false)) + H.one();
      CHECK(H.multiply(s, s) == rhs);
      CHECK(H.multiply(s, H.N_inverse(H.weyl().simple(p))) == H.one());
    }
  }
}

TEST_CASE("braid relations in rank two") {
  const std::map<std::string, Int> order = {{"SL3", 3}, {"Sp4", 4}, {"SU4", 4}, {"G2", 6}};
  for (const auto &[name, m] : order) {
    CAPTURE(name);
    HeckeAlgebra H(iwahori_hecke(name).front());
    CHECK(pow_word(H, 0, 1, m) == pow_word(H, 1, 0, m));
    CHECK_FALSE(pow_word(H, 0, 1, m - 1) == pow_word(H, 1, 0, m - 1));
    CHECK(pow_word(H, 0, 1, m) == H.N(H.weyl().longest()));
  }
}

TEST_CASE("Bernstein-Lusztig-Zelevinsky relation cleared of denominators") {
  for (const auto &d : {iwahori_hecke("Sp4").front(), iwahori_hecke("SU3").front(), a1_unequal(3, 1)}) {
    CAPTURE(d.name);
    HeckeAlgebra H(d);
    const RootSystem &rs = H.roots();
    for (std::size_t p = 0; p < rs.num_simple(); ++p) {
      const Vec &a = rs.simple_root(p), &av = rs.simple_coroot(p);
      for (Int i = -2; i <= 2; ++i)
        for (Int j = -2; j <= 2; ++j) {
          Vec x(H.rank(), 0);
          x[0] = i;
          if (H.rank() > 1) x[1] = j;
          else if (j != 0) continue;
          Vec sx = vsub(x, vscale(dot(x, av), a));
          HeckeElement lhs = H.multiply(H.theta(x), H.N_simple(p)) - H.multiply(H.N_simple(p), H.theta(sx));
          lhs = H.multiply(H.one() - H.theta(vscale(-2, a)), lhs);
          HeckeElement factor = H.one().scaled(H.label_difference(p, false)) +
                                H.theta(vneg(a)).scaled(H.label_difference(p, true));
          HeckeElement rhs = H.multiply(factor, H.theta(x) - H.theta(sx));
          CHECK(lhs == rhs);
        }
    }
  }
}

TEST_CASE("associativity on random triples") {
  std::mt19937_64 rng(2024);
  for (const auto &d : sample_data()) {
    CAPTURE(d.name);
    HeckeAlgebra H(d);
    for (int t = 0; t < 40; ++t) {
      auto a = H.random_element(rng, 4, 1, 3), b = H.random_element(rng, 4, 1, 3), c = H.random_element(rng, 4, 1, 3);
      CHECK(H.multiply(H.multiply(a, b), c) == H.multiply(a, H.multiply(b, c)));
    }
  }
}

TEST_CASE("specialization at v = 1 gives the extended Weyl group algebra") {
  for (const auto &d : sample_data()) {
    CAPTURE(d.name);
    HeckeAlgebra H(d);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 60; ++t) {
      auto a = H.random_element(rng, 1, 2, 1), b = H.random_element(rng, 1, 2, 1);
      HeckeKey ka = a.terms.begin()->first, kb = b.terms.begin()->first;
      auto prod = H.at_one(H.multiply(H.basis(ka), H.basis(kb)));
      CHECK(prod == std::map<HeckeKey, Int>{{H.group_product(ka, kb), 1}});
    }
  }
}

TEST_CASE("orbit sums are central") {
  for (const auto &d : sample_data()) {
    CAPTURE(d.name);
    HeckeAlgebra H(d);
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<Int> xd(-2, 2);
    for (int t = 0; t < 4; ++t) {
      Vec x(H.rank());
      for (auto &v : x) v = xd(rng);
      auto r = H.central_test(H.orbit_symmetrize(x));
      CHECK_MESSAGE(r.central, r.witness);
    }
  }
}

TEST_CASE("theta_x + theta_-x is central in A1 and theta_x alone is not") {
  HeckeAlgebra H(iwahori_hecke("SL2").front());
  CHECK(H.central_test(H.theta({1}) + H.theta({-1})).central);
  auto r = H.central_test(H.theta({1}));
  CHECK_FALSE(r.central);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("parsing and printing") {
  HeckeAlgebra H(iwahori_hecke("SL3").front());
  HeckeElement e = H.parse("2*v*theta(1,0)*N(0,1) - theta(0,-1) + 3");
  CHECK(H.parse(H.to_string(e)) == e);
  CHECK(H.parse("N(0)*N(0)") == H.multiply(H.N_simple(0), H.N_simple(0)));
  CHECK_THROWS_AS(H.parse("theta(1)"), std::invalid_argument);
  CHECK_THROWS_AS(H.parse("N(7)"), std::invalid_argument);
}

TEST_CASE("invalid Hecke data are rejected") {
  // A2 has no coroot in 2X^vee, so lambda* must equal lambda.
  AffineHeckeDatum d = iwahori_hecke("SL3").front();
  d.lambda_star[0] = 2;
  CHECK_THROWS_AS(validate_hecke_datum(d), std::invalid_argument);
  AffineHeckeDatum e = a1_unequal(1, 1);
  e.omega_ext.push_back(Mat{{-1}});
  CHECK_THROWS_AS(validate_hecke_datum(e), std::invalid_argument);
}

TEST_CASE("Iwahori-Matsumoto and Bernstein presentations agree") {
  for (const auto &d : sample_data()) {
    CAPTURE(d.name);
    HeckeAlgebra H(d);
    IwahoriMatsumoto IM(H);
    auto ball = IM.ball(3);
    for (const auto &g : ball) CHECK(IM.from_bernstein(IM.to_bernstein(IM.basis(g))) == IM.basis(g));
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < ball.size() && pairs < 150; i += 3)
      for (std::size_t j = 0; j < ball.size() && pairs < 150; j += 5, ++pairs) {
        auto lhs = IM.to_bernstein(IM.multiply(IM.basis(ball[i]), IM.basis(ball[j])));
        auto rhs = H.multiply(IM.to_bernstein(IM.basis(ball[i])), IM.to_bernstein(IM.basis(ball[j])));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("Iwahori-Matsumoto reduced words reach every ball element") {
  HeckeAlgebra H(a2_with_flip());
  IwahoriMatsumoto IM(H);
  for (const auto &g : IM.ball(3)) {
    auto [word, g0] = IM.reduced_word(g);
    CHECK(word.size() == IM.length(g));
    CHECK(IM.length(g0) == 0);
    ExtElement x = IM.identity();
    for (auto k : word) x = IM.multiply(x, IM.generators()[k]);
    CHECK(IM.multiply(x, g0) == g);
  }
}

TEST_CASE("twisting by a sign character") {
  // z(x) = (-1)^x on X = Z with root 1 and coroot 2 flips lambda*.
  AffineHeckeDatum d = a1_unequal(2, 1);
  HeckeAlgebra H(d);
  LatticeCharacter z{{1}, 2};
  AffineHeckeDatum t = twist_target(d, z);
  CHECK(t.lambda == std::vector<Int>{2});
  CHECK(t.lambda_star == std::vector<Int>{-1});
  auto rep = twist_by_character(H, z, small_basis(H, 2, 1));
  CHECK_MESSAGE(rep.multiplicative, rep.witness);
  CHECK(rep.samples > 0);
}

TEST_CASE("a character of order three on the PGL3 Iwahori datum") {
  AffineHeckeDatum d = iwahori_hecke("PGL3").front();
  HeckeAlgebra H(d);
  std::vector<Vec> simple;
  for (auto i : d.R.simple) simple.push_back(d.R.roots[i]);
  Cokernel ck = cokernel(to_big(columns_to_mat(simple, d.R.rank)));
  REQUIRE(ck.group.torsion_invariants == std::vector<BigInt>{3});
  LatticeCharacter z{from_big_vec(ck.quotient_map.row(0)), 3};
  for (const auto &a : simple) CHECK(z.exponent(a) == 0);
  CHECK(twist_target(d, z).lambda_star == d.lambda_star);
  auto rep = twist_by_character(H, z, small_basis(H, 1, 2));
  CHECK_MESSAGE(rep.multiplicative, rep.witness);
  CHECK(cyclotomic_polynomial(3) == std::vector<Int>{1, 1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<Int>{1, 0, 1});
}
