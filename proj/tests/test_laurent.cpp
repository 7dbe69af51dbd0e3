#include "doctest.h"

#include "unihecke/laurent.hpp"

#include <random>

using namespace unihecke;

namespace {

Laurent random_laurent(std::mt19937_64 &rng, std::size_t nvars) {
  std::uniform_int_distribution<Int> e(-3, 3), c(-4, 4);
  Laurent p(nvars);
  for (int i = 0; i < 5; ++i) {
    Laurent::Exponent x(nvars);
    for (auto &v : x) v = e(rng);
    p.add_term(x, c(rng));
  }
  return p;
}

// Product by the definition using the map form of the terms.
Laurent naive_product(const Laurent &a, const Laurent &b) {
  Laurent out(a.nvars());
  for (const auto &[ea, ca] : a.terms())
    for (const auto &[eb, cb] : b.terms()) {
      Laurent::Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

}  // namespace

TEST_CASE("ring axioms on random Laurent polynomials") {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= Laurent::max_vars; ++n)
    for (int t = 0; t < 40; ++t) {
      Laurent a = random_laurent(rng, n), b = random_laurent(rng, n), c = random_laurent(rng, n);
      CHECK(a * b == naive_product(a, b));
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
      CHECK((a * b).bar() == a.bar() * b.bar());
      CHECK((a * b).at_one() == a.at_one() * b.at_one());
    }
}

TEST_CASE("monomials, quantum differences and printing") {
  Laurent v = Laurent::monomial(1, 0, 1);
  Laurent d = Laurent::quantum_difference(1, 0, 1);
  CHECK(d == v - v.bar());
  CHECK(d.to_string() == "v - v^(-1)");
  CHECK(Laurent(1, 3).to_string() == "3");
  CHECK(Laurent(2).to_string() == "0");
  // (v - v^-1)^2 = v^2 - 2 + v^-2
  auto sq = (d * d).terms();
  CHECK(sq.size() == 3);
  CHECK(sq[{0}] == -2);
  CHECK(sq[{2}] == 1);
}

TEST_CASE("specialization and renaming") {
  Laurent p = Laurent::monomial(2, 0, 2) + Laurent::monomial(2, 1, -1, 5);
  auto s = p.specialize({1, 2});
  CHECK(s[2] == 1);
  CHECK(s[-2] == 5);
  Laurent r = p.rename({0, 0}, 1);
  CHECK(r == Laurent::monomial(1, 0, 2) + Laurent::monomial(1, 0, -1, 5));
}

TEST_CASE("overflow is detected") {
  Laurent big = Laurent::monomial(1, 0, 0, Int(1) << 40);
  CHECK_THROWS_AS(big * big, std::overflow_error);
}
