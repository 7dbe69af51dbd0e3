#include "doctest.h"

#include "unihecke/lattice.hpp"

#include <random>

using namespace unihecke;

namespace {

IntegerMatrix random_matrix(std::mt19937_64 &rng, std::size_t r, std::size_t c, long long range) {
  std::uniform_int_distribution<long long> d(-range, range);
  IntegerMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// gcd of all k x k minors, computed by brute force.
BigInt determinantal_divisor(const IntegerMatrix &m, std::size_t k) {
  std::vector<std::size_t> rows(k), cols(k);
  BigInt g = 0;
  auto next = [](std::vector<std::size_t> &idx, std::size_t n) {
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;)
      if (idx[i] < n - k + i) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    return false;
  };
  for (std::size_t i = 0; i < k; ++i) rows[i] = i;
  do {
    for (std::size_t i = 0; i < k; ++i) cols[i] = i;
    do {
      IntegerMatrix sub(k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(rows[a], cols[b]);
      g = boost::multiprecision::gcd(g, abs(determinant(sub)));
    } while (next(cols, m.cols()));
  } while (next(rows, m.rows()));
  return g;
}

IntegerMatrix mat(std::vector<std::vector<long long>> rows) { return IntegerMatrix::from_rows(rows); }

}  // namespace

TEST_CASE("Smith form matches determinantal divisors") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + trial % 3, c = 1 + (trial / 3) % 4;
    IntegerMatrix m = random_matrix(rng, r, c, 6);
    SmithResult s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.S);
    CHECK(is_unimodular(s.U));
    CHECK(is_unimodular(s.V));
    auto diag = s.diagonal();
    BigInt prod = 1;
    for (std::size_t k = 0; k < std::min(r, c); ++k) {
      if (k + 1 < diag.size() && diag[k] != 0) CHECK(diag[k + 1] % diag[k] == 0);
      prod *= k < diag.size() ? diag[k] : BigInt(0);
      CHECK(prod == determinantal_divisor(m, k + 1));
    }
  }
}

TEST_CASE("cokernel of known matrices") {
  auto ck = cokernel(mat({{2, 0}, {0, 3}}));
  CHECK(ck.group.free_rank == 0);
  CHECK(ck.group.order() == 6);
  CHECK(ck.group.torsion_invariants == std::vector<BigInt>{6});

  ck = cokernel(mat({{2}, {0}}));
  CHECK(ck.group.free_rank == 1);
  CHECK(ck.group.torsion_invariants == std::vector<BigInt>{2});

  ck = cokernel(IntegerMatrix(2, 0));
  CHECK(ck.group.free_rank == 2);
  CHECK(ck.group.is_finite() == false);
}

TEST_CASE("cokernel projection kills the image and the section splits it") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    IntegerMatrix m = random_matrix(rng, 3, 2, 4);
    Cokernel ck = cokernel(m);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto p = ck.project(m.column(j));
      for (const auto &x : p) CHECK(x == 0);
    }
    std::vector<BigInt> e(ck.moduli.size(), 0);
    for (std::size_t k = 0; k < e.size(); ++k) {
      std::fill(e.begin(), e.end(), 0);
      e[k] = 1;
      std::vector<BigInt> lifted(3, 0);
      for (std::size_t i = 0; i < 3; ++i) lifted[i] = ck.section(i, k);
      CHECK(ck.project(lifted) == ck.reduce(e));
    }
  }
}

TEST_CASE("kernel basis is saturated and annihilated") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    IntegerMatrix m = random_matrix(rng, 2, 4, 5);
    IntegerMatrix k = kernel_basis(m);
    CHECK((m * k).is_zero());
    CHECK(k.cols() == 4 - smith_normal_form(m).rank());
    if (k.cols() > 0) CHECK(saturation_index(k) == 1);
  }
}

TEST_CASE("solve_integer finds lattice solutions only") {
  IntegerMatrix m = mat({{2, 4}});
  CHECK(solve_integer(m, {6}).has_value());
  CHECK_FALSE(solve_integer(m, {3}).has_value());
}

TEST_CASE("fixed sublattice of a coordinate swap") {
  IntegerMatrix swap = mat({{0, 1}, {1, 0}});
  IntegerMatrix f = fixed_sublattice(swap);
  REQUIRE(f.cols() == 1);
  CHECK(abs(f(0, 0)) == 1);
  CHECK(f(0, 0) == f(1, 0));
  CHECK(multiplicative_order(swap) == std::optional<std::size_t>(2));
  CHECK_THROWS_AS(fixed_sublattice(mat({{1, 1}, {0, 1}})), std::invalid_argument);
}

TEST_CASE("checked int64 arithmetic throws on overflow") {
  CHECK_THROWS_AS(mul_checked(Int(1) << 40, Int(1) << 40), std::overflow_error);
  CHECK_THROWS_AS(add_checked(INT64_MAX, 1), std::overflow_error);
  CHECK(mul_checked(-3, 7) == -21);
}

TEST_CASE("rational solve and inverse") {
  QMat a = to_q(Mat{{2, 1}, {1, 1}});
  auto inv = inverse_q(a);
  REQUIRE(inv.has_value());
  CHECK(qmat_mul(a, *inv) == to_q(identity_mat(2)));
  CHECK(integral_inverse(Mat{{2, 0}, {0, 1}}) == std::nullopt);
  CHECK(rank_q(to_q(Mat{{1, 2}, {2, 4}})) == 1);
}
