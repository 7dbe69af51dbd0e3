#pragma once
// Multivariate Laurent polynomials in formal parameters v_0, ..., v_{n-1}
// (n <= 4) with int64 coefficients (overflow checked).  Terms are kept as a
// sorted flat array of packed exponent keys.

#include "unihecke/lattice.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace unihecke {

class Laurent {
public:
  using Exponent = std::vector<Int>;
  static constexpr std::size_t max_vars = 4;

  Laurent() = default;
  explicit Laurent(std::size_t nvars, Int constant = 0);
  static Laurent monomial(std::size_t nvars, std::size_t var, Int exponent, Int coeff = 1);
  // v_var^k - v_var^{-k}
  static Laurent quantum_difference(std::size_t nvars, std::size_t var, Int k);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::map<Exponent, Int> terms() const;
  void add_term(const Exponent &e, Int c);

  Laurent &operator+=(const Laurent &o);
  Laurent &operator-=(const Laurent &o);
  Laurent operator+(const Laurent &o) const;
  Laurent operator-(const Laurent &o) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent &o) const;
  Laurent scaled(Int k) const;
  bool operator==(const Laurent &o) const { return terms_ == o.terms_; }

  // v_j -> v_j^{-1}
  Laurent bar() const;
  // Every v_j -> 1.
  Int at_one() const;
  // v_j -> v^{k_j} for a single variable v; returns exponent -> coefficient.
  std::map<Int, Int> specialize(const std::vector<Int> &k) const;

  // v_j -> v'_{target[j]} in a ring with nvars parameters.
  Laurent rename(const std::vector<std::size_t> &target, std::size_t nvars) const;

  std::string to_string() const;

private:
  using Key = std::uint64_t;
  Key pack(const Exponent &e) const;
  Exponent unpack(Key k) const;
  Key add_keys(Key a, Key b) const;
  void merge(const Laurent &o, Int sign);

  std::size_t nvars_ = 0;
  std::vector<std::pair<Key, Int>> terms_;  // sorted by key, no zero coefficients
};

}  // namespace unihecke
