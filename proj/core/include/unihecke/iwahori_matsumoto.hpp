#pragma once
// Iwahori-Matsumoto presentation of the algebra of an AffineHeckeDatum: basis
// N_g for g = t_x w omega in X x| W(R) x| omega_ext, used as an independent
// oracle for the Bernstein multiplication and for the conversion maps.
//
// The alcove is {v : 0 < <v, a^vee> for simple a, <v, theta^vee> < 1} in the
// dominant chamber, with theta^vee the highest coroot of each component;
// s_0 = t_theta s_theta.

#include "unihecke/hecke.hpp"

#include <map>
#include <vector>

namespace unihecke {

using ExtElement = HeckeKey;  // t_x w omega

class IMElement {
public:
  std::map<ExtElement, Laurent> terms;
  void add(const ExtElement &g, const Laurent &c);
  IMElement &operator+=(const IMElement &o);
  IMElement operator-(const IMElement &o) const;
  IMElement scaled(const Laurent &c) const;
  bool operator==(const IMElement &o) const { return terms == o.terms; }
  bool is_zero() const { return terms.empty(); }
};

class IwahoriMatsumoto {
public:
  explicit IwahoriMatsumoto(const HeckeAlgebra &H);

  const HeckeAlgebra &bernstein() const { return H_; }
  ExtElement identity() const;
  ExtElement multiply(const ExtElement &a, const ExtElement &b) const { return H_.group_product(a, b); }
  ExtElement inverse(const ExtElement &a) const;
  std::size_t length(const ExtElement &g) const;

  // Simple affine reflections: finite simple positions first, then one s_0 per component.
  const std::vector<ExtElement> &generators() const { return gens_; }
  const Laurent &generator_difference(std::size_t k) const { return gen_diff_[k]; }
  std::size_t num_finite_generators() const { return H_.datum().R.num_simple(); }
  // Left-descent word: g = gens[word[0]] ... gens[word[k-1]] * g0 with l(g0) = 0.
  std::pair<std::vector<std::size_t>, ExtElement> reduced_word(const ExtElement &g) const;
  // Length-zero elements generating every length-zero class (with inverses).
  const std::vector<ExtElement> &length_zero_generators() const { return omega_gens_; }
  // All elements reachable by words of length <= L in the generators and the length-zero generators.
  std::vector<ExtElement> ball(std::size_t L) const;

  IMElement basis(const ExtElement &g) const;
  IMElement one() const { return basis(identity()); }
  IMElement multiply(const IMElement &a, const IMElement &b) const;
  IMElement right_multiply_generator(const IMElement &a, std::size_t k) const;
  IMElement basis_inverse(const ExtElement &g) const;

  // theta_x N_w omega -> N_{t_{x+}} N_{t_{x-}}^{-1} N_w N_omega, x- = k * 2rho.
  IMElement from_bernstein(const HeckeElement &e, Int extra_shift = 0) const;
  HeckeElement to_bernstein(const IMElement &e) const;
  HeckeElement generator_image(std::size_t k) const;

  std::string to_string(const IMElement &e) const;

private:
  const HeckeAlgebra &H_;
  std::vector<ExtElement> gens_, omega_gens_;
  std::vector<Laurent> gen_diff_;
  std::vector<Vec> highest_roots_;  // theta per component
  std::vector<std::size_t> theta_reflection_;
  Vec two_rho_;
};

}  // namespace unihecke
