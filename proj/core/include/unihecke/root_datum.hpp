#pragma once
// Based root data (X*, Phi, X_*, Phi^vee, Delta), Weyl groups, Levi sub-data.
//
// Conventions: vectors in X* and X_* are integer coordinate vectors in dual
// bases, so <x, y> is the plain dot product.  A Weyl element is stored by its
// matrix on X* acting on column vectors; s_a = I - a a^vee^T there, and the
// same element acts on X_* by I - a^vee a^T (the inverse transpose).

#include "unihecke/lattice.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace unihecke {

struct BasedRootDatum {
  std::string name;
  std::size_t rank = 0;
  std::vector<Vec> roots;
  std::vector<Vec> coroots;
  std::vector<std::size_t> simple;  // indices into roots; position = simple label

  std::size_t num_roots() const { return roots.size(); }
  std::size_t num_simple() const { return simple.size(); }
  // Literal equality of lattices, root lists and simple indices; ignores name.
  bool same_structure(const BasedRootDatum &o) const;
};

struct ValidationResult {
  bool ok = false;
  std::string error;  // first violated axiom with a witness
  Mat cartan;         // A_ij = <alpha_j, alpha_i^vee> over simple positions
  std::vector<std::string> types;                    // one per component
  std::vector<std::vector<std::size_t>> components;  // simple positions per component
};

ValidationResult validate_and_classify(const BasedRootDatum &d);
// Classify a Cartan matrix; throws std::invalid_argument on unknown diagrams.
ValidationResult classify_cartan(const Mat &cartan);

BasedRootDatum dual(const BasedRootDatum &d);

// Derived tables for a validated datum.
class RootSystem {
public:
  explicit RootSystem(BasedRootDatum d);  // throws std::invalid_argument if invalid

  const BasedRootDatum &datum() const { return d_; }
  std::size_t rank() const { return d_.rank; }
  std::size_t num_roots() const { return d_.roots.size(); }
  std::size_t num_simple() const { return d_.simple.size(); }
  const Vec &root(std::size_t i) const { return d_.roots[i]; }
  const Vec &coroot(std::size_t i) const { return d_.coroots[i]; }
  const Vec &simple_root(std::size_t p) const { return d_.roots[d_.simple[p]]; }
  const Vec &simple_coroot(std::size_t p) const { return d_.coroots[d_.simple[p]]; }

  // Index of a root vector, or -1.
  long find_root(const Vec &v) const;
  long find_coroot(const Vec &v) const;
  // Coefficients of root i in the simple basis.
  const Vec &coefficients(std::size_t i) const { return coeffs_[i]; }
  bool is_positive(std::size_t i) const { return positive_[i]; }
  Int height(std::size_t i) const;
  std::size_t negative_of(std::size_t i) const { return neg_[i]; }
  const std::vector<std::size_t> &positive_roots() const { return pos_list_; }
  // s_p permutes roots: reflect_perm(p)[i] = index of s_p(root i).
  const std::vector<std::size_t> &reflect_perm(std::size_t p) const { return perm_[p]; }
  Mat reflection(std::size_t root_index) const;    // on X*
  Mat coreflection(std::size_t root_index) const;  // on X_*
  const ValidationResult &classification() const { return info_; }

private:
  BasedRootDatum d_;
  ValidationResult info_;
  std::map<Vec, std::size_t> index_, coindex_;
  std::vector<Vec> coeffs_;
  std::vector<bool> positive_;
  std::vector<std::size_t> neg_, pos_list_;
  std::vector<std::vector<std::size_t>> perm_;
};

struct WeylGroupElement {
  Mat matrix;                     // on X*
  std::vector<std::size_t> word;  // reduced, lexicographically smallest among shortest
  std::vector<std::size_t> perm;  // action on root indices
  std::size_t length() const { return word.size(); }
};

// Product of the degrees of the classified type.
BigInt weyl_group_order_formula(const ValidationResult &info);

class WeylGroup {
public:
  WeylGroup(const RootSystem &rs, std::size_t cap = 50000);

  std::size_t size() const { return elems_.size(); }
  const WeylGroupElement &operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<WeylGroupElement> &elements() const { return elems_; }
  std::size_t identity() const { return 0; }
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const { return inv_[a]; }
  std::size_t simple(std::size_t p) const { return simple_[p]; }
  // Index of s_p * w and w * s_p.
  std::size_t left_simple(std::size_t p, std::size_t w) const { return left_[w][p]; }
  std::size_t right_simple(std::size_t w, std::size_t p) const { return right_[w][p]; }
  long find(const Mat &m) const;
  std::size_t longest() const { return longest_; }
  // Longest element of the parabolic subgroup generated by simple positions I.
  std::size_t longest_of(const std::vector<std::size_t> &I) const;
  // Matrix on X_*.
  Mat comatrix(std::size_t a) const;
  std::size_t reflection_of_root(std::size_t root_index) const;
  const RootSystem &roots() const { return rs_; }

private:
  RootSystem rs_;
  std::vector<WeylGroupElement> elems_;
  std::map<Mat, std::size_t> index_;
  std::vector<std::size_t> inv_, simple_;
  std::vector<std::vector<std::size_t>> left_, right_;
  std::size_t longest_ = 0;
};

// Enumeration as a flat list; throws std::length_error naming the order if above cap.
std::vector<WeylGroupElement> weyl_group_elements(const BasedRootDatum &d, std::size_t cap = 50000);

// Closes simple roots/coroots under the simple reflections.  Roots are listed
// as positive roots by height (simple roots first, in the given order), then
// their negatives in the same order.  Throws std::invalid_argument if the
// closure exceeds max_roots or the result is not a valid datum.
BasedRootDatum from_simple_roots(std::string name, std::size_t rank, const std::vector<Vec> &simple_roots,
                                 const std::vector<Vec> &simple_coroots, std::size_t max_roots = 512);

// Simple positions I; roots in ZI cap Phi, simple set I.
BasedRootDatum standard_levi_datum(const BasedRootDatum &d, const std::vector<std::size_t> &I);

struct RootDatumMorphism {
  Mat lattice_map;                // character lattices, source -> target
  Mat dual_map;                   // cocharacter lattices, target -> source direction
  std::vector<long> root_index_map;  // source root -> target root, -1 if undefined
  BigInt index = 1;               // finite index of the lattice comparison
};

// Adjoint quotient: X*_ad = Z Delta (simple-root coordinates).  lattice_map is
// X*_ad -> X* (columns = simple roots), dual_map is X_* -> X_*^ad,
// lambda |-> (<alpha_j, lambda>)_j.  index = [X_*^ad : dual_map(X_*)] restricted
// to the semisimple rank.
std::pair<BasedRootDatum, RootDatumMorphism> adjoint_datum(const BasedRootDatum &d);

// Order of the center character group X*/Z Phi (0 if infinite).
BigInt center_character_order(const BasedRootDatum &d);

}  // namespace unihecke
