#pragma once
// Levi subgroups up to conjugacy and their dual L-Levi counterparts.

#include "unihecke/galois_relative.hpp"

#include <vector>

namespace unihecke {

using SimpleSubset = std::vector<std::size_t>;  // sorted simple positions

struct LeviClass {
  SimpleSubset representative;              // lexicographically smallest member
  std::vector<SimpleSubset> orbit_members;  // sorted
  std::vector<std::size_t> relative_orbit;  // relative simple indices of the representative
};

struct DualLeviClass {
  SimpleSubset representative;  // positions of Delta^vee
  std::vector<SimpleSubset> members;
  bool relevant = false;        // Delta0^vee contained in representative
};

// Gamma-stable subsets I of simple positions, optionally with Delta0 in I.
std::vector<SimpleSubset> gamma_stable_subsets(const RelativeContext &ctx, bool contain_delta0);

std::vector<LeviClass> classify_levis(const RelativeContext &ctx, const RelativeWeylGroup &w);
std::vector<LeviClass> classify_levis(const RelativeContext &ctx);

// Dual side: relevant subsets up to Stab_{W^Gamma}(Z Delta0^vee)-association,
// the others up to W^Gamma-association.
std::vector<DualLeviClass> classify_dual_levis(const RelativeContext &ctx);

struct DualLeviPair {
  LeviClass levi;
  DualLeviClass dual;
};

struct DualLeviReport {
  std::vector<DualLeviPair> pairs;
  std::vector<DualLeviClass> dual_classes;
  std::size_t relevant_count = 0;
};

// Throws std::logic_error if the two classifications fail to biject.
DualLeviReport dual_levi_bijection(const RelativeContext &ctx);

}  // namespace unihecke
