#pragma once
// Builtin group catalog.

#include "unihecke/galois_relative.hpp"

#include <map>
#include <string>
#include <vector>

namespace unihecke {

struct FacetEntry {
  std::vector<long> J;
  std::string cuspidal = "iwahori";
  std::map<long, Int> exponents;  // node label -> N(i)
};

struct GroupSpec {
  std::string name;
  BasedRootDatum datum;
  Mat frobenius;  // on X*; identity for split groups
  std::vector<std::size_t> delta0;
  std::vector<FacetEntry> builtin_facets;

  GaloisDatum galois() const;
  AnisotropicMarking marking() const { return {delta0}; }
  bool split() const;
  bool semisimple() const;
};

std::vector<std::string> builtin_names();
// Throws std::invalid_argument for unknown names.
GroupSpec builtin_group(const std::string &name);

}  // namespace unihecke
