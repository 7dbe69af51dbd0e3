#pragma once
// Parameter tables and the affine Hecke data attached to a facet.

#include "unihecke/affine_weyl.hpp"
#include "unihecke/hecke.hpp"

#include <map>
#include <string>
#include <vector>

namespace unihecke {

// Tits-index style label of an unramified group: absolute types joined by 'x',
// prefixed by the order of Frobenius on the diagram when it exceeds 1, and
// suffixed by the anisotropic positions, e.g. "A1", "2A3", "A1/0".
std::string affine_type_label(const GaloisDatum &g, const AnisotropicMarking &m);

struct ParameterKey {
  std::string type;
  std::vector<long> J;  // sorted node labels
  std::string cuspidal;
  auto operator<=>(const ParameterKey &) const = default;
};

class ParameterTable {
public:
  std::map<ParameterKey, std::map<long, Int>> entries;

  // Entries for the cuspidal fixtures of the builtin catalog.
  static ParameterTable builtin();
  void merge(const ParameterTable &o);
  // Exponents N(i) for every node outside J.  Iwahori facets without an entry
  // default to 1; any other missing entry throws std::invalid_argument.
  std::map<long, Int> lookup(const IwahoriWeylDatum &d, const std::vector<long> &J, const std::string &cuspidal) const;
};

// Node labels outside J.
std::vector<long> free_nodes(const IwahoriWeylDatum &d, const std::vector<long> &J);

struct FacetHeckeData {
  std::vector<Vec> psi;                 // characters of Omega_f,tor
  std::vector<AffineHeckeDatum> data;  // one per psi
};

// X = Xf, R = Rf.  lambda(alpha) is the exponent of the finite node of a
// simple root; lambda*(alpha) is the exponent of the dropped node when its
// linear part is conjugate to alpha and alpha^vee lies in 2 Xf^vee.
// omega_ext is trivial: Omega_f acts through translations already in Xf.
FacetHeckeData build_from_facet(const FacetData &f, const std::map<long, Int> &exponents, const std::string &name);

}  // namespace unihecke
