#pragma once
// Finite Galois actions on a based root datum, the anisotropic marking, the
// restricted root system and the relative Weyl group.

#include "unihecke/root_datum.hpp"

#include <memory>
#include <string>
#include <vector>

namespace unihecke {

struct GaloisDatum {
  BasedRootDatum base;
  std::vector<Mat> generators;  // automorphisms of X*
  std::vector<Mat> elements;    // finite closure, identity first
  std::vector<std::vector<std::size_t>> root_perms;  // per element
  std::vector<std::vector<std::size_t>> simple_perms;  // per element, on simple positions

  std::size_t order() const { return elements.size(); }
};

// Validates the generators (each permutes the roots, with matching coroots,
// and preserves Delta) and closes them; throws std::invalid_argument.
GaloisDatum make_galois_datum(BasedRootDatum base, std::vector<Mat> generators,
                              std::size_t bound = 10000);

// The action of g in X* on X_*: inverse transpose.
Mat cocharacter_action(const Mat &g);

struct AnisotropicMarking {
  std::vector<std::size_t> delta0;  // simple positions
};

void check_marking(const GaloisDatum &g, const AnisotropicMarking &m);

// Gamma-orbits of simple positions outside delta0, each sorted, ordered by minimum.
std::vector<std::vector<std::size_t>> relative_orbits(const GaloisDatum &g, const AnisotropicMarking &m);

struct RelativeRootSystem {
  Mat cochar_basis;      // rank x s, columns a saturated basis of X_*(S)
  Mat restriction_map;   // s x rank, X*(T) -> X*(S)
  std::vector<Vec> restricted_roots;      // distinct nonzero images, sorted
  std::vector<std::size_t> multiplicities;
  std::vector<long> image_of_root;        // absolute root -> restricted index or -1
  std::vector<std::vector<std::size_t>> orbits;  // see relative_orbits
  std::vector<Vec> relative_simple;       // one per orbit
  std::vector<Vec> relative_simple_coroots;  // in X_*(S) coordinates
  bool reduced = true;
  std::vector<std::string> types;         // e.g. "A2", "BC1"
  std::vector<std::vector<std::size_t>> components;  // relative simple indices per component
  std::size_t dim() const { return mat_cols(cochar_basis); }
};

RelativeRootSystem restricted_root_system(const GaloisDatum &g, const AnisotropicMarking &m);

enum class WeylPath { direct, dual };

struct RelativeWeylGroup {
  std::vector<Mat> elements;       // on X_*(S) (cochar_basis coordinates), identity first
  std::vector<std::size_t> lifts;  // absolute Weyl element index per element
  WeylPath provenance = WeylPath::direct;
  std::size_t stabilizer_order = 0;  // size of the stabilizer before the quotient
  std::size_t kernel_order = 0;      // elements acting trivially (on X_*(S) or X_*/Z Delta0^vee)
  std::vector<std::size_t> simple_reflections;  // element indices, one per relative orbit
  std::size_t order() const { return elements.size(); }
  long find(const Mat &m) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
};

// Shared tables for the relative computations of one (G, Delta0).
struct RelativeContext {
  GaloisDatum galois;
  AnisotropicMarking marking;
  std::shared_ptr<RootSystem> roots;
  std::shared_ptr<WeylGroup> weyl;
  RelativeRootSystem relative;

  RelativeContext(GaloisDatum g, AnisotropicMarking m, std::size_t cap = 50000);
  // C with w^vee B = B C.
  std::optional<Mat> restrict_to_split(std::size_t w) const;
  bool commutes_with_gamma(std::size_t w) const;
  bool stabilizes_delta0(std::size_t w) const;
  bool trivial_mod_delta0(std::size_t w) const;
};

RelativeWeylGroup relative_weyl_group(const RelativeContext &ctx, WeylPath path);
RelativeWeylGroup relative_weyl_group(const GaloisDatum &g, const AnisotropicMarking &m,
                                      WeylPath path, std::size_t cap = 50000);

bool same_matrix_group(const RelativeWeylGroup &a, const RelativeWeylGroup &b);
// Closure of the simple reflections equals the whole group.
bool generated_by_simple_reflections(const RelativeWeylGroup &w);

}  // namespace unihecke
