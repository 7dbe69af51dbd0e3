#pragma once
// Galois-side Bernstein components of unramified enhanced parameters and their
// matching with the facet-side components.
//
// The torus of a Galois component is modelled by its character lattice
// (X_*(T) / (Q I^vee cap X_*(T)))^Fr, i.e. the characters of the unramified
// twists of the Levi L_I.

#include "unihecke/catalog.hpp"
#include "unihecke/facet_hecke.hpp"
#include "unihecke/levi_dual.hpp"

#include <map>
#include <string>
#include <vector>

namespace unihecke {

struct WeaklyUnramifiedGroup {
  FinGenAbelianGroup group;  // (X_*(T) / Z Phi^vee)_Fr
  Cokernel realization;      // X_*(T) -> group
  // Characters of X_*(T) trivial on Z Phi^vee: one per cyclic factor, and a
  // sample of order 2 per free coordinate.
  std::vector<LatticeCharacter> characters;
};

WeaklyUnramifiedGroup weakly_unramified_group(const GaloisDatum &g);

struct GaloisComponentEntry {
  SimpleSubset levi;
  std::string cuspidal = "iwahori";
  std::vector<Int> lambda, lambda_star;  // per simple root of Phi_s; empty means all 1
};

struct PadicComponentEntry {
  std::vector<long> facet;
  SimpleSubset levi;
  std::string cuspidal = "iwahori";
};

struct GroupComponents {
  std::vector<PadicComponentEntry> padic;
  std::vector<GaloisComponentEntry> galois;
};

struct ComponentCatalog {
  std::map<std::string, GroupComponents> groups;

  // Iwahori components of every builtin group plus cuspidal vertex fixtures for SL2 and PGL2.
  static ComponentCatalog builtin();
  void merge(const ComponentCatalog &o);
  // The group's entries, or the Iwahori default when the group is absent.
  GroupComponents for_group(const GroupSpec &g) const;
};

struct DualBernsteinComponent {
  DualLeviClass levi;
  std::string cuspidal_id;
  Mat torus_lift;        // rank x m, columns lift the torus basis to X_*(T)
  std::vector<Mat> weyl; // W_s on torus coordinates, identity first
  BasedRootDatum roots;  // Phi_s in torus coordinates
  std::vector<Int> lambda, lambda_star;

  AffineHeckeDatum hecke(const std::string &name) const;
};

// Throws std::invalid_argument on a label table of the wrong size or labels
// violating lambda = lambda* off 2X^vee.
DualBernsteinComponent build_dual_component(const RelativeContext &ctx, const DualLeviClass &levi,
                                            const GaloisComponentEntry &entry);

struct PadicComponent {
  PadicComponentEntry entry;
  FacetData facet;
  std::map<long, Int> exponents;
  FacetHeckeData hecke;
};

struct ComponentMatch {
  PadicComponent padic;
  std::size_t psi = 0;
  DualBernsteinComponent galois;
  Mat torus_iso;                      // torus coordinates -> Xf coordinates
  std::vector<std::size_t> weyl_iso;  // W_s index -> index into W0_J_xf
  bool intertwines = false;
  std::string detail;
};

struct MatchReport {
  std::string group;
  std::vector<ComponentMatch> matches;
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

// Galois coordinates of the torus identification (torus -> Xf).  Throws
// std::invalid_argument when a lifted cocharacter has no image in Xf.
Mat torus_identification(const IwahoriWeylDatum &d, const FacetData &f, const Mat &torus_lift);

MatchReport match_components(const GroupSpec &g, const ComponentCatalog &catalog, const ParameterTable &table,
                             const FacetOptions &opt = {});

}  // namespace unihecke
