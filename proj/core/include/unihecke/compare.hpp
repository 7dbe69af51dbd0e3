#pragma once
// Comparison of facet-side and Galois-side affine Hecke algebras, twist
// equivariance of the component matching, and adjoint invariance of facet data.

#include "unihecke/components.hpp"

#include <optional>
#include <string>
#include <vector>

namespace unihecke {

struct RootParameterCheck {
  std::size_t galois_simple = 0;
  std::size_t padic_simple = 0;
  Int q_exponent = 0, q_exponent_star = 0;  // facet side N, N*
  Int lambda = 0, lambda_star = 0;          // Galois side labels
  std::string v_exponent, v_exponent_star;  // N / (2 lambda), "free" when both vanish
  bool ok = true;
};

struct ComparisonReport {
  std::string group;
  std::string padic_component;
  std::string galois_component;
  bool isomorphic = false;
  std::string witness;                // first failed sub-check
  RootDatumMorphism based_root_datum_iso;  // Galois torus -> Xf
  std::vector<long> simple_map;       // Galois simple position -> facet simple position
  std::vector<RootParameterCheck> parameter_check;
  std::string v_exponent = "1/2";     // v = q^{v_exponent}
  bool v_constrained = false;         // false when no root constrains v
  FinGenAbelianGroup omega_padic;     // Xf / Z Rf
  FinGenAbelianGroup omega_galois;    // X*(T_s) / Z Phi_s
};

// Searches w in W(Rf) with w . torus_iso mapping simple roots to simple roots,
// checks coroots and the parameter law v^{2 lambda} = q^N.  The facet datum
// carries the q-exponents N in its labels.
ComparisonReport compare_hecke_algebras(const AffineHeckeDatum &padic, const AffineHeckeDatum &galois,
                                        const Mat &torus_iso);

ComparisonReport compare_match(const GroupSpec &g, const ComponentMatch &m);

struct GroupComparison {
  MatchReport matching;
  std::vector<ComparisonReport> reports;  // one per match
  bool ok() const;
};

GroupComparison compare_group(const GroupSpec &g, const ComponentCatalog &catalog, const ParameterTable &table,
                              const FacetOptions &opt = {});

// Algebra map theta_x N_w omega -> theta_{L x} N_{L w L^-1} omega induced by a
// lattice isomorphism L (omega_ext must be trivial on both sides).
HeckeElement transport(const HeckeAlgebra &from, const HeckeAlgebra &to, const Mat &L,
                       const std::vector<std::size_t> &param_map, const HeckeElement &e);

struct TwistEquivarianceReport {
  bool ok = true;
  std::size_t characters = 0;
  std::size_t samples = 0;
  std::string witness;
};

// For every sampled z in X_wr: z on the facet side composed with the torus
// identification equals z on the Galois side, the twisted data still match,
// and twisting commutes with the transported algebra map on small basis elements.
TwistEquivarianceReport check_twist_equivariance(const GroupSpec &g, const ComponentMatch &m,
                                                 const WeaklyUnramifiedGroup &xwr);

// Character of Xf given by a character of X_*(T) through the translation lattice.
LatticeCharacter facet_character(const IwahoriWeylDatum &d, const FacetData &f, const LatticeCharacter &z);
// Character of the Galois torus lattice given by a character of X_*(T).
LatticeCharacter galois_character(const DualBernsteinComponent &c, const LatticeCharacter &z);

struct AdjointReport {
  std::string group, adjoint;
  std::vector<long> J;
  bool ok = true;
  std::vector<CheckResult> checks;
  BigInt index = 0;            // [Xf(G_ad) : image of Xf(G)], 0 if infinite
  BigInt center_order = 0;     // |(X*/Z Phi)_Fr| of G, 0 if infinite
};

// The group with character lattice Z Delta and the same Frobenius and marking.
GroupSpec adjoint_group(const GroupSpec &g);
AdjointReport check_adjoint_invariance(const GroupSpec &g, const std::vector<long> &J, const ParameterTable &table,
                                       const FacetOptions &opt = {});

}  // namespace unihecke
