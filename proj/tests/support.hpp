#pragma once
// Shared fixtures for the test programs.

#include "unihecke/compare.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace unihecke::testing {

inline std::shared_ptr<const RelativeContext> context(const GroupSpec &g) {
  return std::make_shared<const RelativeContext>(g.galois(), g.marking());
}

inline IwahoriWeylDatum iwahori(const std::string &name) {
  GroupSpec g = builtin_group(name);
  return build_iwahori_weyl(g.galois(), g.marking());
}

inline FacetData facet(const IwahoriWeylDatum &d, const std::vector<long> &J) {
  FacetData f = analyze_facet(d, J);
  facet_root_datum(d, f);
  return f;
}

// Affine Hecke data of the Iwahori facet of a builtin group, one per psi.
inline std::vector<AffineHeckeDatum> iwahori_hecke(const std::string &name) {
  GroupSpec g = builtin_group(name);
  IwahoriWeylDatum d = build_iwahori_weyl(g.galois(), g.marking());
  FacetData f = facet(d, {});
  std::map<long, Int> exps;
  for (const auto &fe : g.builtin_facets)
    if (fe.J.empty() && fe.cuspidal == "iwahori") exps = fe.exponents;
  if (exps.empty()) exps = ParameterTable::builtin().lookup(d, {}, "iwahori");
  return build_from_facet(f, exps, name).data;
}

// Split A2 on its root lattice with the diagram flip as omega_ext.
inline AffineHeckeDatum a2_with_flip() {
  BasedRootDatum R = builtin_group("PGL3").datum;
  AffineHeckeDatum d = equal_parameter_datum(R);
  d.name = "A2 flip";
  const Vec &a = R.roots[R.simple[0]], &b = R.roots[R.simple[1]];
  // The matrix exchanging the two simple roots.
  Mat cols = columns_to_mat({a, b}, 2), swapped = columns_to_mat({b, a}, 2);
  d.omega_ext = close_omega({mat_mul(swapped, *integral_inverse(cols))}, 2);
  validate_hecke_datum(d);
  return d;
}

// Split A1 on Z with root 1 and coroot 2, so lambda and lambda* may differ.
inline AffineHeckeDatum a1_unequal(Int lambda, Int lambda_star) {
  AffineHeckeDatum d = equal_parameter_datum(builtin_group("PGL2").datum);
  d.name = "A1 unequal";
  d.lambda = {lambda};
  d.lambda_star = {lambda_star};
  validate_hecke_datum(d);
  return d;
}

}  // namespace unihecke::testing
