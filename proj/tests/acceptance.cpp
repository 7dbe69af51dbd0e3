// Acceptance harness: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes except those listed in
// known_unattainable, whose failures are still printed as FAIL.

#include "support.hpp"
#include "unihecke/iwahori_matsumoto.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace unihecke;
using unihecke::testing::context;
using unihecke::testing::facet;
using unihecke::testing::iwahori;
using unihecke::testing::iwahori_hecke;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string &why) {
    if (ok) detail = why;
    else if (detail.size() < 400) detail += "; " + why;
    ok = false;
  }
};

std::string labels(const std::vector<long> &J) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < J.size(); ++i) os << (i ? "," : "") << J[i];
  os << "]";
  return os.str();
}

std::size_t commuting_weyl_elements(const GaloisDatum &g) {
  WeylGroup w(RootSystem{g.base});
  std::size_t n = 0;
  for (const auto &e : w.elements()) {
    bool ok = true;
    for (const auto &s : g.elements) ok = ok && mat_mul(s, e.matrix) == mat_mul(e.matrix, s);
    n += ok;
  }
  return n;
}

Outcome catalog_validation() {
  Outcome o;
  for (const auto &name : builtin_names()) {
    GroupSpec g = builtin_group(name);
    auto v = validate_and_classify(g.datum);
    if (!v.ok) o.fail(name + ": " + v.error);
    if (!dual(dual(g.datum)).same_structure(g.datum)) o.fail(name + ": dual of dual differs");
    try {
      check_marking(g.galois(), g.marking());
    } catch (const std::exception &e) {
      o.fail(name + ": " + e.what());
    }
  }
  if (o.ok) o.detail = std::to_string(builtin_names().size()) + " groups";
  return o;
}

Outcome relative_weyl_cross_check() {
  Outcome o;
  std::ostringstream orders;
  for (const auto &name : builtin_names()) {
    GroupSpec g = builtin_group(name);
    auto ctx = context(g);
    auto a = relative_weyl_group(*ctx, WeylPath::direct), b = relative_weyl_group(*ctx, WeylPath::dual);
    if (!same_matrix_group(a, b)) o.fail(name + ": the two constructions differ");
    if (g.delta0.empty() && a.order() != commuting_weyl_elements(g.galois()))
      o.fail(name + ": order differs from the Frobenius centralizer");
    if (name == "SU3" || name == "SU4") orders << name << " " << a.order() << " ";
  }
  GroupSpec su3 = builtin_group("SU3"), su4 = builtin_group("SU4");
  if (relative_weyl_group(su3.galois(), su3.marking(), WeylPath::direct).order() != 2) o.fail("SU3 order is not 2");
  if (relative_weyl_group(su4.galois(), su4.marking(), WeylPath::direct).order() != 8) o.fail("SU4 order is not 8");
  if (o.ok) o.detail = orders.str();
  return o;
}

Outcome levi_correspondence() {
  Outcome o;
  for (const auto &name : builtin_names()) {
    auto ctx = context(builtin_group(name));
    auto levis = classify_levis(*ctx);
    auto duals = classify_dual_levis(*ctx);
    std::size_t relevant = std::count_if(duals.begin(), duals.end(), [](const DualLeviClass &c) { return c.relevant; });
    if (levis.size() != relevant)
      o.fail(name + ": " + std::to_string(levis.size()) + " Levi classes vs " + std::to_string(relevant));
    try {
      dual_levi_bijection(*ctx);
    } catch (const std::exception &e) {
      o.fail(name + ": " + e.what());
    }
  }
  auto count = [](const std::string &n) { return classify_levis(*context(builtin_group(n))).size(); };
  if (count("SL3") != 3) o.fail("SL3 does not give 3");
  if (count("Sp4") != 4) o.fail("Sp4 does not give 4");
  if (o.ok) o.detail = "SL3 3, Sp4 4";
  return o;
}

Outcome affine_combinatorics() {
  Outcome o;
  std::size_t facets = 0, failed = 0;
  for (const auto &name : builtin_names()) {
    IwahoriWeylDatum d = iwahori(name);
    auto c = check_wa_omega_factorisation(d, 6);
    if (!c.ok) o.fail(name + ": " + c.detail);
  }
  const std::set<std::string> bijection_groups = {"SL2", "PGL2", "SL3", "PGL3", "Sp4", "SO5"};
  for (const auto &name : builtin_names()) {
    IwahoriWeylDatum d = iwahori(name);
    auto all = all_proper_facets(d);
    all.insert(all.begin(), std::vector<long>{});
    for (const auto &J : all) {
      ++facets;
      try {
        FacetData f = facet(d, J);
        for (const auto &ch : f.checks) {
          bool wanted = ch.name == "|S_f| = rk X(J)" || bijection_groups.count(name);
          if (wanted && !ch.ok) {
            ++failed;
            o.fail(name + " " + labels(J) + ": " + ch.name);
          }
        }
      } catch (const FacetConstructionError &e) {
        ++failed;
        o.fail(name + " " + labels(J) + ": " + e.what());
      }
    }
  }
  o.detail = std::to_string(failed) + " of " + std::to_string(facets) + " facets fail" + (o.ok ? "" : ": " + o.detail);
  return o;
}

std::vector<AffineHeckeDatum> catalog_hecke_data() {
  std::vector<AffineHeckeDatum> out;
  for (const auto &name : builtin_names())
    for (auto &d : iwahori_hecke(name)) out.push_back(d);
  out.push_back(testing::a2_with_flip());
  return out;
}

Outcome hecke_datum_checks(const AffineHeckeDatum &d) {
  Outcome o;
  try {
    HeckeAlgebra H(d);
    std::mt19937_64 rng(12345);
    for (int t = 0; t < 1000; ++t) {
      auto a = H.random_element(rng, 4, 1, 3), b = H.random_element(rng, 4, 1, 3), c = H.random_element(rng, 4, 1, 3);
      if (!(H.multiply(H.multiply(a, b), c) == H.multiply(a, H.multiply(b, c)))) {
        o.fail(d.name + ": associativity fails on triple " + std::to_string(t));
        break;
      }
    }
    if (H.rank() > 0 && d.R.num_simple() == 2) {
      const auto &w = H.weyl();
      HeckeElement x = H.one(), y = H.one();
      for (std::size_t k = 0; k < w[w.longest()].length(); ++k) {
        x = H.multiply(x, H.N_simple(k % 2));
        y = H.multiply(y, H.N_simple(1 - k % 2));
      }
      if (!(x == y)) o.fail(d.name + ": braid relation fails");
    }
    IwahoriMatsumoto IM(H);
    auto ball = IM.ball(4);
    for (const auto &g : ball)
      if (!(IM.from_bernstein(IM.to_bernstein(IM.basis(g))) == IM.basis(g))) {
        o.fail(d.name + ": IM roundtrip fails");
        break;
      }
    std::mt19937_64 rng2(99);
    for (int t = 0; t < 200; ++t) {
      auto a = H.random_element(rng2, 1, 2, 1), b = H.random_element(rng2, 1, 2, 1);
      HeckeKey ka = a.terms.begin()->first, kb = b.terms.begin()->first;
      if (H.at_one(H.multiply(H.basis(ka), H.basis(kb))) != std::map<HeckeKey, Int>{{H.group_product(ka, kb), 1}}) {
        o.fail(d.name + ": v = 1 specialization differs from the group product");
        break;
      }
    }
  } catch (const BlzDivisionError &e) {
    o.fail(d.name + ": exact division failed: " + e.what());
  }
  return o;
}

Outcome hecke_arithmetic() {
  Outcome o;
  auto data = catalog_hecke_data();
  std::vector<std::future<Outcome>> jobs;
  for (const auto &d : data) jobs.push_back(std::async(std::launch::async, hecke_datum_checks, d));
  for (auto &j : jobs) {
    Outcome r = j.get();
    if (!r.ok) o.fail(r.detail);
  }
  if (o.ok) o.detail = std::to_string(data.size()) + " data";
  return o;
}

Outcome center() {
  Outcome o;
  for (const auto &d : catalog_hecke_data()) {
    HeckeAlgebra H(d);
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<Int> xd(-3, 3);
    for (int t = 0; t < 20; ++t) {
      Vec x(H.rank());
      for (auto &v : x) v = xd(rng);
      auto r = H.central_test(H.orbit_symmetrize(x));
      if (!r.central) o.fail(d.name + " " + to_string(x) + ": " + r.witness);
    }
  }
  HeckeAlgebra A1(iwahori_hecke("SL2").front());
  if (!A1.central_test(A1.theta({1}) + A1.theta({-1})).central) o.fail("theta_w + theta_-w is not central in A1");
  return o;
}

Outcome adjoint_invariance() {
  Outcome o;
  ParameterTable table = ParameterTable::builtin();
  std::ostringstream idx;
  for (const auto &[name, index] : std::vector<std::pair<std::string, int>>{{"SL2", 2}, {"PGL2", 1}, {"SL3", 3}, {"PGL3", 1}}) {
    AdjointReport r = check_adjoint_invariance(builtin_group(name), {}, table);
    for (const auto &c : r.checks)
      if (!c.ok) o.fail(name + ": " + c.name + " " + c.detail);
    if (r.index != index) o.fail(name + ": index " + r.index.str());
    idx << name << " " << r.index << " ";
  }
  if (o.ok) o.detail = idx.str();
  return o;
}

Outcome comparison_harness() {
  Outcome o;
  auto catalog = ComponentCatalog::builtin();
  auto table = ParameterTable::builtin();
  std::size_t n = 0;
  for (const auto &name : builtin_names()) {
    GroupSpec g = builtin_group(name);
    if (!g.split()) continue;
    GroupComparison gc = compare_group(g, catalog, table);
    for (const auto &e : gc.matching.errors) o.fail(name + ": " + e);
    for (const auto &r : gc.reports) {
      if (r.padic_component.rfind("facet [] iwahori", 0) != 0) continue;
      ++n;
      if (!r.isomorphic) o.fail(name + ": " + r.witness);
      bool has_roots = !r.parameter_check.empty();
      if (r.v_exponent != "1/2" || r.v_constrained != has_roots) o.fail(name + ": v exponent " + r.v_exponent);
    }
  }
  // Negative control: double the exponents of the SL3 Iwahori facet.
  GroupSpec g = builtin_group("SL3");
  ParameterTable bad = table;
  bad.entries[{"A2", {}, "iwahori"}] = {{0, 2}, {1, 2}, {2, 2}};
  GroupComparison gc = compare_group(g, catalog, bad);
  if (gc.reports.empty() || gc.reports[0].isomorphic || gc.reports[0].witness.empty())
    o.fail("corrupted table not reported as a mismatch");
  if (o.ok) o.detail = std::to_string(n) + " split Iwahori comparisons; control: " + gc.reports[0].witness;
  return o;
}

Outcome kottwitz_shadow() {
  Outcome o;
  std::ostringstream os;
  for (const auto &name : builtin_names()) {
    GroupSpec g = builtin_group(name);
    if (!g.split() || !g.semisimple()) continue;
    auto x = weakly_unramified_group(g.galois()).group;
    auto om = iwahori(name).omega();
    if (!(x == om)) o.fail(name + ": X_wr " + x.to_string() + " vs Omega " + om.to_string());
    os << name << " " << x.order() << " ";
  }
  const std::map<std::string, int> frozen = {{"PGL2", 2}, {"PGL3", 3}, {"SL2", 1}};
  for (const auto &[name, n] : frozen)
    if (weakly_unramified_group(builtin_group(name).galois()).group.order() != n) o.fail(name + " order");
  if (o.ok) o.detail = os.str();
  return o;
}

Outcome twist_equivariance() {
  Outcome o;
  GroupSpec g = builtin_group("PGL2");
  auto x = weakly_unramified_group(g.galois());
  MatchReport m = match_components(g, ComponentCatalog::builtin(), ParameterTable::builtin());
  if (!m.ok()) o.fail(m.errors.front());
  std::size_t samples = 0;
  for (const auto &match : m.matches) {
    auto r = check_twist_equivariance(g, match, x);
    samples += r.samples;
    if (!r.ok) o.fail(r.witness);
  }
  if (o.ok) o.detail = std::to_string(m.matches.size()) + " components, " + std::to_string(samples) + " samples";
  return o;
}

struct Criterion {
  int id;
  std::string name;
  double budget;  // seconds, 0 for none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::set<int> known_unattainable = {4};
  const std::vector<Criterion> criteria = {
      {1, "catalog validation", 1, catalog_validation},
      {2, "relative Weyl cross-check", 5, relative_weyl_cross_check},
      {3, "Levi classes vs relevant dual classes", 0, levi_correspondence},
      {4, "affine combinatorics", 60, affine_combinatorics},
      {5, "Hecke arithmetic", 120, hecke_arithmetic},
      {6, "center", 0, center},
      {7, "adjoint invariance", 0, adjoint_invariance},
      {8, "Hecke algebra comparison", 0, comparison_harness},
      {9, "|X_wr| = |Omega|", 0, kottwitz_shadow},
      {10, "twist equivariance on PGL2", 0, twist_equivariance},
  };
  bool fatal = false;
  for (const auto &c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0 && secs > c.budget) o.fail("over the " + std::to_string(int(c.budget)) + " s budget");
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (o.ok ? "PASS" : "FAIL") << " " << c.id << " " << c.name << " (" << secs << " s)";
    if (!o.detail.empty()) line << ": " << o.detail;
    if (!o.ok && known_unattainable.count(c.id)) line << " [known]";
    std::cout << line.str() << std::endl;
    if (!o.ok && !known_unattainable.count(c.id)) fatal = true;
  }
  return fatal ? 1 : 0;
}
