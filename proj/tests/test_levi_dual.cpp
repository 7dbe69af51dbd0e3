#include "doctest.h"

#include "support.hpp"

#include <set>

using namespace unihecke;
using unihecke::testing::context;

namespace {

// Gamma-stable subsets containing Delta0, up to conjugacy by the Weyl elements
// commuting with Gamma, compared through their root subsystems.
std::size_t brute_force_levi_classes(const GroupSpec &g) {
  auto ctx = context(g);
  const WeylGroup &w = *ctx->weyl;
  const RootSystem &rs = *ctx->roots;
  auto subsets = gamma_stable_subsets(*ctx, true);
  auto roots_of = [&](const SimpleSubset &I) {
    std::set<std::size_t> out;
    for (std::size_t r = 0; r < rs.num_roots(); ++r) {
      bool inside = true;
      const Vec &c = rs.coefficients(r);
      for (std::size_t p = 0; p < c.size(); ++p)
        if (c[p] != 0 && std::find(I.begin(), I.end(), p) == I.end()) inside = false;
      if (inside) out.insert(r);
    }
    return out;
  };
  std::vector<std::set<std::size_t>> classes;
  for (const auto &I : subsets) {
    auto R = roots_of(I);
    bool seen = false;
    for (const auto &C : classes)
      for (std::size_t e = 0; e < w.size() && !seen; ++e) {
        if (!ctx->commutes_with_gamma(e)) continue;
        std::set<std::size_t> img;
        for (auto r : R) img.insert(w[e].perm[r]);
        seen = img == C;
      }
    if (!seen) {
      // Store the class by one representative root set; conjugates are detected above.
      classes.push_back(R);
    }
  }
  return classes.size();
}

}  // namespace

TEST_CASE("Levi class counts against brute force") {
  const std::map<std::string, std::size_t> frozen = {{"SL2", 2}, {"SL3", 3}, {"Sp4", 4}, {"G2", 4},
                                                     {"SU3", 2}, {"SU4", 4}, {"GL1", 1}, {"InnerPGL2", 1}};
  for (const auto &[name, count] : frozen) {
    CAPTURE(name);
    GroupSpec g = builtin_group(name);
    auto ctx = context(g);
    CHECK(classify_levis(*ctx).size() == count);
    if (g.delta0.empty()) CHECK(brute_force_levi_classes(g) == count);
  }
}

TEST_CASE("Levi classes biject with relevant dual classes on the whole catalog") {
  for (const auto &name : builtin_names()) {
    CAPTURE(name);
    auto ctx = context(builtin_group(name));
    auto levis = classify_levis(*ctx);
    auto duals = classify_dual_levis(*ctx);
    std::size_t relevant = std::count_if(duals.begin(), duals.end(), [](const DualLeviClass &c) { return c.relevant; });
    CHECK(levis.size() == relevant);
    auto rep = dual_levi_bijection(*ctx);
    CHECK(rep.pairs.size() == levis.size());
    CHECK(rep.relevant_count == relevant);
  }
}

TEST_CASE("the inner form has irrelevant dual Levis") {
  auto ctx = context(builtin_group("InnerPGL2"));
  auto duals = classify_dual_levis(*ctx);
  CHECK(duals.size() == 2);
  CHECK(std::count_if(duals.begin(), duals.end(), [](const DualLeviClass &c) { return c.relevant; }) == 1);
}

TEST_CASE("orbit members are conjugate subsets") {
  auto ctx = context(builtin_group("SL3"));
  for (const auto &c : classify_levis(*ctx)) {
    CHECK(c.representative == c.orbit_members.front());
    for (const auto &m : c.orbit_members) CHECK(m.size() == c.representative.size());
  }
}
