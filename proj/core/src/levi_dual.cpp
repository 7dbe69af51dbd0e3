#include "unihecke/levi_dual.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace unihecke {

std::vector<SimpleSubset> gamma_stable_subsets(const RelativeContext &ctx, bool contain_delta0) {
  const std::size_t r = ctx.galois.base.simple.size();
  if (r > 20) throw std::length_error("too many simple roots for subset enumeration");
  std::set<std::size_t> d0(ctx.marking.delta0.begin(), ctx.marking.delta0.end());
  std::vector<SimpleSubset> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
    SimpleSubset I;
    for (std::size_t p = 0; p < r; ++p)
      if (mask >> p & 1) I.push_back(p);
    bool ok = true;
    if (contain_delta0)
      for (auto p : d0)
        if (!(mask >> p & 1)) ok = false;
    for (const auto &sp : ctx.galois.simple_perms)
      for (auto p : I)
        if (!(mask >> sp[p] & 1)) ok = false;
    if (ok) out.push_back(I);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::set<Vec> relative_image(const RelativeContext &ctx, const SimpleSubset &I) {
  std::set<Vec> img;
  std::set<std::size_t> Is(I.begin(), I.end());
  for (std::size_t k = 0; k < ctx.relative.orbits.size(); ++k)
    if (Is.count(ctx.relative.orbits[k].front())) img.insert(ctx.relative.relative_simple[k]);
  return img;
}

std::vector<std::size_t> relative_indices(const RelativeContext &ctx, const SimpleSubset &I) {
  std::vector<std::size_t> out;
  std::set<std::size_t> Is(I.begin(), I.end());
  for (std::size_t k = 0; k < ctx.relative.orbits.size(); ++k)
    if (Is.count(ctx.relative.orbits[k].front())) out.push_back(k);
  return out;
}

// Root indices of Phi_I.
std::set<std::size_t> levi_roots(const RootSystem &rs, const SimpleSubset &I) {
  std::set<std::size_t> Is(I.begin(), I.end()), out;
  for (std::size_t i = 0; i < rs.num_roots(); ++i) {
    bool in = true;
    const auto &c = rs.coefficients(i);
    for (std::size_t p = 0; p < c.size(); ++p)
      if (c[p] && !Is.count(p)) in = false;
    if (in) out.insert(i);
  }
  return out;
}

// Union-find style partition of items under a symmetric relation.
template <class Rel>
std::vector<std::vector<SimpleSubset>> partition(const std::vector<SimpleSubset> &items, Rel related) {
  std::vector<long> cls(items.size(), -1);
  std::vector<std::vector<SimpleSubset>> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = static_cast<long>(out.size());
    out.push_back({items[i]});
    for (std::size_t j = i + 1; j < items.size(); ++j)
      if (cls[j] < 0 && related(items[i], items[j])) {
        cls[j] = cls[i];
        out.back().push_back(items[j]);
      }
  }
  return out;
}

}  // namespace

std::vector<LeviClass> classify_levis(const RelativeContext &ctx, const RelativeWeylGroup &w) {
  auto subsets = gamma_stable_subsets(ctx, true);
  // action on X*(S): inverse transpose of the cocharacter matrices
  std::vector<Mat> on_chars;
  for (const auto &C : w.elements) on_chars.push_back(cocharacter_action(C));
  std::map<SimpleSubset, std::set<Vec>> img;
  for (const auto &I : subsets) img[I] = relative_image(ctx, I);
  auto related = [&](const SimpleSubset &I, const SimpleSubset &J) {
    const auto &a = img[I], &b = img[J];
    if (a.size() != b.size()) return false;
    for (const auto &m : on_chars) {
      bool ok = true;
      for (const auto &v : a)
        if (!b.count(mat_vec(m, v))) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  };
  std::vector<LeviClass> out;
  for (auto &members : partition(subsets, related)) {
    LeviClass c;
    std::sort(members.begin(), members.end());
    c.orbit_members = members;
    c.representative = members.front();
    c.relative_orbit = relative_indices(ctx, c.representative);
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const LeviClass &a, const LeviClass &b) { return a.representative < b.representative; });
  return out;
}

std::vector<LeviClass> classify_levis(const RelativeContext &ctx) {
  return classify_levis(ctx, relative_weyl_group(ctx, WeylPath::direct));
}

std::vector<DualLeviClass> classify_dual_levis(const RelativeContext &ctx) {
  const auto &W = *ctx.weyl;
  const auto &rs = *ctx.roots;
  std::vector<std::size_t> wgamma, stab;
  for (std::size_t w = 0; w < W.size(); ++w) {
    if (!ctx.commutes_with_gamma(w)) continue;
    wgamma.push_back(w);
    if (ctx.stabilizes_delta0(w)) stab.push_back(w);
  }
  std::set<std::size_t> d0(ctx.marking.delta0.begin(), ctx.marking.delta0.end());
  auto subsets = gamma_stable_subsets(ctx, false);
  std::vector<SimpleSubset> rel, nonrel;
  for (const auto &I : subsets) {
    bool r = std::includes(I.begin(), I.end(), d0.begin(), d0.end());
    (r ? rel : nonrel).push_back(I);
  }
  std::map<SimpleSubset, std::set<std::size_t>> phi;
  for (const auto &I : subsets) phi[I] = levi_roots(rs, I);
  auto assoc = [&](const std::vector<std::size_t> &group) {
    return [&, group](const SimpleSubset &I, const SimpleSubset &J) {
      const auto &a = phi[I], &b = phi[J];
      if (a.size() != b.size()) return false;
      for (auto w : group) {
        const auto &perm = W[w].perm;
        bool ok = true;
        for (auto i : a)
          if (!b.count(perm[i])) {
            ok = false;
            break;
          }
        if (ok) return true;
      }
      return false;
    };
  };
  std::vector<DualLeviClass> out;
  for (auto &members : partition(rel, assoc(stab))) {
    std::sort(members.begin(), members.end());
    out.push_back({members.front(), members, true});
  }
  for (auto &members : partition(nonrel, assoc(wgamma))) {
    std::sort(members.begin(), members.end());
    out.push_back({members.front(), members, false});
  }
  std::sort(out.begin(), out.end(), [](const DualLeviClass &a, const DualLeviClass &b) { return a.representative < b.representative; });
  return out;
}

DualLeviReport dual_levi_bijection(const RelativeContext &ctx) {
  DualLeviReport rep;
  auto levis = classify_levis(ctx);
  rep.dual_classes = classify_dual_levis(ctx);
  for (const auto &d : rep.dual_classes)
    if (d.relevant) ++rep.relevant_count;
  std::set<std::size_t> hit;
  for (const auto &L : levis) {
    long target = -1;
    for (const auto &I : L.orbit_members) {
      long found = -1;
      for (std::size_t k = 0; k < rep.dual_classes.size(); ++k)
        for (const auto &m : rep.dual_classes[k].members)
          if (m == I) found = static_cast<long>(k);
      if (found < 0) throw std::logic_error("Levi subset " + to_string(Vec(I.begin(), I.end())) + " has no dual class");
      if (target >= 0 && found != target)
        throw std::logic_error("associate Levi subsets land in different dual classes");
      target = found;
    }
    if (!rep.dual_classes[static_cast<std::size_t>(target)].relevant)
      throw std::logic_error("Levi class maps to a non-relevant dual class");
    if (!hit.insert(static_cast<std::size_t>(target)).second)
      throw std::logic_error("two Levi classes map to the same dual class");
    rep.pairs.push_back({L, rep.dual_classes[static_cast<std::size_t>(target)]});
  }
  if (hit.size() != rep.relevant_count)
    throw std::logic_error("dual classification has " + std::to_string(rep.relevant_count) +
                           " relevant classes but there are " + std::to_string(levis.size()) + " Levi classes");
  return rep;
}

}  // namespace unihecke
