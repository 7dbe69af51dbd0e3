#include "unihecke/galois_relative.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace unihecke {

Mat cocharacter_action(const Mat &g) {
  auto inv = integral_inverse(g);
  if (!inv) throw std::invalid_argument("automorphism is not invertible over Z: " + to_string(g));
  return transpose(*inv);
}

GaloisDatum make_galois_datum(BasedRootDatum base, std::vector<Mat> generators, std::size_t bound) {
  RootSystem rs(base);
  GaloisDatum g;
  g.base = base;
  g.generators = generators;
  auto perms_of = [&](const Mat &m, std::vector<std::size_t> &rp, std::vector<std::size_t> &sp) {
    if (m.size() != base.rank || mat_cols(m) != base.rank)
      throw std::invalid_argument("Galois generator has wrong shape");
    Mat co = cocharacter_action(m);
    rp.assign(base.roots.size(), 0);
    for (std::size_t i = 0; i < base.roots.size(); ++i) {
      long j = rs.find_root(mat_vec(m, base.roots[i]));
      if (j < 0)
        throw std::invalid_argument("Galois generator does not permute the roots: image of " + to_string(base.roots[i]));
      if (mat_vec(co, base.coroots[i]) != base.coroots[static_cast<std::size_t>(j)])
        throw std::invalid_argument("Galois generator does not permute the coroots compatibly at root " + std::to_string(i));
      rp[i] = static_cast<std::size_t>(j);
    }
    sp.assign(base.simple.size(), 0);
    for (std::size_t p = 0; p < base.simple.size(); ++p) {
      auto it = std::find(base.simple.begin(), base.simple.end(), rp[base.simple[p]]);
      if (it == base.simple.end())
        throw std::invalid_argument("Galois generator does not stabilize Delta (simple position " + std::to_string(p) + ")");
      sp[p] = static_cast<std::size_t>(it - base.simple.begin());
    }
  };
  for (const auto &m : generators) {
    std::vector<std::size_t> rp, sp;
    perms_of(m, rp, sp);
  }
  std::map<Mat, std::size_t> seen;
  g.elements.push_back(identity_mat(base.rank));
  seen[g.elements[0]] = 0;
  for (std::size_t h = 0; h < g.elements.size(); ++h)
    for (const auto &gen : generators) {
      Mat m = mat_mul(gen, g.elements[h]);
      if (seen.count(m)) continue;
      seen[m] = g.elements.size();
      g.elements.push_back(m);
      if (g.elements.size() > bound)
        throw std::invalid_argument("Galois action closure exceeds " + std::to_string(bound) + " elements");
    }
  for (const auto &m : g.elements) {
    std::vector<std::size_t> rp, sp;
    perms_of(m, rp, sp);
    g.root_perms.push_back(rp);
    g.simple_perms.push_back(sp);
  }
  return g;
}

void check_marking(const GaloisDatum &g, const AnisotropicMarking &m) {
  std::set<std::size_t> d0(m.delta0.begin(), m.delta0.end());
  for (auto p : d0)
    if (p >= g.base.simple.size()) throw std::invalid_argument("delta0 entry " + std::to_string(p) + " is not a simple position");
  for (const auto &sp : g.simple_perms)
    for (auto p : d0)
      if (!d0.count(sp[p])) throw std::invalid_argument("delta0 is not Gamma-stable at simple position " + std::to_string(p));
}

std::vector<std::vector<std::size_t>> relative_orbits(const GaloisDatum &g, const AnisotropicMarking &m) {
  std::set<std::size_t> d0(m.delta0.begin(), m.delta0.end());
  std::vector<bool> done(g.base.simple.size(), false);
  std::vector<std::vector<std::size_t>> orbits;
  for (std::size_t p = 0; p < g.base.simple.size(); ++p) {
    if (d0.count(p) || done[p]) continue;
    std::set<std::size_t> orb;
    for (const auto &sp : g.simple_perms) orb.insert(sp[p]);
    for (auto q : orb) done[q] = true;
    orbits.emplace_back(orb.begin(), orb.end());
  }
  return orbits;
}

long RelativeWeylGroup::find(const Mat &m) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == m) return static_cast<long>(i);
  return -1;
}

std::size_t RelativeWeylGroup::multiply(std::size_t a, std::size_t b) const {
  long r = find(mat_mul(elements[a], elements[b]));
  if (r < 0) throw std::logic_error("relative Weyl group is not closed under multiplication");
  return static_cast<std::size_t>(r);
}

RelativeContext::RelativeContext(GaloisDatum g, AnisotropicMarking m, std::size_t cap)
    : galois(std::move(g)), marking(std::move(m)) {
  check_marking(galois, marking);
  roots = std::make_shared<RootSystem>(galois.base);
  weyl = std::make_shared<WeylGroup>(*roots, cap);
  const auto &base = galois.base;
  const std::size_t n = base.rank;
  // X_*(S): Gamma-fixed cocharacters orthogonal to delta0
  Mat cons;
  for (const auto &gen : galois.generators) {
    Mat co = cocharacter_action(gen);
    for (std::size_t i = 0; i < n; ++i) {
      Vec row = co[i];
      row[i] -= 1;
      cons.push_back(row);
    }
  }
  for (auto p : marking.delta0) cons.push_back(roots->simple_root(p));
  relative.cochar_basis = from_big(kernel_basis(to_big(cons, n)));
  relative.restriction_map = transpose(relative.cochar_basis, relative.dim());
  if (relative.restriction_map.empty()) relative.restriction_map = Mat{};
  std::map<Vec, std::size_t> count;
  std::vector<Vec> images;
  for (const auto &a : base.roots) {
    Vec im = relative.restriction_map.empty() ? Vec{} : mat_vec(relative.restriction_map, a);
    images.push_back(im);
    if (!im.empty() && !is_zero(im)) ++count[im];
  }
  for (auto &[v, c] : count) {
    relative.restricted_roots.push_back(v);
    relative.multiplicities.push_back(c);
  }
  for (const auto &im : images) {
    auto it = std::find(relative.restricted_roots.begin(), relative.restricted_roots.end(), im);
    relative.image_of_root.push_back(it == relative.restricted_roots.end() ? -1 : it - relative.restricted_roots.begin());
  }
  for (const auto &v : relative.restricted_roots)
    if (count.count(vscale(2, v))) relative.reduced = false;
  relative.orbits = relative_orbits(galois, marking);
  for (const auto &orb : relative.orbits)
    relative.relative_simple.push_back(images[base.simple[orb.front()]]);
  // coroots from the reflections w_{D0 u O} w_{D0}
  const std::size_t w0 = weyl->longest_of(marking.delta0);
  const std::size_t s = relative.dim();
  for (std::size_t k = 0; k < relative.orbits.size(); ++k) {
    std::vector<std::size_t> I = marking.delta0;
    I.insert(I.end(), relative.orbits[k].begin(), relative.orbits[k].end());
    std::size_t w = weyl->multiply(weyl->longest_of(I), w0);
    auto C = restrict_to_split(w);
    if (!C) throw std::logic_error("relative simple reflection does not preserve X_*(S)");
    const Vec &a = relative.relative_simple[k];
    std::size_t j = 0;
    while (j < s && a[j] == 0) ++j;
    Vec col(s);
    for (std::size_t i = 0; i < s; ++i) col[i] = (i == j ? 1 : 0) - (*C)[i][j];
    Vec ac(s);
    for (std::size_t i = 0; i < s; ++i) {
      if (col[i] % a[j] != 0) throw std::logic_error("relative coroot is not integral");
      ac[i] = col[i] / a[j];
    }
    for (std::size_t r = 0; r < s; ++r)
      for (std::size_t c = 0; c < s; ++c)
        if ((r == c ? 1 : 0) - (*C)[r][c] != ac[r] * a[c])
          throw std::logic_error("relative simple element w_{D0+O} w_{D0} is not the reflection in its root");
    relative.relative_simple_coroots.push_back(ac);
  }
  const std::size_t r = relative.orbits.size();
  Mat A(r, Vec(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) A[i][j] = dot(relative.relative_simple[j], relative.relative_simple_coroots[i]);
  auto info = classify_cartan(A);
  relative.components = info.components;
  for (std::size_t c = 0; c < info.types.size(); ++c) {
    bool bc = false;
    for (auto i : info.components[c])
      if (count.count(vscale(2, relative.relative_simple[i]))) bc = true;
    relative.types.push_back(bc ? "BC" + std::to_string(info.components[c].size()) : info.types[c]);
  }
}

std::optional<Mat> RelativeContext::restrict_to_split(std::size_t w) const {
  const Mat &B = relative.cochar_basis;
  const std::size_t s = relative.dim();
  Mat co = weyl->comatrix(w);
  Mat img = mat_mul(co, B);
  QMat QB = to_q(B);
  Mat C = zero_mat(s, s);
  for (std::size_t j = 0; j < s; ++j) {
    QVec col(B.size());
    for (std::size_t i = 0; i < B.size(); ++i) col[i] = img[i][j];
    auto x = solve_q(QB, col, s);
    if (!x || !is_integral(*x)) return std::nullopt;
    // solve_q only gives a candidate; confirm
    Vec xi = to_int_vec(*x);
    for (std::size_t i = 0; i < B.size(); ++i) {
      Int v = 0;
      for (std::size_t k = 0; k < s; ++k) v += B[i][k] * xi[k];
      if (v != img[i][j]) return std::nullopt;
    }
    for (std::size_t i = 0; i < s; ++i) C[i][j] = xi[i];
  }
  return C;
}

bool RelativeContext::commutes_with_gamma(std::size_t w) const {
  const Mat &m = (*weyl)[w].matrix;
  for (const auto &g : galois.generators)
    if (mat_mul(m, g) != mat_mul(g, m)) return false;
  return true;
}

bool RelativeContext::stabilizes_delta0(std::size_t w) const {
  std::set<std::size_t> d0(marking.delta0.begin(), marking.delta0.end());
  const auto &perm = (*weyl)[w].perm;
  for (auto p : marking.delta0) {
    const auto &c = roots->coefficients(perm[galois.base.simple[p]]);
    for (std::size_t q = 0; q < c.size(); ++q)
      if (c[q] != 0 && !d0.count(q)) return false;
  }
  return true;
}

bool RelativeContext::trivial_mod_delta0(std::size_t w) const {
  const std::size_t n = galois.base.rank;
  Mat co = weyl->comatrix(w);
  IntegerMatrix D(n, marking.delta0.size());
  for (std::size_t k = 0; k < marking.delta0.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) D(i, k) = roots->simple_coroot(marking.delta0[k])[i];
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<BigInt> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = co[i][j] - (i == j ? 1 : 0);
    if (!solve_integer(D, b)) return false;
  }
  return true;
}

RelativeWeylGroup relative_weyl_group(const RelativeContext &ctx, WeylPath path) {
  RelativeWeylGroup out;
  out.provenance = path;
  const auto &W = *ctx.weyl;
  const std::size_t s = ctx.relative.dim();
  std::map<Mat, std::size_t> idx;
  auto add = [&](const Mat &C, std::size_t w) {
    if (idx.count(C)) return;
    idx[C] = out.elements.size();
    out.elements.push_back(C);
    out.lifts.push_back(w);
  };
  add(identity_mat(s), W.identity());
  std::size_t kernel = 0;
  for (std::size_t w = 0; w < W.size(); ++w) {
    if (path == WeylPath::direct) {
      auto C = ctx.restrict_to_split(w);
      if (!C) continue;
      ++out.stabilizer_order;
      if (is_identity(*C)) ++kernel;
      add(*C, w);
    } else {
      if (!ctx.commutes_with_gamma(w) || !ctx.stabilizes_delta0(w)) continue;
      ++out.stabilizer_order;
      if (ctx.trivial_mod_delta0(w)) ++kernel;
      auto C = ctx.restrict_to_split(w);
      if (!C) throw std::logic_error("element of Stab_{W^Gamma}(Z Delta0^vee) does not preserve X_*(S)");
      add(*C, w);
    }
  }
  out.kernel_order = kernel;
  if (path == WeylPath::dual && out.stabilizer_order != kernel * out.elements.size())
    throw std::logic_error("dual-path quotient does not act faithfully on X_*(S)");
  const std::size_t w0 = W.longest_of(ctx.marking.delta0);
  for (const auto &orb : ctx.relative.orbits) {
    std::vector<std::size_t> I = ctx.marking.delta0;
    I.insert(I.end(), orb.begin(), orb.end());
    auto C = ctx.restrict_to_split(W.multiply(W.longest_of(I), w0));
    long k = C ? out.find(*C) : -1;
    if (k < 0) throw std::logic_error("relative simple reflection missing from the relative Weyl group");
    out.simple_reflections.push_back(static_cast<std::size_t>(k));
  }
  return out;
}

RelativeWeylGroup relative_weyl_group(const GaloisDatum &g, const AnisotropicMarking &m, WeylPath path,
                                      std::size_t cap) {
  RelativeContext ctx(g, m, cap);
  return relative_weyl_group(ctx, path);
}

RelativeRootSystem restricted_root_system(const GaloisDatum &g, const AnisotropicMarking &m) {
  return RelativeContext(g, m).relative;
}

bool same_matrix_group(const RelativeWeylGroup &a, const RelativeWeylGroup &b) {
  std::set<Mat> A(a.elements.begin(), a.elements.end()), B(b.elements.begin(), b.elements.end());
  return A == B;
}

bool generated_by_simple_reflections(const RelativeWeylGroup &w) {
  if (w.elements.empty()) return false;
  std::set<Mat> seen{w.elements[0]};
  std::vector<Mat> queue{w.elements[0]};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (auto k : w.simple_reflections) {
      Mat m = mat_mul(queue[h], w.elements[k]);
      if (seen.insert(m).second) queue.push_back(m);
    }
  std::set<Mat> all(w.elements.begin(), w.elements.end());
  return seen == all;
}

}  // namespace unihecke
