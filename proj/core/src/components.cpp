#include "unihecke/components.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>

namespace unihecke {

namespace {

Mat fr_cocharacter(const GaloisDatum &g) {
  if (g.generators.empty()) return identity_mat(g.base.rank);
  return cocharacter_action(g.generators.front());
}

Vec big_row(const IntegerMatrix &m, std::size_t i) { return from_big_vec(m.row(i)); }

Int lcm_of_denominators(const QVec &v) {
  Int k = 1;
  for (const auto &x : v) k = std::lcm(k, to_int(Rat(denominator(x))));
  return k;
}

// Coordinates c with basis * c = v (basis columns independent); nullopt if v is outside the span.
std::optional<QVec> coordinates(const Mat &basis, const QVec &v) {
  std::size_t m = mat_cols(basis);
  if (m == 0) return qis_zero(v) ? std::optional<QVec>(QVec{}) : std::nullopt;
  auto c = solve_q(to_q(basis), v, m);
  if (!c) return std::nullopt;
  if (qmat_vec(to_q(basis), *c) != v) return std::nullopt;
  return c;
}

struct QuotientModel {
  Mat Q;  // q x n
  Mat S;  // n x q
};

QuotientModel levi_quotient(const BasedRootDatum &base, const SimpleSubset &I) {
  const std::size_t n = base.rank;
  if (I.empty()) return {identity_mat(n), identity_mat(n)};
  std::vector<Vec> cols;
  for (auto p : I) cols.push_back(base.coroots[base.simple[p]]);
  IntegerMatrix sat = saturation(to_big(columns_to_mat(cols, n), cols.size()));
  Cokernel ck = cokernel(sat);
  if (!ck.group.torsion_invariants.empty()) throw std::logic_error("saturated quotient has torsion");
  QuotientModel qm;
  qm.Q = from_big(ck.quotient_map);
  qm.S = from_big(ck.section);
  if (qm.Q.empty()) qm.S = Mat(n, Vec{});
  return qm;
}

Mat mul_or_empty(const Mat &a, const Mat &b, std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) return Mat(rows, Vec(cols, 0));
  return mat_mul(a, b);
}

}  // namespace

WeaklyUnramifiedGroup weakly_unramified_group(const GaloisDatum &g) {
  const std::size_t n = g.base.rank;
  Mat fr = fr_cocharacter(g);
  std::vector<Vec> cols;
  Mat diff = mat_sub(fr, identity_mat(n));
  for (const auto &c : mat_columns(diff))
    if (!is_zero(c)) cols.push_back(c);
  for (auto p : g.base.simple) cols.push_back(g.base.coroots[p]);
  WeaklyUnramifiedGroup w;
  w.realization = cokernel(to_big(columns_to_mat(cols, n), cols.size()));
  w.group = w.realization.group;
  for (std::size_t k = 0; k < w.realization.moduli.size(); ++k) {
    LatticeCharacter z;
    z.c = big_row(w.realization.quotient_map, k);
    z.n = w.realization.moduli[k] == 0 ? 2 : to_int(w.realization.moduli[k]);
    w.characters.push_back(z);
  }
  return w;
}

ComponentCatalog ComponentCatalog::builtin() {
  ComponentCatalog c;
  for (const auto &name : builtin_names()) {
    GroupSpec g = builtin_group(name);
    GroupComponents gc;
    gc.padic.push_back({{}, g.delta0, "iwahori"});
    GaloisComponentEntry iw{g.delta0, "iwahori", {}, {}};
    if (name == "SU3") {
      iw.lambda = {3};
      iw.lambda_star = {1};
    } else if (name == "SU4") {
      iw.lambda = {2, 1};
      iw.lambda_star = {2, 1};
    }
    gc.galois.push_back(iw);
    // The anisotropic form has Omega_f,tor = Z/2: one component per character.
    if (name == "InnerPGL2") gc.galois.push_back(iw);
    if (name == "SL2" || name == "PGL2") {
      gc.padic.push_back({{1}, {0}, "cusp"});
      gc.galois.push_back({{0}, "cusp", {}, {}});
    }
    c.groups[name] = gc;
  }
  return c;
}

void ComponentCatalog::merge(const ComponentCatalog &o) {
  for (const auto &[k, v] : o.groups) groups[k] = v;
}

GroupComponents ComponentCatalog::for_group(const GroupSpec &g) const {
  auto it = groups.find(g.name);
  if (it != groups.end()) return it->second;
  GroupComponents gc;
  gc.padic.push_back({{}, g.delta0, "iwahori"});
  gc.galois.push_back({g.delta0, "iwahori", {}, {}});
  return gc;
}

AffineHeckeDatum DualBernsteinComponent::hecke(const std::string &name) const {
  AffineHeckeDatum d = equal_parameter_datum(roots);
  d.name = name;
  d.lambda = lambda;
  d.lambda_star = lambda_star;
  validate_hecke_datum(d);
  return d;
}

DualBernsteinComponent build_dual_component(const RelativeContext &ctx, const DualLeviClass &levi,
                                            const GaloisComponentEntry &entry) {
  const BasedRootDatum &base = ctx.galois.base;
  const std::size_t n = base.rank;
  const SimpleSubset &I = levi.representative;
  QuotientModel qm = levi_quotient(base, I);
  const std::size_t q = qm.Q.size();
  auto induced = [&](const Mat &c) { return mul_or_empty(mul_or_empty(qm.Q, c, q, n), qm.S, q, q); };

  DualBernsteinComponent out;
  out.levi = levi;
  out.cuspidal_id = entry.cuspidal;
  Mat frq = induced(fr_cocharacter(ctx.galois));
  Mat Yb = q == 0 ? Mat{} : from_big(fixed_sublattice(to_big(frq, q)));
  const std::size_t m = q == 0 ? 0 : mat_cols(Yb);
  if (q > 0 && m == 0) Yb = Mat(q, Vec{});
  out.torus_lift = mul_or_empty(qm.S, Yb, n, m);

  std::vector<Mat> gamma_q;
  for (const auto &e : ctx.galois.elements) gamma_q.push_back(induced(cocharacter_action(e)));

  // W_s: Frobenius-commuting Weyl elements preserving Q I^vee, acting on the torus.
  Mat fr = fr_cocharacter(ctx.galois);
  std::set<Mat> seen;
  out.weyl.push_back(identity_mat(m));
  seen.insert(out.weyl.front());
  const WeylGroup &W = *ctx.weyl;
  for (std::size_t w = 0; w < W.size(); ++w) {
    Mat C = W.comatrix(w);
    if (mat_mul(C, fr) != mat_mul(fr, C)) continue;
    bool keeps = true;
    for (auto p : I)
      if (!is_zero(mat_vec(qm.Q, mat_vec(C, base.coroots[base.simple[p]])))) keeps = false;
    if (!keeps) continue;
    Mat cq = induced(C);
    Mat wy(m, Vec(m, 0));
    for (std::size_t j = 0; j < m; ++j) {
      Vec col(q);
      for (std::size_t i = 0; i < q; ++i) col[i] = Yb[i][j];
      auto c = coordinates(Yb, to_q(mat_vec(cq, col)));
      if (!c || !is_integral(*c)) throw std::logic_error("W_s does not preserve the torus lattice");
      Vec ci = to_int_vec(*c);
      for (std::size_t i = 0; i < m; ++i) wy[i][j] = ci[i];
    }
    if (seen.insert(wy).second) out.weyl.push_back(wy);
  }

  // Candidate roots: least integral multiple of the Gamma-average of each coroot image.
  struct Candidate {
    Vec r;
    bool positive;
    std::size_t source;
  };
  std::map<Vec, Candidate> by_direction;
  RootSystem rs(base);
  for (std::size_t i = 0; i < base.num_roots() && m > 0; ++i) {
    Vec u = mat_vec(qm.Q, base.coroots[i]);
    if (is_zero(u)) continue;
    QVec avg(q, Rat(0));
    for (const auto &g : gamma_q) avg = qadd(avg, to_q(mat_vec(g, u)));
    avg = qscale(Rat(1, static_cast<long long>(gamma_q.size())), avg);
    auto c = coordinates(Yb, avg);
    if (!c || qis_zero(*c)) continue;
    Int k = lcm_of_denominators(*c);
    Vec r = to_int_vec(qscale(Rat(k), *c));
    Int ct = content(r);
    Vec dir = r;
    for (auto &x : dir) x /= ct;
    auto it = by_direction.find(dir);
    if (it == by_direction.end() || content(it->second.r) > ct ||
        (content(it->second.r) == ct && i < it->second.source))
      by_direction[dir] = {r, rs.is_positive(i), it == by_direction.end() ? i : std::min(i, it->second.source)};
  }

  std::vector<Candidate> roots;
  std::vector<Vec> coroots;
  for (const auto &[dir, cand] : by_direction) {
    for (const auto &wm : out.weyl) {
      if (mat_vec(wm, cand.r) != vneg(cand.r)) continue;
      Mat diff = mat_sub(identity_mat(m), wm);
      std::size_t k = 0;
      while (cand.r[k] == 0) ++k;
      Vec f(m);
      bool ok = true;
      for (std::size_t j = 0; j < m && ok; ++j) {
        if (diff[k][j] % cand.r[k] != 0) ok = false;
        else f[j] = diff[k][j] / cand.r[k];
      }
      for (std::size_t i = 0; i < m && ok; ++i)
        for (std::size_t j = 0; j < m && ok; ++j)
          if (diff[i][j] != cand.r[i] * f[j]) ok = false;
      if (!ok) continue;
      roots.push_back(cand);
      coroots.push_back(f);
      break;
    }
  }

  std::set<Vec> positive;
  for (const auto &c : roots)
    if (c.positive) positive.insert(c.r);
  std::vector<std::pair<std::size_t, std::size_t>> simple;  // (source, index into roots)
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!roots[i].positive) continue;
    bool decomposable = false;
    for (const auto &a : positive)
      if (a != roots[i].r && positive.count(vsub(roots[i].r, a))) decomposable = true;
    if (!decomposable) simple.push_back({roots[i].source, i});
  }
  std::sort(simple.begin(), simple.end());
  std::string name = base.name + " " + entry.cuspidal;
  if (m == 0) {
    out.roots = BasedRootDatum{name, 0, {}, {}, {}};
  } else {
    std::vector<Vec> sr, sc;
    for (const auto &[src, i] : simple) {
      sr.push_back(roots[i].r);
      sc.push_back(coroots[i]);
    }
    out.roots = from_simple_roots(name, m, sr, sc);
    if (out.roots.num_roots() != roots.size())
      throw std::logic_error("Galois-side roots do not close to a root system");
  }
  const std::size_t ns = out.roots.num_simple();
  out.lambda = entry.lambda.empty() ? std::vector<Int>(ns, 1) : entry.lambda;
  out.lambda_star = entry.lambda_star.empty() ? out.lambda : entry.lambda_star;
  if (out.lambda.size() != ns || out.lambda_star.size() != ns)
    throw std::invalid_argument("label table for '" + entry.cuspidal + "' has " + std::to_string(out.lambda.size()) +
                                " entries, the component has " + std::to_string(ns) + " simple roots");
  out.hecke(name);
  return out;
}

Mat torus_identification(const IwahoriWeylDatum &d, const FacetData &f, const Mat &torus_lift) {
  const std::size_t m = mat_cols(torus_lift);
  const std::size_t k = f.Xf_vectors.size();
  Mat T(k, Vec(m, 0));
  QMat qb(d.dim(), QVec(k));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < d.dim(); ++i) qb[i][j] = f.Xf_vectors[j][i];
  for (std::size_t j = 0; j < m; ++j) {
    Vec x(torus_lift.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = torus_lift[i][j];
    auto lambda = d.lambda_of_cocharacter(x);
    if (!lambda) throw std::invalid_argument("torus cocharacter " + to_string(x) + " is not Frobenius-fixed");
    QVec v = d.nu(*lambda);
    std::optional<QVec> c;
    if (k == 0) {
      if (qis_zero(v)) c = QVec{};
    } else {
      c = solve_q(qb, v, k);
      if (c && qmat_vec(qb, *c) != v) c.reset();
    }
    if (!c || !is_integral(*c))
      throw std::invalid_argument("torus cocharacter " + to_string(x) + " has no image in Xf");
    Vec ci = to_int_vec(*c);
    for (std::size_t i = 0; i < k; ++i) T[i][j] = ci[i];
  }
  return T;
}

MatchReport match_components(const GroupSpec &g, const ComponentCatalog &catalog, const ParameterTable &table,
                             const FacetOptions &opt) {
  MatchReport rep;
  rep.group = g.name;
  auto ctx = std::make_shared<RelativeContext>(g.galois(), g.marking());
  IwahoriWeylDatum d(ctx);
  DualLeviReport levis = dual_levi_bijection(*ctx);
  GroupComponents comps = catalog.for_group(g);

  auto sorted = [](auto v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  auto pair_of = [&](const SimpleSubset &I) -> const DualLeviPair * {
    for (const auto &p : levis.pairs)
      for (const auto &mem : p.levi.orbit_members)
        if (mem == sorted(I)) return &p;
    return nullptr;
  };
  auto dual_of = [&](const SimpleSubset &I) -> const DualLeviClass * {
    for (const auto &c : levis.dual_classes)
      for (const auto &mem : c.members)
        if (mem == sorted(I)) return &c;
    return nullptr;
  };

  std::vector<DualBernsteinComponent> galois;
  std::vector<bool> used;
  for (const auto &ge : comps.galois) {
    const DualLeviClass *dc = dual_of(ge.levi);
    if (!dc) {
      rep.errors.push_back("Galois component '" + ge.cuspidal + "': levi " + to_string(Vec(ge.levi.begin(), ge.levi.end())) +
                           " is not a dual Levi subset");
      continue;
    }
    if (!dc->relevant) {
      rep.errors.push_back("Galois component '" + ge.cuspidal + "' sits on an irrelevant dual Levi");
      continue;
    }
    try {
      galois.push_back(build_dual_component(*ctx, *dc, ge));
      used.push_back(false);
    } catch (const std::exception &e) {
      rep.errors.push_back("Galois component '" + ge.cuspidal + "': " + e.what());
    }
  }

  for (const auto &pe : comps.padic) {
    const DualLeviPair *pair = pair_of(pe.levi);
    if (!pair) {
      rep.errors.push_back("facet component '" + pe.cuspidal + "': levi is not a standard Levi subset");
      continue;
    }
    PadicComponent pc;
    pc.entry = pe;
    try {
      pc.facet = analyze_facet(d, pe.facet, opt);
      facet_root_datum(d, pc.facet, opt);
      std::vector<long> J = sorted(pe.facet);
      for (const auto &fe : g.builtin_facets)
        if (sorted(fe.J) == J && fe.cuspidal == pe.cuspidal && !fe.exponents.empty()) pc.exponents = fe.exponents;
      if (pc.exponents.empty()) pc.exponents = table.lookup(d, J, pe.cuspidal);
      pc.hecke = build_from_facet(pc.facet, pc.exponents, g.name + " " + pe.cuspidal);
    } catch (const std::exception &e) {
      rep.errors.push_back("facet component '" + pe.cuspidal + "': " + e.what());
      continue;
    }
    for (std::size_t psi = 0; psi < pc.hecke.data.size(); ++psi) {
      std::size_t found = galois.size();
      for (std::size_t i = 0; i < galois.size(); ++i)
        if (!used[i] && galois[i].cuspidal_id == pe.cuspidal &&
            galois[i].levi.representative == pair->dual.representative) {
          found = i;
          break;
        }
      if (found == galois.size()) {
        rep.errors.push_back("facet component '" + pe.cuspidal + "' (psi " + std::to_string(psi) +
                             ") has no Galois partner");
        continue;
      }
      used[found] = true;
      ComponentMatch cm;
      cm.padic = pc;
      cm.psi = psi;
      cm.galois = galois[found];
      try {
        cm.torus_iso = torus_identification(d, pc.facet, cm.galois.torus_lift);
      } catch (const std::exception &e) {
        rep.errors.push_back("component '" + pe.cuspidal + "': " + e.what());
        continue;
      }
      const std::size_t m = mat_cols(cm.galois.torus_lift);
      if (cm.torus_iso.size() != m) {
        rep.errors.push_back("component '" + pe.cuspidal + "': torus ranks " + std::to_string(m) + " and " +
                             std::to_string(cm.torus_iso.size()) + " differ");
        continue;
      }
      auto inv = m == 0 ? std::optional<Mat>(Mat{}) : integral_inverse(cm.torus_iso);
      if (!inv) {
        rep.errors.push_back("component '" + pe.cuspidal + "': torus identification is not unimodular");
        continue;
      }
      // Transport W_s into W0(J) on Xf and require a bijection.
      cm.intertwines = cm.galois.weyl.size() == pc.facet.W0_J_xf.size();
      for (const auto &gw : cm.galois.weyl) {
        Mat t = m == 0 ? Mat{} : mat_mul(mat_mul(cm.torus_iso, gw), *inv);
        auto it = std::find(pc.facet.W0_J_xf.begin(), pc.facet.W0_J_xf.end(), t);
        if (it == pc.facet.W0_J_xf.end()) {
          cm.intertwines = false;
          cm.detail = "Galois Weyl element " + to_string(gw) + " transports outside W0(J)";
          break;
        }
        cm.weyl_iso.push_back(static_cast<std::size_t>(it - pc.facet.W0_J_xf.begin()));
      }
      if (cm.intertwines && std::set<std::size_t>(cm.weyl_iso.begin(), cm.weyl_iso.end()).size() != cm.weyl_iso.size())
        cm.intertwines = false;
      if (!cm.intertwines) {
        if (cm.detail.empty())
          cm.detail = "W_s has order " + std::to_string(cm.galois.weyl.size()) + ", W0(J) has order " +
                      std::to_string(pc.facet.W0_J_xf.size());
        rep.errors.push_back("component '" + pe.cuspidal + "': " + cm.detail);
      }
      rep.matches.push_back(std::move(cm));
    }
  }
  for (std::size_t i = 0; i < galois.size(); ++i)
    if (!used[i]) rep.errors.push_back("Galois component '" + galois[i].cuspidal_id + "' has no facet partner");
  return rep;
}

}  // namespace unihecke
