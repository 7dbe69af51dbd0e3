#include "unihecke/compare.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <stdexcept>

namespace unihecke {

namespace {

std::string labels_str(const std::vector<long> &J) {
  std::string s = "[";
  for (std::size_t i = 0; i < J.size(); ++i) s += (i ? "," : "") + std::to_string(J[i]);
  return s + "]";
}

std::string subset_str(const SimpleSubset &I) { return labels_str(std::vector<long>(I.begin(), I.end())); }

FinGenAbelianGroup root_quotient(const BasedRootDatum &R) {
  std::vector<Vec> cols;
  for (auto p : R.simple) cols.push_back(R.roots[p]);
  if (R.rank == 0) return {};
  return cokernel(to_big(columns_to_mat(cols, R.rank), cols.size())).group;
}

// v-exponent N / (2 lambda); nullopt when both vanish, throws when only one does.
std::optional<Rat> forced_exponent(Int N, Int lambda) {
  if (N == 0 && lambda == 0) return std::nullopt;
  if (N == 0 || lambda == 0) throw std::domain_error("q^" + std::to_string(N) + " against v^" + std::to_string(2 * lambda));
  return Rat(N, 2 * lambda);
}

Mat conjugate(const Mat &L, const Mat &M, const Mat &Linv) { return mat_mul(mat_mul(L, M), Linv); }

}  // namespace

bool GroupComparison::ok() const {
  if (!matching.ok()) return false;
  return std::all_of(reports.begin(), reports.end(), [](const ComparisonReport &r) { return r.isomorphic; });
}

ComparisonReport compare_hecke_algebras(const AffineHeckeDatum &padic, const AffineHeckeDatum &galois,
                                        const Mat &torus_iso) {
  ComparisonReport rep;
  rep.padic_component = padic.name;
  rep.galois_component = galois.name;
  rep.omega_padic = root_quotient(padic.R);
  rep.omega_galois = root_quotient(galois.R);
  auto fail = [&](const std::string &w) {
    if (rep.witness.empty()) rep.witness = w;
  };
  const std::size_t m = galois.R.rank;
  if (padic.R.rank != m) {
    fail("lattice ranks " + std::to_string(padic.R.rank) + " and " + std::to_string(m) + " differ");
    return rep;
  }
  std::optional<Mat> Tinv = m == 0 ? std::optional<Mat>(Mat{}) : integral_inverse(torus_iso);
  if (torus_iso.size() != m || !Tinv) {
    fail("torus identification is not a lattice isomorphism");
    return rep;
  }
  if (padic.R.num_simple() != galois.R.num_simple()) {
    fail("root systems have " + std::to_string(padic.R.num_simple()) + " and " +
         std::to_string(galois.R.num_simple()) + " simple roots");
    return rep;
  }
  if (padic.omega_ext.size() != galois.omega_ext.size())
    fail("omega_ext orders " + std::to_string(padic.omega_ext.size()) + " and " +
         std::to_string(galois.omega_ext.size()) + " differ");
  if (!(rep.omega_padic == rep.omega_galois))
    fail("lattice modulo roots: " + rep.omega_padic.to_string() + " against " + rep.omega_galois.to_string());

  const std::size_t ns = galois.R.num_simple();
  Mat L = m == 0 ? Mat{} : torus_iso;
  std::vector<long> sigma(ns, -1);
  bool found = ns == 0;
  if (ns > 0) {
    for (std::size_t i = 0; i < ns; ++i) {
      Vec img = mat_vec(torus_iso, galois.R.roots[galois.R.simple[i]]);
      if (std::find(padic.R.roots.begin(), padic.R.roots.end(), img) == padic.R.roots.end()) {
        fail("image " + to_string(img) + " of Galois simple root " + std::to_string(i) + " is not a root");
        break;
      }
    }
    WeylGroup WP(RootSystem(padic.R));
    for (std::size_t w = 0; w < WP.size() && !found && rep.witness.empty(); ++w) {
      Mat cand = mat_mul(WP[w].matrix, torus_iso);
      std::vector<long> s(ns, -1);
      bool ok = true;
      for (std::size_t i = 0; i < ns && ok; ++i) {
        Vec img = mat_vec(cand, galois.R.roots[galois.R.simple[i]]);
        for (std::size_t j = 0; j < ns; ++j)
          if (padic.R.roots[padic.R.simple[j]] == img) s[i] = static_cast<long>(j);
        if (s[i] < 0) ok = false;
      }
      if (ok && std::set<long>(s.begin(), s.end()).size() == ns) {
        found = true;
        L = cand;
        sigma = s;
      }
    }
    if (!found) fail("no Weyl translate of the torus identification maps simple roots to simple roots");
  }
  if (!found) return rep;
  rep.simple_map = sigma;
  Mat Lt = m == 0 ? Mat{} : transpose(L);
  for (std::size_t i = 0; i < ns; ++i) {
    Vec pulled = mat_vec(Lt, padic.R.coroots[padic.R.simple[static_cast<std::size_t>(sigma[i])]]);
    if (pulled != galois.R.coroots[galois.R.simple[i]])
      fail("coroot of Galois simple root " + std::to_string(i) + " is " + to_string(galois.R.coroots[galois.R.simple[i]]) +
           ", the transported coroot is " + to_string(pulled));
  }
  rep.based_root_datum_iso.lattice_map = L;
  rep.based_root_datum_iso.dual_map = Lt;
  for (const auto &r : galois.R.roots) {
    Vec img = m == 0 ? Vec{} : mat_vec(L, r);
    auto it = std::find(padic.R.roots.begin(), padic.R.roots.end(), img);
    rep.based_root_datum_iso.root_index_map.push_back(it == padic.R.roots.end() ? -1 : it - padic.R.roots.begin());
    if (it == padic.R.roots.end()) fail("root " + to_string(r) + " maps to the non-root " + to_string(img));
  }

  std::optional<Rat> v;
  for (std::size_t i = 0; i < ns; ++i) {
    std::size_t j = static_cast<std::size_t>(sigma[i]);
    RootParameterCheck pc;
    pc.galois_simple = i;
    pc.padic_simple = j;
    pc.q_exponent = padic.lambda[j];
    pc.q_exponent_star = padic.lambda_star[j];
    pc.lambda = galois.lambda[i];
    pc.lambda_star = galois.lambda_star[i];
    try {
      auto e = forced_exponent(pc.q_exponent, pc.lambda);
      auto es = forced_exponent(pc.q_exponent_star, pc.lambda_star);
      pc.v_exponent = e ? to_string(*e) : "free";
      pc.v_exponent_star = es ? to_string(*es) : "free";
      for (const auto &x : {e, es}) {
        if (!x) continue;
        if (!v) v = x;
        if (*v != *x) {
          pc.ok = false;
          fail("simple root " + std::to_string(i) + " forces v = q^" + to_string(*x) + ", another root forces q^" +
               to_string(*v));
        } else if (*x != Rat(1, 2)) {
          pc.ok = false;
          fail("simple root " + std::to_string(i) + " forces v = q^" + to_string(*x) + " instead of q^1/2");
        }
      }
    } catch (const std::domain_error &e) {
      pc.ok = false;
      pc.v_exponent = pc.v_exponent_star = "none";
      fail("simple root " + std::to_string(i) + ": " + e.what());
    }
    rep.parameter_check.push_back(pc);
  }
  rep.v_constrained = v.has_value();
  rep.v_exponent = v ? to_string(*v) : "1/2";
  rep.isomorphic = rep.witness.empty();
  return rep;
}

ComparisonReport compare_match(const GroupSpec &g, const ComponentMatch &m) {
  const AffineHeckeDatum &P = m.padic.hecke.data.at(m.psi);
  AffineHeckeDatum G = m.galois.hecke(g.name + " galois " + m.galois.cuspidal_id);
  ComparisonReport rep = compare_hecke_algebras(P, G, m.torus_iso);
  rep.group = g.name;
  rep.padic_component = "facet " + labels_str(m.padic.entry.facet) + " " + m.padic.entry.cuspidal +
                        (m.padic.hecke.data.size() > 1 ? " psi " + std::to_string(m.psi) : "");
  rep.galois_component = "levi " + subset_str(m.galois.levi.representative) + " " + m.galois.cuspidal_id;
  if (!m.intertwines && rep.isomorphic) {
    rep.isomorphic = false;
    rep.witness = "Weyl groups do not intertwine: " + m.detail;
  }
  return rep;
}

GroupComparison compare_group(const GroupSpec &g, const ComponentCatalog &catalog, const ParameterTable &table,
                              const FacetOptions &opt) {
  GroupComparison out;
  out.matching = match_components(g, catalog, table, opt);
  for (const auto &m : out.matching.matches) out.reports.push_back(compare_match(g, m));
  return out;
}

HeckeElement transport(const HeckeAlgebra &from, const HeckeAlgebra &to, const Mat &L,
                       const std::vector<std::size_t> &param_map, const HeckeElement &e) {
  const std::size_t m = from.rank();
  std::optional<Mat> Linv = m == 0 ? std::optional<Mat>(Mat{}) : integral_inverse(L);
  if (!Linv) throw std::invalid_argument("transport needs a lattice isomorphism");
  HeckeElement out;
  for (const auto &[k, c] : e.terms) {
    if (k.omega != 0) throw std::invalid_argument("transport needs trivial omega_ext");
    long w = m == 0 ? 0 : to.weyl().find(conjugate(L, from.weyl()[k.w].matrix, *Linv));
    if (w < 0) throw std::invalid_argument("Weyl element does not transport");
    out.add({m == 0 ? Vec{} : mat_vec(L, k.x), static_cast<std::size_t>(w), 0}, c.rename(param_map, to.nvars()));
  }
  return out;
}

LatticeCharacter facet_character(const IwahoriWeylDatum &d, const FacetData &f, const LatticeCharacter &z) {
  const Mat &B = d.context().relative.cochar_basis;
  LatticeCharacter out;
  out.n = z.n;
  for (const auto &v : f.Xf_vectors) {
    QVec x = qmat_vec(to_q(B), v);
    if (!is_integral(x)) throw std::invalid_argument("Xf vector " + to_string(v) + " is not a cocharacter");
    Vec xi = to_int_vec(x);
    if (!d.lambda_of_cocharacter(xi)) throw std::invalid_argument("Xf vector is not a translation");
    out.c.push_back(z.exponent(xi));
  }
  return out;
}

LatticeCharacter galois_character(const DualBernsteinComponent &c, const LatticeCharacter &z) {
  LatticeCharacter out;
  out.n = z.n;
  for (const auto &col : mat_columns(c.torus_lift)) out.c.push_back(z.exponent(col));
  return out;
}

TwistEquivarianceReport check_twist_equivariance(const GroupSpec &g, const ComponentMatch &m,
                                                 const WeaklyUnramifiedGroup &xwr) {
  TwistEquivarianceReport rep;
  auto fail = [&](const std::string &w) {
    if (rep.ok) rep.witness = w;
    rep.ok = false;
  };
  auto ctx = std::make_shared<RelativeContext>(g.galois(), g.marking());
  IwahoriWeylDatum d(ctx);
  const AffineHeckeDatum &P = m.padic.hecke.data.at(m.psi);
  AffineHeckeDatum G = m.galois.hecke(g.name + " galois");
  ComparisonReport base = compare_hecke_algebras(P, G, m.torus_iso);
  if (!base.isomorphic) {
    fail("untwisted components do not match: " + base.witness);
    return rep;
  }
  const std::size_t rk = G.R.rank;
  const Mat &L = base.based_root_datum_iso.lattice_map;
  HeckeAlgebra HP(P), HG(G);
  std::vector<std::size_t> pmap(G.num_params, 0);
  for (std::size_t i = 0; i < base.simple_map.size(); ++i)
    pmap[G.param_of[i]] = P.param_of[static_cast<std::size_t>(base.simple_map[i])];
  std::vector<HeckeElement> samples = small_basis(HG, 1, 1);
  auto transport_graded = [&](const HeckeAlgebra &from, const HeckeAlgebra &to, const Mat &M,
                              const std::vector<std::size_t> &pm, const GradedHeckeElement &e) {
    GradedHeckeElement out;
    out.n = e.n;
    for (const auto &[k, part] : e.parts) out.parts[k] = transport(from, to, M, pm, part);
    return normalize(out);
  };
  for (const auto &z : xwr.characters) {
    ++rep.characters;
    LatticeCharacter zp, zg;
    try {
      zp = facet_character(d, m.padic.facet, z);
    } catch (const std::exception &e) {
      fail(std::string("facet-side character: ") + e.what());
      continue;
    }
    zg = galois_character(m.galois, z);
    for (std::size_t j = 0; j < rk; ++j) {
      Int s = 0;
      for (std::size_t i = 0; i < rk; ++i) s = add_checked(s, mul_checked(zp.c[i], m.torus_iso[i][j]));
      if (((s - zg.c[j]) % z.n + z.n) % z.n != 0)
        fail("z = " + to_string(z.c) + "/" + std::to_string(z.n) + " disagrees on torus basis vector " +
             std::to_string(j));
    }
    try {
      AffineHeckeDatum Pt = twist_target(P, zp), Gt = twist_target(G, zg);
      ComparisonReport twisted = compare_hecke_algebras(Pt, Gt, m.torus_iso);
      if (!twisted.isomorphic) fail("twisted components do not match: " + twisted.witness);
      HeckeAlgebra HPt(Pt), HGt(Gt);
      for (const auto &e : samples) {
        ++rep.samples;
        GradedHeckeElement lhs = transport_graded(HGt, HPt, L, pmap, apply_twist(zg, e));
        GradedHeckeElement rhs = normalize(apply_twist(zp, transport(HG, HP, L, pmap, e)));
        if (!(lhs == rhs)) {
          fail("twist and transport do not commute on " + HG.to_string(e));
          break;
        }
      }
    } catch (const std::invalid_argument &e) {
      fail(std::string("twist is not defined: ") + e.what());
    }
  }
  return rep;
}

GroupSpec adjoint_group(const GroupSpec &g) {
  auto [ad, morph] = adjoint_datum(g.datum);
  GroupSpec out;
  out.name = g.name + "_ad";
  out.datum = ad;
  out.datum.name = out.name;
  out.delta0 = g.delta0;
  out.builtin_facets = g.builtin_facets;
  const std::size_t ns = g.datum.num_simple();
  if (!g.frobenius.empty() && !is_identity(g.frobenius)) {
    out.frobenius = zero_mat(ns, ns);
    for (std::size_t i = 0; i < ns; ++i) {
      Vec img = mat_vec(g.frobenius, g.datum.roots[g.datum.simple[i]]);
      bool hit = false;
      for (std::size_t j = 0; j < ns; ++j)
        if (g.datum.roots[g.datum.simple[j]] == img) {
          out.frobenius[j][i] = 1;
          hit = true;
        }
      if (!hit) throw std::invalid_argument("Frobenius does not permute the simple roots");
    }
  }
  return out;
}

AdjointReport check_adjoint_invariance(const GroupSpec &g, const std::vector<long> &J, const ParameterTable &table,
                                       const FacetOptions &opt) {
  AdjointReport rep;
  GroupSpec ga = adjoint_group(g);
  rep.group = g.name;
  rep.adjoint = ga.name;
  rep.J = J;
  {
    // |(X* / Z Phi)_Fr|
    const std::size_t n = g.datum.rank;
    std::vector<Vec> cols;
    if (!g.frobenius.empty())
      for (const auto &c : mat_columns(mat_sub(g.frobenius, identity_mat(n))))
        if (!is_zero(c)) cols.push_back(c);
    for (auto p : g.datum.simple) cols.push_back(g.datum.roots[p]);
    rep.center_order = n == 0 ? BigInt(1) : cokernel(to_big(columns_to_mat(cols, n), cols.size())).group.order();
  }
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
    if (!ok) rep.ok = false;
  };
  auto cg = std::make_shared<RelativeContext>(g.galois(), g.marking());
  auto ca = std::make_shared<RelativeContext>(ga.galois(), ga.marking());
  IwahoriWeylDatum dg(cg), da(ca);
  FacetData fg = analyze_facet(dg, J, opt), fa = analyze_facet(da, J, opt);
  facet_root_datum(dg, fg, opt);
  facet_root_datum(da, fa, opt);

  add("S_f,af labels", fg.S_f_af_labels == fa.S_f_af_labels, "");
  Mat mg = coxeter_matrix(dg, fg.S_f_af), ma = coxeter_matrix(da, fa.S_f_af);
  add("Coxeter matrix of S_f,af", mg == ma, to_string(mg) + " vs " + to_string(ma));
  add("|W0(J)|", fg.W0_J.size() == fa.W0_J.size(),
      std::to_string(fg.W0_J.size()) + " vs " + std::to_string(fa.W0_J.size()));
  std::string tg, ta;
  for (const auto &t : fg.Rf_types) tg += t + " ";
  for (const auto &t : fa.Rf_types) ta += t + " ";
  add("Rf type", fg.Rf_types == fa.Rf_types, tg + "vs " + ta);
  auto exps = [&](const GroupSpec &s, const IwahoriWeylDatum &d) {
    std::vector<long> sorted = J;
    std::sort(sorted.begin(), sorted.end());
    for (const auto &fe : s.builtin_facets) {
      std::vector<long> fj = fe.J;
      std::sort(fj.begin(), fj.end());
      if (fj == sorted && fe.cuspidal == "iwahori" && !fe.exponents.empty()) return fe.exponents;
    }
    return table.lookup(d, sorted, "iwahori");
  };
  add("parameter exponents", exps(g, dg) == exps(ga, da), "");

  // Xf(G) -> Xf(G_ad) through X_*(T) -> X_*(T_ad).
  auto [adj, morph] = adjoint_datum(g.datum);
  const Mat &Bg = cg->relative.cochar_basis;
  const Mat &Ba = ca->relative.cochar_basis;
  const std::size_t ka = fa.Xf_vectors.size(), kg = fg.Xf_vectors.size();
  QMat qa(da.dim(), QVec(ka));
  for (std::size_t j = 0; j < ka; ++j)
    for (std::size_t i = 0; i < da.dim(); ++i) qa[i][j] = fa.Xf_vectors[j][i];
  Mat M(ka, Vec(kg, 0));
  bool integral = true;
  for (std::size_t j = 0; j < kg && integral; ++j) {
    QVec y = qmat_vec(to_q(morph.dual_map), qmat_vec(to_q(Bg), fg.Xf_vectors[j]));
    auto v = ka == 0 ? std::optional<QVec>(QVec{}) : solve_q(to_q(Ba), y, da.dim());
    std::optional<QVec> c;
    if (v && ka > 0) c = solve_q(qa, *v, ka);
    else if (v) c = QVec{};
    if (!c || !is_integral(*c) || (ka > 0 && qmat_vec(qa, *c) != *v)) {
      integral = false;
      break;
    }
    Vec ci = to_int_vec(*c);
    for (std::size_t i = 0; i < ka; ++i) M[i][j] = ci[i];
  }
  if (!integral) {
    add("Xf(G) embeds in Xf(G_ad)", false, "an Xf vector has no integral image");
    return rep;
  }
  FinGenAbelianGroup q = ka == 0 ? FinGenAbelianGroup{} : cokernel(to_big(M, kg)).group;
  rep.index = q.order();
  add("Xf(G) embeds in Xf(G_ad) with finite index", q.is_finite(), "index " + rep.index.str());
  // Away from the Iwahori facet Xf shrinks and the index is no longer the center order.
  if (g.semisimple() && J.empty()) add("index = |(X*/Z Phi)_Fr|", rep.index == rep.center_order, rep.center_order.str());
  return rep;
}

}  // namespace unihecke
