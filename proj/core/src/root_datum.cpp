#include "unihecke/root_datum.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace unihecke {

bool BasedRootDatum::same_structure(const BasedRootDatum &o) const {
  return rank == o.rank && roots == o.roots && coroots == o.coroots && simple == o.simple;
}

namespace {

std::string fail_msg(const std::string &axiom, const std::string &witness) {
  return axiom + ": " + witness;
}

Vec reflect(const Vec &x, const Vec &a, const Vec &acheck) {
  return vsub(x, vscale(dot(x, acheck), a));
}

}  // namespace

ValidationResult classify_cartan(const Mat &A) {
  ValidationResult r;
  r.cartan = A;
  const std::size_t n = A.size();
  std::vector<bool> seen(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::deque<std::size_t> q{s};
    seen[s] = true;
    while (!q.empty()) {
      auto i = q.front();
      q.pop_front();
      comp.push_back(i);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && A[i][j] != 0 && !seen[j]) {
          seen[j] = true;
          q.push_back(j);
        }
    }
    std::sort(comp.begin(), comp.end());
    const std::size_t m = comp.size();
    std::map<std::size_t, std::vector<std::size_t>> adj;
    int doubles = 0, triples = 0, edges = 0;
    std::pair<std::size_t, std::size_t> dbl{0, 0};
    for (auto i : comp)
      for (auto j : comp)
        if (i < j && A[i][j] != 0) {
          if (A[j][i] == 0) throw std::invalid_argument("Cartan matrix is not symmetrizable");
          Int bond = A[i][j] * A[j][i];
          adj[i].push_back(j);
          adj[j].push_back(i);
          ++edges;
          if (bond == 2) {
            ++doubles;
            dbl = {i, j};
          } else if (bond == 3) {
            ++triples;
          } else if (bond != 1) {
            throw std::invalid_argument("Cartan entry product " + std::to_string(bond) + " is not of finite type");
          }
        }
    if (static_cast<std::size_t>(edges) != m - 1)
      throw std::invalid_argument("Dynkin diagram contains a cycle");
    std::string label;
    // short node of a multiple bond: |A_ij| > 1 means alpha_i is short
    auto is_short = [&](std::size_t i, std::size_t j) { return std::abs(A[i][j]) > 1; };
    if (m == 1) {
      label = "A1";
    } else if (triples) {
      if (m != 2) throw std::invalid_argument("triple bond outside G2");
      label = "G2";
    } else if (doubles > 1) {
      throw std::invalid_argument("more than one double bond");
    } else {
      std::vector<std::size_t> deg3;
      for (auto i : comp)
        if (adj[i].size() > 3) throw std::invalid_argument("node of degree > 3");
        else if (adj[i].size() == 3) deg3.push_back(i);
      if (doubles == 1) {
        if (!deg3.empty()) throw std::invalid_argument("branch node with double bond");
        auto [i, j] = dbl;
        bool end_i = adj[i].size() == 1, end_j = adj[j].size() == 1;
        if (m == 2) {
          // index order: B2 has its first node long, C2 its first node short
          label = is_short(i, j) ? "C2" : "B2";
        } else if (end_i || end_j) {
          std::size_t end = end_j ? j : i, other = end_j ? i : j;
          label = (is_short(end, other) ? "B" : "C") + std::to_string(m);
        } else if (m == 4) {
          label = "F4";
        } else {
          throw std::invalid_argument("double bond in the interior of a long chain");
        }
      } else if (deg3.empty()) {
        label = "A" + std::to_string(m);
      } else {
        if (deg3.size() > 1) throw std::invalid_argument("more than one branch node");
        std::vector<std::size_t> arms;
        for (auto start : adj[deg3[0]]) {
          std::size_t len = 1, prev = deg3[0], cur = start;
          while (adj[cur].size() == 2) {
            std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = nxt;
            ++len;
          }
          arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        if (arms[0] == 1 && arms[1] == 1) label = "D" + std::to_string(m);
        else if (arms == std::vector<std::size_t>{1, 2, 2}) label = "E6";
        else if (arms == std::vector<std::size_t>{1, 2, 3}) label = "E7";
        else if (arms == std::vector<std::size_t>{1, 2, 4}) label = "E8";
        else throw std::invalid_argument("branched diagram of infinite type");
      }
    }
    r.types.push_back(label);
    r.components.push_back(comp);
  }
  r.ok = true;
  return r;
}

ValidationResult validate_and_classify(const BasedRootDatum &d) {
  ValidationResult r;
  auto fail = [&](const std::string &axiom, const std::string &w) {
    r.ok = false;
    r.error = fail_msg(axiom, w);
    return r;
  };
  if (d.roots.size() != d.coroots.size())
    return fail("shape", std::to_string(d.roots.size()) + " roots vs " + std::to_string(d.coroots.size()) + " coroots");
  for (std::size_t i = 0; i < d.roots.size(); ++i)
    if (d.roots[i].size() != d.rank || d.coroots[i].size() != d.rank)
      return fail("shape", "root " + std::to_string(i) + " has wrong length");
  std::set<std::size_t> simple_set(d.simple.begin(), d.simple.end());
  if (simple_set.size() != d.simple.size()) return fail("shape", "repeated simple index");
  for (auto s : d.simple)
    if (s >= d.roots.size()) return fail("shape", "simple index " + std::to_string(s) + " out of range");
  std::map<Vec, std::size_t> idx;
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    if (is_zero(d.roots[i])) return fail("root axiom", "root " + std::to_string(i) + " is zero");
    if (!idx.emplace(d.roots[i], i).second)
      return fail("root axiom", "root " + to_string(d.roots[i]) + " listed twice");
  }
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    Int p = dot(d.roots[i], d.coroots[i]);
    if (p != 2)
      return fail("pairing axiom", "<root " + std::to_string(i) + ", coroot " + std::to_string(i) + "> = " + std::to_string(p));
  }
  for (std::size_t i = 0; i < d.roots.size(); ++i)
    for (std::size_t j = 0; j < d.roots.size(); ++j) {
      Vec img = reflect(d.roots[j], d.roots[i], d.coroots[i]);
      auto it = idx.find(img);
      if (it == idx.end())
        return fail("reflection axiom", "s_" + std::to_string(i) + "(root " + std::to_string(j) + ") = " + to_string(img) + " is not a root");
      Vec coimg = reflect(d.coroots[j], d.coroots[i], d.roots[i]);
      if (coimg != d.coroots[it->second])
        return fail("reflection axiom", "s_" + std::to_string(i) + " does not carry coroot " + std::to_string(j) + " to coroot " + std::to_string(it->second));
    }
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    if (idx.count(vscale(2, d.roots[i])))
      return fail("reducedness", "2 * root " + std::to_string(i) + " is a root");
  }
  // simple basis
  QMat S(d.rank, QVec(d.simple.size()));
  for (std::size_t k = 0; k < d.simple.size(); ++k)
    for (std::size_t i = 0; i < d.rank; ++i) S[i][k] = d.roots[d.simple[k]][i];
  if (rank_q(S) != d.simple.size()) return fail("basis axiom", "simple roots are linearly dependent");
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    auto c = solve_q(S, to_q(d.roots[i]), d.simple.size());
    if (!c) return fail("basis axiom", "root " + to_string(d.roots[i]) + " is not in the span of the simple roots");
    if (!is_integral(*c)) return fail("basis axiom", "root " + to_string(d.roots[i]) + " has non-integral simple coefficients " + to_string(*c));
    bool pos = false, neg = false;
    for (const auto &x : *c) {
      if (x > 0) pos = true;
      if (x < 0) neg = true;
    }
    if (pos && neg) return fail("basis axiom", "root " + to_string(d.roots[i]) + " has mixed-sign coefficients " + to_string(*c));
  }
  Mat A(d.simple.size(), Vec(d.simple.size()));
  for (std::size_t i = 0; i < d.simple.size(); ++i)
    for (std::size_t j = 0; j < d.simple.size(); ++j)
      A[i][j] = dot(d.roots[d.simple[j]], d.coroots[d.simple[i]]);
  try {
    r = classify_cartan(A);
  } catch (const std::invalid_argument &e) {
    return fail("classification", e.what());
  }
  return r;
}

BasedRootDatum dual(const BasedRootDatum &d) {
  BasedRootDatum e = d;
  std::swap(e.roots, e.coroots);
  if (!d.name.empty()) {
    const std::string suf = "^dual";
    if (d.name.size() > suf.size() && d.name.compare(d.name.size() - suf.size(), suf.size(), suf) == 0)
      e.name = d.name.substr(0, d.name.size() - suf.size());
    else
      e.name = d.name + suf;
  }
  return e;
}

RootSystem::RootSystem(BasedRootDatum d) : d_(std::move(d)) {
  info_ = validate_and_classify(d_);
  if (!info_.ok) throw std::invalid_argument("invalid root datum " + d_.name + ": " + info_.error);
  const std::size_t n = d_.roots.size(), r = d_.simple.size();
  for (std::size_t i = 0; i < n; ++i) {
    index_[d_.roots[i]] = i;
    coindex_[d_.coroots[i]] = i;
  }
  QMat S(d_.rank, QVec(r));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < d_.rank; ++i) S[i][k] = d_.roots[d_.simple[k]][i];
  coeffs_.resize(n);
  positive_.resize(n);
  neg_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    coeffs_[i] = to_int_vec(*solve_q(S, to_q(d_.roots[i]), r));
    Int s = 0;
    for (Int c : coeffs_[i]) s += c;
    positive_[i] = s > 0;
    if (positive_[i]) pos_list_.push_back(i);
    neg_[i] = index_.at(vneg(d_.roots[i]));
  }
  perm_.resize(r);
  for (std::size_t p = 0; p < r; ++p) {
    perm_[p].resize(n);
    const auto &a = simple_root(p);
    const auto &ac = simple_coroot(p);
    for (std::size_t i = 0; i < n; ++i) perm_[p][i] = index_.at(reflect(d_.roots[i], a, ac));
  }
}

long RootSystem::find_root(const Vec &v) const {
  auto it = index_.find(v);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}
long RootSystem::find_coroot(const Vec &v) const {
  auto it = coindex_.find(v);
  return it == coindex_.end() ? -1 : static_cast<long>(it->second);
}
Int RootSystem::height(std::size_t i) const {
  Int s = 0;
  for (Int c : coeffs_[i]) s += c;
  return s;
}

Mat RootSystem::reflection(std::size_t i) const {
  Mat m = identity_mat(d_.rank);
  const auto &a = d_.roots[i];
  const auto &ac = d_.coroots[i];
  for (std::size_t r = 0; r < d_.rank; ++r)
    for (std::size_t c = 0; c < d_.rank; ++c) m[r][c] = sub_checked(m[r][c], mul_checked(a[r], ac[c]));
  return m;
}
Mat RootSystem::coreflection(std::size_t i) const {
  Mat m = identity_mat(d_.rank);
  const auto &a = d_.roots[i];
  const auto &ac = d_.coroots[i];
  for (std::size_t r = 0; r < d_.rank; ++r)
    for (std::size_t c = 0; c < d_.rank; ++c) m[r][c] = sub_checked(m[r][c], mul_checked(ac[r], a[c]));
  return m;
}

BigInt weyl_group_order_formula(const ValidationResult &info) {
  BigInt order = 1;
  for (const auto &t : info.types) {
    char k = t[0];
    int n = std::stoi(t.substr(1));
    std::vector<int> deg;
    switch (k) {
    case 'A':
      for (int i = 2; i <= n + 1; ++i) deg.push_back(i);
      break;
    case 'B':
    case 'C':
      for (int i = 1; i <= n; ++i) deg.push_back(2 * i);
      break;
    case 'D':
      for (int i = 1; i < n; ++i) deg.push_back(2 * i);
      deg.push_back(n);
      break;
    case 'E':
      if (n == 6) deg = {2, 5, 6, 8, 9, 12};
      else if (n == 7) deg = {2, 6, 8, 10, 12, 14, 18};
      else deg = {2, 8, 12, 14, 18, 20, 24, 30};
      break;
    case 'F':
      deg = {2, 6, 8, 12};
      break;
    case 'G':
      deg = {2, 6};
      break;
    default:
      throw std::invalid_argument("unknown type " + t);
    }
    for (int x : deg) order *= x;
  }
  return order;
}

WeylGroup::WeylGroup(const RootSystem &rs, std::size_t cap) : rs_(rs) {
  BigInt est = weyl_group_order_formula(rs.classification());
  if (est > BigInt(cap)) {
    std::ostringstream os;
    os << "Weyl group of " << rs.datum().name << " has order " << est << ", above the cap " << cap;
    throw std::length_error(os.str());
  }
  const std::size_t r = rs.num_simple(), n = rs.num_roots();
  std::vector<Mat> gens(r);
  for (std::size_t p = 0; p < r; ++p) gens[p] = rs.reflection(rs.datum().simple[p]);
  WeylGroupElement e;
  e.matrix = identity_mat(rs.rank());
  e.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) e.perm[i] = i;
  elems_.push_back(e);
  index_[e.matrix] = 0;
  // BFS appending letters on the right gives lexicographically smallest reduced words.
  for (std::size_t head = 0; head < elems_.size(); ++head) {
    for (std::size_t p = 0; p < r; ++p) {
      Mat m = mat_mul(elems_[head].matrix, gens[p]);
      if (index_.count(m)) continue;
      WeylGroupElement x;
      x.matrix = m;
      x.word = elems_[head].word;
      x.word.push_back(p);
      x.perm.resize(n);
      // (w s_p)(root i) = w(s_p root i)
      for (std::size_t i = 0; i < n; ++i) x.perm[i] = elems_[head].perm[rs.reflect_perm(p)[i]];
      index_[m] = elems_.size();
      elems_.push_back(std::move(x));
      if (elems_.size() > cap) throw std::length_error("Weyl group enumeration exceeded cap");
    }
  }
  const std::size_t N = elems_.size();
  inv_.resize(N);
  left_.assign(N, std::vector<std::size_t>(r));
  right_.assign(N, std::vector<std::size_t>(r));
  simple_.resize(r);
  for (std::size_t p = 0; p < r; ++p) simple_[p] = index_.at(gens[p]);
  for (std::size_t w = 0; w < N; ++w) {
    for (std::size_t p = 0; p < r; ++p) {
      left_[w][p] = index_.at(mat_mul(gens[p], elems_[w].matrix));
      right_[w][p] = index_.at(mat_mul(elems_[w].matrix, gens[p]));
    }
    if (elems_[w].word.size() > elems_[longest_].word.size()) longest_ = w;
  }
  for (std::size_t w = 0; w < N; ++w) {
    std::size_t u = 0;
    for (auto it = elems_[w].word.rbegin(); it != elems_[w].word.rend(); ++it) u = right_[u][*it];
    inv_[w] = u;
  }
}

std::size_t WeylGroup::multiply(std::size_t a, std::size_t b) const {
  std::size_t u = a;
  for (auto p : elems_[b].word) u = right_[u][p];
  return u;
}

long WeylGroup::find(const Mat &m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

std::size_t WeylGroup::longest_of(const std::vector<std::size_t> &I) const {
  std::size_t w = 0;
  for (bool grew = true; grew;) {
    grew = false;
    for (auto p : I) {
      // w s_p longer iff w(alpha_p) > 0
      if (rs_.is_positive(elems_[w].perm[rs_.datum().simple[p]])) {
        w = right_[w][p];
        grew = true;
      }
    }
  }
  return w;
}

Mat WeylGroup::comatrix(std::size_t a) const {
  Mat m = identity_mat(rs_.rank());
  for (auto p : elems_[a].word) m = mat_mul(m, rs_.coreflection(rs_.datum().simple[p]));
  return m;
}

std::size_t WeylGroup::reflection_of_root(std::size_t i) const {
  return index_.at(rs_.reflection(i));
}

std::vector<WeylGroupElement> weyl_group_elements(const BasedRootDatum &d, std::size_t cap) {
  RootSystem rs(d);
  WeylGroup w(rs, cap);
  return w.elements();
}

BasedRootDatum from_simple_roots(std::string name, std::size_t rank, const std::vector<Vec> &simple_roots,
                                 const std::vector<Vec> &simple_coroots, std::size_t max_roots) {
  if (simple_roots.size() != simple_coroots.size())
    throw std::invalid_argument("from_simple_roots: roots and coroots differ in number");
  const std::size_t r = simple_roots.size();
  // (root, coroot, simple coefficients)
  struct Entry {
    Vec root, coroot, coeff;
  };
  std::vector<Entry> all;
  std::map<Vec, std::size_t> seen;
  for (std::size_t i = 0; i < r; ++i) {
    if (simple_roots[i].size() != rank || simple_coroots[i].size() != rank)
      throw std::invalid_argument("from_simple_roots: vector of wrong length");
    Vec c(r, 0);
    c[i] = 1;
    if (seen.count(simple_roots[i])) throw std::invalid_argument("from_simple_roots: repeated simple root");
    seen[simple_roots[i]] = all.size();
    all.push_back({simple_roots[i], simple_coroots[i], c});
  }
  for (std::size_t h = 0; h < all.size(); ++h)
    for (std::size_t i = 0; i < r; ++i) {
      Int k = dot(all[h].root, simple_coroots[i]);
      Int kc = dot(simple_roots[i], all[h].coroot);
      Entry e{vsub(all[h].root, vscale(k, simple_roots[i])), vsub(all[h].coroot, vscale(kc, simple_coroots[i])),
              all[h].coeff};
      e.coeff[i] = sub_checked(e.coeff[i], k);
      if (seen.count(e.root)) continue;
      seen[e.root] = all.size();
      all.push_back(e);
      if (all.size() > max_roots) throw std::invalid_argument("from_simple_roots: closure exceeds " + std::to_string(max_roots) + " roots");
    }
  auto height = [](const Vec &c) {
    Int h = 0;
    for (auto x : c) h += x;
    return h;
  };
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool p = true, n = true;
    for (auto x : all[i].coeff) {
      if (x < 0) p = false;
      if (x > 0) n = false;
    }
    if (!p && !n) throw std::invalid_argument("from_simple_roots: root with mixed-sign coefficients " + to_string(all[i].root));
    if (p) pos.push_back(i);
  }
  std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
    return height(all[a].coeff) < height(all[b].coeff);
  });
  BasedRootDatum d;
  d.name = std::move(name);
  d.rank = rank;
  for (auto i : pos) {
    d.roots.push_back(all[i].root);
    d.coroots.push_back(all[i].coroot);
  }
  for (auto i : pos) {
    d.roots.push_back(vneg(all[i].root));
    d.coroots.push_back(vneg(all[i].coroot));
  }
  if (d.roots.size() != all.size()) throw std::invalid_argument("from_simple_roots: root set not closed under negation");
  for (std::size_t i = 0; i < r; ++i) d.simple.push_back(i);
  auto v = validate_and_classify(d);
  if (!v.ok) throw std::invalid_argument("from_simple_roots: " + v.error);
  return d;
}

BasedRootDatum standard_levi_datum(const BasedRootDatum &d, const std::vector<std::size_t> &I) {
  RootSystem rs(d);
  std::set<std::size_t> Iset(I.begin(), I.end());
  for (auto p : I)
    if (p >= d.simple.size()) throw std::invalid_argument("standard_levi_datum: " + std::to_string(p) + " is not a simple position");
  BasedRootDatum l;
  l.name = d.name + "_L" + to_string(Vec(I.begin(), I.end()));
  l.rank = d.rank;
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    const auto &c = rs.coefficients(i);
    bool inside = true;
    for (std::size_t p = 0; p < c.size(); ++p)
      if (c[p] != 0 && !Iset.count(p)) inside = false;
    if (!inside) continue;
    l.roots.push_back(d.roots[i]);
    l.coroots.push_back(d.coroots[i]);
  }
  std::vector<std::size_t> sorted(I.begin(), I.end());
  for (auto p : sorted) {
    const auto &a = d.roots[d.simple[p]];
    l.simple.push_back(static_cast<std::size_t>(std::find(l.roots.begin(), l.roots.end(), a) - l.roots.begin()));
  }
  return l;
}

std::pair<BasedRootDatum, RootDatumMorphism> adjoint_datum(const BasedRootDatum &d) {
  RootSystem rs(d);
  const std::size_t r = d.simple.size();
  BasedRootDatum ad;
  ad.name = d.name + "_ad";
  ad.rank = r;
  ad.simple = d.simple;
  RootDatumMorphism mor;
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    ad.roots.push_back(rs.coefficients(i));
    Vec cv(r);
    for (std::size_t j = 0; j < r; ++j) cv[j] = dot(rs.simple_root(j), d.coroots[i]);
    ad.coroots.push_back(cv);
    mor.root_index_map.push_back(static_cast<long>(i));
  }
  mor.lattice_map = zero_mat(d.rank, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < d.rank; ++i) mor.lattice_map[i][j] = rs.simple_root(j)[i];
  mor.dual_map = transpose(mor.lattice_map, r);
  auto ck = cokernel(to_big(mor.dual_map, d.rank));
  mor.index = ck.group.order();
  return {ad, mor};
}

BigInt center_character_order(const BasedRootDatum &d) {
  RootSystem rs(d);
  Mat S = zero_mat(d.rank, d.simple.size());
  for (std::size_t j = 0; j < d.simple.size(); ++j)
    for (std::size_t i = 0; i < d.rank; ++i) S[i][j] = rs.simple_root(j)[i];
  return cokernel(to_big(S, d.simple.size())).group.order();
}

}  // namespace unihecke
