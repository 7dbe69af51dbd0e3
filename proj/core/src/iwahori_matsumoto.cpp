#include "unihecke/iwahori_matsumoto.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace unihecke {

void IMElement::add(const ExtElement &g, const Laurent &c) {
  if (c.is_zero()) return;
  auto it = terms.find(g);
  if (it == terms.end()) {
    terms.emplace(g, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

IMElement &IMElement::operator+=(const IMElement &o) {
  for (const auto &[g, c] : o.terms) add(g, c);
  return *this;
}

IMElement IMElement::operator-(const IMElement &o) const {
  IMElement r = *this;
  for (const auto &[g, c] : o.terms) r.add(g, -c);
  return r;
}

IMElement IMElement::scaled(const Laurent &c) const {
  IMElement r;
  for (const auto &[g, x] : terms) r.add(g, x * c);
  return r;
}

IwahoriMatsumoto::IwahoriMatsumoto(const HeckeAlgebra &H) : H_(H) {
  const auto &R = H.datum().R;
  const auto &rs = H.roots();
  const auto &W = H.weyl();
  const std::size_t n = R.rank, r = R.num_simple();
  two_rho_.assign(n, 0);
  for (auto i : rs.positive_roots()) two_rho_ = vadd(two_rho_, rs.root(i));
  for (std::size_t p = 0; p < r; ++p) {
    gens_.push_back({Vec(n, 0), W.simple(p), 0});
    gen_diff_.push_back(H.label_difference(p, false));
  }
  // coroot heights in the simple coroot basis
  QMat cor(n, QVec(r));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < r; ++p) cor[i][p] = rs.simple_coroot(p)[i];
  const auto &info = rs.classification();
  for (const auto &comp : info.components) {
    long best = -1;
    Rat best_h = -1;
    for (auto i : rs.positive_roots()) {
      auto m = solve_q(cor, to_q(rs.coroot(i)), r);
      if (!m) throw std::logic_error("coroot outside the span of simple coroots");
      bool inside = true;
      Rat h = 0;
      for (std::size_t p = 0; p < r; ++p) {
        if ((*m)[p] != 0 && std::find(comp.begin(), comp.end(), p) == comp.end()) inside = false;
        h += (*m)[p];
      }
      if (inside && h > best_h) {
        best_h = h;
        best = static_cast<long>(i);
      }
    }
    auto th = static_cast<std::size_t>(best);
    highest_roots_.push_back(rs.root(th));
    std::size_t refl = W.reflection_of_root(th);
    theta_reflection_.push_back(refl);
    gens_.push_back({rs.root(th), refl, 0});
    // parameter of s_0: label of a simple root conjugate to theta
    long conj = -1;
    for (auto p : comp)
      for (const auto &e : W.elements())
        if (conj < 0 && e.perm[R.simple[p]] == th) conj = static_cast<long>(p);
    if (conj < 0) throw std::logic_error("highest root is not conjugate to a simple root");
    auto p = static_cast<std::size_t>(conj);
    const Vec &pc = R.coroots[R.simple[p]];
    bool div2 = std::all_of(pc.begin(), pc.end(), [](Int x) { return x % 2 == 0; });
    gen_diff_.push_back(H.label_difference(p, div2));
  }
  // length-zero generators: classes of X / ZR, and omega_ext
  {
    IntegerMatrix A(n, r);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t p = 0; p < r; ++p) A(i, p) = rs.simple_root(p)[i];
    Cokernel ck = cokernel(A);
    std::set<ExtElement> seen{identity()};
    for (std::size_t j = 0; j < ck.moduli.size(); ++j) {
      Vec x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = to_int(ck.section(i, j));
      ExtElement g0 = reduced_word({x, 0, 0}).second;
      for (const auto &g : {g0, inverse(g0)})
        if (seen.insert(g).second) omega_gens_.push_back(g);
    }
    for (std::size_t o = 1; o < H.omega_order(); ++o) {
      ExtElement g{Vec(n, 0), 0, o};
      if (seen.insert(g).second) omega_gens_.push_back(g);
    }
  }
}

ExtElement IwahoriMatsumoto::identity() const { return {Vec(H_.rank(), 0), 0, 0}; }

ExtElement IwahoriMatsumoto::inverse(const ExtElement &a) const {
  ExtElement oi{Vec(H_.rank(), 0), 0, H_.omega_inverse(a.omega)};
  ExtElement wi{Vec(H_.rank(), 0), H_.weyl().inverse(a.w), 0};
  ExtElement t{vneg(a.x), 0, 0};
  return multiply(multiply(oi, wi), t);
}

std::size_t IwahoriMatsumoto::length(const ExtElement &g) const {
  const auto &rs = H_.roots();
  const auto &perm = H_.weyl()[H_.weyl().inverse(g.w)].perm;
  Int total = 0;
  for (auto i : rs.positive_roots()) {
    Int m = dot(g.x, rs.coroot(i));
    if (!rs.is_positive(perm[i])) m -= 1;
    total += m < 0 ? -m : m;
  }
  return static_cast<std::size_t>(total);
}

std::pair<std::vector<std::size_t>, ExtElement> IwahoriMatsumoto::reduced_word(const ExtElement &g0) const {
  std::vector<std::size_t> word;
  ExtElement g = g0;
  std::size_t l = length(g);
  while (l > 0) {
    bool found = false;
    for (std::size_t k = 0; k < gens_.size() && !found; ++k) {
      ExtElement h = multiply(gens_[k], g);
      std::size_t lh = length(h);
      if (lh < l) {
        word.push_back(k);
        g = h;
        l = lh;
        found = true;
      }
    }
    if (!found) throw std::logic_error("no left descent for an element of positive length");
  }
  return {word, g};
}

std::vector<ExtElement> IwahoriMatsumoto::ball(std::size_t L) const {
  std::vector<ExtElement> out{identity()};
  std::set<ExtElement> seen{identity()};
  std::vector<ExtElement> layer = out;
  std::vector<ExtElement> all = gens_;
  all.insert(all.end(), omega_gens_.begin(), omega_gens_.end());
  for (std::size_t d = 0; d < L; ++d) {
    std::vector<ExtElement> next;
    for (const auto &g : layer)
      for (const auto &s : all) {
        ExtElement h = multiply(g, s);
        if (seen.insert(h).second) {
          next.push_back(h);
          out.push_back(h);
        }
      }
    layer = std::move(next);
  }
  return out;
}

IMElement IwahoriMatsumoto::basis(const ExtElement &g) const {
  IMElement e;
  e.add(g, H_.scalar(1));
  return e;
}

IMElement IwahoriMatsumoto::right_multiply_generator(const IMElement &a, std::size_t k) const {
  IMElement out;
  for (const auto &[g, c] : a.terms) {
    ExtElement gs = multiply(g, gens_[k]);
    out.add(gs, c);
    if (length(gs) < length(g)) out.add(g, c * gen_diff_[k]);
  }
  return out;
}

IMElement IwahoriMatsumoto::multiply(const IMElement &a, const IMElement &b) const {
  IMElement out;
  for (const auto &[h, c] : b.terms) {
    auto [word, h0] = reduced_word(h);
    IMElement cur = a.scaled(c);
    for (auto k : word) cur = right_multiply_generator(cur, k);
    IMElement fin;
    for (const auto &[g, x] : cur.terms) fin.add(multiply(g, h0), x);
    out += fin;
  }
  return out;
}

IMElement IwahoriMatsumoto::basis_inverse(const ExtElement &g) const {
  auto [word, g0] = reduced_word(g);
  IMElement cur = basis(inverse(g0));
  for (std::size_t i = word.size(); i-- > 0;) {
    std::size_t k = word[i];
    cur = right_multiply_generator(cur, k) - cur.scaled(gen_diff_[k]);
  }
  return cur;
}

IMElement IwahoriMatsumoto::from_bernstein(const HeckeElement &e, Int extra_shift) const {
  const auto &rs = H_.roots();
  const std::size_t n = H_.rank();
  IMElement out;
  for (const auto &[key, c] : e.terms) {
    Int k = 0;
    for (std::size_t p = 0; p < rs.num_simple(); ++p) {
      Int m = dot(key.x, rs.simple_coroot(p));
      if (m < 0) k = std::max(k, (-m + 1) / 2);
    }
    k += extra_shift;
    Vec xm = vscale(k, two_rho_), xp = vadd(key.x, xm);
    IMElement term = basis({xp, 0, 0});
    if (k != 0) term = multiply(term, basis_inverse({xm, 0, 0}));
    term = multiply(term, basis({Vec(n, 0), key.w, 0}));
    if (key.omega != 0) term = multiply(term, basis({Vec(n, 0), 0, key.omega}));
    out += term.scaled(c);
  }
  return out;
}

HeckeElement IwahoriMatsumoto::generator_image(std::size_t k) const {
  const std::size_t r = num_finite_generators();
  if (k < r) return H_.N_simple(k);
  std::size_t c = k - r;
  return H_.multiply(H_.theta(highest_roots_[c]), H_.N_inverse(theta_reflection_[c]));
}

HeckeElement IwahoriMatsumoto::to_bernstein(const IMElement &e) const {
  const auto &rs = H_.roots();
  HeckeElement out;
  for (const auto &[g, c] : e.terms) {
    auto [word, g0] = reduced_word(g);
    HeckeElement img = H_.one();
    for (auto k : word) img = H_.multiply(img, generator_image(k));
    for (std::size_t p = 0; p < rs.num_simple(); ++p)
      if (dot(g0.x, rs.simple_coroot(p)) < 0)
        throw std::logic_error("length-zero element with non-dominant translation part");
    HeckeElement z = H_.multiply(H_.theta(g0.x), H_.N_inverse(H_.weyl().inverse(g0.w)));
    if (g0.omega != 0) z = H_.multiply(z, H_.omega(g0.omega));
    img = H_.multiply(img, z);
    out += img.scaled(c);
  }
  return out;
}

std::string IwahoriMatsumoto::to_string(const IMElement &e) const {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[g, c] : e.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*T[t" << unihecke::to_string(g.x) << " w" << g.w << " o" << g.omega << "]";
  }
  return os.str();
}

}  // namespace unihecke
