#include "unihecke/hecke.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace unihecke {

namespace {

bool divisible_by_two(const Vec &v) {
  return std::all_of(v.begin(), v.end(), [](Int x) { return x % 2 == 0; });
}

}  // namespace

AffineHeckeDatum equal_parameter_datum(const BasedRootDatum &R) {
  AffineHeckeDatum d;
  d.name = R.name;
  d.R = R;
  auto info = validate_and_classify(R);
  if (!info.ok) throw std::invalid_argument("root datum invalid: " + info.error);
  d.param_of.assign(R.num_simple(), 0);
  for (std::size_t c = 0; c < info.components.size(); ++c)
    for (auto p : info.components[c]) d.param_of[p] = c;
  d.num_params = std::max<std::size_t>(1, info.components.size());
  d.lambda.assign(R.num_simple(), 1);
  d.lambda_star.assign(R.num_simple(), 1);
  d.omega_ext = {identity_mat(R.rank)};
  return d;
}

std::vector<Mat> close_omega(const std::vector<Mat> &gens, std::size_t rank, std::size_t cap) {
  std::vector<Mat> out{identity_mat(rank)};
  std::set<Mat> seen(out.begin(), out.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto &g : gens) {
      Mat m = mat_mul(out[i], g);
      if (seen.insert(m).second) {
        out.push_back(m);
        if (out.size() > cap) throw std::invalid_argument("omega_ext is not finite within the bound");
      }
    }
  return out;
}

void validate_hecke_datum(const AffineHeckeDatum &d) {
  auto info = validate_and_classify(d.R);
  if (!info.ok) throw std::invalid_argument("root datum invalid: " + info.error);
  const std::size_t r = d.R.num_simple();
  if (d.param_of.size() != r || d.lambda.size() != r || d.lambda_star.size() != r)
    throw std::invalid_argument("label tables must have one entry per simple root");
  for (std::size_t p = 0; p < r; ++p) {
    if (d.param_of[p] >= d.num_params) throw std::invalid_argument("parameter index out of range");
    if (d.lambda[p] != d.lambda_star[p] && !divisible_by_two(d.R.coroots[d.R.simple[p]]))
      throw std::invalid_argument("lambda != lambda* at simple root " + std::to_string(p) +
                                  " whose coroot is not in 2X^vee");
  }
  if (!d.trivial_cocycle) throw std::invalid_argument("only the trivial 2-cocycle is supported");
  if (d.omega_ext.empty() || !is_identity(d.omega_ext.front()))
    throw std::invalid_argument("omega_ext must list the identity first");
  RootSystem rs(d.R);
  // conjugate simple roots carry equal labels
  WeylGroup W(rs);
  for (std::size_t p = 0; p < r; ++p)
    for (std::size_t q = p + 1; q < r; ++q) {
      bool conj = false;
      for (const auto &e : W.elements())
        if (e.perm[d.R.simple[p]] == d.R.simple[q]) {
          conj = true;
          break;
        }
      if (conj && (d.lambda[p] != d.lambda[q] || d.lambda_star[p] != d.lambda_star[q] || d.param_of[p] != d.param_of[q]))
        throw std::invalid_argument("W-conjugate simple roots " + std::to_string(p) + " and " + std::to_string(q) +
                                    " carry different labels");
    }
  std::set<Mat> group(d.omega_ext.begin(), d.omega_ext.end());
  for (const auto &m : d.omega_ext) {
    auto inv = integral_inverse(m);
    if (!inv) throw std::invalid_argument("omega_ext element is not an automorphism of X");
    Mat co = transpose(*inv, d.R.rank);
    for (const auto &m2 : d.omega_ext)
      if (!group.count(mat_mul(m, m2))) throw std::invalid_argument("omega_ext is not closed under products");
    for (std::size_t p = 0; p < r; ++p) {
      Vec img = mat_vec(m, d.R.roots[d.R.simple[p]]);
      long q = -1;
      for (std::size_t k = 0; k < r; ++k)
        if (d.R.roots[d.R.simple[k]] == img) q = static_cast<long>(k);
      if (q < 0) throw std::invalid_argument("omega_ext element does not preserve the simple roots");
      if (mat_vec(co, d.R.coroots[d.R.simple[p]]) != d.R.coroots[d.R.simple[q]])
        throw std::invalid_argument("omega_ext element does not preserve the simple coroots");
      auto qq = static_cast<std::size_t>(q);
      if (d.lambda[p] != d.lambda[qq] || d.lambda_star[p] != d.lambda_star[qq])
        throw std::invalid_argument("omega_ext element does not preserve the labels");
    }
  }
}

// ---------------------------------------------------------------------------

void HeckeElement::add(const HeckeKey &k, const Laurent &c) {
  if (c.is_zero()) return;
  auto it = terms.find(k);
  if (it == terms.end()) {
    terms.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

HeckeElement &HeckeElement::operator+=(const HeckeElement &o) {
  for (const auto &[k, c] : o.terms) add(k, c);
  return *this;
}

HeckeElement &HeckeElement::operator-=(const HeckeElement &o) {
  for (const auto &[k, c] : o.terms) add(k, -c);
  return *this;
}

HeckeElement HeckeElement::operator+(const HeckeElement &o) const {
  HeckeElement r = *this;
  r += o;
  return r;
}

HeckeElement HeckeElement::operator-(const HeckeElement &o) const {
  HeckeElement r = *this;
  r -= o;
  return r;
}

HeckeElement HeckeElement::scaled(const Laurent &c) const {
  HeckeElement r;
  for (const auto &[k, x] : terms) r.add(k, x * c);
  return r;
}

// ---------------------------------------------------------------------------

HeckeAlgebra::HeckeAlgebra(AffineHeckeDatum d, std::size_t weyl_cap) : d_(std::move(d)) {
  validate_hecke_datum(d_);
  rs_ = std::make_shared<RootSystem>(d_.R);
  weyl_ = std::make_shared<WeylGroup>(*rs_, weyl_cap);
  simple_root_of_ = d_.R.simple;
  const std::size_t no = d_.omega_ext.size();
  std::map<Mat, std::size_t> idx;
  for (std::size_t i = 0; i < no; ++i) idx[d_.omega_ext[i]] = i;
  om_mul_.assign(no, std::vector<std::size_t>(no));
  om_inv_.assign(no, 0);
  om_conj_.assign(no, std::vector<std::size_t>(weyl_->size()));
  for (std::size_t a = 0; a < no; ++a) {
    for (std::size_t b = 0; b < no; ++b) {
      om_mul_[a][b] = idx.at(mat_mul(d_.omega_ext[a], d_.omega_ext[b]));
      if (om_mul_[a][b] == 0) om_inv_[a] = b;
    }
    Mat inv = *integral_inverse(d_.omega_ext[a]);
    for (std::size_t w = 0; w < weyl_->size(); ++w) {
      long c = weyl_->find(mat_mul(mat_mul(d_.omega_ext[a], (*weyl_)[w].matrix), inv));
      if (c < 0) throw std::invalid_argument("omega_ext does not normalise W(R)");
      om_conj_[a][w] = static_cast<std::size_t>(c);
    }
  }
}

Vec HeckeAlgebra::omega_act(std::size_t o, const Vec &x) const {
  if (o == 0) return x;
  return mat_vec(d_.omega_ext[o], x);
}

Laurent HeckeAlgebra::label_difference(std::size_t p, bool star) const {
  Int l = star ? d_.lambda_star[p] : d_.lambda[p];
  return Laurent::quantum_difference(nvars(), d_.param_of[p], l);
}

HeckeElement HeckeAlgebra::one() const { return basis({Vec(rank(), 0), 0, 0}); }
HeckeElement HeckeAlgebra::theta(const Vec &x) const { return basis({x, 0, 0}); }
HeckeElement HeckeAlgebra::N(std::size_t w) const { return basis({Vec(rank(), 0), w, 0}); }
HeckeElement HeckeAlgebra::omega(std::size_t o) const { return basis({Vec(rank(), 0), 0, o}); }

HeckeElement HeckeAlgebra::basis(const HeckeKey &k) const {
  if (k.x.size() != rank()) throw std::invalid_argument("lattice vector of the wrong rank");
  HeckeElement e;
  e.add(k, scalar(1));
  return e;
}

HeckeElement HeckeAlgebra::N_inverse(std::size_t w) const {
  const auto &word = (*weyl_)[w].word;
  HeckeElement r = one();
  for (std::size_t i = 0; i < word.size(); ++i) {
    std::size_t p = word[i];
    HeckeElement inv = N_simple(p) - one().scaled(label_difference(p, false));
    r = multiply(inv, r);
  }
  return r;
}

HeckeElement HeckeAlgebra::simple_theta(std::size_t p, const Vec &z) const {
  const Vec &a = d_.R.roots[simple_root_of_[p]];
  const Vec &ac = d_.R.coroots[simple_root_of_[p]];
  Vec y = vsub(z, vscale(dot(z, ac), a));
  Int k = dot(y, ac);
  HeckeElement out;
  out.add({y, weyl_->simple(p), 0}, scalar(1));
  if (k == 0) return out;
  Laurent la = label_difference(p, false), lb = label_difference(p, true);
  std::map<Int, Laurent> num;
  num[0] += la;
  num[1] += lb;
  num[k] -= la;
  num[k + 1] -= lb;
  for (auto it = num.begin(); it != num.end();) it = it->second.is_zero() ? num.erase(it) : std::next(it);
  if (num.empty()) return out;
  Int lo = num.begin()->first, hi = num.rbegin()->first;
  std::map<Int, Laurent> q;
  auto get = [&](const std::map<Int, Laurent> &m, Int e) { auto it = m.find(e); return it == m.end() ? Laurent(nvars()) : it->second; };
  for (Int e = lo; e <= hi; ++e) {
    Laurent r = get(num, e) + get(q, e - 2);
    if (e <= hi - 2) {
      if (!r.is_zero()) q[e] = r;
    } else if (!r.is_zero()) {
      throw BlzDivisionError("BLZ division is not exact at x = " + unihecke::to_string(z) + ", simple root " +
                             std::to_string(p));
    }
  }
  for (const auto &[e, c] : q) out.add({vsub(y, vscale(e, a)), 0, 0}, -c);
  return out;
}

const HeckeElement &HeckeAlgebra::n_n(std::size_t v, std::size_t u) const {
  auto key = std::make_pair(v, u);
  {
    std::shared_lock lk(memo_mutex_);
    auto it = n_n_memo_.find(key);
    if (it != n_n_memo_.end()) return it->second;
  }
  HeckeElement res;
  if (v == 0) {
    res = N(u);
  } else {
    std::size_t p = (*weyl_)[v].word.front();
    std::size_t rest = weyl_->left_simple(p, v);
    const HeckeElement &inner = n_n(rest, u);
    for (const auto &[k, c] : inner.terms) {
      std::size_t sk = weyl_->left_simple(p, k.w);
      res.add({k.x, sk, 0}, c);
      if ((*weyl_)[sk].length() < (*weyl_)[k.w].length()) res.add(k, c * label_difference(p, false));
    }
  }
  std::unique_lock lk(memo_mutex_);
  return n_n_memo_.emplace(key, std::move(res)).first->second;
}

const HeckeElement &HeckeAlgebra::n_theta(std::size_t w, const Vec &y) const {
  auto key = std::make_pair(w, y);
  {
    std::shared_lock lk(memo_mutex_);
    auto it = n_theta_memo_.find(key);
    if (it != n_theta_memo_.end()) return it->second;
  }
  HeckeElement res;
  if (w == 0) {
    res = theta(y);
  } else {
    std::size_t p = (*weyl_)[w].word.front();
    std::size_t rest = weyl_->left_simple(p, w);
    const HeckeElement inner = n_theta(rest, y);
    for (const auto &[k, c] : inner.terms) {
      HeckeElement st = simple_theta(p, k.x);
      for (const auto &[k2, c2] : st.terms) {
        const HeckeElement &nn = n_n(k2.w, k.w);
        for (const auto &[k3, c3] : nn.terms) res.add({k2.x, k3.w, 0}, c * c2 * c3);
      }
    }
  }
  std::unique_lock lk(memo_mutex_);
  return n_theta_memo_.emplace(key, std::move(res)).first->second;
}

HeckeElement HeckeAlgebra::multiply(const HeckeElement &a, const HeckeElement &b) const {
  // Stage 1: theta_{x1} N_{w1} theta_{y} with y = omega1(x2), recorded with the
  // remaining N_{w2'} and omega.  Stage 2 expands N_{w1} theta_y, stage 3 N_v N_{w2'}.
  // Coefficients are aggregated between stages.
  struct Mid {
    Vec x;
    std::size_t v, w2, om;
    bool operator==(const Mid &) const = default;
  };
  struct MidHash {
    std::size_t operator()(const Mid &m) const noexcept {
      std::size_t h = VecHash{}(m.x);
      for (std::size_t t : {m.v, m.w2, m.om}) h ^= t + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return h;
    }
  };
  auto accumulate = [](auto &map, auto &&key, const Laurent &c) {
    auto [it, fresh] = map.try_emplace(std::forward<decltype(key)>(key));
    if (fresh) it->second = c;
    else it->second += c;
  };
  std::unordered_map<Mid, Laurent, MidHash> first, second;
  for (const auto &[k1, c1] : a.terms)
    for (const auto &[k2, c2] : b.terms) {
      // v holds w1 and x holds (x1, y) concatenated.
      Vec xy = k1.x;
      Vec y = omega_act(k1.omega, k2.x);
      xy.insert(xy.end(), y.begin(), y.end());
      accumulate(first, Mid{std::move(xy), k1.w, om_conj_[k1.omega][k2.w], om_mul_[k1.omega][k2.omega]}, c1 * c2);
    }
  const std::size_t r = rank();
  for (const auto &[m, c] : first) {
    if (c.is_zero()) continue;
    Vec x1(m.x.begin(), m.x.begin() + static_cast<std::ptrdiff_t>(r));
    Vec y(m.x.begin() + static_cast<std::ptrdiff_t>(r), m.x.end());
    const HeckeElement &nt = n_theta(m.v, y);
    for (const auto &[kz, cz] : nt.terms) accumulate(second, Mid{vadd(x1, kz.x), kz.w, m.w2, m.om}, c * cz);
  }
  std::unordered_map<HeckeKey, Laurent, HeckeKeyHash> acc;
  for (const auto &[m, c] : second) {
    if (c.is_zero()) continue;
    const HeckeElement &nn = n_n(m.v, m.w2);
    for (const auto &[kn, cn] : nn.terms) accumulate(acc, HeckeKey{m.x, kn.w, m.om}, c * cn);
  }
  HeckeElement out;
  for (auto &[k, c] : acc)
    if (!c.is_zero()) out.terms.emplace(k, std::move(c));
  return out;
}

HeckeElement HeckeAlgebra::commutator(const HeckeElement &a, const HeckeElement &b) const {
  return multiply(a, b) - multiply(b, a);
}

HeckeAlgebra::CentralResult HeckeAlgebra::central_test(const HeckeElement &e) const {
  std::vector<std::pair<std::string, HeckeElement>> gens;
  for (std::size_t p = 0; p < d_.R.num_simple(); ++p) gens.push_back({"N(" + std::to_string(p) + ")", N_simple(p)});
  for (std::size_t i = 0; i < rank(); ++i) {
    Vec x(rank(), 0);
    x[i] = 1;
    gens.push_back({"theta" + unihecke::to_string(x), theta(x)});
    gens.push_back({"theta" + unihecke::to_string(vneg(x)), theta(vneg(x))});
  }
  for (std::size_t o = 1; o < omega_order(); ++o) gens.push_back({"w<" + std::to_string(o) + ">", omega(o)});
  for (const auto &[name, g] : gens)
    if (!commutator(e, g).is_zero()) return {false, name};
  return {};
}

std::vector<Vec> HeckeAlgebra::orbit(const Vec &x) const {
  std::vector<Vec> out{x};
  std::set<Vec> seen{x};
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<Vec> next;
    for (std::size_t p = 0; p < d_.R.num_simple(); ++p) {
      const Vec &a = d_.R.roots[simple_root_of_[p]];
      next.push_back(vsub(out[i], vscale(dot(out[i], d_.R.coroots[simple_root_of_[p]]), a)));
    }
    for (std::size_t o = 1; o < omega_order(); ++o) next.push_back(omega_act(o, out[i]));
    for (auto &y : next)
      if (seen.insert(y).second) out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

HeckeElement HeckeAlgebra::orbit_symmetrize(const Vec &x) const {
  HeckeElement e;
  for (const auto &y : orbit(x)) e += theta(y);
  return e;
}

std::map<HeckeKey, Int> HeckeAlgebra::at_one(const HeckeElement &e) const {
  std::map<HeckeKey, Int> out;
  for (const auto &[k, c] : e.terms) {
    Int v = c.at_one();
    if (v != 0) out[k] = v;
  }
  return out;
}

HeckeKey HeckeAlgebra::group_product(const HeckeKey &a, const HeckeKey &b) const {
  Vec y = mat_vec((*weyl_)[a.w].matrix, omega_act(a.omega, b.x));
  return {vadd(a.x, y), weyl_->multiply(a.w, om_conj_[a.omega][b.w]), om_mul_[a.omega][b.omega]};
}

HeckeElement HeckeAlgebra::random_element(std::mt19937_64 &rng, std::size_t support, Int xrange, Int crange) const {
  std::uniform_int_distribution<Int> xd(-xrange, xrange), cd(1, crange), sign(0, 1), ed(-1, 1);
  std::uniform_int_distribution<std::size_t> wd(0, weyl_->size() - 1), od(0, omega_order() - 1),
      vd(0, nvars() - 1);
  HeckeElement e;
  for (std::size_t i = 0; i < support; ++i) {
    Vec x(rank());
    for (auto &v : x) v = xd(rng);
    Int c = cd(rng) * (sign(rng) ? 1 : -1);
    e.add({x, wd(rng), od(rng)}, Laurent::monomial(nvars(), vd(rng), ed(rng), c));
  }
  return e;
}

std::string HeckeAlgebra::to_string(const HeckeElement &e) const {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[k, c] : e.terms) {
    std::vector<std::string> f;
    std::string cs = c.to_string();
    bool unit = cs == "1";
    bool neg_unit = cs == "-1";
    if (!unit && !neg_unit) f.push_back("(" + cs + ")");
    if (!unihecke::is_zero(k.x)) {
      std::string s = "theta(";
      for (std::size_t i = 0; i < k.x.size(); ++i) s += (i ? "," : "") + std::to_string(k.x[i]);
      f.push_back(s + ")");
    }
    if (k.w != 0) {
      std::string s = "N(";
      const auto &word = (*weyl_)[k.w].word;
      for (std::size_t i = 0; i < word.size(); ++i) s += (i ? "," : "") + std::to_string(word[i]);
      f.push_back(s + ")");
    }
    if (k.omega != 0) f.push_back("w<" + std::to_string(k.omega) + ">");
    if (f.empty()) f.push_back("1");
    std::string term;
    for (std::size_t i = 0; i < f.size(); ++i) term += (i ? "*" : "") + f[i];
    if (first) os << (neg_unit ? "-" : "") << term;
    else os << (neg_unit ? " - " : " + ") << term;
    first = false;
  }
  return os.str();
}

namespace {

class Parser {
public:
  Parser(const HeckeAlgebra &H, const std::string &s) : H_(H), s_(s) {}

  HeckeElement run() {
    HeckeElement e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string &what) {
    throw std::invalid_argument("cannot parse Hecke element at position " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eat_word(const std::string &w) {
    skip();
    if (s_.compare(pos_, w.size(), w) == 0) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  Int integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start])))) fail("expected integer");
    return std::stoll(s_.substr(start, pos_ - start));
  }
  std::vector<Int> int_list(char close) {
    std::vector<Int> v;
    skip();
    if (eat(close)) return v;
    do v.push_back(integer());
    while (eat(','));
    if (!eat(close)) fail(std::string("expected '") + close + "'");
    return v;
  }
  HeckeElement expr() {
    bool neg = eat('-');
    HeckeElement e = term();
    if (neg) e = e.scaled(H_.scalar(-1));
    while (true) {
      if (eat('+')) e += term();
      else if (eat('-')) e -= term();
      else break;
    }
    return e;
  }
  HeckeElement term() {
    HeckeElement e = factor();
    while (eat('*')) e = H_.multiply(e, factor());
    return e;
  }
  HeckeElement factor() {
    skip();
    if (eat('(')) {
      HeckeElement e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (eat_word("theta(")) {
      Vec x = int_list(')');
      if (x.size() != H_.rank()) fail("theta needs " + std::to_string(H_.rank()) + " coordinates");
      return H_.theta(x);
    }
    if (eat_word("N(") || eat_word("N[")) {
      char close = s_[pos_ - 1] == '(' ? ')' : ']';
      HeckeElement e = H_.one();
      for (Int p : int_list(close)) {
        if (p < 0 || static_cast<std::size_t>(p) >= H_.datum().R.num_simple()) fail("simple position out of range");
        e = H_.multiply(e, H_.N_simple(static_cast<std::size_t>(p)));
      }
      return e;
    }
    if (eat_word("w<")) {
      Int o = integer();
      if (!eat('>')) fail("expected '>'");
      if (o < 0 || static_cast<std::size_t>(o) >= H_.omega_order()) fail("omega index out of range");
      return H_.omega(static_cast<std::size_t>(o));
    }
    if (eat('v')) {
      std::size_t var = 0;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) var = static_cast<std::size_t>(integer());
      Int k = 1;
      if (eat('^')) {
        if (eat('(')) {
          k = integer();
          if (!eat(')')) fail("expected ')'");
        } else {
          k = integer();
        }
      }
      if (var >= H_.nvars()) fail("parameter index out of range");
      return H_.one().scaled(Laurent::monomial(H_.nvars(), var, k));
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      return H_.one().scaled(H_.scalar(integer()));
    fail("expected a factor");
  }

  const HeckeAlgebra &H_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

HeckeElement HeckeAlgebra::parse(const std::string &s) const { return Parser(*this, s).run(); }

// ---------------------------------------------------------------------------

Int LatticeCharacter::exponent(const Vec &x) const {
  Int e = dot(c, x) % n;
  return e < 0 ? e + n : e;
}

LatticeCharacter LatticeCharacter::operator*(const LatticeCharacter &o) const {
  Int m = std::lcm(n, o.n);
  return {vadd(vscale(m / n, c), vscale(m / o.n, o.c)), m};
}

std::vector<Int> cyclotomic_polynomial(Int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic index must be positive");
  // x^n - 1 divided by Phi_d for proper divisors d
  std::vector<Int> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (Int d = 1; d < n; ++d) {
    if (n % d) continue;
    auto q = cyclotomic_polynomial(d);
    // exact division p / q, both monic
    std::vector<Int> out(p.size() - q.size() + 1, 0);
    std::vector<Int> r = p;
    for (std::size_t i = out.size(); i-- > 0;) {
      Int c = r[i + q.size() - 1];
      out[i] = c;
      for (std::size_t j = 0; j < q.size(); ++j) r[i + j] = sub_checked(r[i + j], mul_checked(c, q[j]));
    }
    p = out;
  }
  return p;
}

GradedHeckeElement normalize(GradedHeckeElement e) {
  auto phi = cyclotomic_polynomial(e.n);
  const Int deg = static_cast<Int>(phi.size()) - 1;
  std::map<Int, HeckeElement> parts;
  for (auto &[k, h] : e.parts) {
    Int kk = ((k % e.n) + e.n) % e.n;
    parts[kk] += h;
  }
  for (Int k = e.n - 1; k >= deg; --k) {
    auto it = parts.find(k);
    if (it == parts.end() || it->second.is_zero()) continue;
    HeckeElement top = it->second;
    parts.erase(it);
    for (Int i = 0; i < deg; ++i) {
      if (phi[static_cast<std::size_t>(i)] == 0) continue;
      HeckeElement t;
      for (const auto &[key, c] : top.terms) t.add(key, c.scaled(-phi[static_cast<std::size_t>(i)]));
      parts[k - deg + i] += t;
    }
  }
  GradedHeckeElement out;
  out.n = e.n;
  for (auto &[k, h] : parts)
    if (!h.is_zero()) out.parts.emplace(k, std::move(h));
  return out;
}

GradedHeckeElement graded_multiply(const HeckeAlgebra &H, const GradedHeckeElement &a, const GradedHeckeElement &b) {
  GradedHeckeElement out;
  out.n = a.n;
  for (const auto &[k, x] : a.parts)
    for (const auto &[l, y] : b.parts) out.parts[(k + l) % a.n] += H.multiply(x, y);
  return normalize(out);
}

GradedHeckeElement apply_twist(const LatticeCharacter &z, const HeckeElement &e) {
  GradedHeckeElement g;
  g.n = z.n;
  for (const auto &[k, c] : e.terms) g.parts[z.exponent(k.x)].add(k, c);
  return normalize(g);
}

AffineHeckeDatum twist_target(const AffineHeckeDatum &d, const LatticeCharacter &z) {
  if (z.c.size() != d.R.rank) throw std::invalid_argument("character of the wrong rank");
  AffineHeckeDatum t = d;
  t.name = d.name + "^z";
  for (std::size_t p = 0; p < d.R.num_simple(); ++p) {
    Int e = z.exponent(d.R.roots[d.R.simple[p]]);
    if (e == 0) continue;
    if (2 * e != z.n)
      throw std::invalid_argument("character is not +-1 on simple root " + std::to_string(p));
    if (!divisible_by_two(d.R.coroots[d.R.simple[p]]))
      throw std::invalid_argument("character is -1 on simple root " + std::to_string(p) +
                                  " whose coroot is not in 2X^vee");
    t.lambda_star[p] = -t.lambda_star[p];
  }
  for (const auto &m : d.omega_ext)
    for (std::size_t i = 0; i < d.R.rank; ++i) {
      Vec e(d.R.rank, 0);
      e[i] = 1;
      if (z.exponent(mat_vec(m, e)) != z.exponent(e))
        throw std::invalid_argument("character is not invariant under omega_ext");
    }
  validate_hecke_datum(t);
  return t;
}

TwistReport twist_by_character(const HeckeAlgebra &H, const LatticeCharacter &z,
                               const std::vector<HeckeElement> &samples) {
  TwistReport rep;
  rep.target = twist_target(H.datum(), z);
  HeckeAlgebra T(rep.target);
  for (const auto &a : samples)
    for (const auto &b : samples) {
      ++rep.samples;
      auto lhs = apply_twist(z, H.multiply(a, b));
      auto rhs = graded_multiply(T, apply_twist(z, a), apply_twist(z, b));
      if (!(lhs == rhs)) {
        rep.multiplicative = false;
        rep.witness = "twist(a*b) != twist(a)*twist(b) for a = " + H.to_string(a) + ", b = " + H.to_string(b);
        return rep;
      }
    }
  return rep;
}

std::vector<HeckeElement> small_basis(const HeckeAlgebra &H, Int xrange, std::size_t max_len) {
  std::vector<HeckeElement> out;
  const std::size_t r = H.rank();
  Vec x(r, -xrange);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == r) {
      for (std::size_t w = 0; w < H.weyl().size(); ++w) {
        if (H.weyl()[w].length() > max_len) continue;
        for (std::size_t o = 0; o < H.omega_order(); ++o) out.push_back(H.basis({x, w, o}));
      }
      return;
    }
    for (Int v = -xrange; v <= xrange; ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace unihecke
