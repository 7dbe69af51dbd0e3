#include "unihecke/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace unihecke {

namespace {

constexpr unsigned field_bits = 16;
constexpr Int bias = Int(1) << (field_bits - 1);
constexpr std::uint64_t field_mask = (std::uint64_t(1) << field_bits) - 1;

// Keys order lexicographically from the last variable; only consistency matters.

}  // namespace

Laurent::Key Laurent::pack(const Exponent &e) const {
  if (e.size() != nvars_) throw std::invalid_argument("Laurent exponent of the wrong length");
  Key k = 0;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] <= -bias || e[j] >= bias) throw std::overflow_error("Laurent exponent out of range");
    k |= static_cast<Key>(e[j] + bias) << (field_bits * j);
  }
  return k;
}

Laurent::Exponent Laurent::unpack(Key k) const {
  Exponent e(nvars_);
  for (std::size_t j = 0; j < nvars_; ++j) e[j] = static_cast<Int>((k >> (field_bits * j)) & field_mask) - bias;
  return e;
}

Laurent::Key Laurent::add_keys(Key a, Key b) const {
  Key k = 0;
  for (std::size_t j = 0; j < nvars_; ++j) {
    Int e = static_cast<Int>((a >> (field_bits * j)) & field_mask) + static_cast<Int>((b >> (field_bits * j)) & field_mask) -
            2 * bias;
    if (e <= -bias || e >= bias) throw std::overflow_error("Laurent exponent out of range");
    k |= static_cast<Key>(e + bias) << (field_bits * j);
  }
  return k;
}

Laurent::Laurent(std::size_t nvars, Int constant) : nvars_(nvars) {
  if (nvars > max_vars) throw std::invalid_argument("at most 4 formal parameters are supported");
  if (constant != 0) terms_.push_back({pack(Exponent(nvars, 0)), constant});
}

Laurent Laurent::monomial(std::size_t nvars, std::size_t var, Int exponent, Int coeff) {
  if (var >= nvars) throw std::out_of_range("Laurent variable index out of range");
  Laurent l(nvars);
  Exponent e(nvars, 0);
  e[var] = exponent;
  l.add_term(e, coeff);
  return l;
}

Laurent Laurent::quantum_difference(std::size_t nvars, std::size_t var, Int k) {
  return monomial(nvars, var, k) - monomial(nvars, var, -k);
}

std::map<Laurent::Exponent, Int> Laurent::terms() const {
  std::map<Exponent, Int> m;
  for (const auto &[k, c] : terms_) m.emplace(unpack(k), c);
  return m;
}

void Laurent::add_term(const Exponent &e, Int c) {
  if (c == 0) return;
  Key k = pack(e);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const auto &t, Key x) { return t.first < x; });
  if (it != terms_.end() && it->first == k) {
    it->second = add_checked(it->second, c);
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {k, c});
  }
}

void Laurent::merge(const Laurent &o, Int sign) {
  if (o.terms_.empty()) return;
  if (terms_.empty() && nvars_ == 0) nvars_ = o.nvars_;
  if (o.nvars_ != nvars_) throw std::invalid_argument("Laurent polynomials in different numbers of variables");
  std::vector<std::pair<Key, Int>> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.cbegin();
  auto b = o.terms_.cbegin();
  while (a != terms_.cend() || b != o.terms_.cend()) {
    if (b == o.terms_.cend() || (a != terms_.cend() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == terms_.cend() || b->first < a->first) {
      out.push_back({b->first, sign > 0 ? b->second : sub_checked(0, b->second)});
      ++b;
    } else {
      Int c = sign > 0 ? add_checked(a->second, b->second) : sub_checked(a->second, b->second);
      if (c != 0) out.push_back({a->first, c});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

Laurent &Laurent::operator+=(const Laurent &o) {
  merge(o, 1);
  return *this;
}

Laurent &Laurent::operator-=(const Laurent &o) {
  merge(o, -1);
  return *this;
}

Laurent Laurent::operator+(const Laurent &o) const {
  Laurent r = *this;
  r += o;
  return r;
}

Laurent Laurent::operator-(const Laurent &o) const {
  Laurent r = *this;
  r -= o;
  return r;
}

Laurent Laurent::operator-() const { return scaled(-1); }

Laurent Laurent::operator*(const Laurent &o) const {
  Laurent r(std::max(nvars_, o.nvars_));
  if (terms_.empty() || o.terms_.empty()) return r;
  if (nvars_ != o.nvars_) throw std::invalid_argument("Laurent polynomials in different numbers of variables");
  if (terms_.size() == 1 && o.terms_.size() == 1) {
    r.terms_.push_back({add_keys(terms_[0].first, o.terms_[0].first), mul_checked(terms_[0].second, o.terms_[0].second)});
    return r;
  }
  std::vector<std::pair<Key, Int>> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto &[k1, c1] : terms_)
    for (const auto &[k2, c2] : o.terms_) acc.push_back({add_keys(k1, k2), mul_checked(c1, c2)});
  std::sort(acc.begin(), acc.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
  for (const auto &t : acc) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first) r.terms_.back().second = add_checked(r.terms_.back().second, t.second);
    else r.terms_.push_back(t);
  }
  r.terms_.erase(std::remove_if(r.terms_.begin(), r.terms_.end(), [](const auto &t) { return t.second == 0; }),
                 r.terms_.end());
  return r;
}

Laurent Laurent::scaled(Int k) const {
  Laurent r(nvars_);
  if (k == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto &[e, c] : terms_) r.terms_.push_back({e, mul_checked(c, k)});
  return r;
}

Laurent Laurent::bar() const {
  Laurent r(nvars_);
  for (const auto &[k, c] : terms_) r.add_term(vneg(unpack(k)), c);
  return r;
}

Int Laurent::at_one() const {
  Int s = 0;
  for (const auto &[e, c] : terms_) s = add_checked(s, c);
  return s;
}

std::map<Int, Int> Laurent::specialize(const std::vector<Int> &k) const {
  std::map<Int, Int> out;
  for (const auto &[key, c] : terms_) {
    Int d = dot(unpack(key), k);
    out[d] = add_checked(out[d], c);
    if (out[d] == 0) out.erase(d);
  }
  return out;
}

Laurent Laurent::rename(const std::vector<std::size_t> &target, std::size_t nvars) const {
  if (target.size() != nvars_) throw std::invalid_argument("variable map of the wrong length");
  Laurent r(nvars);
  for (const auto &[k, c] : terms_) {
    Exponent e = unpack(k), f(nvars, 0);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (target[j] >= nvars) throw std::out_of_range("variable map target out of range");
      f[target[j]] = add_checked(f[target[j]], e[j]);
    }
    r.add_term(f, c);
  }
  return r;
}

std::string Laurent::to_string() const {
  if (terms_.empty()) return "0";
  auto m = terms();
  std::ostringstream os;
  bool first = true;
  for (auto it = m.rbegin(); it != m.rend(); ++it) {
    const auto &[e, c] = *it;
    bool constant = unihecke::is_zero(e);
    Int a = c < 0 ? -c : c;
    if (first) os << (c < 0 ? "-" : "");
    else os << (c < 0 ? " - " : " + ");
    first = false;
    if (a != 1 || constant) os << a;
    bool need_mul = a != 1 && !constant;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (need_mul) os << "*";
      need_mul = true;
      os << "v" << (nvars_ > 1 ? std::to_string(j) : "");
      if (e[j] != 1) os << "^" << (e[j] < 0 ? "(" + std::to_string(e[j]) + ")" : std::to_string(e[j]));
    }
  }
  return os.str();
}

}  // namespace unihecke
