#pragma once
// Affine Hecke algebras in the Bernstein presentation: basis theta_x N_w omega
// with normalized N_s, (N_s - v^l)(N_s + v^{-l}) = 0, and the
// Bernstein-Lusztig-Zelevinsky cross relation
//   f N_s - N_s (s f) = ((v^l - v^-l) + theta_{-a}(v^l* - v^-l*)) (f - s f)/(1 - theta_{-2a}).

#include "unihecke/laurent.hpp"
#include "unihecke/root_datum.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <unordered_map>
#include <string>
#include <vector>

namespace unihecke {

struct AffineHeckeDatum {
  std::string name;
  BasedRootDatum R;                    // X = Z^rank, R in X, coroots in X^vee
  std::size_t num_params = 1;          // formal parameters v_0..v_{n-1}
  std::vector<std::size_t> param_of;   // per simple position
  std::vector<Int> lambda, lambda_star;  // per simple position
  std::vector<Mat> omega_ext;          // finite group acting on X preserving Delta_R; identity first
  bool trivial_cocycle = true;
};

// Equal parameters 1, one formal parameter per irreducible component, trivial omega_ext.
AffineHeckeDatum equal_parameter_datum(const BasedRootDatum &R);
// Throws std::invalid_argument with the violated condition.
void validate_hecke_datum(const AffineHeckeDatum &d);
// Closure of the generators; identity first.
std::vector<Mat> close_omega(const std::vector<Mat> &gens, std::size_t rank, std::size_t cap = 1000);

struct HeckeKey {
  Vec x;
  std::size_t w = 0;
  std::size_t omega = 0;
  auto operator<=>(const HeckeKey &) const = default;
};

struct VecHash {
  std::size_t operator()(const Vec &v) const noexcept {
    std::size_t h = v.size();
    for (Int a : v) h ^= std::hash<Int>{}(a) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct HeckeKeyHash {
  std::size_t operator()(const HeckeKey &k) const noexcept {
    std::size_t h = VecHash{}(k.x);
    h ^= k.w * 0x100000001b3ULL + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= k.omega + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct MemoKeyHash {
  std::size_t operator()(const std::pair<std::size_t, Vec> &k) const noexcept {
    return VecHash{}(k.second) * 31 + k.first;
  }
};

struct PairHash {
  std::size_t operator()(const std::pair<std::size_t, std::size_t> &k) const noexcept {
    return k.first * 0x9e3779b97f4a7c15ULL ^ k.second;
  }
};

class HeckeElement {
public:
  std::map<HeckeKey, Laurent> terms;

  void add(const HeckeKey &k, const Laurent &c);
  HeckeElement &operator+=(const HeckeElement &o);
  HeckeElement &operator-=(const HeckeElement &o);
  HeckeElement operator+(const HeckeElement &o) const;
  HeckeElement operator-(const HeckeElement &o) const;
  HeckeElement scaled(const Laurent &c) const;
  bool is_zero() const { return terms.empty(); }
  bool operator==(const HeckeElement &o) const { return terms == o.terms; }
  std::size_t size() const { return terms.size(); }
};

class BlzDivisionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class HeckeAlgebra {
public:
  explicit HeckeAlgebra(AffineHeckeDatum d, std::size_t weyl_cap = 50000);

  const AffineHeckeDatum &datum() const { return d_; }
  const RootSystem &roots() const { return *rs_; }
  const WeylGroup &weyl() const { return *weyl_; }
  std::size_t rank() const { return d_.R.rank; }
  std::size_t nvars() const { return d_.num_params; }

  std::size_t omega_order() const { return d_.omega_ext.size(); }
  std::size_t omega_multiply(std::size_t a, std::size_t b) const { return om_mul_[a][b]; }
  std::size_t omega_inverse(std::size_t a) const { return om_inv_[a]; }
  Vec omega_act(std::size_t o, const Vec &x) const;
  std::size_t omega_conjugate(std::size_t o, std::size_t w) const { return om_conj_[o][w]; }
  // v_j^{l} - v_j^{-l} for the label l (lambda or lambda*) of simple position p.
  Laurent label_difference(std::size_t p, bool star) const;
  Laurent scalar(Int c) const { return Laurent(nvars(), c); }

  HeckeElement one() const;
  HeckeElement theta(const Vec &x) const;
  HeckeElement N(std::size_t w) const;
  HeckeElement N_simple(std::size_t p) const { return N(weyl_->simple(p)); }
  HeckeElement omega(std::size_t o) const;
  HeckeElement basis(const HeckeKey &k) const;
  HeckeElement N_inverse(std::size_t w) const;

  HeckeElement multiply(const HeckeElement &a, const HeckeElement &b) const;
  HeckeElement commutator(const HeckeElement &a, const HeckeElement &b) const;

  struct CentralResult {
    bool central = true;
    std::string witness;
  };
  CentralResult central_test(const HeckeElement &e) const;
  // Sum of theta_y over the orbit of x under W(R) and omega_ext.
  HeckeElement orbit_symmetrize(const Vec &x) const;
  std::vector<Vec> orbit(const Vec &x) const;

  // Structure at v = 1: basis key -> integer coefficient.
  std::map<HeckeKey, Int> at_one(const HeckeElement &e) const;
  // Product in the extended Weyl group X x| W(R) x| omega_ext.
  HeckeKey group_product(const HeckeKey &a, const HeckeKey &b) const;

  HeckeElement random_element(std::mt19937_64 &rng, std::size_t support, Int xrange, Int crange) const;

  std::string to_string(const HeckeElement &e) const;
  // Grammar: sum of terms; a term is a product of factors separated by '*':
  // integer, v, v^k, vj^k, theta(x1,...), N(p1,p2,...) (word in simple positions),
  // w<k> (omega_ext element k).
  HeckeElement parse(const std::string &s) const;

private:
  // N_w theta_y as sum of theta_z N_u.
  const HeckeElement &n_theta(std::size_t w, const Vec &y) const;
  // N_v N_u as a combination of N's.
  const HeckeElement &n_n(std::size_t v, std::size_t u) const;
  // N_s theta_z for simple position p.
  HeckeElement simple_theta(std::size_t p, const Vec &z) const;

  AffineHeckeDatum d_;
  std::shared_ptr<RootSystem> rs_;
  std::shared_ptr<WeylGroup> weyl_;
  std::vector<std::vector<std::size_t>> om_mul_, om_conj_;
  std::vector<std::size_t> om_inv_;
  std::vector<std::size_t> simple_root_of_;  // simple position -> root index
  mutable std::shared_mutex memo_mutex_;
  mutable std::unordered_map<std::pair<std::size_t, Vec>, HeckeElement, MemoKeyHash> n_theta_memo_;
  mutable std::unordered_map<std::pair<std::size_t, std::size_t>, HeckeElement, PairHash> n_n_memo_;
};

// Characters z(x) = zeta_n^{<c, x>} of X with values in Z[zeta_n].
struct LatticeCharacter {
  Vec c;
  Int n = 1;
  Int exponent(const Vec &x) const;  // <c, x> mod n
  LatticeCharacter operator*(const LatticeCharacter &o) const;
};

// Element of H tensor Z[zeta_n], stored in the power basis 1, zeta, ..., zeta^{phi(n)-1}.
struct GradedHeckeElement {
  Int n = 1;
  std::map<Int, HeckeElement> parts;
  bool operator==(const GradedHeckeElement &o) const { return n == o.n && parts == o.parts; }
};

GradedHeckeElement normalize(GradedHeckeElement e);
GradedHeckeElement graded_multiply(const HeckeAlgebra &H, const GradedHeckeElement &a, const GradedHeckeElement &b);
std::vector<Int> cyclotomic_polynomial(Int n);

struct TwistReport {
  AffineHeckeDatum target;  // labels lambda* negated where z(alpha) = -1
  bool multiplicative = true;
  std::size_t samples = 0;
  std::string witness;
};

// Image theta_x N_w omega -> z(x) theta_x N_w omega.
GradedHeckeElement apply_twist(const LatticeCharacter &z, const HeckeElement &e);
// Target datum of the twist; throws std::invalid_argument if z is not +-1 on simple roots
// or -1 on a root whose coroot is not divisible by 2.
AffineHeckeDatum twist_target(const AffineHeckeDatum &d, const LatticeCharacter &z);
// Verifies twist(a b) = twist(a) twist(b) on the given samples.
TwistReport twist_by_character(const HeckeAlgebra &H, const LatticeCharacter &z,
                               const std::vector<HeckeElement> &samples);
// Basis elements theta_x N_w omega with |x_i| <= xrange and l(w) <= max_len.
std::vector<HeckeElement> small_basis(const HeckeAlgebra &H, Int xrange, std::size_t max_len);

}  // namespace unihecke
