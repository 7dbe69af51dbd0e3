#pragma once
// Iwahori-Weyl groups of unramified groups, the fundamental alcove, Omega and
// facet combinatorics.
//
// The apartment is V = X_*(S) (x) Q in the coordinates of the relative
// cocharacter basis.  Lambda is the group of Frobenius invariants of
// X_*(T)/Z Delta0^vee, stored in cokernel coordinates (torsion first).

#include "unihecke/galois_relative.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace unihecke {

struct AffineWeylElement {
  Vec translation;     // Lambda coordinates, reduced
  std::size_t linear;  // index into the relative Weyl group
  bool operator==(const AffineWeylElement &) const = default;
  auto operator<=>(const AffineWeylElement &) const = default;
};

// Restriction of an affine map to an affine subspace x0 + D y: y |-> M y + c.
struct RestrictedMap {
  QMat M;
  QVec c;
  bool operator==(const RestrictedMap &) const = default;
  auto operator<=>(const RestrictedMap &o) const {
    if (auto r = M <=> o.M; r != 0) return r;
    return c <=> o.c;
  }
};

struct AffineNode {
  long label;             // finite: 1..r, affine: 0, -1, -2, ...
  bool affine = false;
  std::size_t component = 0;
  QVec grad;              // node function f(x) = grad.x + level, positive on the alcove
  Rat level = 0;
  AffineWeylElement reflection;
};

class IwahoriWeylDatum {
public:
  IwahoriWeylDatum(std::shared_ptr<const RelativeContext> ctx);

  const RelativeContext &context() const { return *ctx_; }
  const RelativeWeylGroup &finite_weyl() const { return w0_; }
  std::size_t w0_multiply(std::size_t a, std::size_t b) const { return w0_mul_[a][b]; }
  std::size_t w0_inverse(std::size_t a) const { return w0_inv_[a]; }
  long w0_find(const QMat &m) const;
  const FinGenAbelianGroup &translations() const { return lambda_ck_.group; }
  std::size_t lambda_dim() const { return lambda_ck_.moduli.size(); }
  std::size_t dim() const { return ctx_->relative.dim(); }

  // Lambda arithmetic
  Vec reduce(Vec lambda) const;
  Vec lambda_add(const Vec &a, const Vec &b) const;
  Vec act_on_lambda(std::size_t w, const Vec &lambda) const;
  QVec nu(const Vec &lambda) const;
  // Lambda coordinates of an element of L (cocharacters fixed mod Z Delta0^vee).
  std::optional<Vec> lambda_of_cocharacter(const Vec &x) const;
  Vec cocharacter_of_lambda(const Vec &lambda) const;

  // Group law
  AffineWeylElement identity() const;
  AffineWeylElement translation(const Vec &lambda) const;
  AffineWeylElement multiply(const AffineWeylElement &a, const AffineWeylElement &b) const;
  AffineWeylElement inverse(const AffineWeylElement &a) const;
  QVec act(const AffineWeylElement &g, const QVec &x) const;
  QMat linear_matrix(std::size_t w) const;  // on V
  std::size_t length(const AffineWeylElement &g) const;

  // Alcove
  const std::vector<AffineNode> &nodes() const { return nodes_; }
  long node_position(long label) const;
  const std::vector<std::vector<std::size_t>> &components() const { return components_; }
  const QVec &interior_point() const { return p0_; }
  Rat node_value(std::size_t pos, const QVec &x) const;
  // scaled positive directions a' = a / c_a
  const std::vector<QVec> &scaled_positive() const { return scaled_pos_; }
  const std::vector<Vec> &positive_directions() const { return pos_dir_; }
  const std::vector<Rat> &wall_spacing() const { return spacing_; }
  const std::vector<QVec> &direction_coroots() const { return dir_coroot_; }
  // Coefficients of theta' per component (on the finite nodes of that component).
  const std::vector<std::vector<Int>> &highest_coefficients() const { return theta_coeff_; }

  // Fold a generic point into the closed alcove; returns u in W_af (as a word of
  // node positions applied left to right) with u(x) in the alcove.
  std::vector<std::size_t> fold_word(QVec x) const;
  AffineWeylElement word_element(const std::vector<std::size_t> &word) const;
  // u mapping x into the alcove
  AffineWeylElement fold(const QVec &x) const;

  // Omega = Lambda / Lambda_af
  const FinGenAbelianGroup &omega() const { return omega_ck_.group; }
  const Cokernel &omega_cokernel() const { return omega_ck_; }
  std::size_t omega_dim() const { return omega_ck_.moduli.size(); }
  Vec omega_class(const AffineWeylElement &g) const;  // Omega coordinates
  Vec omega_reduce(Vec c) const;
  AffineWeylElement omega_element(const Vec &c) const;  // the length-zero representative
  // permutation of node positions induced by conjugation
  std::vector<std::size_t> omega_permutation(const Vec &c) const;
  // Lambda_af generators in Lambda coordinates
  const std::vector<Vec> &lambda_af_generators() const { return laf_gens_; }
  bool in_lambda_af(const Vec &lambda) const;
  // central component of nu(lambda): the part orthogonal to all coroots
  QVec central_part(const QVec &x) const;

  // W_af (.) Omega factorisation of g.
  struct Factorisation {
    AffineWeylElement wa;
    AffineWeylElement omega;
    Vec omega_coords;
  };
  Factorisation factor(const AffineWeylElement &g) const;

  bool same_on_apartment(const AffineWeylElement &a, const AffineWeylElement &b) const;

private:
  std::shared_ptr<const RelativeContext> ctx_;
  RelativeWeylGroup w0_;
  Mat lbasis_;  // n x l
  Cokernel lambda_ck_;
  std::vector<std::vector<std::size_t>> w0_mul_;
  std::vector<std::size_t> w0_inv_;
  std::map<QMat, std::size_t> w0_index_;
  std::vector<Mat> w0_lambda_;  // per W0 element, on Lambda coordinates
  std::vector<QVec> nu_gen_;    // nu of each Lambda coordinate generator
  std::vector<QMat> w0_v_;      // per W0 element, on V
  std::vector<Vec> pos_dir_;
  std::vector<QVec> dir_coroot_;
  std::vector<Rat> spacing_;
  std::vector<QVec> scaled_pos_;
  std::vector<std::vector<std::size_t>> components_;  // node positions per component
  std::vector<std::vector<Int>> theta_coeff_;
  std::vector<AffineNode> nodes_;
  QVec p0_;
  std::vector<Vec> laf_gens_;
  Cokernel omega_ck_;
  std::vector<AffineWeylElement> omega_gen_;
  std::vector<std::vector<std::size_t>> omega_gen_perm_;
  std::vector<QVec> simple_coroots_;  // relative simple coroots in V
};

IwahoriWeylDatum build_iwahori_weyl(const GaloisDatum &g, const AnisotropicMarking &m,
                                    std::size_t cap = 50000);

// Raised when the s_i = w_{J+i} w_J construction breaks down on a facet.
class FacetConstructionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct CheckResult {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct FacetOptions {
  std::size_t radius = 12;  // word-length radius for enumerations
};

struct FacetData {
  std::vector<long> J;
  std::vector<std::size_t> J_pos;
  std::vector<AffineWeylElement> WJ;
  std::vector<long> S_f_af_labels;
  std::vector<AffineWeylElement> S_f_af;
  // Omega_f as a subgroup of Omega: generators in Omega coordinates
  FinGenAbelianGroup Omega_f;
  std::vector<Vec> Omega_f_gens;
  FinGenAbelianGroup Omega_f_tor;
  std::vector<Vec> Omega_f_tor_elements;  // all elements, Omega coordinates
  std::vector<Vec> psi_characters;        // characters of Omega_f_tor as exponent tuples
  FinGenAbelianGroup Omega_f_quotient;    // Omega_f / Omega_f_tor
  std::vector<CheckResult> checks;

  // completed by facet_root_datum
  bool completed = false;
  QVec x0;                   // base point of Aff(f) used for restricted maps (= x_f)
  std::vector<QVec> D;       // direction basis of Aff(f) in V
  QVec x_f;                  // in V
  QVec p_f;                  // interior point of the facet, in V
  std::vector<long> S_f_labels;
  std::vector<long> dropped_labels;  // one per component with >= 2 free nodes
  std::vector<QMat> W0_J;            // restricted linear maps, identity first
  std::vector<QVec> XJ;              // basis in D coordinates
  std::vector<QVec> Xf;              // basis in D coordinates
  BasedRootDatum Rf;                 // on Xf coordinates
  std::vector<std::string> Rf_types;
  std::vector<long> Rf_simple_labels;      // node label of each simple root of Rf
  std::vector<long> Rf_dropped_root;       // per dropped label: Rf root index of its linear part
  std::vector<QVec> Xf_vectors;            // Xf basis as direction vectors in V
  std::vector<Mat> W0_J_xf;                // W0_J in Xf coordinates, identity first
  std::vector<Vec> omega_translation;      // per Omega_f generator, Xf coordinates
  std::vector<Mat> omega_linear;           // per Omega_f generator, Xf coordinates
  std::vector<std::vector<Int>> XJ_in_Xf;  // XJ basis in Xf coordinates
  bool all_ok() const;
};

FacetData analyze_facet(const IwahoriWeylDatum &d, const std::vector<long> &J,
                        const FacetOptions &opt = {});
void facet_root_datum(const IwahoriWeylDatum &d, FacetData &f, const FacetOptions &opt = {});

// Coxeter matrix of the generators S_f_af (orders of pairwise products, 0 = infinite).
Mat coxeter_matrix(const IwahoriWeylDatum &d, const std::vector<AffineWeylElement> &gens,
                   std::size_t bound = 24);

// Restriction of g to x0 + D; nullopt if g does not preserve the subspace.
std::optional<RestrictedMap> restrict_map(const IwahoriWeylDatum &d, const AffineWeylElement &g,
                                          const QVec &x0, const std::vector<QVec> &D);

// Unique W_af . Omega factorisation over all elements with translation
// coordinates bounded by radius (free coordinates), every torsion value and
// every linear part.
CheckResult check_wa_omega_factorisation(const IwahoriWeylDatum &d, Int radius);

// All proper facets (per component J strictly smaller than the node set).
std::vector<std::vector<long>> all_proper_facets(const IwahoriWeylDatum &d);

}  // namespace unihecke
