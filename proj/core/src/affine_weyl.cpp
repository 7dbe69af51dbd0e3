#include "unihecke/affine_weyl.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace unihecke {

namespace {

Vec reduce_mod(Vec v, const std::vector<BigInt> &moduli) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (moduli[k] == 0) continue;
    Int m = to_int(moduli[k]);
    v[k] %= m;
    if (v[k] < 0) v[k] += m;
  }
  return v;
}

QMat qidentity(std::size_t n) {
  QMat m(n, QVec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat qsub_mat(const QMat &a, const QMat &b) {
  QMat r = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] -= b[i][j];
  return r;
}

// Exact solution of A x = b (A given by rows), verified.
std::optional<QVec> solve_exact(const QMat &a, const QVec &b, std::size_t ncols) {
  auto x = solve_q(a, b, ncols);
  if (!x) return std::nullopt;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (qdot(a[i], *x) != b[i]) return std::nullopt;
  return x;
}

// Matrix whose columns are the given vectors.
QMat columns(const std::vector<QVec> &cols, std::size_t rows) {
  QMat m(rows, QVec(cols.size(), Rat(0)));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = cols[j][i];
  return m;
}

BigInt common_denominator(const std::vector<QVec> &vs) {
  BigInt den = 1;
  for (const auto &v : vs)
    for (const auto &x : v) {
      BigInt d = boost::multiprecision::denominator(x);
      den = den / boost::multiprecision::gcd(den, d) * d;
    }
  return den;
}

// Z-span of rational vectors: a basis.  Prefers a basis made of the given
// vectors (in order) when one exists.
std::vector<QVec> lattice_span(const std::vector<QVec> &vs, std::size_t dim) {
  std::vector<QVec> nz;
  for (const auto &v : vs)
    if (!qis_zero(v)) nz.push_back(v);
  if (nz.empty()) return {};
  BigInt den = common_denominator(nz);
  IntegerMatrix m(dim, nz.size());
  for (std::size_t j = 0; j < nz.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = boost::multiprecision::numerator(nz[j][i] * Rat(den));
  IntegerMatrix ib = image_basis(m);
  const std::size_t rk = ib.cols();
  // greedy choice among the given vectors
  std::vector<QVec> greedy;
  for (const auto &v : nz) {
    auto trial = greedy;
    trial.push_back(v);
    if (rank_q(qtranspose(columns(trial, dim), trial.size())) == trial.size()) greedy = trial;
    if (greedy.size() == rk) break;
  }
  if (greedy.size() == rk) {
    IntegerMatrix g(dim, rk);
    for (std::size_t j = 0; j < rk; ++j)
      for (std::size_t i = 0; i < dim; ++i) g(i, j) = boost::multiprecision::numerator(greedy[j][i] * Rat(den));
    // same lattice iff every column of ib is an integer combination of g
    bool ok = true;
    for (std::size_t j = 0; j < rk && ok; ++j)
      if (!solve_integer(g, ib.column(j))) ok = false;
    if (ok) return greedy;
  }
  std::vector<QVec> out;
  for (std::size_t j = 0; j < rk; ++j) {
    QVec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = Rat(ib(i, j)) / Rat(den);
    out.push_back(v);
  }
  return out;
}

// Coordinates of v in the lattice basis (columns of P); nullopt if not in the span.
std::optional<QVec> coords_in(const std::vector<QVec> &basis, const QVec &v) {
  if (basis.empty()) {
    if (qis_zero(v)) return QVec{};
    return std::nullopt;
  }
  return solve_exact(columns(basis, v.size()), v, basis.size());
}

template <class T, class Mul>
std::vector<T> closure(const std::vector<T> &gens, const T &id, Mul mul, std::size_t cap, const std::string &what) {
  std::vector<T> out{id};
  std::set<T> seen{id};
  for (std::size_t h = 0; h < out.size(); ++h)
    for (const auto &g : gens) {
      T x = mul(out[h], g);
      if (seen.insert(x).second) {
        out.push_back(x);
        if (out.size() > cap) throw std::length_error(what + " exceeds " + std::to_string(cap) + " elements");
      }
    }
  return out;
}

// Subgroup of Z^k / (moduli) generated by gens: returns the cokernel of the
// relation lattice (structure with respect to gens) and the generator matrix.
Cokernel subgroup_structure(const std::vector<Vec> &gens, const std::vector<BigInt> &moduli,
                            const std::vector<Vec> &extra_relations = {}) {
  const std::size_t k = moduli.size();
  const std::size_t m = gens.size();
  std::vector<std::size_t> tor;
  for (std::size_t i = 0; i < k; ++i)
    if (moduli[i] != 0) tor.push_back(i);
  IntegerMatrix A(k, m + tor.size() + extra_relations.size());
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < k; ++i) A(i, j) = gens[j][i];
  for (std::size_t t = 0; t < tor.size(); ++t) A(tor[t], m + t) = moduli[tor[t]];
  for (std::size_t e = 0; e < extra_relations.size(); ++e)
    for (std::size_t i = 0; i < k; ++i) A(i, m + tor.size() + e) = extra_relations[e][i];
  IntegerMatrix K = kernel_basis(A);
  IntegerMatrix R(m, K.cols());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < K.cols(); ++j) R(i, j) = K(i, j);
  return cokernel(R);
}

bool in_subgroup(const std::vector<Vec> &gens, const std::vector<BigInt> &moduli, const Vec &c) {
  const std::size_t k = moduli.size();
  std::vector<std::size_t> tor;
  for (std::size_t i = 0; i < k; ++i)
    if (moduli[i] != 0) tor.push_back(i);
  IntegerMatrix A(k, gens.size() + tor.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < k; ++i) A(i, j) = gens[j][i];
  for (std::size_t t = 0; t < tor.size(); ++t) A(tor[t], gens.size() + t) = moduli[tor[t]];
  if (A.cols() == 0) return is_zero(c);
  return solve_integer(A, to_big_vec(c)).has_value();
}

std::string labels_str(const std::vector<long> &v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

RestrictedMap compose(const RestrictedMap &a, const RestrictedMap &b) {
  return {qmat_mul(a.M, b.M), qadd(qmat_vec(a.M, b.c), a.c)};
}

}  // namespace

// ---------------------------------------------------------------------------

IwahoriWeylDatum::IwahoriWeylDatum(std::shared_ptr<const RelativeContext> ctx)
    : ctx_(std::move(ctx)), w0_(relative_weyl_group(*ctx_, WeylPath::dual)) {
  const auto &G = ctx_->galois;
  const auto &rel = ctx_->relative;
  const std::size_t n = G.base.rank;
  const std::size_t s = rel.dim();

  // Frobenius: a generator of the (cyclic) Galois image
  Mat fr = identity_mat(n);
  {
    auto cyclic_order = [&](const Mat &g) {
      Mat p = g;
      std::size_t k = 1;
      while (!is_identity(p) && k <= G.order()) {
        p = mat_mul(p, g);
        ++k;
      }
      return k;
    };
    bool found = G.order() == 1;
    std::vector<Mat> cands = G.generators;
    cands.insert(cands.end(), G.elements.begin(), G.elements.end());
    for (const auto &g : cands)
      if (!found && cyclic_order(g) == G.order()) {
        fr = g;
        found = true;
      }
    if (!found) throw std::invalid_argument("Iwahori-Weyl data need a cyclic Galois action generated by one Frobenius");
  }
  const Mat fr_co = cocharacter_action(fr);
  const auto &d0 = ctx_->marking.delta0;
  const auto &rs = *ctx_->roots;

  // L = {x : (Fr - 1) x in Z Delta0^vee}
  {
    IntegerMatrix A(n, n + d0.size());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = fr_co[i][j] - (i == j ? 1 : 0);
    for (std::size_t k = 0; k < d0.size(); ++k)
      for (std::size_t i = 0; i < n; ++i) A(i, n + k) = -rs.simple_coroot(d0[k])[i];
    IntegerMatrix K = kernel_basis(A);
    lbasis_ = zero_mat(n, K.cols());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < K.cols(); ++j) lbasis_[i][j] = to_int(K(i, j));
  }
  const std::size_t l = mat_cols(lbasis_);
  {
    IntegerMatrix R(l, d0.size());
    IntegerMatrix LB = to_big(lbasis_, l);
    for (std::size_t k = 0; k < d0.size(); ++k) {
      auto y = solve_integer(LB, to_big_vec(rs.simple_coroot(d0[k])));
      if (!y) throw std::logic_error("Delta0 coroot outside L");
      for (std::size_t i = 0; i < l; ++i) R(i, k) = (*y)[i];
    }
    lambda_ck_ = cokernel(R);
  }
  const std::size_t lc = lambda_ck_.moduli.size();

  // nu: K-rational characters M, nu(x) solves M^T B v = M^T x
  {
    Mat cons;
    for (std::size_t i = 0; i < n; ++i) {
      Vec row = fr[i];
      row[i] -= 1;
      cons.push_back(row);
    }
    for (auto p : d0) cons.push_back(rs.simple_coroot(p));
    Mat Mc = from_big(kernel_basis(to_big(cons, n)));
    if (mat_cols(Mc) != s) throw std::logic_error("rational character lattice has the wrong rank");
    QMat MtB = to_q(mat_mul(transpose(Mc, s), rel.cochar_basis));
    auto inv = s ? inverse_q(MtB) : std::optional<QMat>(QMat{});
    if (!inv) throw std::logic_error("restriction of rational characters to S is not invertible");
    QMat Mt = to_q(transpose(Mc, s));
    QMat numat = s ? qmat_mul(*inv, Mt) : QMat{};
    for (std::size_t k = 0; k < lc; ++k) {
      Vec e(lc, 0);
      e[k] = 1;
      Vec x = cocharacter_of_lambda(e);
      nu_gen_.push_back(s ? qmat_vec(numat, to_q(x)) : QVec{});
    }
  }

  // finite Weyl group tables
  const std::size_t nw = w0_.order();
  for (std::size_t w = 0; w < nw; ++w) {
    w0_v_.push_back(to_q(w0_.elements[w]));
    if (w0_v_.back().empty()) w0_v_.back() = QMat{};
    w0_index_[w0_v_.back()] = w;
  }
  w0_mul_.assign(nw, std::vector<std::size_t>(nw));
  w0_inv_.assign(nw, 0);
  for (std::size_t a = 0; a < nw; ++a)
    for (std::size_t b = 0; b < nw; ++b) {
      long c = w0_find(qmat_mul(w0_v_[a], w0_v_[b]));
      if (s == 0) c = 0;
      if (c < 0) throw std::logic_error("relative Weyl group table is not closed");
      w0_mul_[a][b] = static_cast<std::size_t>(c);
      if (c == 0) w0_inv_[a] = b;
    }
  for (std::size_t w = 0; w < nw; ++w) {
    Mat co = ctx_->weyl->comatrix(w0_.lifts[w]);
    Mat act = zero_mat(lc, lc);
    for (std::size_t k = 0; k < lc; ++k) {
      Vec e(lc, 0);
      e[k] = 1;
      auto im = lambda_of_cocharacter(mat_vec(co, cocharacter_of_lambda(e)));
      if (!im) throw std::logic_error("relative Weyl element does not preserve L");
      for (std::size_t i = 0; i < lc; ++i) act[i][k] = (*im)[i];
    }
    w0_lambda_.push_back(act);
    for (std::size_t k = 0; k < lc; ++k) {
      Vec e(lc, 0);
      e[k] = 1;
      if (nu(act_on_lambda(w, e)) != qmat_vec(w0_v_[w], nu(e)))
        throw std::logic_error("nu is not W0-equivariant");
    }
  }

  // positive indivisible restricted roots and their coroots
  std::vector<std::size_t> dir_refl;
  {
    std::set<Vec> rr(rel.restricted_roots.begin(), rel.restricted_roots.end());
    for (std::size_t r = 0; r < rel.restricted_roots.size(); ++r) {
      const Vec &a = rel.restricted_roots[r];
      bool pos = false;
      for (std::size_t i = 0; i < rel.image_of_root.size(); ++i)
        if (rel.image_of_root[i] == static_cast<long>(r)) {
          pos = rs.is_positive(i);
          break;
        }
      if (!pos) continue;
      bool even = std::all_of(a.begin(), a.end(), [](Int x) { return x % 2 == 0; });
      if (even) {
        Vec h = a;
        for (auto &x : h) x /= 2;
        if (rr.count(h)) continue;
      }
      pos_dir_.push_back(a);
    }
    for (const auto &a : pos_dir_) {
      std::size_t j = 0;
      while (j < s && a[j] == 0) ++j;
      bool found = false;
      for (std::size_t w = 1; w < nw && !found; ++w) {
        QMat K = qsub_mat(qidentity(s), w0_v_[w]);
        QVec u(s);
        for (std::size_t i = 0; i < s; ++i) u[i] = K[i][j] / Rat(a[j]);
        bool ok = true;
        for (std::size_t r = 0; r < s && ok; ++r)
          for (std::size_t c = 0; c < s && ok; ++c)
            if (K[r][c] != u[r] * Rat(a[c])) ok = false;
        if (ok && qdot(to_q(a), u) == 2) {
          dir_coroot_.push_back(u);
          dir_refl.push_back(w);
          found = true;
        }
      }
      if (!found) throw std::logic_error("no reflection for restricted root " + to_string(a));
    }
  }
  for (const auto &c : rel.relative_simple_coroots) simple_coroots_.push_back(to_q(c));

  // Lambda_af = (L cap Z Phi^vee) / Z Delta0^vee
  {
    const std::size_t ra = rs.num_simple();
    IntegerMatrix A(n, l + ra);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < l; ++j) A(i, j) = lbasis_[i][j];
      for (std::size_t j = 0; j < ra; ++j) A(i, l + j) = -rs.simple_coroot(j)[i];
    }
    IntegerMatrix K = kernel_basis(A);
    for (std::size_t c = 0; c < K.cols(); ++c) {
      std::vector<BigInt> y(l);
      for (std::size_t i = 0; i < l; ++i) y[i] = K(i, c);
      Vec lam = reduce(from_big_vec(lambda_ck_.project(y)));
      if (!is_zero(lam)) laf_gens_.push_back(lam);
    }
  }
  std::vector<QVec> nu_laf;
  for (const auto &g : laf_gens_) nu_laf.push_back(nu(g));
  std::vector<QVec> nbasis = lattice_span(nu_laf, s);

  for (std::size_t k = 0; k < pos_dir_.size(); ++k) {
    auto y = coords_in(nbasis, dir_coroot_[k]);
    if (!y) throw std::logic_error("coroot direction outside nu(Lambda_af)");
    Rat c = Rat(1) / rat_content(*y);
    spacing_.push_back(c);
    scaled_pos_.push_back(qscale(Rat(1) / c, to_q(pos_dir_[k])));
  }

  // components, highest scaled roots, nodes
  const std::size_t r = rel.relative_simple.size();
  auto dir_of = [&](const Vec &a) -> std::size_t {
    auto it = std::find(pos_dir_.begin(), pos_dir_.end(), a);
    if (it == pos_dir_.end()) throw std::logic_error("relative simple root is not an indivisible positive root");
    return static_cast<std::size_t>(it - pos_dir_.begin());
  };
  std::vector<std::size_t> simple_dir(r);
  for (std::size_t i = 0; i < r; ++i) simple_dir[i] = dir_of(rel.relative_simple[i]);
  QMat Asimple = columns([&] {
    std::vector<QVec> c;
    for (const auto &a : rel.relative_simple) c.push_back(to_q(a));
    return c;
  }(), s);
  for (std::size_t i = 0; i < r; ++i) {
    AffineNode nd;
    nd.label = static_cast<long>(i) + 1;
    nd.grad = scaled_pos_[simple_dir[i]];
    nd.level = 0;
    nd.reflection = {Vec(lc, 0), w0_.simple_reflections[i]};
    if (nd.reflection.linear != dir_refl[simple_dir[i]])
      throw std::logic_error("relative simple reflection differs from the reflection in its root");
    nodes_.push_back(nd);
  }
  std::vector<Int> hvals;
  for (std::size_t c = 0; c < rel.components.size(); ++c) {
    const auto &comp = rel.components[c];
    std::size_t best = pos_dir_.size();
    std::vector<Int> best_k;
    Int best_h = -1;
    std::vector<std::vector<Int>> all_k;
    for (std::size_t k = 0; k < pos_dir_.size(); ++k) {
      auto m = solve_exact(Asimple, to_q(pos_dir_[k]), r);
      if (!m) throw std::logic_error("restricted root outside the span of relative simple roots");
      bool inside = true;
      for (std::size_t i = 0; i < r; ++i)
        if ((*m)[i] != 0 && std::find(comp.begin(), comp.end(), i) == comp.end()) inside = false;
      if (!inside) continue;
      std::vector<Int> kk;
      Int h = 0;
      for (auto i : comp) {
        Rat q = (*m)[i] * spacing_[simple_dir[i]] / spacing_[k];
        if (boost::multiprecision::denominator(q) != 1)
          throw std::logic_error("scaled restricted roots do not form a root system");
        kk.push_back(to_int(q));
        h += kk.back();
      }
      all_k.push_back(kk);
      if (h > best_h) {
        best_h = h;
        best = k;
        best_k = kk;
      }
    }
    for (const auto &kk : all_k)
      for (std::size_t i = 0; i < kk.size(); ++i)
        if (kk[i] > best_k[i]) throw std::logic_error("no highest scaled root in a component");
    theta_coeff_.push_back(best_k);
    hvals.push_back(best_h + 1);
    AffineNode nd;
    nd.label = -static_cast<long>(c);
    nd.affine = true;
    nd.component = c;
    nd.grad = qscale(Rat(-1), scaled_pos_[best]);
    nd.level = 1;
    // s0 = t_{lambda0} r_theta with nu(lambda0) = c_theta theta^vee
    QVec target = qscale(spacing_[best], dir_coroot_[best]);
    std::vector<QVec> cols = nu_laf;
    cols.push_back(target);
    BigInt den = common_denominator(cols);
    IntegerMatrix A(s, nu_laf.size());
    std::vector<BigInt> b(s);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < nu_laf.size(); ++j)
        A(i, j) = boost::multiprecision::numerator(nu_laf[j][i] * Rat(den));
      b[i] = boost::multiprecision::numerator(target[i] * Rat(den));
    }
    auto x = solve_integer(A, b);
    if (!x) throw std::logic_error("affine reflection translation is not in Lambda_af");
    Vec lam(lc, 0);
    for (std::size_t j = 0; j < nu_laf.size(); ++j) lam = vadd(lam, vscale(to_int((*x)[j]), laf_gens_[j]));
    nd.reflection = {reduce(lam), dir_refl[best]};
    nodes_.push_back(nd);
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t c = 0; c < rel.components.size(); ++c)
      if (std::find(rel.components[c].begin(), rel.components[c].end(), i) != rel.components[c].end())
        nodes_[i].component = c;
  components_.assign(rel.components.size(), {});
  for (std::size_t p = 0; p < nodes_.size(); ++p) components_[nodes_[p].component].push_back(p);

  // interior point: every node function equals 1/h on it
  p0_.assign(s, Rat(0));
  if (r > 0) {
    QMat A(r, QVec(r));
    QVec b(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) A[i][j] = qdot(nodes_[i].grad, simple_coroots_[j]);
      b[i] = Rat(1) / Rat(hvals[nodes_[i].component]);
    }
    auto y = solve_exact(A, b, r);
    if (!y) throw std::logic_error("cannot place the alcove barycentre");
    for (std::size_t j = 0; j < r; ++j) p0_ = qadd(p0_, qscale((*y)[j], simple_coroots_[j]));
  }
  for (std::size_t p = 0; p < nodes_.size(); ++p) {
    Rat v = node_value(p, p0_);
    if (v <= 0) throw std::logic_error("interior point is not inside the alcove");
    if (node_value(p, act(nodes_[p].reflection, p0_)) != -v)
      throw std::logic_error("node reflection does not fix its wall");
  }

  // Omega = Lambda / Lambda_af
  {
    std::vector<std::size_t> tor;
    for (std::size_t k = 0; k < lc; ++k)
      if (lambda_ck_.moduli[k] != 0) tor.push_back(k);
    IntegerMatrix A(lc, laf_gens_.size() + tor.size());
    for (std::size_t j = 0; j < laf_gens_.size(); ++j)
      for (std::size_t i = 0; i < lc; ++i) A(i, j) = laf_gens_[j][i];
    for (std::size_t t = 0; t < tor.size(); ++t) A(tor[t], laf_gens_.size() + t) = lambda_ck_.moduli[tor[t]];
    omega_ck_ = cokernel(A);
  }
  for (std::size_t k = 0; k < omega_dim(); ++k) {
    Vec e(omega_dim(), 0);
    e[k] = 1;
    omega_gen_.push_back(omega_element(e));
    omega_gen_perm_.push_back(omega_permutation(e));
  }
}

long IwahoriWeylDatum::w0_find(const QMat &m) const {
  auto it = w0_index_.find(m);
  return it == w0_index_.end() ? -1 : static_cast<long>(it->second);
}

Vec IwahoriWeylDatum::reduce(Vec lambda) const { return reduce_mod(std::move(lambda), lambda_ck_.moduli); }

Vec IwahoriWeylDatum::lambda_add(const Vec &a, const Vec &b) const { return reduce(vadd(a, b)); }

Vec IwahoriWeylDatum::act_on_lambda(std::size_t w, const Vec &lambda) const {
  if (lambda.empty()) return lambda;
  return reduce(mat_vec(w0_lambda_[w], lambda));
}

QVec IwahoriWeylDatum::nu(const Vec &lambda) const {
  QVec v(dim(), Rat(0));
  for (std::size_t k = 0; k < lambda.size(); ++k)
    if (lambda[k] != 0) v = qadd(v, qscale(Rat(lambda[k]), nu_gen_[k]));
  return v;
}

std::optional<Vec> IwahoriWeylDatum::lambda_of_cocharacter(const Vec &x) const {
  const std::size_t l = mat_cols(lbasis_);
  if (l == 0) {
    if (is_zero(x)) return Vec(lambda_dim(), 0);
    return std::nullopt;
  }
  auto y = solve_integer(to_big(lbasis_, l), to_big_vec(x));
  if (!y) return std::nullopt;
  return reduce(from_big_vec(lambda_ck_.project(*y)));
}

Vec IwahoriWeylDatum::cocharacter_of_lambda(const Vec &lambda) const {
  const std::size_t l = mat_cols(lbasis_);
  const std::size_t n = lbasis_.size();
  Vec y(l, 0);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < lambda.size(); ++k)
      y[i] = add_checked(y[i], mul_checked(to_int(lambda_ck_.section(i, k)), lambda[k]));
  Vec x(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < l; ++j) x[i] = add_checked(x[i], mul_checked(lbasis_[i][j], y[j]));
  return x;
}

AffineWeylElement IwahoriWeylDatum::identity() const { return {Vec(lambda_dim(), 0), 0}; }

AffineWeylElement IwahoriWeylDatum::translation(const Vec &lambda) const { return {reduce(lambda), 0}; }

AffineWeylElement IwahoriWeylDatum::multiply(const AffineWeylElement &a, const AffineWeylElement &b) const {
  return {lambda_add(a.translation, act_on_lambda(a.linear, b.translation)), w0_mul_[a.linear][b.linear]};
}

AffineWeylElement IwahoriWeylDatum::inverse(const AffineWeylElement &a) const {
  std::size_t wi = w0_inv_[a.linear];
  return {reduce(vneg(act_on_lambda(wi, a.translation))), wi};
}

QVec IwahoriWeylDatum::act(const AffineWeylElement &g, const QVec &x) const {
  if (dim() == 0) return x;
  return qadd(qmat_vec(w0_v_[g.linear], x), nu(g.translation));
}

QMat IwahoriWeylDatum::linear_matrix(std::size_t w) const { return w0_v_[w]; }

std::size_t IwahoriWeylDatum::length(const AffineWeylElement &g) const {
  QVec p = act(g, p0_);
  BigInt total = 0;
  for (const auto &a : scaled_pos_) {
    BigInt f = floor_rat(qdot(a, p));
    total += f < 0 ? BigInt(-f) : f;
  }
  return static_cast<std::size_t>(to_int(total));
}

long IwahoriWeylDatum::node_position(long label) const {
  for (std::size_t p = 0; p < nodes_.size(); ++p)
    if (nodes_[p].label == label) return static_cast<long>(p);
  return -1;
}

Rat IwahoriWeylDatum::node_value(std::size_t pos, const QVec &x) const {
  return qdot(nodes_[pos].grad, x) + nodes_[pos].level;
}

std::vector<std::size_t> IwahoriWeylDatum::fold_word(QVec x) const {
  std::vector<std::size_t> word;
  for (std::size_t iter = 0; iter < 100000; ++iter) {
    std::size_t p = 0;
    while (p < nodes_.size() && node_value(p, x) >= 0) ++p;
    if (p == nodes_.size()) return word;
    x = act(nodes_[p].reflection, x);
    word.push_back(p);
  }
  throw std::logic_error("folding into the alcove did not terminate");
}

AffineWeylElement IwahoriWeylDatum::word_element(const std::vector<std::size_t> &word) const {
  AffineWeylElement g = identity();
  for (auto p : word) g = multiply(nodes_[p].reflection, g);
  return g;
}

AffineWeylElement IwahoriWeylDatum::fold(const QVec &x) const { return word_element(fold_word(x)); }

Vec IwahoriWeylDatum::omega_reduce(Vec c) const { return reduce_mod(std::move(c), omega_ck_.moduli); }

Vec IwahoriWeylDatum::omega_class(const AffineWeylElement &g) const {
  if (omega_dim() == 0) return {};
  return omega_reduce(from_big_vec(omega_ck_.project(to_big_vec(g.translation))));
}

AffineWeylElement IwahoriWeylDatum::omega_element(const Vec &c) const {
  const std::size_t lc = lambda_dim();
  Vec lam(lc, 0);
  for (std::size_t i = 0; i < lc; ++i)
    for (std::size_t k = 0; k < c.size(); ++k)
      lam[i] = add_checked(lam[i], mul_checked(to_int(omega_ck_.section(i, k)), c[k]));
  AffineWeylElement t = translation(lam);
  return multiply(fold(act(t, p0_)), t);
}

std::vector<std::size_t> IwahoriWeylDatum::omega_permutation(const Vec &c) const {
  AffineWeylElement w = omega_element(c), wi = inverse(omega_element(c));
  std::vector<std::size_t> perm(nodes_.size());
  for (std::size_t p = 0; p < nodes_.size(); ++p) {
    AffineWeylElement conj = multiply(multiply(w, nodes_[p].reflection), wi);
    std::size_t q = 0;
    while (q < nodes_.size() && !(nodes_[q].reflection == conj)) ++q;
    if (q == nodes_.size()) throw std::logic_error("Omega element does not permute the simple affine reflections");
    perm[p] = q;
  }
  return perm;
}

bool IwahoriWeylDatum::in_lambda_af(const Vec &lambda) const { return is_zero(omega_class(translation(lambda))); }

QVec IwahoriWeylDatum::central_part(const QVec &x) const {
  const std::size_t r = simple_coroots_.size();
  if (r == 0) return x;
  const auto &rel = ctx_->relative;
  QMat A(r, QVec(r));
  QVec b(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) A[i][j] = qdot(to_q(rel.relative_simple[i]), simple_coroots_[j]);
    b[i] = qdot(to_q(rel.relative_simple[i]), x);
  }
  auto y = solve_exact(A, b, r);
  if (!y) throw std::logic_error("relative Cartan matrix is singular");
  QVec out = x;
  for (std::size_t j = 0; j < r; ++j) out = qsub(out, qscale((*y)[j], simple_coroots_[j]));
  return out;
}

IwahoriWeylDatum::Factorisation IwahoriWeylDatum::factor(const AffineWeylElement &g) const {
  Factorisation f;
  f.omega_coords = omega_class(g);
  f.omega = omega_element(f.omega_coords);
  f.wa = multiply(g, inverse(f.omega));
  return f;
}

bool IwahoriWeylDatum::same_on_apartment(const AffineWeylElement &a, const AffineWeylElement &b) const {
  return a.linear == b.linear && nu(a.translation) == nu(b.translation);
}

IwahoriWeylDatum build_iwahori_weyl(const GaloisDatum &g, const AnisotropicMarking &m, std::size_t cap) {
  return IwahoriWeylDatum(std::make_shared<const RelativeContext>(g, m, cap));
}

// ---------------------------------------------------------------------------

namespace {

// Enumerates W over translations with free Lambda coordinates in [-R, R] and
// every torsion value, times all of W0.
void for_each_in_box(const IwahoriWeylDatum &d, Int R, const std::function<void(const AffineWeylElement &)> &fn) {
  const std::size_t lc = d.lambda_dim();
  const auto &mod = d.translations();
  (void)mod;
  std::vector<Int> lo(lc), hi(lc);
  // torsion coordinates come first in the cokernel layout
  std::size_t ntor = d.translations().torsion_invariants.size();
  for (std::size_t k = 0; k < lc; ++k) {
    if (k < ntor) {
      lo[k] = 0;
      hi[k] = to_int(d.translations().torsion_invariants[k]) - 1;
    } else {
      lo[k] = -R;
      hi[k] = R;
    }
  }
  Vec cur(lc);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == lc) {
      for (std::size_t w = 0; w < d.finite_weyl().order(); ++w) fn({cur, w});
      return;
    }
    for (Int v = lo[k]; v <= hi[k]; ++v) {
      cur[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
}

}  // namespace

CheckResult check_wa_omega_factorisation(const IwahoriWeylDatum &d, Int radius) {
  CheckResult res{"W = W_af x Omega", true, ""};
  std::size_t count = 0;
  std::map<Vec, AffineWeylElement> omega_cache;
  for_each_in_box(d, radius, [&](const AffineWeylElement &g) {
    if (!res.ok) return;
    ++count;
    auto word = d.fold_word(d.act(g, d.interior_point()));
    AffineWeylElement u = d.word_element(word);
    AffineWeylElement om = d.multiply(u, g);
    Vec c = d.omega_class(g);
    auto it = omega_cache.find(c);
    if (it == omega_cache.end()) it = omega_cache.emplace(c, d.omega_element(c)).first;
    std::ostringstream w;
    if (d.length(om) != 0) w << "folded element has positive length";
    else if (!(om == it->second)) w << "length-zero part differs from the Omega representative of its class";
    else if (!is_zero(d.omega_class(u))) w << "folding word does not lie in W_af";
    else if (word.size() != d.length(g)) w << "fold word length " << word.size() << " differs from length " << d.length(g);
    else if (is_zero(c) && d.length(g) == 0 && !(g == d.identity())) w << "nontrivial length-zero element of W_af";
    if (!w.str().empty()) {
      res.ok = false;
      res.detail = w.str() + " at translation " + to_string(g.translation) + ", linear " + std::to_string(g.linear);
    }
  });
  if (res.ok) res.detail = std::to_string(count) + " elements factor uniquely";
  return res;
}

std::vector<std::vector<long>> all_proper_facets(const IwahoriWeylDatum &d) {
  std::vector<std::vector<long>> out{{}};
  for (const auto &comp : d.components()) {
    std::vector<std::vector<long>> next;
    const std::size_t k = comp.size();
    for (const auto &base : out)
      for (std::size_t mask = 0; mask + 1 < (std::size_t(1) << k); ++mask) {
        auto J = base;
        for (std::size_t b = 0; b < k; ++b)
          if (mask >> b & 1) J.push_back(d.nodes()[comp[b]].label);
        next.push_back(J);
      }
    out = next;
  }
  for (auto &J : out) std::sort(J.begin(), J.end());
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::optional<RestrictedMap> restrict_map(const IwahoriWeylDatum &d, const AffineWeylElement &g, const QVec &x0,
                                          const std::vector<QVec> &D) {
  const std::size_t s = d.dim(), dd = D.size();
  QMat C = d.linear_matrix(g.linear);
  QVec nu = d.nu(g.translation);
  QMat Dm = columns(D, s);
  RestrictedMap r;
  r.M.assign(dd, QVec(dd, Rat(0)));
  for (std::size_t k = 0; k < dd; ++k) {
    auto y = solve_exact(Dm, s ? qmat_vec(C, D[k]) : QVec{}, dd);
    if (!y) return std::nullopt;
    for (std::size_t i = 0; i < dd; ++i) r.M[i][k] = (*y)[i];
  }
  QVec shift = s ? qsub(qadd(qmat_vec(C, x0), nu), x0) : QVec{};
  if (dd == 0) {
    if (!qis_zero(shift)) return std::nullopt;
    r.c = {};
    return r;
  }
  auto c = solve_exact(Dm, shift, dd);
  if (!c) return std::nullopt;
  r.c = *c;
  return r;
}

Mat coxeter_matrix(const IwahoriWeylDatum &d, const std::vector<AffineWeylElement> &gens, std::size_t bound) {
  const std::size_t k = gens.size();
  Mat m = zero_mat(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      AffineWeylElement p = d.multiply(gens[i], gens[j]), x = p;
      std::size_t ord = 1;
      while (!(x == d.identity()) && ord <= bound) {
        x = d.multiply(x, p);
        ++ord;
      }
      m[i][j] = ord > bound ? 0 : static_cast<Int>(ord);
    }
  return m;
}

bool FacetData::all_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.ok; });
}

namespace {

std::vector<AffineWeylElement> group_closure(const IwahoriWeylDatum &d, const std::vector<AffineWeylElement> &gens,
                                             std::size_t cap = 200000) {
  return closure(gens, d.identity(),
                 [&](const AffineWeylElement &a, const AffineWeylElement &b) { return d.multiply(a, b); }, cap,
                 "parabolic subgroup");
}

AffineWeylElement longest_of(const IwahoriWeylDatum &d, const std::vector<std::size_t> &pos) {
  std::vector<AffineWeylElement> gens;
  for (auto p : pos) gens.push_back(d.nodes()[p].reflection);
  auto all = group_closure(d, gens);
  AffineWeylElement best = d.identity();
  std::size_t bl = 0;
  for (const auto &w : all) {
    auto l = d.length(w);
    if (l > bl) {
      bl = l;
      best = w;
    }
  }
  return best;
}

// w maps the node function of p onto the node function of some q; returns q or -1.
long node_image(const IwahoriWeylDatum &d, const AffineWeylElement &w, std::size_t p) {
  // (f o w^{-1})(x) = grad . C^{-1}(x - nu) + level
  const auto &nd = d.nodes()[p];
  QMat Cinv = d.linear_matrix(d.w0_inverse(w.linear));
  QVec g = qmat_vec(qtranspose(Cinv, d.dim()), nd.grad);
  Rat level = nd.level - qdot(nd.grad, qmat_vec(Cinv, d.nu(w.translation)));
  for (std::size_t q = 0; q < d.nodes().size(); ++q)
    if (d.nodes()[q].grad == g && d.nodes()[q].level == level) return static_cast<long>(q);
  return -1;
}

std::size_t element_order(const IwahoriWeylDatum &d, const AffineWeylElement &g, std::size_t bound = 64) {
  AffineWeylElement x = g;
  std::size_t k = 1;
  while (!(x == d.identity()) && k <= bound) {
    x = d.multiply(x, g);
    ++k;
  }
  return k > bound ? 0 : k;
}

}  // namespace

FacetData analyze_facet(const IwahoriWeylDatum &d, const std::vector<long> &J, const FacetOptions &) {
  FacetData f;
  f.J = J;
  std::sort(f.J.begin(), f.J.end());
  f.J.erase(std::unique(f.J.begin(), f.J.end()), f.J.end());
  for (auto lab : f.J) {
    long p = d.node_position(lab);
    if (p < 0) throw std::invalid_argument("facet: " + std::to_string(lab) + " is not a node of the affine diagram");
    f.J_pos.push_back(static_cast<std::size_t>(p));
  }
  std::set<std::size_t> Jset(f.J_pos.begin(), f.J_pos.end());
  for (const auto &comp : d.components()) {
    bool all = std::all_of(comp.begin(), comp.end(), [&](std::size_t p) { return Jset.count(p) > 0; });
    if (all) throw std::invalid_argument("facet: J " + labels_str(f.J) + " contains a whole component of the affine diagram");
  }
  auto label_of = [&](std::size_t p) { return d.nodes()[p].label; };

  std::vector<AffineWeylElement> jgens;
  for (auto p : f.J_pos) jgens.push_back(d.nodes()[p].reflection);
  f.WJ = group_closure(d, jgens);
  f.checks.push_back({"W_J finite", true, "order " + std::to_string(f.WJ.size())});
  const AffineWeylElement wJ = longest_of(d, f.J_pos);

  for (const auto &comp : d.components()) {
    std::vector<std::size_t> free;
    for (auto p : comp)
      if (!Jset.count(p)) free.push_back(p);
    if (free.size() < 2) continue;
    for (auto i : free) {
      auto I = f.J_pos;
      I.push_back(i);
      AffineWeylElement si = d.multiply(longest_of(d, I), wJ);
      std::size_t ord = element_order(d, si);
      if (ord != 2) {
        std::string o = ord == 0 ? "infinite" : std::to_string(ord);
        throw FacetConstructionError("facet " + labels_str(f.J) + ": w_{J+" + std::to_string(label_of(i)) +
                                     "} w_J is not an involution (order " + o + ")");
      }
      AffineWeylElement sinv = d.inverse(si);
      for (auto j : f.J_pos) {
        AffineWeylElement conj = d.multiply(d.multiply(si, d.nodes()[j].reflection), sinv);
        bool hit = false;
        for (auto k : f.J_pos)
          if (conj == d.nodes()[k].reflection) hit = true;
        if (!hit)
          throw FacetConstructionError("facet " + labels_str(f.J) + ": s_" + std::to_string(label_of(i)) +
                                       " does not normalise W_J (conjugate of s_" + std::to_string(label_of(j)) +
                                       " is not a simple reflection of J)");
        long q = node_image(d, si, j);
        if (q < 0 || !Jset.count(static_cast<std::size_t>(q)))
          throw FacetConstructionError("facet " + labels_str(f.J) + ": s_" + std::to_string(label_of(i)) +
                                       " does not map J onto J");
      }
      f.S_f_af_labels.push_back(label_of(i));
      f.S_f_af.push_back(si);
    }
  }
  f.checks.push_back({"S_f,af involutions normalising W_J", true, std::to_string(f.S_f_af.size()) + " generators"});

  // Omega_f: box over the orders of the generator permutations
  const std::size_t od = d.omega_dim();
  const auto &omod = d.omega_cokernel().moduli;
  auto stabilises_J = [&](const std::vector<std::size_t> &perm) {
    for (auto p : f.J_pos)
      if (!Jset.count(perm[p])) return false;
    return true;
  };
  std::vector<Int> ord(od);
  std::vector<Vec> gens;
  for (std::size_t k = 0; k < od; ++k) {
    Vec e(od, 0);
    e[k] = 1;
    auto perm = d.omega_permutation(e);
    auto x = perm;
    Int o = 1;
    auto idperm = [&](const std::vector<std::size_t> &v) {
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != i) return false;
      return true;
    };
    while (!idperm(x)) {
      std::vector<std::size_t> y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = perm[x[i]];
      x = y;
      ++o;
    }
    ord[k] = o;
    Vec g(od, 0);
    g[k] = o;
    g = d.omega_reduce(g);
    if (!is_zero(g)) gens.push_back(g);
  }
  {
    Vec cur(od, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == od) {
        if (!is_zero(cur) && stabilises_J(d.omega_permutation(cur))) gens.push_back(cur);
        return;
      }
      for (Int v = 0; v < ord[k]; ++v) {
        cur[k] = v;
        rec(k + 1);
      }
    };
    rec(0);
  }
  const Cokernel of = subgroup_structure(gens, omod);
  f.Omega_f = of.group;
  for (std::size_t j = 0; j < of.moduli.size(); ++j) {
    Vec g(od, 0);
    for (std::size_t i = 0; i < gens.size(); ++i) g = vadd(g, vscale(to_int(of.section(i, j)), gens[i]));
    f.Omega_f_gens.push_back(d.omega_reduce(g));
  }

  // Omega_f_tor: torsion elements of Omega_f fixing the free nodes
  {
    std::size_t ntor = d.omega().torsion_invariants.size();
    Vec cur(od, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == ntor) {
        if (!in_subgroup(gens, omod, cur)) return;
        auto perm = d.omega_permutation(cur);
        for (std::size_t p = 0; p < perm.size(); ++p)
          if (!Jset.count(p) && perm[p] != p) return;
        f.Omega_f_tor_elements.push_back(cur);
        return;
      }
      for (Int v = 0; v < to_int(omod[k]); ++v) {
        cur[k] = v;
        rec(k + 1);
      }
    };
    rec(0);
    f.Omega_f_tor = subgroup_structure(f.Omega_f_tor_elements, omod).group;
    std::vector<Vec> chars{{}};
    for (const auto &dinv : f.Omega_f_tor.torsion_invariants) {
      std::vector<Vec> next;
      for (const auto &c : chars)
        for (Int v = 0; v < to_int(dinv); ++v) {
          auto x = c;
          x.push_back(v);
          next.push_back(x);
        }
      chars = next;
    }
    f.psi_characters = chars;
    std::vector<Vec> rel = f.Omega_f_tor_elements;
    auto q = subgroup_structure(f.Omega_f_gens, omod, rel);
    f.Omega_f_quotient = q.group;
  }
  return f;
}

// ---------------------------------------------------------------------------

void facet_root_datum(const IwahoriWeylDatum &d, FacetData &f, const FacetOptions &opt) {
  const std::size_t s = d.dim();
  std::set<std::size_t> Jset(f.J_pos.begin(), f.J_pos.end());
  auto fail = [&](const std::string &what) {
    throw FacetConstructionError("facet " + labels_str(f.J) + ": " + what);
  };

  // affine span of the facet
  QMat eq;
  QVec rhs;
  for (auto p : f.J_pos) {
    eq.push_back(d.nodes()[p].grad);
    rhs.push_back(-d.nodes()[p].level);
  }
  f.D = eq.empty() ? nullspace_q(QMat{}, s) : nullspace_q(eq, s);
  if (eq.empty()) {
    f.D.clear();
    for (std::size_t i = 0; i < s; ++i) {
      QVec e(s, Rat(0));
      e[i] = 1;
      f.D.push_back(e);
    }
  }
  const std::size_t dd = f.D.size();
  QVec xany(s, Rat(0));
  if (!eq.empty()) {
    auto x = solve_exact(eq, rhs, s);
    if (!x) fail("facet equations are inconsistent");
    xany = *x;
  }
  auto restrict_at = [&](const AffineWeylElement &g, const QVec &x0) {
    auto r = restrict_map(d, g, x0, f.D);
    if (!r) fail("element does not preserve the affine span of the facet");
    return *r;
  };
  auto lin_closure = [&](const std::vector<QMat> &ms) {
    return closure(ms, qidentity(dd), [](const QMat &a, const QMat &b) { return qmat_mul(a, b); }, 100000,
                   "restricted linear group");
  };

  // choose the dropped node per component
  std::map<long, std::size_t> idx_of_label;
  for (std::size_t k = 0; k < f.S_f_af_labels.size(); ++k) idx_of_label[f.S_f_af_labels[k]] = k;
  std::vector<QMat> lin_any;
  for (const auto &g : f.S_f_af) lin_any.push_back(restrict_at(g, xany).M);
  std::set<long> dropped;
  for (const auto &comp : d.components()) {
    std::vector<long> labs;
    for (auto p : comp)
      if (idx_of_label.count(d.nodes()[p].label)) labs.push_back(d.nodes()[p].label);
    if (labs.empty()) continue;
    std::vector<long> cand;
    for (auto l : labs)
      if (l <= 0) cand.push_back(l);
    std::vector<long> fin;
    for (auto l : labs)
      if (l > 0) fin.push_back(l);
    std::sort(fin.rbegin(), fin.rend());
    cand.insert(cand.end(), fin.begin(), fin.end());
    std::vector<QMat> all;
    for (auto l : labs) all.push_back(lin_any[idx_of_label[l]]);
    const std::size_t full = lin_closure(all).size();
    bool chosen = false;
    for (auto k : cand) {
      std::vector<QMat> part;
      for (auto l : labs)
        if (l != k) part.push_back(lin_any[idx_of_label[l]]);
      if (lin_closure(part).size() == full) {
        dropped.insert(k);
        f.dropped_labels.push_back(k);
        chosen = true;
        break;
      }
    }
    if (!chosen) fail("no special vertex among the candidate vertices");
  }
  for (auto l : f.S_f_af_labels)
    if (!dropped.count(l)) f.S_f_labels.push_back(l);

  // x_f: fixed by S_f, on the facet span, no central component
  {
    QMat A;
    QVec b;
    for (auto l : f.S_f_labels) {
      auto r = restrict_at(f.S_f_af[idx_of_label[l]], xany);
      for (std::size_t i = 0; i < dd; ++i) {
        QVec row = r.M[i];
        row[i] -= 1;
        A.push_back(row);
        b.push_back(-r.c[i]);
      }
    }
    // central_part is linear: P(xany + D y) = 0
    QVec pc = d.central_part(xany);
    std::vector<QVec> pd;
    for (const auto &v : f.D) pd.push_back(d.central_part(v));
    for (std::size_t i = 0; i < s; ++i) {
      QVec row(dd);
      for (std::size_t k = 0; k < dd; ++k) row[k] = pd[k][i];
      A.push_back(row);
      b.push_back(-pc[i]);
    }
    QVec y(dd, Rat(0));
    if (dd > 0) {
      if (rank_q(A) != dd) fail("the vertex x_f is not unique");
      auto sol = solve_exact(A, b, dd);
      if (!sol) fail("no common fixed point of S_f on the facet span");
      y = *sol;
    }
    f.x_f = xany;
    for (std::size_t k = 0; k < dd; ++k) f.x_f = qadd(f.x_f, qscale(y[k], f.D[k]));
    f.x0 = f.x_f;
  }

  // interior point p_f
  {
    const std::size_t r = d.finite_weyl().simple_reflections.size();
    QMat A;
    QVec b;
    for (std::size_t c = 0; c < d.components().size(); ++c) {
      const auto &comp = d.components()[c];
      std::size_t nfree = 0;
      for (auto p : comp)
        if (!Jset.count(p)) ++nfree;
      const auto &coeff = d.highest_coefficients()[c];
      std::size_t fi = 0;
      for (auto p : comp) {
        if (d.nodes()[p].affine) continue;
        Int nk = coeff[fi++];
        A.push_back(d.nodes()[p].grad);
        b.push_back(Jset.count(p) ? Rat(0) : Rat(1) / Rat(nk * static_cast<Int>(nfree)));
      }
    }
    // central part zero: orthogonal to nothing, so pin via coroot span
    std::vector<QVec> cor;
    for (const auto &c : d.context().relative.relative_simple_coroots) cor.push_back(to_q(c));
    QVec p(s, Rat(0));
    if (r > 0) {
      QMat Ay(A.size(), QVec(r));
      for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < r; ++j) Ay[i][j] = qdot(A[i], cor[j]);
      auto y = solve_exact(Ay, b, r);
      if (!y) fail("cannot place a point inside the facet");
      for (std::size_t j = 0; j < r; ++j) p = qadd(p, qscale((*y)[j], cor[j]));
    }
    f.p_f = p;
    for (std::size_t q = 0; q < d.nodes().size(); ++q) {
      Rat v = d.node_value(q, p);
      if (Jset.count(q) ? v != 0 : v <= 0) fail("interior point of the facet misplaced");
    }
  }

  // restricted maps at x_f
  std::vector<RestrictedMap> rS;
  for (const auto &g : f.S_f_af) rS.push_back(restrict_at(g, f.x_f));
  std::vector<QMat> sf_lin;
  for (auto l : f.S_f_labels) {
    const auto &r = rS[idx_of_label[l]];
    if (!qis_zero(r.c)) fail("S_f element does not fix x_f");
    sf_lin.push_back(r.M);
  }
  f.W0_J = lin_closure(sf_lin);
  std::set<QMat> w0set(f.W0_J.begin(), f.W0_J.end());

  // XJ from the dropped generators
  std::vector<QVec> xj_gen;
  for (auto k : f.dropped_labels) {
    const auto &r = rS[idx_of_label[k]];
    if (!w0set.count(r.M)) fail("linear part of the dropped generator is not in W0(J)");
    for (const auto &g : f.W0_J) xj_gen.push_back(qmat_vec(g, r.c));
  }
  f.XJ = lattice_span(xj_gen, dd);

  // Xf = XJ + W0(J) translations of Omega_f
  std::vector<RestrictedMap> rO;
  for (const auto &c : f.Omega_f_gens) rO.push_back(restrict_at(d.omega_element(c), f.x_f));
  std::vector<QVec> xf_gen = f.XJ;
  for (const auto &r : rO) {
    if (!w0set.count(r.M)) fail("linear part of an Omega_f element is not in W0(J)");
    for (const auto &g : f.W0_J) xf_gen.push_back(qmat_vec(g, r.c));
  }
  f.Xf = lattice_span(xf_gen, dd);
  if (f.Xf.size() != dd)
    fail("Xf has rank " + std::to_string(f.Xf.size()) + " but the facet span has dimension " + std::to_string(dd));
  const std::size_t m = dd;
  for (const auto &v : f.Xf) {
    QVec w(s, Rat(0));
    for (std::size_t k = 0; k < dd; ++k) w = qadd(w, qscale(v[k], f.D[k]));
    f.Xf_vectors.push_back(w);
  }
  auto to_xf = [&](const QVec &v) -> Vec {
    auto c = coords_in(f.Xf, v);
    if (!c || !is_integral(*c)) fail("vector " + to_string(v) + " is not in Xf");
    return to_int_vec(*c);
  };
  QMat P = columns(f.Xf, dd);
  std::optional<QMat> Pinv = m ? inverse_q(P) : std::optional<QMat>(QMat{});
  if (!Pinv) fail("Xf basis is singular");
  auto mat_to_xf = [&](const QMat &M) -> Mat {
    if (m == 0) return Mat{};
    QMat X = qmat_mul(*Pinv, qmat_mul(M, P));
    Mat out(m, Vec(m));
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_integral(X[i])) fail("W0(J) does not preserve Xf");
      out[i] = to_int_vec(X[i]);
    }
    return out;
  };
  for (const auto &g : f.W0_J) f.W0_J_xf.push_back(mat_to_xf(g));
  for (const auto &v : f.XJ) f.XJ_in_Xf.push_back(to_xf(v));
  for (const auto &r : rO) {
    f.omega_translation.push_back(to_xf(r.c));
    f.omega_linear.push_back(mat_to_xf(r.M));
  }

  // certify XJ: BFS from W0(J) under S_f,af
  {
    CheckResult cr{"X(J) certified", true, ""};
    if (!f.S_f_af.empty()) {
      std::set<RestrictedMap> seen;
      std::vector<RestrictedMap> layer;
      for (const auto &g : f.W0_J) {
        RestrictedMap x{g, QVec(dd, Rat(0))};
        seen.insert(x);
        layer.push_back(x);
      }
      std::set<RestrictedMap> targets;
      for (const auto &g : f.W0_J) {
        targets.insert({g, QVec(dd, Rat(0))});
        for (const auto &xi : f.XJ) {
          targets.insert({g, xi});
          targets.insert({g, qscale(Rat(-1), xi)});
        }
      }
      std::size_t hit = 0;
      for (const auto &t : targets) hit += seen.count(t);
      for (std::size_t rad = 0; rad < opt.radius && hit < targets.size() && cr.ok; ++rad) {
        std::vector<RestrictedMap> next;
        for (const auto &x : layer)
          for (const auto &g : rS) {
            RestrictedMap y = compose(g, x);
            if (!seen.insert(y).second) continue;
            if (!w0set.count(y.M)) {
              cr.ok = false;
              cr.detail = "restricted linear part outside W0(J)";
              break;
            }
            // translation part must lie in XJ: y = (M, c) with c in XJ
            auto c = coords_in(f.XJ, y.c);
            if (!c || !is_integral(*c)) {
              cr.ok = false;
              cr.detail = "translation " + to_string(y.c) + " outside X(J)";
              break;
            }
            if (targets.count(y)) ++hit;
            next.push_back(y);
          }
        layer = std::move(next);
      }
      if (cr.ok && hit < targets.size()) {
        cr.ok = false;
        cr.detail = "radius " + std::to_string(opt.radius) + " reaches " + std::to_string(hit) + " of " +
                    std::to_string(targets.size()) + " certificate targets";
      }
      if (cr.ok)
        cr.detail = std::to_string(targets.size()) + " = |W0(J)|(1+2 rk X(J)) targets reached, " +
                    std::to_string(seen.size()) + " elements";
    } else {
      cr.detail = "maximal facet, X(J) = 0";
    }
    f.checks.push_back(cr);
  }

  // rank identity
  {
    CheckResult cr{"|S_f| = rk X(J)", f.S_f_labels.size() == f.XJ.size(),
                   std::to_string(f.S_f_labels.size()) + " vs " + std::to_string(f.XJ.size())};
    f.checks.push_back(cr);
  }

  // Rf
  {
    std::vector<Vec> sroots, scoroots;
    QVec dir = qsub(f.p_f, f.x_f);
    auto y = coords_in(f.D, dir);
    if (!y) fail("facet point outside the facet span");
    for (auto l : f.S_f_labels) {
      const QMat &M = rS[idx_of_label[l]].M;
      QMat K = qsub_mat(qidentity(dd), M);
      std::size_t j = 0;
      QVec col(dd);
      for (; j < dd; ++j) {
        for (std::size_t i = 0; i < dd; ++i) col[i] = K[i][j];
        if (!qis_zero(col)) break;
      }
      if (j == dd) fail("S_f element acts trivially on the facet span");
      auto c = coords_in(f.XJ, col);
      if (!c) fail("reflection direction outside X(J)");
      QVec beta_xj = qscale(Rat(1) / rat_content(*c), *c);
      QVec beta(dd, Rat(0));
      for (std::size_t k = 0; k < f.XJ.size(); ++k) beta = qadd(beta, qscale(beta_xj[k], f.XJ[k]));
      // K y = <beta^vee, y> beta
      std::size_t t = 0;
      while (beta[t] == 0) ++t;
      QVec cov(dd);
      for (std::size_t k = 0; k < dd; ++k) cov[k] = K[t][k] / beta[t];
      for (std::size_t i = 0; i < dd; ++i)
        for (std::size_t k = 0; k < dd; ++k)
          if (K[i][k] != cov[k] * beta[i]) fail("S_f element is not a reflection on the facet span");
      if (qdot(cov, *y) < 0) {
        beta = qscale(Rat(-1), beta);
        cov = qscale(Rat(-1), cov);
      }
      sroots.push_back(to_xf(beta));
      // functional on Xf coordinates
      QVec cf(m);
      for (std::size_t k = 0; k < m; ++k) cf[k] = qdot(cov, f.Xf[k]);
      if (!is_integral(cf)) fail("coroot is not integral on Xf");
      scoroots.push_back(to_int_vec(cf));
    }
    try {
      f.Rf = from_simple_roots("Rf", m, sroots, scoroots);
    } catch (const std::invalid_argument &e) {
      fail(std::string("reconstructed root datum is invalid: ") + e.what());
    }
    auto v = validate_and_classify(f.Rf);
    f.Rf_types = v.types;
    f.Rf_simple_labels = f.S_f_labels;
    CheckResult wc{"W(Rf) = W0(J)", true, ""};
    RootSystem rsf(f.Rf);
    WeylGroup wf(rsf);
    std::set<Mat> a, b(f.W0_J_xf.begin(), f.W0_J_xf.end());
    for (const auto &e : wf.elements()) a.insert(e.matrix);
    if (m == 0) a = b;
    wc.ok = a == b;
    wc.detail = "orders " + std::to_string(a.size()) + " and " + std::to_string(b.size());
    f.checks.push_back(wc);
    for (auto k : f.dropped_labels) {
      Mat Mk = mat_to_xf(rS[idx_of_label[k]].M);
      long found = -1;
      for (std::size_t i = 0; i < f.Rf.roots.size() / 2 && found < 0; ++i)
        if (rsf.reflection(i) == Mk) found = static_cast<long>(i);
      if (found < 0) fail("linear part of the dropped generator is not a reflection of Rf");
      f.Rf_dropped_root.push_back(found);
    }
  }

  // BFS over W_af(J) x Omega_f, images in W0(J) x Xf
  {
    CheckResult cr{"W_af(J) x Omega_f -> W0(J) x Xf bijective on truncation", true, ""};
    std::vector<AffineWeylElement> gens = f.S_f_af;
    for (const auto &c : f.Omega_f_gens) {
      gens.push_back(d.omega_element(c));
      gens.push_back(d.inverse(d.omega_element(c)));
    }
    for (const auto &c : f.Omega_f_tor_elements) gens.push_back(d.omega_element(c));
    std::set<Vec> tor(f.Omega_f_tor_elements.begin(), f.Omega_f_tor_elements.end());
    std::map<AffineWeylElement, std::size_t> seen;
    std::vector<AffineWeylElement> layer{d.identity()};
    seen[d.identity()] = 0;
    std::map<std::pair<Mat, Vec>, AffineWeylElement> image;
    const std::size_t cap = 200000;
    auto record = [&](const AffineWeylElement &g) {
      auto r = restrict_map(d, g, f.x_f, f.D);
      if (!r) {
        cr.ok = false;
        cr.detail = "element does not preserve the facet span";
        return;
      }
      if (!w0set.count(r->M)) {
        cr.ok = false;
        cr.detail = "linear part outside W0(J)";
        return;
      }
      Mat M = mat_to_xf(r->M);
      Vec t = to_xf(r->c);
      auto key = std::make_pair(M, t);
      auto it = image.find(key);
      if (it == image.end()) {
        image.emplace(key, g);
        return;
      }
      AffineWeylElement q = d.multiply(g, d.inverse(it->second));
      Vec c = d.omega_class(q);
      if (!tor.count(c) || !(q == d.omega_element(c))) {
        cr.ok = false;
        cr.detail = "two elements with equal image differ by an element outside Omega_f,tor";
      }
    };
    // seeds: the finite group generated by S_f
    std::vector<AffineWeylElement> sf;
    for (auto l : f.S_f_labels)
      for (std::size_t k = 0; k < f.S_f_af_labels.size(); ++k)
        if (f.S_f_af_labels[k] == l) sf.push_back(f.S_f_af[k]);
    layer = group_closure(d, sf);
    for (const auto &g : layer) {
      seen[g] = 0;
      record(g);
    }
    for (std::size_t rad = 0; rad < opt.radius && cr.ok && seen.size() < cap; ++rad) {
      std::vector<AffineWeylElement> next;
      for (const auto &x : layer)
        for (const auto &g : gens) {
          AffineWeylElement y = d.multiply(g, x);
          if (seen.count(y)) continue;
          seen[y] = rad + 1;
          next.push_back(y);
          record(y);
          if (!cr.ok) break;
        }
      layer = std::move(next);
    }
    if (cr.ok) {
      // every target (M, t) with t in {-1,0,1}^m is hit
      std::size_t missing = 0, total = 0;
      Vec t(m, -1);
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == m) {
          for (const auto &M : f.W0_J_xf) {
            ++total;
            if (!image.count({M, t})) ++missing;
          }
          return;
        }
        for (Int v = -1; v <= 1; ++v) {
          t[k] = v;
          rec(k + 1);
        }
      };
      rec(0);
      if (missing) {
        cr.ok = false;
        cr.detail = std::to_string(missing) + " of " + std::to_string(total) + " targets of W0(J) x Xf not reached";
      } else {
        cr.detail = std::to_string(seen.size()) + " elements, " + std::to_string(total) + " targets reached";
      }
    }
    f.checks.push_back(cr);
  }

  // every element of W(J) (box enumeration) is in W_af(J) x Omega_f
  {
    CheckResult cr{"W(J) = W_af(J) x Omega_f", true, ""};
    std::size_t count = 0;
    const Int R = 6;
    std::vector<std::size_t> dfaf;
    for (auto l : f.S_f_af_labels) dfaf.push_back(static_cast<std::size_t>(d.node_position(l)));
    std::map<Vec, AffineWeylElement> om_cache;
    for_each_in_box(d, R, [&](const AffineWeylElement &g) {
      if (!cr.ok) return;
      for (auto p : f.J_pos) {
        long q = node_image(d, g, p);
        if (q < 0 || !Jset.count(static_cast<std::size_t>(q))) return;
      }
      ++count;
      Vec c = d.omega_class(g);
      if (!in_subgroup(f.Omega_f_gens, d.omega_cokernel().moduli, c)) {
        cr.ok = false;
        cr.detail = "element of W(J) with Omega class outside Omega_f";
        return;
      }
      auto it = om_cache.find(c);
      if (it == om_cache.end()) it = om_cache.emplace(c, d.omega_element(c)).first;
      AffineWeylElement u = d.multiply(g, d.inverse(it->second));
      QVec y = d.act(u, f.p_f);
      for (std::size_t iter = 0; iter < 10000; ++iter) {
        std::size_t k = 0;
        while (k < dfaf.size() && d.node_value(dfaf[k], y) >= 0) ++k;
        if (k == dfaf.size()) break;
        u = d.multiply(f.S_f_af[k], u);
        y = d.act(f.S_f_af[k], y);
      }
      if (!(u == d.identity())) {
        cr.ok = false;
        cr.detail = "element of W(J) at translation " + to_string(g.translation) + " is not in W_af(J) x Omega_f";
      }
    });
    if (cr.ok) cr.detail = std::to_string(count) + " elements of W(J) in the radius-6 box factor";
    f.checks.push_back(cr);
  }

  // Omega_f,tor is central and equals the torsion of the pointwise stabiliser of S_f,af
  {
    CheckResult cr{"Omega_f,tor = torsion of Z(W(J))", true, ""};
    std::vector<AffineWeylElement> all = f.S_f_af;
    for (const auto &c : f.Omega_f_gens) all.push_back(d.omega_element(c));
    for (const auto &c : f.Omega_f_tor_elements) {
      AffineWeylElement w = d.omega_element(c);
      for (const auto &g : all)
        if (!(d.multiply(w, g) == d.multiply(g, w))) {
          cr.ok = false;
          cr.detail = "Omega_f,tor element " + to_string(c) + " is not central";
        }
    }
    std::size_t ntor = d.omega().torsion_invariants.size();
    const auto &omod = d.omega_cokernel().moduli;
    std::set<Vec> fixers;
    Vec cur(d.omega_dim(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == ntor) {
        if (!in_subgroup(f.Omega_f_gens, omod, cur)) return;
        AffineWeylElement w = d.omega_element(cur);
        for (const auto &g : f.S_f_af)
          if (!(d.multiply(w, g) == d.multiply(g, w))) return;
        fixers.insert(cur);
        return;
      }
      for (Int v = 0; v < to_int(omod[k]); ++v) {
        cur[k] = v;
        rec(k + 1);
      }
    };
    rec(0);
    std::set<Vec> tor(f.Omega_f_tor_elements.begin(), f.Omega_f_tor_elements.end());
    if (cr.ok && fixers != tor) {
      cr.ok = false;
      cr.detail = "torsion pointwise stabiliser has " + std::to_string(fixers.size()) + " elements, Omega_f,tor has " +
                  std::to_string(tor.size());
    }
    if (cr.ok) cr.detail = "order " + std::to_string(tor.size());
    f.checks.push_back(cr);
  }
  f.completed = true;
}

}  // namespace unihecke
