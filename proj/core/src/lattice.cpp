#include "unihecke/lattice.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace unihecke {

Int add_checked(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in add");
  return r;
}
Int sub_checked(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in sub");
  return r;
}
Int mul_checked(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in mul");
  return r;
}

Int to_int(const BigInt &x) {
  if (x > BigInt(INT64_MAX) || x < BigInt(INT64_MIN))
    throw std::overflow_error("integer does not fit in int64");
  return static_cast<Int>(x);
}

Int to_int(const Rat &x) {
  if (boost::multiprecision::denominator(x) != 1)
    throw std::invalid_argument("rational " + to_string(x) + " is not an integer");
  return to_int(BigInt(boost::multiprecision::numerator(x)));
}

Vec vadd(const Vec &a, const Vec &b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = add_checked(a[i], b[i]);
  return r;
}
Vec vsub(const Vec &a, const Vec &b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = sub_checked(a[i], b[i]);
  return r;
}
Vec vneg(const Vec &a) { return vscale(-1, a); }
Vec vscale(Int k, const Vec &a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul_checked(k, a[i]);
  return r;
}
Int dot(const Vec &a, const Vec &b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = add_checked(s, mul_checked(a[i], b[i]));
  return s;
}
bool is_zero(const Vec &a) {
  for (Int x : a)
    if (x) return false;
  return true;
}
Int content(const Vec &a) {
  Int g = 0;
  for (Int x : a) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

Mat zero_mat(std::size_t r, std::size_t c) { return Mat(r, Vec(c, 0)); }
Mat identity_mat(std::size_t n) {
  Mat m = zero_mat(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}
std::size_t mat_cols(const Mat &a) { return a.empty() ? 0 : a.front().size(); }

Mat transpose(const Mat &a, std::size_t cols_if_empty) {
  std::size_t r = a.size(), c = a.empty() ? cols_if_empty : a.front().size();
  Mat t = zero_mat(c, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) t[j][i] = a[i][j];
  return t;
}

Mat mat_mul(const Mat &a, const Mat &b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b.front().size();
  if (!a.empty() && a.front().size() != k) throw std::invalid_argument("mat_mul: dimension mismatch");
  Mat p = zero_mat(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      Int x = a[i][l];
      if (!x) continue;
      for (std::size_t j = 0; j < m; ++j) p[i][j] = add_checked(p[i][j], mul_checked(x, b[l][j]));
    }
  return p;
}

Vec mat_vec(const Mat &a, const Vec &v) {
  Vec r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], v);
  return r;
}

Mat mat_sub(const Mat &a, const Mat &b) {
  Mat r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = vsub(a[i], b[i]);
  return r;
}

bool is_identity(const Mat &a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

std::optional<Mat> integral_inverse(const Mat &a) {
  auto inv = inverse_q(to_q(a));
  if (!inv) return std::nullopt;
  Mat r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!is_integral((*inv)[i])) return std::nullopt;
    r[i] = to_int_vec((*inv)[i]);
  }
  return r;
}

IntegerMatrix to_big(const Mat &a, std::size_t cols_if_empty) {
  std::vector<std::vector<long long>> rows;
  rows.reserve(a.size());
  for (const auto &r : a) rows.emplace_back(r.begin(), r.end());
  return IntegerMatrix::from_rows(rows, a.empty() ? cols_if_empty : a.front().size());
}

Mat from_big(const IntegerMatrix &a) {
  Mat m = zero_mat(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = to_int(a(i, j));
  return m;
}

Mat columns_to_mat(const std::vector<Vec> &cols, std::size_t rows) {
  Mat m = zero_mat(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = cols[j][i];
  return m;
}

std::vector<Vec> mat_columns(const Mat &a) {
  std::vector<Vec> c(mat_cols(a), Vec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[j][i] = a[i][j];
  return c;
}

Vec from_big_vec(const std::vector<BigInt> &v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_int(v[i]);
  return r;
}
std::vector<BigInt> to_big_vec(const Vec &v) { return {v.begin(), v.end()}; }

QVec to_q(const Vec &v) { return {v.begin(), v.end()}; }
QMat to_q(const Mat &a) {
  QMat q;
  q.reserve(a.size());
  for (const auto &r : a) q.push_back(to_q(r));
  return q;
}
QVec qadd(const QVec &a, const QVec &b) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
QVec qsub(const QVec &a, const QVec &b) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
QVec qscale(const Rat &k, const QVec &a) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
  return r;
}
Rat qdot(const QVec &a, const QVec &b) {
  if (a.size() != b.size()) throw std::invalid_argument("qdot: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
QVec qmat_vec(const QMat &a, const QVec &v) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = qdot(a[i], v);
  return r;
}
QMat qmat_mul(const QMat &a, const QMat &b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b.front().size();
  QMat p(n, QVec(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) p[i][j] += a[i][l] * b[l][j];
    }
  return p;
}
QMat qtranspose(const QMat &a, std::size_t cols_if_empty) {
  std::size_t r = a.size(), c = a.empty() ? cols_if_empty : a.front().size();
  QMat t(c, QVec(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) t[j][i] = a[i][j];
  return t;
}
bool qis_zero(const QVec &a) {
  for (const auto &x : a)
    if (x != 0) return false;
  return true;
}
bool is_integral(const QVec &a) {
  for (const auto &x : a)
    if (boost::multiprecision::denominator(x) != 1) return false;
  return true;
}
Vec to_int_vec(const QVec &a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = to_int(a[i]);
  return r;
}
BigInt floor_rat(const Rat &x) {
  BigInt n = boost::multiprecision::numerator(x), d = boost::multiprecision::denominator(x);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}
Rat rat_content(const QVec &v) {
  // gcd(p_i/q_i) = gcd(p_i * L/q_i) / L with L = lcm(q_i)
  BigInt l = 1;
  for (const auto &x : v) l = boost::multiprecision::lcm(l, BigInt(boost::multiprecision::denominator(x)));
  BigInt g = 0;
  for (const auto &x : v) {
    BigInt s = BigInt(boost::multiprecision::numerator(x)) * (l / BigInt(boost::multiprecision::denominator(x)));
    g = boost::multiprecision::gcd(g, s < 0 ? BigInt(-s) : s);
  }
  return Rat(g, l);
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMat &a, std::size_t ncols) {
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t c = 0; c < ncols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rat inv = 1 / a[row][c];
    for (auto &x : a[row]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= f * a[row][j];
    }
    piv.push_back(c);
    ++row;
  }
  return piv;
}

}  // namespace

std::size_t rank_q(const QMat &a) {
  QMat m = a;
  return rref(m, a.empty() ? 0 : a.front().size()).size();
}

std::optional<QVec> solve_q(const QMat &a, const QVec &b, std::size_t ncols) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_q: size mismatch");
  QMat m = a;
  for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(b[i]);
  auto piv = rref(m, ncols);
  for (std::size_t i = piv.size(); i < m.size(); ++i)
    if (m[i][ncols] != 0) return std::nullopt;
  QVec x(ncols, Rat(0));
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = m[k][ncols];
  return x;
}

std::vector<QVec> nullspace_q(const QMat &a, std::size_t ncols) {
  QMat m = a;
  auto piv = rref(m, ncols);
  std::vector<bool> is_piv(ncols, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    QVec v(ncols, Rat(0));
    v[f] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QMat> inverse_q(const QMat &a) {
  const std::size_t n = a.size();
  QMat m = a;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("inverse_q: not square");
    for (std::size_t j = 0; j < n; ++j) m[i].push_back(i == j ? 1 : 0);
  }
  auto piv = rref(m, n);
  if (piv.size() != n) return std::nullopt;
  QMat inv(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

std::string to_string(const Vec &v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}
std::string to_string(const Rat &r) {
  std::ostringstream os;
  os << r;
  return os.str();
}
std::string to_string(const QVec &v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}
std::string to_string(const Mat &m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + to_string(m[i]);
  return s + "]";
}

}  // namespace unihecke
