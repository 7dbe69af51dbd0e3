#include "unihecke/integer_modules.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace unihecke {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols) {}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto &r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long long v : r) a_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long long>> &rows,
                                       std::size_t cols_if_empty) {
  std::size_t c = rows.empty() ? cols_if_empty : rows.front().size();
  IntegerMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntegerMatrix IntegerMatrix::from_columns(const std::vector<std::vector<long long>> &cols,
                                          std::size_t rows_if_empty) {
  return from_rows(cols, rows_if_empty).transpose();
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix &o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  IntegerMatrix p(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt &x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += x * o(k, j);
    }
  return p;
}

IntegerMatrix IntegerMatrix::operator-(const IntegerMatrix &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch");
  IntegerMatrix p = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) p.a_[i] -= o.a_[i];
  return p;
}

IntegerMatrix IntegerMatrix::operator+(const IntegerMatrix &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch");
  IntegerMatrix p = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) p.a_[i] += o.a_[i];
  return p;
}

bool IntegerMatrix::is_zero() const {
  for (const auto &x : a_)
    if (x != 0) return false;
  return true;
}

std::vector<BigInt> IntegerMatrix::column(std::size_t j) const {
  std::vector<BigInt> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<BigInt> IntegerMatrix::row(std::size_t i) const {
  return {a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_)};
}

IntegerMatrix IntegerMatrix::hconcat(const IntegerMatrix &o) const {
  if (rows_ != o.rows_) throw std::invalid_argument("hconcat row mismatch");
  IntegerMatrix p(rows_, cols_ + o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) p(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < o.cols_; ++j) p(i, cols_ + j) = o(i, j);
  }
  return p;
}

IntegerMatrix IntegerMatrix::columns(const std::vector<std::size_t> &idx) const {
  IntegerMatrix p(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) p(i, j) = (*this)(i, idx[j]);
  return p;
}

IntegerMatrix IntegerMatrix::row_block(std::size_t begin, std::size_t end) const {
  IntegerMatrix p(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < cols_; ++j) p(i - begin, j) = (*this)(i, j);
  return p;
}

void IntegerMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}
void IntegerMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}
void IntegerMatrix::add_row(std::size_t i, std::size_t j, const BigInt &k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += k * (*this)(j, c);
}
void IntegerMatrix::add_col(std::size_t i, std::size_t j, const BigInt &k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += k * (*this)(r, j);
}
void IntegerMatrix::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}
void IntegerMatrix::negate_col(std::size_t i) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) = -(*this)(r, i);
}

std::vector<std::vector<long long>> IntegerMatrix::to_ll_rows() const {
  std::vector<std::vector<long long>> out(rows_, std::vector<long long>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = static_cast<long long>((*this)(i, j));
  return out;
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

BigInt determinant(const IntegerMatrix &m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntegerMatrix &m) {
  if (!m.is_square()) return false;
  BigInt d = determinant(m);
  return d == 1 || d == -1;
}

namespace {

BigInt babs(const BigInt &x) { return x < 0 ? BigInt(-x) : x; }

// Smith form that also tracks U^{-1}.
struct SmithWork {
  IntegerMatrix S, U, Uinv, V;
};

SmithWork smith_work(const IntegerMatrix &m) {
  const std::size_t r = m.rows(), c = m.cols();
  SmithWork w{m, IntegerMatrix::identity(r), IntegerMatrix::identity(r), IntegerMatrix::identity(c)};
  auto &S = w.S;
  auto row_swap = [&](std::size_t i, std::size_t j) {
    S.swap_rows(i, j);
    w.U.swap_rows(i, j);
    w.Uinv.swap_cols(i, j);
  };
  auto row_add = [&](std::size_t i, std::size_t j, const BigInt &k) {
    S.add_row(i, j, k);
    w.U.add_row(i, j, k);
    w.Uinv.add_col(j, i, -k);
  };
  auto row_neg = [&](std::size_t i) {
    S.negate_row(i);
    w.U.negate_row(i);
    w.Uinv.negate_col(i);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    S.swap_cols(i, j);
    w.V.swap_cols(i, j);
  };
  auto col_add = [&](std::size_t i, std::size_t j, const BigInt &k) {
    S.add_col(i, j, k);
    w.V.add_col(i, j, k);
  };

  const std::size_t n = std::min(r, c);
  for (std::size_t t = 0; t < n; ++t) {
    // pivot: smallest nonzero entry of the trailing block
    std::size_t pi = r, pj = c;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (S(i, j) != 0 && (pi == r || babs(S(i, j)) < babs(S(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == r) break;
    row_swap(t, pi);
    col_swap(t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (S(i, t) == 0) continue;
        BigInt q = S(i, t) / S(t, t);
        row_add(i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (S(t, j) == 0) continue;
        BigInt q = S(t, j) / S(t, t);
        col_add(j, t, -q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < r; ++i)
          if (S(i, t) != 0 && babs(S(i, t)) < babs(S(bi, bj))) { bi = i; bj = t; }
        for (std::size_t j = t + 1; j < c; ++j)
          if (S(t, j) != 0 && babs(S(t, j)) < babs(S(bi, bj))) { bi = t; bj = j; }
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (S(i, j) % S(t, t) != 0) {
            row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (S(t, t) < 0) row_neg(t);
  }
  return w;
}

} // namespace

std::vector<BigInt> SmithResult::diagonal() const {
  std::vector<BigInt> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

std::size_t SmithResult::rank() const {
  std::size_t k = 0;
  for (const auto &d : diagonal())
    if (d != 0) ++k;
  return k;
}

SmithResult smith_normal_form(const IntegerMatrix &m) {
  auto w = smith_work(m);
  return {std::move(w.S), std::move(w.U), std::move(w.V)};
}

BigInt FinGenAbelianGroup::order() const {
  if (free_rank) return 0;
  BigInt o = 1;
  for (const auto &d : torsion_invariants) o *= d;
  return o;
}

std::string FinGenAbelianGroup::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto &d : torsion_invariants) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  if (free_rank) {
    if (!first) os << " + ";
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::vector<BigInt> Cokernel::project(const std::vector<BigInt> &x) const {
  std::vector<BigInt> c(quotient_map.rows());
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) c[i] += quotient_map(i, j) * x[j];
  return reduce(std::move(c));
}

std::vector<BigInt> Cokernel::reduce(std::vector<BigInt> c) const {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (moduli[i] != 0) {
      c[i] %= moduli[i];
      if (c[i] < 0) c[i] += moduli[i];
    }
  return c;
}

Cokernel cokernel(const IntegerMatrix &m) {
  auto w = smith_work(m);
  const std::size_t r = m.rows();
  const std::size_t n = std::min(m.rows(), m.cols());
  std::vector<std::size_t> tors, freec;
  Cokernel ck;
  for (std::size_t i = 0; i < r; ++i) {
    BigInt d = i < n ? w.S(i, i) : BigInt(0);
    if (d == 0)
      freec.push_back(i);
    else if (d != 1)
      tors.push_back(i);
  }
  std::vector<std::size_t> keep = tors;
  keep.insert(keep.end(), freec.begin(), freec.end());
  ck.quotient_map = IntegerMatrix(keep.size(), r);
  ck.section = IntegerMatrix(r, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    for (std::size_t j = 0; j < r; ++j) {
      ck.quotient_map(k, j) = w.U(keep[k], j);
      ck.section(j, k) = w.Uinv(j, keep[k]);
    }
    ck.moduli.push_back(k < tors.size() ? BigInt(w.S(keep[k], keep[k])) : BigInt(0));
  }
  ck.group.free_rank = freec.size();
  for (auto i : tors) ck.group.torsion_invariants.push_back(w.S(i, i));
  return ck;
}

IntegerMatrix kernel_basis(const IntegerMatrix &m) {
  auto w = smith_work(m);
  std::size_t rk = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (w.S(i, i) != 0) ++rk;
  std::vector<std::size_t> idx;
  for (std::size_t j = rk; j < m.cols(); ++j) idx.push_back(j);
  return w.V.columns(idx);
}

IntegerMatrix image_basis(const IntegerMatrix &m) {
  auto w = smith_work(m);
  std::size_t rk = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (w.S(i, i) != 0) ++rk;
  IntegerMatrix b(m.rows(), rk);
  for (std::size_t j = 0; j < rk; ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) b(i, j) = w.Uinv(i, j) * w.S(j, j);
  return b;
}

IntegerMatrix saturation(const IntegerMatrix &m) {
  auto w = smith_work(m);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (w.S(i, i) != 0) idx.push_back(i);
  return w.Uinv.columns(idx);
}

BigInt saturation_index(const IntegerMatrix &m) {
  auto s = smith_normal_form(m);
  BigInt idx = 1;
  for (const auto &d : s.diagonal())
    if (d != 0) idx *= d;
  return idx;
}

std::optional<std::vector<BigInt>> solve_integer(const IntegerMatrix &m,
                                                 const std::vector<BigInt> &b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_integer: size mismatch");
  auto w = smith_work(m);
  std::vector<BigInt> ub(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) ub[i] += w.U(i, j) * b[j];
  std::vector<BigInt> y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BigInt d = (i < m.cols()) ? BigInt(w.S(i, i)) : BigInt(0);
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % d != 0) return std::nullopt;
      y[i] = ub[i] / d;
    }
  }
  std::vector<BigInt> x(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) x[i] += w.V(i, j) * y[j];
  return x;
}

std::optional<std::size_t> multiplicative_order(const IntegerMatrix &a, std::size_t bound) {
  if (!a.is_square()) return std::nullopt;
  const auto id = IntegerMatrix::identity(a.rows());
  IntegerMatrix p = a;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (p == id) return k;
    p = p * a;
  }
  return std::nullopt;
}

IntegerMatrix fixed_sublattice(const IntegerMatrix &a, std::size_t order_bound) {
  if (!a.is_square()) throw std::invalid_argument("fixed_sublattice: matrix not square");
  if (!multiplicative_order(a, order_bound))
    throw std::invalid_argument("fixed_sublattice: no finite order up to bound " +
                                std::to_string(order_bound));
  return kernel_basis(a - IntegerMatrix::identity(a.rows()));
}

} // namespace unihecke
