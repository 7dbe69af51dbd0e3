#pragma once
// Exact integer linear algebra: Smith form, kernels, cokernels, fixed lattices.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace unihecke {

using BigInt = boost::multiprecision::cpp_int;

class IntegerMatrix {
public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows);
  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<std::vector<long long>> &rows,
                                 std::size_t cols_if_empty = 0);
  static IntegerMatrix from_columns(const std::vector<std::vector<long long>> &cols,
                                    std::size_t rows_if_empty = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const BigInt &operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntegerMatrix transpose() const;
  IntegerMatrix operator*(const IntegerMatrix &o) const;
  IntegerMatrix operator-(const IntegerMatrix &o) const;
  IntegerMatrix operator+(const IntegerMatrix &o) const;
  bool operator==(const IntegerMatrix &o) const = default;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  std::vector<BigInt> column(std::size_t j) const;
  std::vector<BigInt> row(std::size_t i) const;
  IntegerMatrix hconcat(const IntegerMatrix &o) const;
  IntegerMatrix columns(const std::vector<std::size_t> &idx) const;
  IntegerMatrix row_block(std::size_t begin, std::size_t end) const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const BigInt &k);
  void add_col(std::size_t i, std::size_t j, const BigInt &k);
  void negate_row(std::size_t i);
  void negate_col(std::size_t i);

  std::vector<std::vector<long long>> to_ll_rows() const;
  std::string to_string() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> a_;
};

BigInt determinant(const IntegerMatrix &m);
bool is_unimodular(const IntegerMatrix &m);

struct SmithResult {
  IntegerMatrix S, U, V;
  std::vector<BigInt> diagonal() const;
  std::size_t rank() const;
};

// S = U*M*V with U, V unimodular and S diagonal with d1 | d2 | ... .
SmithResult smith_normal_form(const IntegerMatrix &m);

struct FinGenAbelianGroup {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion_invariants;

  bool is_finite() const { return free_rank == 0; }
  bool is_trivial() const { return free_rank == 0 && torsion_invariants.empty(); }
  // Order of a finite group; 0 when infinite.
  BigInt order() const;
  std::string to_string() const;
  bool operator==(const FinGenAbelianGroup &) const = default;
};

// Z^rows / image(M).  Coordinates: first the torsion coordinates (one per
// invariant > 1, taken modulo moduli[k]), then free coordinates (moduli 0).
struct Cokernel {
  FinGenAbelianGroup group;
  IntegerMatrix quotient_map;  // coords x rows
  IntegerMatrix section;       // rows x coords, quotient_map*section = id mod moduli
  std::vector<BigInt> moduli;

  std::vector<BigInt> project(const std::vector<BigInt> &x) const;
  std::vector<BigInt> reduce(std::vector<BigInt> c) const;
};

Cokernel cokernel(const IntegerMatrix &m);

// Basis (as columns) of ker(M); always saturated in Z^cols.
IntegerMatrix kernel_basis(const IntegerMatrix &m);
// Basis (as columns) of the lattice spanned by the columns of M.
IntegerMatrix image_basis(const IntegerMatrix &m);
// Basis of (Q-span of columns) intersected with Z^rows.
IntegerMatrix saturation(const IntegerMatrix &m);
// Index of the column lattice of M in its saturation (M of full column rank).
BigInt saturation_index(const IntegerMatrix &m);
// Some integer x with M x = b, if one exists.
std::optional<std::vector<BigInt>> solve_integer(const IntegerMatrix &m,
                                                 const std::vector<BigInt> &b);

// Smallest k <= bound with A^k = 1.
std::optional<std::size_t> multiplicative_order(const IntegerMatrix &a, std::size_t bound = 24);

// Saturated basis (columns) of ker(A - 1).  Throws std::invalid_argument when A
// is not square or has no finite order up to the bound.
IntegerMatrix fixed_sublattice(const IntegerMatrix &a, std::size_t order_bound = 24);

} // namespace unihecke
