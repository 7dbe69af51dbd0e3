#pragma once
// Small dense int64 and rational vectors/matrices used by the root-datum layers.
// Integer operations are overflow checked and throw std::overflow_error.

#include "unihecke/integer_modules.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace unihecke {

using Int = std::int64_t;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;  // row-major; Mat m(r, Vec(c))

using Rat = boost::multiprecision::cpp_rational;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

Int add_checked(Int a, Int b);
Int sub_checked(Int a, Int b);
Int mul_checked(Int a, Int b);
Int to_int(const BigInt &x);
Int to_int(const Rat &x);  // throws unless integral and in range

Vec vadd(const Vec &a, const Vec &b);
Vec vsub(const Vec &a, const Vec &b);
Vec vneg(const Vec &a);
Vec vscale(Int k, const Vec &a);
Int dot(const Vec &a, const Vec &b);
bool is_zero(const Vec &a);
Int content(const Vec &a);  // gcd of entries, 0 for the zero vector

Mat zero_mat(std::size_t r, std::size_t c);
Mat identity_mat(std::size_t n);
Mat transpose(const Mat &a, std::size_t cols_if_empty = 0);
Mat mat_mul(const Mat &a, const Mat &b);
Vec mat_vec(const Mat &a, const Vec &v);
Mat mat_sub(const Mat &a, const Mat &b);
bool is_identity(const Mat &a);
// Inverse of an integer matrix with integral inverse; nullopt otherwise.
std::optional<Mat> integral_inverse(const Mat &a);
std::size_t mat_cols(const Mat &a);

IntegerMatrix to_big(const Mat &a, std::size_t cols_if_empty = 0);
Mat from_big(const IntegerMatrix &a);
Mat columns_to_mat(const std::vector<Vec> &cols, std::size_t rows);
std::vector<Vec> mat_columns(const Mat &a);
Vec from_big_vec(const std::vector<BigInt> &v);
std::vector<BigInt> to_big_vec(const Vec &v);

QVec to_q(const Vec &v);
QMat to_q(const Mat &a);
QVec qadd(const QVec &a, const QVec &b);
QVec qsub(const QVec &a, const QVec &b);
QVec qscale(const Rat &k, const QVec &a);
Rat qdot(const QVec &a, const QVec &b);
QVec qmat_vec(const QMat &a, const QVec &v);
QMat qmat_mul(const QMat &a, const QMat &b);
QMat qtranspose(const QMat &a, std::size_t cols_if_empty = 0);
bool qis_zero(const QVec &a);
bool is_integral(const QVec &a);
Vec to_int_vec(const QVec &a);
BigInt floor_rat(const Rat &x);
// gcd of the rationals in v (positive), 0 if v is zero.
Rat rat_content(const QVec &v);

std::size_t rank_q(const QMat &a);
// Some x with A x = b (free variables set to zero).
std::optional<QVec> solve_q(const QMat &a, const QVec &b, std::size_t ncols);
// Basis of {x : A x = 0}.
std::vector<QVec> nullspace_q(const QMat &a, std::size_t ncols);
std::optional<QMat> inverse_q(const QMat &a);

std::string to_string(const Vec &v);
std::string to_string(const QVec &v);
std::string to_string(const Mat &m);
std::string to_string(const Rat &r);

}  // namespace unihecke
