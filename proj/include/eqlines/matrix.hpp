#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "eqlines/polynomial.hpp"
#include "eqlines/rational.hpp"

namespace eqlines {

using RatVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix identity(std::size_t n);
  static RatMatrix outer(std::span<const Rational> u, std::span<const Rational> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_zero() const;

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatMatrix transpose() const;
  RatMatrix principal_submatrix(std::span<const std::size_t> indices) const;

  RatMatrix& operator+=(const RatMatrix& rhs);
  RatMatrix& operator-=(const RatMatrix& rhs);
  RatMatrix& operator*=(const Rational& rhs);
  friend RatMatrix operator+(RatMatrix lhs, const RatMatrix& rhs) { return lhs += rhs; }
  friend RatMatrix operator-(RatMatrix lhs, const RatMatrix& rhs) { return lhs -= rhs; }
  friend RatMatrix operator*(RatMatrix lhs, const Rational& rhs) { return lhs *= rhs; }
  friend RatMatrix operator*(const Rational& lhs, RatMatrix rhs) { return rhs *= lhs; }
  friend RatMatrix operator*(const RatMatrix& lhs, const RatMatrix& rhs);
  friend RatVector operator*(const RatMatrix& lhs, std::span<const Rational> rhs);

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

  /// Rows printed as "[a, b, c]", one per line.
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Rational dot(std::span<const Rational> u, std::span<const Rational> v);

/// x^T M x
Rational quadratic_form(const RatMatrix& m, std::span<const Rational> x);

/// Frobenius pairing tr(A^T B).
Rational frobenius(const RatMatrix& a, const RatMatrix& b);

/// Exact solution of A x = b by Gaussian elimination; throws SingularMatrix.
RatVector solve_linear(const RatMatrix& a, std::span<const Rational> b);

RatMatrix inverse(const RatMatrix& a);

struct PsdVerdict {
  bool psd = true;
  /// Set when !psd: a vector with witness^T M witness < 0.
  RatVector witness;

  explicit operator bool() const { return psd; }
};

/// Positive-semidefiniteness by symmetric rational elimination. A zero pivot
/// must have an all-zero remaining row; a negative pivot or a zero pivot with
/// a nonzero row yields a witness. Throws NotSymmetric.
PsdVerdict psd_check(const RatMatrix& m);

/// Rank over Q by fraction-free (Bareiss) elimination on the row-scaled
/// integer matrix.
std::size_t rank(const RatMatrix& m);

Rational determinant(const RatMatrix& m);

/// det of the leading k x k blocks for k = 1..n.
RatVector leading_principal_minors(const RatMatrix& m);

/// Positive definiteness via leading principal minors (Sylvester).
bool is_positive_definite(const RatMatrix& m);

/// det(x I - M), by reduction to Hessenberg form.
UniPoly characteristic_polynomial(const RatMatrix& m);

}  // namespace eqlines
