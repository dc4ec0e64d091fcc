#include "eqlines/matrix.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "eqlines/errors.hpp"

namespace eqlines {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionMismatch("RatMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

RatMatrix RatMatrix::outer(std::span<const Rational> u, std::span<const Rational> v) {
  RatMatrix out(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * v[j];
  return out;
}

bool RatMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool RatMatrix::is_zero() const {
  for (const auto& v : data_)
    if (!v.is_zero()) return false;
  return true;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

RatMatrix RatMatrix::principal_submatrix(std::span<const std::size_t> indices) const {
  RatMatrix out(indices.size(), indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) out(i, j) = (*this)(indices[i], indices[j]);
  return out;
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("RatMatrix +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

RatMatrix& RatMatrix::operator-=(const RatMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("RatMatrix -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

RatMatrix& RatMatrix::operator*=(const Rational& rhs) {
  for (auto& v : data_) v *= rhs;
  return *this;
}

RatMatrix operator*(const RatMatrix& lhs, const RatMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw DimensionMismatch("RatMatrix *");
  RatMatrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i)
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const Rational& a = lhs(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

RatVector operator*(const RatMatrix& lhs, std::span<const Rational> rhs) {
  if (lhs.cols_ != rhs.size()) throw DimensionMismatch("RatMatrix * vector");
  RatVector out(lhs.rows_);
  for (std::size_t i = 0; i < lhs.rows_; ++i)
    for (std::size_t j = 0; j < lhs.cols_; ++j) out[i] += lhs(i, j) * rhs[j];
  return out;
}

std::string RatMatrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << "]\n";
  }
  return os.str();
}

Rational dot(std::span<const Rational> u, std::span<const Rational> v) {
  if (u.size() != v.size()) throw DimensionMismatch("dot: length mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

Rational quadratic_form(const RatMatrix& m, std::span<const Rational> x) {
  const RatVector mx = m * x;
  return dot(x, mx);
}

Rational frobenius(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("frobenius");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * b(i, j);
  return acc;
}

RatVector solve_linear(const RatMatrix& a, std::span<const Rational> b) {
  if (!a.is_square()) throw DimensionMismatch("solve_linear: matrix not square");
  if (a.rows() != b.size()) throw DimensionMismatch("solve_linear: right-hand side length");
  const std::size_t n = a.rows();
  RatMatrix m = a;
  RatVector rhs(b.begin(), b.end());

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw SingularMatrix("solve_linear: singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      std::swap(rhs[pivot], rhs[col]);
    }
    const Rational inv = m(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      const Rational f = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
      rhs[i] -= f * rhs[col];
    }
  }
  RatVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational acc = rhs[ii];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= m(ii, j) * x[j];
    x[ii] = acc / m(ii, ii);
  }
  return x;
}

RatMatrix inverse(const RatMatrix& a) {
  const std::size_t n = a.rows();
  RatMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RatVector e(n);
    e[j] = 1;
    const RatVector col = solve_linear(a, e);
    for (std::size_t i = 0; i < n; ++i) out(i, j) = col[i];
  }
  return out;
}

namespace {

// Solves L^T x = z for unit lower-triangular L.
RatVector back_substitute_transpose(const RatMatrix& l, RatVector z) {
  const std::size_t n = l.rows();
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) {
      if (!l(j, ii).is_zero()) z[ii] -= l(j, ii) * z[j];
    }
  }
  return z;
}

}  // namespace

PsdVerdict psd_check(const RatMatrix& m) {
  if (!m.is_symmetric()) throw NotSymmetric("psd_check: matrix is not symmetric");
  const std::size_t n = m.rows();
  RatMatrix work = m;
  RatMatrix l = RatMatrix::identity(n);

  // After step k: M = L (D_k (+) S_k) L^T, S_k the trailing Schur complement.
  const auto fail = [&](RatVector z) {
    PsdVerdict v;
    v.psd = false;
    v.witness = back_substitute_transpose(l, std::move(z));
    assert(quadratic_form(m, v.witness).sign() < 0);
    return v;
  };

  for (std::size_t k = 0; k < n; ++k) {
    const Rational pivot = work(k, k);
    if (pivot.sign() < 0) {
      RatVector z(n);
      z[k] = 1;
      return fail(std::move(z));
    }
    if (pivot.is_zero()) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const Rational& b = work(k, j);
        if (b.is_zero()) continue;
        // [[0, b], [b, c]] with z = (s, 1): c + 2bs = -1
        RatVector z(n);
        z[j] = 1;
        z[k] = -(work(j, j) + 1) / (b * 2);
        return fail(std::move(z));
      }
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (work(i, k).is_zero()) continue;
      const Rational f = work(i, k) / pivot;
      l(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) work(i, j) -= f * work(k, j);
    }
  }
  return {};
}

namespace {

// Rows scaled by the lcm of their denominators.
std::vector<std::vector<BigInt>> integer_rows(const RatMatrix& m) {
  std::vector<std::vector<BigInt>> out(m.rows(), std::vector<BigInt>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BigInt scale = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const BigInt den = m(i, j).denominator();
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out[i][j] = m(i, j).numerator() * (scale / m(i, j).denominator());
    }
  }
  return out;
}

}  // namespace

std::size_t rank(const RatMatrix& m) {
  auto a = integer_rows(m);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        BigInt v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(v);
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

Rational determinant(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("determinant: matrix not square");
  const std::size_t n = m.rows();
  RatMatrix w = m;
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && w(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(pivot, j), w(col, j));
      det = -det;
    }
    det *= w(col, col);
    const Rational inv = w(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (w(i, col).is_zero()) continue;
      const Rational f = w(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) w(i, j) -= f * w(col, j);
    }
  }
  return det;
}

RatVector leading_principal_minors(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("leading_principal_minors: matrix not square");
  RatVector out;
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < m.rows(); ++k) {
    idx.push_back(k);
    out.push_back(determinant(m.principal_submatrix(idx)));
  }
  return out;
}

bool is_positive_definite(const RatMatrix& m) {
  if (!m.is_symmetric()) return false;
  for (const auto& minor : leading_principal_minors(m))
    if (minor.sign() <= 0) return false;
  return true;
}

UniPoly characteristic_polynomial(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("characteristic_polynomial: matrix not square");
  const std::size_t n = m.rows();
  RatMatrix h = m;

  // Similarity reduction to upper Hessenberg form.
  for (std::size_t c = 1; c + 1 < n; ++c) {
    std::size_t i = c;
    while (i < n && h(i, c - 1).is_zero()) ++i;
    if (i == n) continue;
    if (i != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(c, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, c));
    }
    const Rational inv = h(c, c - 1).inverse();
    for (std::size_t j = c + 1; j < n; ++j) {
      if (h(j, c - 1).is_zero()) continue;
      const Rational u = h(j, c - 1) * inv;
      for (std::size_t k = 0; k < n; ++k) h(j, k) -= u * h(c, k);
      for (std::size_t k = 0; k < n; ++k) h(k, c) += u * h(k, j);
    }
  }

  std::vector<UniPoly> p{UniPoly::constant(1)};
  const UniPoly x = UniPoly::identity();
  for (std::size_t k = 1; k <= n; ++k) {
    UniPoly next = (x - UniPoly::constant(h(k - 1, k - 1))) * p[k - 1];
    Rational t = 1;
    for (std::size_t i = k - 1; i >= 1; --i) {
      t *= h(i, i - 1);
      if (t.is_zero()) break;
      next -= p[i - 1] * (h(i - 1, k - 1) * t);
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

}  // namespace eqlines
