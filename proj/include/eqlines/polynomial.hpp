#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eqlines/rational.hpp"

namespace eqlines {

/// Univariate polynomial with exact rational coefficients, stored in
/// ascending degree with trailing zeros trimmed. The zero polynomial has no
/// coefficients and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coefficients);

  static UniPoly constant(const Rational& c);
  static UniPoly monomial(const Rational& c, int degree);
  /// The polynomial x.
  static UniPoly identity();

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coeff(int i) const;
  const Rational& leading() const;

  Rational operator()(const Rational& x) const;

  /// Horner evaluation in any ring that accepts Rational scalars.
  template <typename Ring>
  Ring evaluate(const Ring& x) const {
    Ring acc = Ring(Rational(0));
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Ring(*it);
    return acc;
  }

  UniPoly derivative() const;
  UniPoly monic() const;
  /// p / gcd(p, p'): same distinct roots, all simple.
  UniPoly squarefree_part() const;
  /// p(-x)
  UniPoly reflected() const;

  UniPoly& operator+=(const UniPoly& rhs);
  UniPoly& operator-=(const UniPoly& rhs);
  UniPoly& operator*=(const UniPoly& rhs);
  UniPoly& operator*=(const Rational& rhs);

  friend UniPoly operator+(UniPoly lhs, const UniPoly& rhs) { return lhs += rhs; }
  friend UniPoly operator-(UniPoly lhs, const UniPoly& rhs) { return lhs -= rhs; }
  friend UniPoly operator*(UniPoly lhs, const UniPoly& rhs) { return lhs *= rhs; }
  friend UniPoly operator*(UniPoly lhs, const Rational& rhs) { return lhs *= rhs; }
  friend UniPoly operator*(const Rational& lhs, UniPoly rhs) { return rhs *= lhs; }
  UniPoly operator-() const;

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  std::string str(char variable = 'x') const;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of polynomial division; throws on a zero divisor.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& dividend, const UniPoly& divisor);

/// Monic greatest common divisor (zero if both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// Sturm chain p, p', -rem(p, p'), ... of the squarefree part of p.
std::vector<UniPoly> sturm_chain(const UniPoly& p);

/// Number of distinct real roots of p in the half-open interval (lo, hi].
int sturm_count(const UniPoly& p, const Rational& lo, const Rational& hi);
int sturm_count(const std::vector<UniPoly>& chain, const Rational& lo, const Rational& hi);

/// 1 + max |c_i / c_n|; every real root lies strictly inside (-B, B).
Rational cauchy_bound(const UniPoly& p);

struct RootInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
};

/// Isolates the largest real root of p inside (lo, hi) to an interval (l, h]
/// of width at most `width`, with exactly one root in (l, h] and none in
/// (h, hi]. Throws NoRealRoot when p has no root in (lo, hi].
RootInterval isolate_max_root(const UniPoly& p, const Rational& lo, const Rational& hi,
                              const Rational& width);

}  // namespace eqlines
