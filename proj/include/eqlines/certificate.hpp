#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "eqlines/matrix.hpp"
#include "eqlines/polynomial.hpp"
#include "eqlines/rational.hpp"

namespace eqlines {

/// The quartic g_a(x) whose largest root is D4(a). Throws BadA unless a is an
/// odd integer >= 3.
UniPoly build_ga(int a);

/// D3(a) = 3a^2 - 16.
long d3(int a);

/// (a^2 - 1)(a^2 - 2) / 2
BigInt line_bound(int a);

/// (4, (a+1)^3 (a-2), (a-1)^3 (a+2))
RatVector null_vector(int a);

/// a^4 - 5a^2 + 12 - (a^2 + 7) d; the linear system is singular when zero.
Rational excluded_denominator(int a, const Rational& d);

/// Degree-3 kernel values at G = [[1, 1/a], [1/a, 1]], u1 = (1/a, 1/a),
/// u2 = (1/a, -1/a), for t in {1, 1/a, -1/a}.
struct KernelWeights {
  Rational u1u1_one, u1u1_plus, u1u1_minus;
  Rational u2u2_one, u2u2_plus, u2u2_minus;
  Rational u1u2_plus, u1u2_minus;
};

KernelWeights kernel_weights(int a, const Rational& d);

/// Dual data (F, f1, f2) solving the eight coefficient equations.
struct DualCertificate {
  int a = 0;
  Rational d;
  RatMatrix F;  // [[F0, F1, F2], [F1, F3, F4], [F2, F4, F5]]
  Rational f1;
  Rational f2;
  /// F0, F3, F5, F0F3 - F1^2, F0F5 - F2^2, F3F5 - F4^2, det F.
  std::vector<std::pair<std::string, Rational>> minors;
  Rational ga_at_d;

  /// (F0, F1, F2, F3, F4, F5, f1, f2)
  RatVector unknowns() const;
};

/// Solves the two null-vector rows and the six coefficient equations
/// (N(N-1), y1, y2, z1, z2, z3). Throws BadA, SingularSystem.
DualCertificate solve_certificate(int a, const Rational& d);

/// Explicit rational formulas for f1, f2, F0, F3, F5 and the three 2x2
/// minors, the minors having g_a(d) as numerator.
struct ClosedForms {
  Rational f1, f2, F0, F3, F5;
  Rational minor03, minor05, minor35;
};

/// Requires d != 0, 3 and a nonzero excluded denominator.
ClosedForms closed_forms(int a, const Rational& d);

/// Differences between a solved certificate and the closed forms; empty when
/// they agree exactly.
std::vector<std::string> closed_form_mismatches(const DualCertificate& cert);

/// Linear form in (N(N-1), y1, y2, z1, z2, z3).
using LinearForm = std::array<Rational, 6>;

/// The pairing <Q0, F> + <Q3, diag(f1, f2)> as a linear form in the class
/// counts. Q0 and Q3 are assembled from class structure and fresh kernel
/// evaluations, not from the hand-assembled system.
LinearForm pairing_form(int a, const Rational& d, const RatVector& unknowns);

/// N(N-1) ((a^2 - 1)(a^2 - 2)/2 - 2) - y1 - y2.
LinearForm pairing_target(int a);

/// Unknowns recovered by matching pairing_form against pairing_target
/// coefficient by coefficient, together with the two null-vector rows.
RatVector solve_from_pairing(int a, const Rational& d);

struct CertificateReport {
  DualCertificate certificate;
  bool certified = false;
  /// g_a(d) = 0: the 2x2 minors vanish but F is still PSD.
  bool boundary = false;
  bool pairing_holds = false;
  bool closed_forms_agree = false;
  bool null_vector_holds = false;
  std::string reason;
  BigInt bound;
};

/// Certified iff f1 >= 0, f2 >= 0, F is PSD and the three cross-checks
/// agree. Throws BadA, BadDimension for d < 4.
CertificateReport certify_bound(int a, long d);

/// Isolating interval (l, h] of D4(a) with h - l <= width.
RootInterval d4_interval(int a, const Rational& width);

/// floor(D4(a)).
long d4_floor(int a);

struct DimensionRow {
  int a = 0;
  long d3 = 0;
  RootInterval d4;
  std::string d4_text;
};

/// Refines the D4 interval from width 1/200 until both endpoints render to
/// the same string at `digits` places.
DimensionRow dimension_row(int a, int digits = 2);

inline constexpr std::array<int, 5> kSmallA{3, 5, 7, 9, 11};

/// p + q sqrt(5) with rational p, q.
class QSqrt5 {
 public:
  QSqrt5() = default;
  QSqrt5(Rational p) : p_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  QSqrt5(Rational p, Rational q) : p_(std::move(p)), q_(std::move(q)) {}

  const Rational& rational_part() const { return p_; }
  const Rational& sqrt5_part() const { return q_; }

  /// Exact sign, by comparing p^2 with 5 q^2 when p and q disagree.
  int sign() const;
  double approx() const;
  std::string str() const;

  friend QSqrt5 operator+(const QSqrt5& x, const QSqrt5& y) { return {x.p_ + y.p_, x.q_ + y.q_}; }
  friend QSqrt5 operator-(const QSqrt5& x, const QSqrt5& y) { return {x.p_ - y.p_, x.q_ - y.q_}; }
  friend QSqrt5 operator*(const QSqrt5& x, const QSqrt5& y) {
    return {x.p_ * y.p_ + Rational(5) * x.q_ * y.q_, x.p_ * y.q_ + x.q_ * y.p_};
  }
  friend bool operator==(const QSqrt5&, const QSqrt5&) = default;

 private:
  Rational p_;
  Rational q_;
};

struct AsymptoticReport {
  int a = 0;
  std::array<std::pair<QSqrt5, QSqrt5>, 4> intervals;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Checks the four closed-form root intervals of g_a for odd a >= 5: each is
/// nonempty, they are increasing and disjoint, g_a changes sign across each,
/// g_a has exactly four distinct real roots, and the isolated largest root
/// lies inside the fourth interval.
AsymptoticReport asymptotic_interval_check(int a);

}  // namespace eqlines
