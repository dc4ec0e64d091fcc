#include <doctest.h>

#include <cmath>
#include <random>

#include "eqlines/certificate.hpp"
#include "eqlines/errors.hpp"
#include "eqlines/gegenbauer.hpp"

using namespace eqlines;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

RatVector unknowns_of(const DualCertificate& c) {
  const RatMatrix& F = c.F;
  return {F(0, 0), F(0, 1), F(0, 2), F(1, 1), F(1, 2), F(2, 2), c.f1, c.f2};
}

// Double-precision evaluation of g_a for a coarse root scan.
double eval(const UniPoly& p, double x) {
  double acc = 0;
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeff(i).to_double();
  return acc;
}

}  // namespace

TEST_CASE("simple closed forms") {
  const long expected_d3[] = {11, 59, 131, 227, 347};
  for (std::size_t i = 0; i < kSmallA.size(); ++i) CHECK(d3(kSmallA[i]) == expected_d3[i]);
  CHECK(line_bound(3) == 28);
  CHECK(line_bound(5) == 276);
  CHECK(line_bound(7) == 1128);
  CHECK(line_bound(9) == 3160);
  CHECK(line_bound(11) == 7140);
  CHECK(null_vector(3) == RatVector{4, 64, 40});
  CHECK(excluded_denominator(3, 3) == 0);
  for (int a : {0, 1, 2, 4, 6, -3}) CHECK_THROWS_AS(build_ga(a), BadA);
}

TEST_CASE("g_a shape") {
  const UniPoly g3 = build_ga(3);
  CHECK(g3.degree() == 4);
  // a = 3 has a double root at x = 3.
  CHECK(g3(3).is_zero());
  CHECK(g3.derivative()(3).is_zero());
  CHECK(g3.squarefree_part().degree() == 3);
  for (int a = 5; a <= 41; a += 2) {
    const UniPoly g = build_ga(a);
    CHECK(g.leading().sign() < 0);
    CHECK(g.squarefree_part().degree() == 4);
    // Constant term -81 a^2 ((a^2 - 1)(a^2 - 4))^4.
    const Rational x = a;
    CHECK(g.coeff(0) == Rational(-81) * x * x * pow((x * x - 1) * (x * x - 4), 4));
  }
}

TEST_CASE("kernel weights are degree-3 kernel values") {
  for (int a : {3, 5, 9}) {
    const Rational al = Rational(1) / Rational(a);
    const RatMatrix g{{1, al}, {al, 1}};
    const RatVector u1{al, al}, u2{al, -al};
    for (const Rational& d : {Rational(14), Rational(64), q("201/2")}) {
      const KernelWeights w = kernel_weights(a, d);
      CHECK(w.u1u1_one == qm(d, 3, g, u1, u1, 1));
      CHECK(w.u1u1_plus == qm(d, 3, g, u1, u1, al));
      CHECK(w.u1u1_minus == qm(d, 3, g, u1, u1, -al));
      CHECK(w.u2u2_one == qm(d, 3, g, u2, u2, 1));
      CHECK(w.u2u2_plus == qm(d, 3, g, u2, u2, al));
      CHECK(w.u2u2_minus == qm(d, 3, g, u2, u2, -al));
      CHECK(w.u1u2_plus == qm(d, 3, g, u1, u2, al));
      CHECK(w.u1u2_minus == qm(d, 3, g, u1, u2, -al));
    }
  }
}

TEST_CASE("certificate at a = 3, d = 14") {
  const DualCertificate c = solve_certificate(3, 14);
  CHECK(c.F(0, 0) == 26);
  // Hand evaluation of the closed-form expressions at a = 3, d = 14.
  CHECK(c.f1 == q("297/112"));
  CHECK(c.f2 == q("27/448"));
  CHECK(c.F * null_vector(3) == RatVector(3, Rational(0)));
  CHECK(determinant(c.F) == 0);
  CHECK(c.F.is_symmetric());
  CHECK(unknowns_of(c) == c.unknowns());
}

TEST_CASE("minors share the numerator g_a(d)") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const int a = 3 + 2 * static_cast<int>(rng() % 8);
    const Rational d(BigInt(static_cast<long>(rng() % 4000) + 40), BigInt(static_cast<long>(rng() % 7) + 1));
    if (excluded_denominator(a, d).is_zero()) continue;
    const DualCertificate c = solve_certificate(a, d);
    const Rational x = a;
    const Rational den = excluded_denominator(a, d);
    const RatMatrix& F = c.F;
    const Rational m03 = F(0, 0) * F(1, 1) - F(0, 1) * F(0, 1);
    CHECK(m03 * Rational(36) * d * d * pow(x - 2, 2) * pow(x + 1, 6) * den * den == build_ga(a)(d));
    CHECK(c.ga_at_d == build_ga(a)(d));
    CHECK(determinant(F) == 0);
  }
}

TEST_CASE("three routes agree on random inputs") {
  std::mt19937 rng(23);
  int compared = 0;
  while (compared < 50) {
    const int a = 3 + 2 * static_cast<int>(rng() % 10);
    const Rational d = Rational(4) + Rational(BigInt(static_cast<long>(rng() % 500)), BigInt(static_cast<long>(rng() % 5) + 1));
    if (excluded_denominator(a, d).is_zero() || d == 3) continue;
    const DualCertificate c = solve_certificate(a, d);
    CHECK(closed_form_mismatches(c).empty());
    CHECK(solve_from_pairing(a, d) == c.unknowns());
    CHECK(pairing_form(a, d, c.unknowns()) == pairing_target(a));
    ++compared;
  }
}

TEST_CASE("certify_bound at known dimensions") {
  const CertificateReport r3 = certify_bound(3, 14);
  CHECK(r3.certified);
  CHECK(r3.bound == 28);
  CHECK_FALSE(certify_bound(3, 15).certified);
  const CertificateReport r5 = certify_bound(5, 64);
  CHECK(r5.certified);
  CHECK(r5.bound == 276);
  CHECK(r5.pairing_holds);
  CHECK(r5.closed_forms_agree);
  CHECK(r5.null_vector_holds);
  CHECK_FALSE(r5.boundary);
  for (long d : {65L, 66L}) {
    const CertificateReport r = certify_bound(5, d);
    CHECK_FALSE(r.certified);
    CHECK_FALSE(r.reason.empty());
  }
  CHECK_THROWS_AS(certify_bound(3, 3), BadDimension);
  CHECK_THROWS_AS(certify_bound(4, 10), BadA);
  CHECK_THROWS_AS(solve_certificate(3, 3), SingularSystem);
}

TEST_CASE("certified dimensions have positive multipliers and minors") {
  for (int a = 3; a <= 19; a += 2) {
    const long d = d4_floor(a);
    const CertificateReport r = certify_bound(a, d);
    REQUIRE(r.certified);
    CHECK(r.certificate.f1.sign() > 0);
    CHECK(r.certificate.f2.sign() > 0);
    for (const auto& [name, value] : r.certificate.minors) {
      if (name == "det F") {
        CHECK(value.is_zero());
      } else {
        CHECK_MESSAGE(value.sign() > 0, name);
      }
    }
    CHECK_FALSE(certify_bound(a, d + 1).certified);
  }
}

TEST_CASE("floors of D4") {
  const long expected[] = {14, 64, 144, 250, 380};
  for (std::size_t i = 0; i < kSmallA.size(); ++i) CHECK(d4_floor(kSmallA[i]) == expected[i]);
  for (int a = 5; a <= 31; a += 2) {
    CHECK(d4_floor(a) >= d3(a));
    // Compare with a floating scan of the largest sign change.
    const UniPoly g = build_ga(a);
    const double top = 3.0 * a * a + 12.0 / std::sqrt(5.0) * a;
    double x = std::floor(top);
    while (eval(g, x) < 0) x -= 1.0;
    CHECK(static_cast<long>(std::floor(x)) == d4_floor(a));
  }
}

TEST_CASE("isolating intervals") {
  for (int a : kSmallA) {
    const RootInterval r = d4_interval(a, q("1/200"));
    CHECK(r.width() <= q("1/200"));
    const UniPoly g = build_ga(a);
    CHECK(sturm_count(sturm_chain(g), r.lo, r.hi) == 1);
    CHECK(sturm_count(sturm_chain(g), r.hi, cauchy_bound(g)) == 0);
  }
}

TEST_CASE("table rows") {
  const char* expected[] = {"14.42", "64.56", "144.52", "250.41", "380.96"};
  for (std::size_t i = 0; i < kSmallA.size(); ++i) {
    const DimensionRow row = dimension_row(kSmallA[i]);
    CHECK(row.d4_text == expected[i]);
    CHECK(row.d4.lo.decimal(2) == row.d4.hi.decimal(2));
  }
  CHECK(dimension_row(3, 4).d4_text == "14.4229");
}

TEST_CASE("QSqrt5 signs") {
  CHECK(QSqrt5(0, 0).sign() == 0);
  CHECK(QSqrt5(1, 0).sign() == 1);
  CHECK(QSqrt5(0, -1).sign() == -1);
  CHECK(QSqrt5(3, -1).sign() == 1);   // 9 > 5
  CHECK(QSqrt5(2, -1).sign() == -1);  // 4 < 5
  CHECK(QSqrt5(-3, 1).sign() == -1);
  CHECK(QSqrt5(-2, 1).sign() == 1);
  CHECK(QSqrt5(5, -5).sign() == -1);
  CHECK(QSqrt5(-5, 5).sign() == 1);
  std::mt19937 rng(29);
  for (int i = 0; i < 500; ++i) {
    const QSqrt5 x(Rational(static_cast<long>(rng() % 41) - 20, 3), Rational(static_cast<long>(rng() % 41) - 20, 7));
    const double v = x.approx();
    if (std::abs(v) > 1e-9) CHECK(x.sign() == (v > 0 ? 1 : -1));
    CHECK((x * x).sign() >= 0);
    CHECK((x - x).sign() == 0);
  }
  const QSqrt5 r5(0, 1);
  CHECK(r5 * r5 == QSqrt5(5));
}

TEST_CASE("asymptotic intervals") {
  for (int a : {5, 7, 21, 101}) {
    const AsymptoticReport r = asymptotic_interval_check(a);
    CHECK_MESSAGE(r.ok(), a);
    // Fourth interval has width 34 sqrt(5) / a.
    const QSqrt5 width = r.intervals[3].second - r.intervals[3].first;
    CHECK(width == QSqrt5(0, Rational(34) / Rational(a)));
  }
  CHECK_THROWS_AS(asymptotic_interval_check(3), BadA);
}
