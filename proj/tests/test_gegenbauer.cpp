#include <doctest.h>

#include <cmath>
#include <random>

#include "eqlines/constructions.hpp"
#include "eqlines/errors.hpp"
#include "eqlines/gegenbauer.hpp"

using namespace eqlines;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

Rational rising(const Rational& x, int n) {
  Rational out = 1;
  for (int i = 0; i < n; ++i) out *= x + Rational(i);
  return out;
}

Rational factorial(int n) { return rising(Rational(1), n); }

// C^lambda_k(t) = sum_j (-1)^j (lambda)_{k-j} / (j! (k-2j)!) (2t)^{k-2j}, then
// divided by its value at t = 1.
UniPoly explicit_gegenbauer(const Rational& d, int k) {
  const Rational lambda = (d - 2) / 2;
  std::vector<Rational> c(static_cast<std::size_t>(k) + 1, Rational(0));
  for (int j = 0; 2 * j <= k; ++j) {
    Rational term = rising(lambda, k - j) / (factorial(j) * factorial(k - 2 * j)) * pow(Rational(2), k - 2 * j);
    if (j % 2) term = -term;
    c[static_cast<std::size_t>(k - 2 * j)] = term;
  }
  UniPoly p(c);
  return p * p(Rational(1)).inverse();
}

Rational random_unit_interval(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-19, 19);
  return Rational(BigInt(num(rng)), BigInt(20));
}

// w^(k/2) P(z / sqrt(w)) in floating point.
double radical_kernel(const UniPoly& p, int k, double z, double w) {
  double acc = 0;
  const double x = z / std::sqrt(w);
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeff(i).to_double();
  return std::pow(w, k / 2.0) * acc;
}

}  // namespace

TEST_CASE("low degrees") {
  for (int d : {2, 3, 5, 7, 40}) {
    CHECK(gegenbauer_poly(d, 0) == UniPoly::constant(1));
    CHECK(gegenbauer_poly(d, 1) == UniPoly::identity());
  }
  CHECK(gegenbauer_poly(5, 2) == UniPoly({q("-1/4"), 0, q("5/4")}));
}

TEST_CASE("recursion agrees with the explicit sum formula") {
  for (const Rational& d : {Rational(3), Rational(4), Rational(7), Rational(64), q("13/2")}) {
    for (int k = 0; k <= 10; ++k) CHECK(gegenbauer_poly(d, k) == explicit_gegenbauer(d, k));
  }
}

TEST_CASE("d = 3 gives the Legendre polynomials") {
  for (int k = 0; k <= 8; ++k) {
    const UniPoly p = gegenbauer_poly(3, k);
    for (double x : {-0.9, -0.3, 0.0, 0.25, 0.8}) {
      double value = 0;
      for (int i = p.degree(); i >= 0; --i) value = value * x + p.coeff(i).to_double();
      CHECK(value == doctest::Approx(std::legendre(static_cast<unsigned>(k), x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("recursion residual and parity") {
  const UniPoly t = UniPoly::identity();
  for (const Rational& d : {Rational(3), Rational(7), Rational(276)}) {
    const GegenbauerFamily family(d);
    for (int k = 2; k <= 10; ++k) {
      const UniPoly residual = family.poly(k) * (Rational(k - 3) + d) -
                               t * family.poly(k - 1) * (Rational(2 * k - 4) + d) +
                               family.poly(k - 2) * Rational(k - 1);
      CHECK(residual.is_zero());
      const UniPoly reflected = family.poly(k).reflected();
      CHECK(reflected == (k % 2 ? -family.poly(k) : family.poly(k)));
      CHECK(family.poly(k)(1) == 1);
    }
  }
}

TEST_CASE("families reject small dimensions") {
  CHECK_THROWS_AS(GegenbauerFamily(1), BadDimension);
  CHECK_THROWS_AS(q3(2, 1, 0, 0, 0), BadDimension);
  CHECK_THROWS_AS(MultivariateKernel(3, RatMatrix{{1, 0}, {0, 1}}), BadDimension);
  CHECK_THROWS_AS(MultivariateKernel(7, RatMatrix{{1, 1}, {1, 1}}), ImproperGram);
  CHECK_THROWS_AS(MultivariateKernel(7, RatMatrix{{2, 0}, {0, 1}}), ImproperGram);
}

TEST_CASE("q3 examples") {
  std::mt19937 rng(31);
  for (int i = 0; i < 50; ++i) {
    const Rational u = random_unit_interval(rng), v = random_unit_interval(rng), t = random_unit_interval(rng);
    CHECK(q3(7, 0, u, v, t) == 1);
    CHECK(q3(7, 1, u, v, t) == t - u * v);
  }
  CHECK(q3(7, 2, q("1/3"), q("1/3"), q("1/3")) == q("-8/81"));
  CHECK(q3(7, 3, 1, 1, 1) == 0);
}

TEST_CASE("parity form equals the radical form") {
  std::mt19937 rng(37);
  for (int i = 0; i < 100; ++i) {
    const Rational u = random_unit_interval(rng), v = random_unit_interval(rng), t = random_unit_interval(rng);
    const int k = i % 7;
    const Rational d = 5 + i % 4;
    const Rational exact = q3(d, k, u, v, t);
    const Rational z = t - u * v;
    const Rational w = (1 - u * u) * (1 - v * v);
    const double approx = radical_kernel(gegenbauer_poly(d - 1, k), k, z.to_double(), w.to_double());
    CHECK(exact.to_double() == doctest::Approx(approx).epsilon(1e-9));
  }
}

TEST_CASE("order-one multivariate kernel is the three-point kernel") {
  std::mt19937 rng(41);
  const RatMatrix one{{1}};
  for (int i = 0; i < 80; ++i) {
    const Rational u = random_unit_interval(rng), v = random_unit_interval(rng), t = random_unit_interval(rng);
    const int k = i % 6;
    const RatVector uu{u}, vv{v};
    CHECK(qm(9, k, one, uu, vv, t) == q3(9, k, u, v, t));
  }
}

TEST_CASE("kernel vanishes at degenerate inputs") {
  const Rational a = q("1/3");
  const RatMatrix g{{1, a}, {a, 1}};
  std::mt19937 rng(43);
  for (int i = 0; i < 40; ++i) {
    const RatVector v{random_unit_interval(rng), random_unit_interval(rng)};
    for (std::size_t p = 0; p < 2; ++p) {
      const RatVector column{g(0, p), g(1, p)};
      for (int k = 1; k <= 6; ++k) CHECK(qm(7, k, g, column, v, v[p]).is_zero());
      CHECK(qm(7, 0, g, column, v, v[p]) == 1);
    }
  }
}

TEST_CASE("k = 1 value at u1 with the hand inverse") {
  for (const Rational& a : {q("1/3"), q("1/5"), q("2/7")}) {
    const RatMatrix g{{1, a}, {a, 1}};
    const RatVector u1{a, a};
    const Rational quad = 2 * a * a / (1 + a);
    CHECK(qm(9, 1, g, u1, u1, 1) == 1 - quad);
    // z = w^(1/2) here, so every degree gives z^k.
    const Rational s = (1 - a) * (1 + 2 * a) / (1 + a);
    CHECK(s == 1 - quad);
    for (int k = 0; k <= 6; ++k) CHECK(qm(9, k, g, u1, u1, 1) == pow(s, k));
  }
}

TEST_CASE("switching property over all transforms") {
  std::mt19937 rng(47);
  int checked = 0;
  while (checked < 200) {
    // Random proper 2x2 block and a vector pair.
    const Rational g01 = random_unit_interval(rng);
    const RatMatrix g{{1, g01}, {g01, 1}};
    const RatVector u{random_unit_interval(rng) / 2, random_unit_interval(rng) / 2};
    const RatVector v{random_unit_interval(rng) / 2, random_unit_interval(rng) / 2};
    const Rational t = random_unit_interval(rng);
    const int k = checked % 7;
    const Rational base = qm(8, k, g, u, v, t);
    for (int s0 : {1, -1}) {
      for (int s1 : {1, -1}) {
        for (int e1 : {1, -1}) {
          for (int e2 : {1, -1}) {
            const SwitchingTransform tr{{s0, s1}, e1, e2};
            const Rational value = switching_conjugate_value(8, k, tr, g, u, v, t);
            const int factor = (k % 2 == 1 && e1 * e2 < 0) ? -1 : 1;
            CHECK(value == base * Rational(factor));
          }
        }
      }
    }
    ++checked;
  }
  const RatMatrix g{{1, q("1/3")}, {q("1/3"), 1}};
  const RatVector u{q("1/3"), q("-1/3")};
  CHECK(switching_conjugate_value(7, 3, SwitchingTransform{{1, 1}, 1, 1}, g, u, u, q("1/3")) ==
        qm(7, 3, g, u, u, q("1/3")));
}

TEST_CASE("diagonal kernel entries are nonnegative when w is a square") {
  std::mt19937 rng(53);
  for (int i = 0; i < 60; ++i) {
    const Rational g01 = random_unit_interval(rng) / 2;
    const RatMatrix g{{1, g01}, {g01, 1}};
    const RatVector u{random_unit_interval(rng) / 3, random_unit_interval(rng) / 3};
    const Rational s = 1 - quadratic_form(inverse(g), u);
    REQUIRE(s.sign() >= 0);
    for (int k = 0; k <= 6; ++k) CHECK(qm(10, k, g, u, u, 1).sign() >= 0);
  }
}

TEST_CASE("positive-definite kernel sums on the 28 lines") {
  const Configuration x = gen28();
  const GegenbauerFamily family(7);
  for (int k = 0; k <= 10; ++k) {
    Rational total = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < x.size(); ++j) total += family.poly(k)(x.gram()(i, j));
    }
    CHECK(total.sign() >= 0);
  }
}

TEST_CASE("parity_kernel with w = 0 keeps only the top term") {
  const UniPoly p = gegenbauer_poly(6, 3);
  CHECK(parity_kernel(p, 3, q("1/2"), 0) == p.coeff(3) * q("1/8"));
}
