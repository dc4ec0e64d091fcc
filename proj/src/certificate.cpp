#include "eqlines/certificate.hpp"

#include <initializer_list>
#include <sstream>

#include "eqlines/errors.hpp"
#include "eqlines/gegenbauer.hpp"
#include "eqlines/gram.hpp"

namespace eqlines {

namespace {

void require_odd_a(int a) {
  if (a < 3 || a % 2 == 0) throw BadA("a must be an odd integer >= 3, got " + std::to_string(a));
}

/// sum of c_i a^(2i) for coefficients listed from the highest even power down.
Rational even_poly(const Rational& a, std::initializer_list<long> high_to_low) {
  Rational acc = 0;
  const Rational a2 = a * a;
  for (long c : high_to_low) acc = acc * a2 + Rational(c);
  return acc;
}

}  // namespace

UniPoly build_ga(int a) {
  require_odd_a(a);
  const Rational x = a;
  const Rational x2 = x * x;
  const Rational c4 = even_poly(x, {-7, -122, -342, 2776, 7049, -17238, -22932, -6048});
  const Rational c3 =
      Rational(12) * even_poly(x, {4, 21, -227, -46, 3338, -7643, 2693, 7140, 864});
  const Rational c2 = Rational(-9) * x2 *
                      even_poly(x, {11, -94, -25, 3068, -13951, 25882, -15987, -9608, 14800});
  const Rational sq = pow((x - 2) * (x - 1) * (x + 1) * (x + 2), 2);
  const Rational quartic_minus = pow(x, 4) - pow(x, 3) - Rational(5) * x2 + Rational(3) * x + Rational(10);
  const Rational quartic_plus = pow(x, 4) + pow(x, 3) - Rational(5) * x2 - Rational(3) * x + Rational(10);
  const Rational c1 = Rational(54) * x2 * sq * (x2 + 1) * quartic_minus * quartic_plus;
  const Rational c0 = Rational(-81) * x2 * sq * sq;
  return UniPoly({c0, c1, c2, c3, c4});
}

long d3(int a) { return 3L * a * a - 16; }

BigInt line_bound(int a) {
  const BigInt x = a;
  return BigInt((x * x - 1) * (x * x - 2) / 2);
}

RatVector null_vector(int a) {
  const Rational x = a;
  return {4, pow(x + 1, 3) * (x - 2), pow(x - 1, 3) * (x + 2)};
}

Rational excluded_denominator(int a, const Rational& d) {
  const Rational x2 = Rational(a) * Rational(a);
  return x2 * x2 - Rational(5) * x2 + Rational(12) - (x2 + Rational(7)) * d;
}

KernelWeights kernel_weights(int a, const Rational& d) {
  const Rational alpha = Rational(1) / Rational(a);
  const MultivariateKernel q(d, GramMatrix::pair(alpha).entries());
  const RatVector u1{alpha, alpha};
  const RatVector u2{alpha, -alpha};
  KernelWeights w;
  w.u1u1_one = q(3, u1, u1, 1);
  w.u1u1_plus = q(3, u1, u1, alpha);
  w.u1u1_minus = q(3, u1, u1, -alpha);
  w.u2u2_one = q(3, u2, u2, 1);
  w.u2u2_plus = q(3, u2, u2, alpha);
  w.u2u2_minus = q(3, u2, u2, -alpha);
  w.u1u2_plus = q(3, u1, u2, alpha);
  w.u1u2_minus = q(3, u1, u2, -alpha);
  return w;
}

RatVector DualCertificate::unknowns() const {
  return {F(0, 0), F(0, 1), F(0, 2), F(1, 1), F(1, 2), F(2, 2), f1, f2};
}

namespace {

DualCertificate from_unknowns(int a, const Rational& d, const RatVector& x) {
  DualCertificate cert;
  cert.a = a;
  cert.d = d;
  cert.F = RatMatrix{{x[0], x[1], x[2]}, {x[1], x[3], x[4]}, {x[2], x[4], x[5]}};
  cert.f1 = x[6];
  cert.f2 = x[7];
  const RatMatrix& F = cert.F;
  cert.minors = {
      {"F0", F(0, 0)},
      {"F3", F(1, 1)},
      {"F5", F(2, 2)},
      {"F0F3-F1^2", F(0, 0) * F(1, 1) - F(0, 1) * F(0, 1)},
      {"F0F5-F2^2", F(0, 0) * F(2, 2) - F(0, 2) * F(0, 2)},
      {"F3F5-F4^2", F(1, 1) * F(2, 2) - F(1, 2) * F(1, 2)},
      {"det F", determinant(F)},
  };
  cert.ga_at_d = build_ga(a)(d);
  return cert;
}

}  // namespace

DualCertificate solve_certificate(int a, const Rational& d) {
  require_odd_a(a);
  if (excluded_denominator(a, d).is_zero()) {
    throw SingularSystem("a^4 - 5a^2 + 12 - (a^2 + 7) d vanishes at a = " + std::to_string(a) + ", d = " + d.str());
  }
  const Rational x = a;
  const Rational A = pow(x + 1, 3) * (x - 2);
  const Rational B = pow(x - 1, 3) * (x + 2);
  const KernelWeights w = kernel_weights(a, d);
  const Rational F0 = (x * x - 1) * (x * x - 2) / 2 - 2;

  // Unknown order: F0 F1 F2 F3 F4 F5 f1 f2.
  const RatMatrix system{
      {0, 4, 0, A, B, 0, 0, 0},                                  // F n, row 2
      {0, 0, 4, 0, A, B, 0, 0},                                  // F n, row 3
      {1, 0, 0, 0, 0, 0, 0, 0},                                  // N(N-1)
      {0, 2, 0, 1, 0, 0, w.u1u1_one, 0},                         // y1
      {0, 0, 2, 0, 0, 1, 0, w.u2u2_one},                         // y2
      {0, 0, 0, 1, 0, 0, w.u1u1_plus, 0},                        // z1
      {0, 0, 0, 1, 4, 1, w.u1u1_minus, w.u2u2_plus},             // z2
      {0, 0, 0, 0, 0, 1, 0, w.u2u2_minus},                       // z3
  };
  const RatVector rhs{0, 0, F0, -1, -1, 0, 0, 0};
  RatVector solution;
  try {
    solution = solve_linear(system, rhs);
  } catch (const SingularMatrix&) {
    throw SingularSystem("coefficient system is singular at a = " + std::to_string(a) + ", d = " + d.str());
  }
  return from_unknowns(a, d, solution);
}

ClosedForms closed_forms(int a, const Rational& d) {
  require_odd_a(a);
  const Rational x = a;
  const Rational x3 = pow(x, 3);
  const Rational den = excluded_denominator(a, d);
  if (den.is_zero() || d.is_zero() || d == Rational(3)) {
    throw SingularSystem("closed forms undefined at a = " + std::to_string(a) + ", d = " + d.str());
  }
  const Rational g = build_ga(a)(d);
  ClosedForms c;
  c.f1 = x3 * (d - 3) * (Rational(3) * x * pow(x - 2, 2) * pow(x + 1, 2) - (x3 + Rational(9) * x - 6) * d) /
         (Rational(3) * d * (x - 2) * (x - 1) * (x + 1) * den);
  c.f2 = -x3 * (d - 3) * (Rational(3) * x * pow(x + 2, 2) * pow(x - 1, 2) - (x3 + Rational(9) * x + 6) * d) /
         (Rational(3) * d * (x + 2) * (x - 1) * (x + 1) * den);
  c.F0 = (x * x - 1) * (x * x - 2) / 2 - 2;
  c.F3 = pow(x - 1, 3) * (Rational(3) * pow(x + 2, 2) - d) / (x3 * pow(x + 1, 3) * (d - 3)) * c.f1;
  c.F5 = -pow(x + 1, 3) * (Rational(3) * pow(x - 2, 2) - d) / (x3 * pow(x - 1, 3) * (d - 3)) * c.f2;
  const Rational d2den2 = d * d * den * den;
  c.minor03 = g / (Rational(36) * d2den2 * pow(x - 2, 2) * pow(x + 1, 6));
  c.minor05 = g / (Rational(36) * d2den2 * pow(x + 2, 2) * pow(x - 1, 6));
  c.minor35 = Rational(4) * g / (Rational(9) * d2den2 * pow(x - 2, 2) * pow(x + 2, 2) * pow(x - 1, 6) * pow(x + 1, 6));
  return c;
}

std::vector<std::string> closed_form_mismatches(const DualCertificate& cert) {
  const ClosedForms c = closed_forms(cert.a, cert.d);
  const RatMatrix& F = cert.F;
  const std::vector<std::pair<std::string, std::pair<Rational, Rational>>> checks{
      {"f1", {cert.f1, c.f1}},
      {"f2", {cert.f2, c.f2}},
      {"F0", {F(0, 0), c.F0}},
      {"F3", {F(1, 1), c.F3}},
      {"F5", {F(2, 2), c.F5}},
      {"F0F3-F1^2", {F(0, 0) * F(1, 1) - F(0, 1) * F(0, 1), c.minor03}},
      {"F0F5-F2^2", {F(0, 0) * F(2, 2) - F(0, 2) * F(0, 2), c.minor05}},
      {"F3F5-F4^2", {F(1, 1) * F(2, 2) - F(1, 2) * F(1, 2), c.minor35}},
  };
  std::vector<std::string> out;
  for (const auto& [name, values] : checks) {
    if (values.first != values.second) out.push_back(name + ": solved " + values.first.str() + ", closed form " + values.second.str());
  }
  return out;
}

namespace {

enum Var { kPairs = 0, kY1, kY2, kZ1, kZ2, kZ3 };

struct ClassVariables {
  SwitchingClassKey triangle_plus;
  SwitchingClassKey quad_z1;
  SwitchingClassKey quad_z2;
  SwitchingClassKey quad_z3;
  Rational alpha;
  RatMatrix g;

  explicit ClassVariables(const Rational& a)
      : alpha(a), g(GramMatrix::pair(a).entries()) {
    const RatVector u1{a, a};
    const RatVector u2{a, -a};
    triangle_plus = key3(u1);
    quad_z1 = key4(u1, u1, a);
    quad_z2 = key4(u1, u1, -a);
    quad_z3 = key4(u2, u2, -a);
  }

  SwitchingClassKey key3(const RatVector& u) const {
    RatMatrix m{{1, g(0, 1), u[0]}, {g(0, 1), 1, u[1]}, {u[0], u[1], 1}};
    return canonical_key(m);
  }
  SwitchingClassKey key4(const RatVector& u, const RatVector& v, const Rational& t) const {
    return canonical_key(ExtendedGram{g, u, v, t}.full());
  }

  Var of(const RatVector& u) const { return key3(u) == triangle_plus ? kY1 : kY2; }
  Var of(const RatVector& u, const RatVector& v, const Rational& t) const {
    const auto key = key4(u, v, t);
    if (key == quad_z1) return kZ1;
    if (key == quad_z3) return kZ3;
    if (key == quad_z2) return kZ2;
    throw std::logic_error("unexpected four-point class");
  }
};

using FormMatrix = std::vector<std::vector<LinearForm>>;

FormMatrix zero_forms(std::size_t n) { return FormMatrix(n, std::vector<LinearForm>(n)); }

}  // namespace

LinearForm pairing_form(int a, const Rational& d, const RatVector& unknowns) {
  require_odd_a(a);
  if (unknowns.size() != 8) throw DimensionMismatch("pairing_form expects 8 unknowns");
  const Rational alpha = Rational(1) / Rational(a);
  const ClassVariables vars(alpha);
  const MultivariateKernel q(d, vars.g);
  const std::vector<RatVector> basis{{alpha, alpha}, {alpha, -alpha}};

  // Reduced k = 0 matrix: unit slot, then basis vectors.
  FormMatrix q0 = zero_forms(3);
  q0[0][0][kPairs] += 1;
  for (std::size_t i = 0; i < 2; ++i) {
    const Var y = vars.of(basis[i]);
    q0[0][i + 1][y] += 1;
    q0[i + 1][0][y] += 1;
    q0[i + 1][i + 1][y] += 1;
    for (std::size_t j = 0; j < 2; ++j) {
      for (const Rational& t : {alpha, -alpha}) q0[i + 1][j + 1][vars.of(basis[i], basis[j], t)] += 1;
    }
  }

  // Reduced k = 3 matrix.
  FormMatrix q3m = zero_forms(2);
  for (std::size_t i = 0; i < 2; ++i) {
    q3m[i][i][vars.of(basis[i])] += q(3, basis[i], basis[i], 1);
    for (std::size_t j = 0; j < 2; ++j) {
      for (const Rational& t : {alpha, -alpha}) q3m[i][j][vars.of(basis[i], basis[j], t)] += q(3, basis[i], basis[j], t);
    }
  }

  const auto& x = unknowns;
  const RatMatrix F{{x[0], x[1], x[2]}, {x[1], x[3], x[4]}, {x[2], x[4], x[5]}};
  const RatMatrix f{{x[6], 0}, {0, x[7]}};
  LinearForm out{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t v = 0; v < 6; ++v) out[v] += q0[i][j][v] * F(i, j);
    }
  }
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t v = 0; v < 6; ++v) out[v] += q3m[i][j][v] * f(i, j);
    }
  }
  return out;
}

LinearForm pairing_target(int a) {
  const Rational x = a;
  LinearForm out{};
  out[kPairs] = (x * x - 1) * (x * x - 2) / 2 - 2;
  out[kY1] = -1;
  out[kY2] = -1;
  return out;
}

RatVector solve_from_pairing(int a, const Rational& d) {
  require_odd_a(a);
  // The pairing is linear in the unknowns: probe it with unit vectors.
  RatMatrix system(8, 8);
  for (std::size_t j = 0; j < 8; ++j) {
    RatVector e(8, Rational(0));
    e[j] = 1;
    const LinearForm column = pairing_form(a, d, e);
    for (std::size_t v = 0; v < 6; ++v) system(v + 2, j) = column[v];
  }
  // Rows 2 and 3 of F n = 0.
  const RatVector n = null_vector(a);
  const std::size_t row1[3] = {1, 3, 4};
  const std::size_t row2[3] = {2, 4, 5};
  for (std::size_t i = 0; i < 3; ++i) {
    system(0, row1[i]) = n[i];
    system(1, row2[i]) = n[i];
  }
  const LinearForm target = pairing_target(a);
  RatVector rhs(8, Rational(0));
  for (std::size_t v = 0; v < 6; ++v) rhs[v + 2] = target[v];
  try {
    return solve_linear(system, rhs);
  } catch (const SingularMatrix&) {
    throw SingularSystem("pairing system is singular at a = " + std::to_string(a) + ", d = " + d.str());
  }
}

CertificateReport certify_bound(int a, long d) {
  require_odd_a(a);
  if (d < 4) throw BadDimension("certify_bound needs d >= 4, got " + std::to_string(d));
  CertificateReport report;
  report.bound = line_bound(a);
  const Rational dr = d;
  try {
    report.certificate = solve_certificate(a, dr);
  } catch (const SingularSystem& e) {
    report.reason = e.what();
    return report;
  }
  const DualCertificate& cert = report.certificate;
  report.boundary = cert.ga_at_d.is_zero();
  report.closed_forms_agree = closed_form_mismatches(cert).empty();
  report.pairing_holds = pairing_form(a, dr, cert.unknowns()) == pairing_target(a);
  report.null_vector_holds = (cert.F * null_vector(a)) == RatVector(3, Rational(0));

  if (!report.closed_forms_agree) {
    report.reason = "solved values disagree with closed forms";
  } else if (!report.pairing_holds) {
    report.reason = "pairing identity fails";
  } else if (!report.null_vector_holds) {
    report.reason = "F does not annihilate the null vector";
  } else if (cert.f1.sign() < 0) {
    report.reason = "f1 = " + cert.f1.str() + " < 0";
  } else if (cert.f2.sign() < 0) {
    report.reason = "f2 = " + cert.f2.str() + " < 0";
  } else {
    const PsdVerdict verdict = psd_check(cert.F);
    if (!verdict) {
      report.reason = "F is not PSD";
      for (const auto& [name, value] : cert.minors) {
        if (value.sign() < 0) {
          report.reason = "F is not PSD: " + name + " = " + value.str() + " < 0";
          break;
        }
      }
    } else {
      report.certified = true;
    }
  }
  return report;
}

RootInterval d4_interval(int a, const Rational& width) {
  const UniPoly g = build_ga(a);
  const Rational bound = cauchy_bound(g);
  return isolate_max_root(g, -bound, bound, width);
}

long d4_floor(int a) {
  const UniPoly g = build_ga(a);
  const Rational bound = cauchy_bound(g);
  const auto chain = sturm_chain(g);
  const RootInterval r = isolate_max_root(g, -bound, bound, Rational(1, 2));
  // The root lies in (l, h] with h - l < 1.
  const BigInt n = r.hi.floor();
  if (!(Rational(n) > r.lo)) return n.get_si();
  if (sturm_count(chain, r.lo, Rational(n)) == 1) {
    return g(Rational(n)).is_zero() ? n.get_si() : n.get_si() - 1;
  }
  return n.get_si();
}

DimensionRow dimension_row(int a, int digits) {
  DimensionRow row;
  row.a = a;
  row.d3 = d3(a);
  Rational width(1, 200);
  for (int step = 0; step < 64; ++step) {
    row.d4 = d4_interval(a, width);
    const std::string lo = row.d4.lo.decimal(digits);
    if (lo == row.d4.hi.decimal(digits)) {
      row.d4_text = lo;
      return row;
    }
    width /= 2;
  }
  throw std::runtime_error("dimension_row: rendering did not stabilize");
}

int QSqrt5::sign() const {
  const int sp = p_.sign();
  const int sq = q_.sign();
  if (sp >= 0 && sq >= 0) return (sp > 0 || sq > 0) ? 1 : 0;
  if (sp <= 0 && sq <= 0) return -1;
  // Mixed signs: the larger of p^2 and 5 q^2 decides.
  const Rational lhs = p_ * p_;
  const Rational rhs = Rational(5) * q_ * q_;
  if (lhs == rhs) return 0;
  return (lhs > rhs) ? sp : sq;
}

double QSqrt5::approx() const { return p_.to_double() + q_.to_double() * 2.23606797749979; }

std::string QSqrt5::str() const {
  std::ostringstream os;
  os << p_ << (q_.sign() < 0 ? " - " : " + ") << q_.abs() << "*sqrt(5)";
  return os.str();
}

AsymptoticReport asymptotic_interval_check(int a) {
  require_odd_a(a);
  if (a < 5) throw BadA("the asymptotic intervals apply for a >= 5");
  AsymptoticReport report;
  report.a = a;
  const Rational x = a;
  const Rational x2 = x * x;
  const Rational centre = Rational(3) * x2 - Rational(948, 25);
  const Rational slope = Rational(12) * x / 5;  // 12a / sqrt(5) = (12a/5) sqrt(5)
  const Rational inv = Rational(1) / x;
  report.intervals = {{
      {QSqrt5(0), QSqrt5(Rational(3) / (Rational(2) * x2))},
      {QSqrt5(Rational(6) * x2 / 7 - 8), QSqrt5(Rational(6) * x2 / 7)},
      {QSqrt5(centre, -slope + Rational(30) * inv), QSqrt5(centre, -slope + Rational(45) * inv)},
      {QSqrt5(centre, slope - Rational(32) * inv), QSqrt5(centre, slope + Rational(2) * inv)},
  }};

  const UniPoly g = build_ga(a);
  auto fail = [&](const std::string& what) { report.failures.push_back("a = " + std::to_string(a) + ": " + what); };
  if (g.leading().sign() >= 0) fail("leading coefficient is not negative");
  const Rational bound = cauchy_bound(g);
  if (sturm_count(g, -bound, bound) != 4) fail("g_a does not have four distinct real roots");

  for (std::size_t i = 0; i < report.intervals.size(); ++i) {
    const auto& [lo, hi] = report.intervals[i];
    const std::string name = "interval " + std::to_string(i + 1);
    if ((hi - lo).sign() <= 0) fail(name + " is empty");
    if (i + 1 < report.intervals.size() && (report.intervals[i + 1].first - hi).sign() <= 0) {
      fail(name + " overlaps the next interval");
    }
    const int s_lo = g.evaluate(lo).sign();
    const int s_hi = g.evaluate(hi).sign();
    if (s_lo * s_hi >= 0) fail(name + " shows no sign change");
  }
  // The isolated largest root must sit inside the last interval.
  const RootInterval top = isolate_max_root(g, -bound, bound, Rational(1, 1000));
  const auto& last = report.intervals.back();
  if ((QSqrt5(top.lo) - last.first).sign() < 0 || (last.second - QSqrt5(top.hi)).sign() < 0) {
    fail("isolated D4 interval is not inside interval 4");
  }
  return report;
}

}  // namespace eqlines
