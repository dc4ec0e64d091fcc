#include "eqlines/constructions.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "eqlines/certificate.hpp"
#include "eqlines/constraints.hpp"
#include "eqlines/errors.hpp"
#include "eqlines/gram.hpp"

namespace eqlines {

Configuration gen28() {
  std::vector<std::vector<int>> vectors;
  for (int i = 0; i < 8; ++i) {
    for (int j = i + 1; j < 8; ++j) {
      std::vector<int> v(8, -1);
      v[i] = 3;
      v[j] = 3;
      vectors.push_back(std::move(v));
    }
  }
  const std::size_t n = vectors.size();
  RatMatrix g(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      int dot = 0;
      for (int c = 0; c < 8; ++c) dot += vectors[p][c] * vectors[q][c];
      g(p, q) = Rational(dot) / Rational(24);
    }
  }
  return Configuration(GramMatrix(std::move(g)), 7, Rational(1, 3));
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

long parse_count(const std::string& tok, const char* what, std::size_t line) {
  std::size_t used = 0;
  long value = -1;
  try {
    value = std::stol(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || value < 0) {
    throw ParseError("line " + std::to_string(line) + ": bad " + what + " '" + tok + "'");
  }
  return value;
}

}  // namespace

Configuration parse_configuration(std::istream& in, std::optional<Rational> alpha) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
  std::string raw;
  for (std::size_t number = 1; std::getline(in, raw); ++number) {
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    lines.emplace_back(number, tokens_of(raw));
  }
  if (lines.empty()) throw ParseError("empty input");

  const auto& [header_line, header] = lines.front();
  if (header.size() != 3) throw ParseError("line " + std::to_string(header_line) + ": header must be 'N d p/q'");
  const long n = parse_count(header[0], "N", header_line);
  const long d = parse_count(header[1], "dimension", header_line);
  Rational declared;
  try {
    declared = Rational::parse(header[2]);
  } catch (const ParseError& e) {
    throw ParseError("line " + std::to_string(header_line) + ": " + e.what());
  }
  if (n == 0) throw ParseError("N must be positive");
  if (static_cast<long>(lines.size()) != n + 1) {
    throw ParseError("expected " + std::to_string(n) + " matrix rows, found " + std::to_string(lines.size() - 1));
  }
  if (alpha && *alpha != declared) {
    throw NotEquiangular("alpha " + alpha->str() + " does not match the declared " + declared.str());
  }

  RatMatrix g(n, n);
  for (long i = 0; i < n; ++i) {
    const auto& [number, row] = lines[i + 1];
    if (static_cast<long>(row.size()) != n) {
      throw ParseError("line " + std::to_string(number) + ": expected " + std::to_string(n) + " entries");
    }
    for (long j = 0; j < n; ++j) {
      try {
        g(i, j) = Rational::parse(row[j]);
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(number) + ": " + e.what());
      }
    }
  }

  GramMatrix gram;
  try {
    gram = GramMatrix(g);
  } catch (const InvalidGram& e) {
    throw ParseError(std::string("not a Gram matrix: ") + e.what());
  }
  Configuration x(gram, static_cast<int>(d), declared);
  const PsdVerdict verdict = psd_check(g);
  if (!verdict) throw NotPSD("Gram matrix is not positive semidefinite", verdict.witness);
  const std::size_t r = rank(g);
  if (r > static_cast<std::size_t>(d)) {
    throw RankExceedsDimension("Gram rank " + std::to_string(r) + " exceeds dimension " + std::to_string(d));
  }
  return x;
}

Configuration load_configuration(const std::string& path, std::optional<Rational> alpha) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_configuration(in, std::move(alpha));
}

void write_configuration(std::ostream& out, const Configuration& x) {
  if (!x.alpha()) throw NotEquiangular("only equiangular configurations can be written");
  const std::size_t n = x.size();
  out << n << ' ' << x.dimension() << ' ' << x.alpha()->numerator() << '/' << x.alpha()->denominator() << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << x.gram()(i, j);
    }
    out << '\n';
  }
}

std::string format_configuration(const Configuration& x) {
  std::ostringstream os;
  write_configuration(os, x);
  return os.str();
}

std::optional<long> integer_a(const Configuration& x) {
  if (!x.alpha() || x.alpha()->sign() <= 0) return std::nullopt;
  const Rational inv = Rational(1) / *x.alpha();
  if (!inv.is_integer()) return std::nullopt;
  return inv.numerator().get_si();
}

Rank1Audit rank1_audit(const Configuration& x) {
  if (!x.alpha()) throw NotEquiangular("rank1_audit needs an equiangular configuration");
  Rank1Audit audit;
  audit.matrix = build_reduced(x, 0, GramMatrix::pair(*x.alpha())).matrix;
  audit.rank = rank(audit.matrix);
  if (audit.rank == 1 && !audit.matrix(0, 0).is_zero()) {
    RatVector v(audit.matrix.cols());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = audit.matrix(0, j) / audit.matrix(0, 0);
    audit.vector = std::move(v);
  }
  return audit;
}

RatVector extremal_rank1_vector(long a) {
  const Rational x = a;
  return {1, pow(x + 1, 3) * (x - 2) / 4, pow(x - 1, 3) * (x + 2) / 4};
}

std::pair<std::size_t, std::size_t> two_fixed_point(const Configuration& x, std::size_t b, std::size_t b2) {
  if (!x.alpha()) throw NotEquiangular("two_fixed_point needs an equiangular configuration");
  const std::size_t n = x.size();
  if (b >= n || b2 >= n || b == b2) {
    throw IndexOutOfRange("two_fixed_point needs distinct indices below " + std::to_string(n));
  }
  std::size_t same = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (c == b || c == b2) continue;
    if (x.sign(b, b2) * x.sign(b, c) * x.sign(b2, c) > 0) ++same;
  }
  return {same, n - 2 - same};
}

DerivedCode derived_code(const Configuration& x, std::size_t base) {
  if (!x.alpha()) throw NotEquiangular("derived_code needs an equiangular configuration");
  const std::size_t n = x.size();
  if (base >= n) throw IndexOutOfRange("base index " + std::to_string(base) + " out of range");
  const Rational& alpha = *x.alpha();
  const Rational a2 = alpha * alpha;
  const Rational scale = Rational(1) - a2;

  DerivedCode code;
  code.base = base;
  code.plus = (alpha - a2) / scale;
  code.minus = (-alpha - a2) / scale;
  for (std::size_t c = 0; c < n; ++c) {
    if (c != base) code.points.push_back(c);
  }
  const std::size_t v = code.points.size();
  code.gram = RatMatrix(v, v);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) {
      const std::size_t p = code.points[i];
      const std::size_t q = code.points[j];
      const int flip = x.sign(base, p) * x.sign(base, q);
      const Rational inner = flip > 0 ? x.gram()(p, q) : -x.gram()(p, q);
      code.gram(i, j) = (inner - a2) / scale;
    }
  }
  return code;
}

std::string SrgParameters::str() const {
  return "SRG(" + std::to_string(v) + ", " + std::to_string(k) + ", " + std::to_string(lambda) + ", " +
         std::to_string(mu) + ")";
}

SrgParameters predicted_srg(long a) {
  const long a2 = a * a;
  SrgParameters p;
  p.v = a2 * (a2 - 3) / 2;
  p.k = (a + 1) * (a + 1) * (a + 1) * (a - 2) / 4;
  p.lambda = (a + 1) * (a + 2) * (a2 - 5) / 8;
  p.mu = (a + 1) * (a + 1) * (a + 1) * (a - 2) / 8;
  return p;
}

std::string spectrum_str(const Spectrum& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += s[i].first.str() + "^" + std::to_string(s[i].second);
  }
  return out + "}";
}

namespace {

/// Multiplicities of the candidate eigenvalues of a symmetric matrix, from
/// the nullity of M - theta I. Zero-multiplicity candidates are dropped.
Spectrum candidate_spectrum(const RatMatrix& m, RatVector candidates) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  const std::size_t n = m.rows();
  Spectrum out;
  for (const Rational& theta : candidates) {
    const std::size_t mult = n - rank(m - RatMatrix::identity(n) * theta);
    if (mult > 0) out.emplace_back(theta, mult);
  }
  return out;
}

std::size_t total_multiplicity(const Spectrum& s) {
  std::size_t total = 0;
  for (const auto& [value, mult] : s) total += mult;
  return total;
}

bool charpoly_splits(const RatMatrix& m, const Spectrum& s) {
  UniPoly rest = characteristic_polynomial(m);
  for (const auto& [theta, mult] : s) {
    const UniPoly factor({-theta, Rational(1)});
    for (std::size_t i = 0; i < mult; ++i) {
      auto [q, r] = divmod(rest, factor);
      if (!r.is_zero()) return false;
      rest = std::move(q);
    }
  }
  return rest == UniPoly::constant(1);
}

}  // namespace

SrgReport srg_extract(const Configuration& x, std::size_t base) {
  const auto a = integer_a(x);
  if (!a || *a < 3 || *a % 2 == 0) throw NotExtremal("alpha must be 1/a for an odd integer a >= 3");
  const BigInt bound = line_bound(static_cast<int>(*a));
  if (BigInt(static_cast<unsigned long>(x.size())) != bound) {
    throw NotExtremal("N = " + std::to_string(x.size()) + " differs from the extremal size " + bound.get_str());
  }

  const DerivedCode code = derived_code(x, base);
  const std::size_t v = code.points.size();
  std::vector<std::vector<bool>> adj(v, std::vector<bool>(v, false));
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) adj[i][j] = (i != j) && code.gram(i, j) == code.plus;
  }

  SrgReport report;
  report.a = *a;
  report.base = base;
  report.parameters.v = static_cast<long>(v);
  std::vector<long> degree(v, 0);
  for (std::size_t i = 0; i < v; ++i) degree[i] = std::count(adj[i].begin(), adj[i].end(), true);
  report.parameters.k = degree[0];
  for (std::size_t i = 1; i < v; ++i) {
    if (degree[i] != degree[0]) throw NotStronglyRegular("vertex degrees differ", 0, i);
  }
  std::optional<long> lambda;
  std::optional<long> mu;
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = i + 1; j < v; ++j) {
      long common = 0;
      for (std::size_t w = 0; w < v; ++w) common += adj[i][w] && adj[j][w];
      auto& slot = adj[i][j] ? lambda : mu;
      if (!slot) slot = common;
      if (*slot != common) {
        throw NotStronglyRegular(std::string(adj[i][j] ? "adjacent" : "non-adjacent") +
                                     " pair has an irregular number of common neighbours",
                                 i, j);
      }
    }
  }
  report.parameters.lambda = lambda.value_or(0);
  report.parameters.mu = mu.value_or(0);

  report.adjacency = RatMatrix(v, v);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) report.adjacency(i, j) = adj[i][j] ? 1 : 0;
  }
  const Rational ar = *a;
  const Rational k = report.parameters.k;
  report.adjacency_spectrum = candidate_spectrum(report.adjacency, {k, k / (ar + 1), -(ar + 1) / 2});
  report.charpoly_factors = total_multiplicity(report.adjacency_spectrum) == v &&
                            charpoly_splits(report.adjacency, report.adjacency_spectrum);

  RatMatrix formula(v, v);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < v; ++j) {
      if (i == j) {
        formula(i, j) = 1;
      } else {
        formula(i, j) = adj[i][j] ? Rational(1) / (ar + 1) : Rational(-1) / (ar - 1);
      }
    }
  }
  report.gram_formula_holds = formula == code.gram;
  report.gram_spectrum = candidate_spectrum(code.gram, {ar * ar / 2, 0});
  return report;
}

bool lambda_identity_check(const SrgParameters& p, long a) {
  return 2 * p.lambda == 3 * p.k - p.v - 1 && p.lambda == predicted_srg(a).lambda;
}

}  // namespace eqlines
