#include "eqlines/constraints.hpp"

#include <map>
#include <stdexcept>

#include "eqlines/errors.hpp"
#include "eqlines/gegenbauer.hpp"

namespace eqlines {

std::string to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::AltThreePoint: return "alt-3pt";
    case ConstraintKind::OriginalThreePoint: return "original-3pt";
    case ConstraintKind::AltMultipoint: return "alt-mpt";
    case ConstraintKind::FullMultipoint: return "full-mpt";
    case ConstraintKind::Reduced: return "reduced";
  }
  return "unknown";
}

namespace {

/// Every vector of length m over `values`, lexicographic with the first
/// coordinate most significant.
std::vector<RatVector> all_vectors(const RatVector& values, std::size_t m) {
  std::vector<RatVector> out{RatVector{}};
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<RatVector> next;
    for (const auto& prefix : out) {
      for (const auto& x : values) {
        RatVector w = prefix;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string label(const RatVector& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + w[i].str();
  return out + ")";
}

RatVector without_unit(const RatVector& extended) { return RatVector(extended.begin() + 1, extended.end()); }

void check_block(const GramMatrix& g) {
  if (g.order() < 1 || g.order() > static_cast<std::size_t>(kMaxConstraintBlock)) {
    throw TooLarge("multipoint constraints support block order 1.." + std::to_string(kMaxConstraintBlock));
  }
  if (!g.is_proper()) throw ImproperGram("block Gram matrix is not positive definite");
}

std::size_t index_of(const std::vector<RatVector>& basis, const RatVector& w) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] == w) return i;
  }
  throw std::logic_error("vector " + label(w) + " missing from basis");
}

}  // namespace

Rational lp_value(const Configuration& x, int k) {
  const GegenbauerFamily family(x.dimension());
  const UniPoly& p = family.poly(k);
  Rational value = Rational(x.size());
  for (const auto& [t, count] : two_point(x)) {
    if (t == Rational(1)) continue;
    value += Rational(count) * p(t);
  }
  return value;
}

ConstraintMatrix build_alt_threepoint(const Configuration& x, int k) {
  const RatVector& values = x.extended_values();
  const std::size_t s1 = values.size();
  const Rational d = x.dimension();
  std::map<Rational, std::size_t> slot;
  for (std::size_t i = 0; i < s1; ++i) slot[values[i]] = i;

  ConstraintMatrix out{ConstraintKind::AltThreePoint, 1, k, RatMatrix(s1, s1), {}};
  for (const auto& v : values) out.labels.push_back(v.str());
  for (const auto& [key, count] : three_point(x)) {
    const auto& [u, v, t] = key;
    out.matrix(slot.at(u), slot.at(v)) += Rational(count) * q3(d, k, u, v, t);
  }
  return out;
}

RatMatrix vandermonde(const RatVector& points, int n) {
  RatMatrix out(points.size(), static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    Rational power = 1;
    for (int j = 0; j <= n; ++j) {
      out(i, static_cast<std::size_t>(j)) = power;
      power *= points[i];
    }
  }
  return out;
}

ConstraintMatrix build_original_threepoint(const Configuration& x, int k, int n) {
  if (n < 0) throw std::invalid_argument("original three-point constraint needs n >= 0");
  const auto size = static_cast<std::size_t>(n) + 1;
  const Rational d = x.dimension();
  ConstraintMatrix out{ConstraintKind::OriginalThreePoint, 1, k, RatMatrix(size, size), {}};
  for (int i = 0; i <= n; ++i) out.labels.push_back("x^" + std::to_string(i));
  for (const auto& [key, count] : three_point(x)) {
    const auto& [u, v, t] = key;
    const Rational weight = Rational(count) * q3(d, k, u, v, t);
    if (weight.is_zero()) continue;
    Rational ui = 1;
    for (std::size_t i = 0; i < size; ++i) {
      Rational vj = 1;
      for (std::size_t j = 0; j < size; ++j) {
        out.matrix(i, j) += weight * ui * vj;
        vj *= v;
      }
      ui *= u;
    }
  }
  return out;
}

ConstraintMatrix build_alt_multipoint(const MultipointCounts& counts, int d, int k) {
  const auto m = static_cast<std::size_t>(counts.m);
  const GramMatrix g(counts.block);
  check_block(g);
  const RatVector values = without_unit(counts.values);
  const auto basis = all_vectors(values, m);
  const std::size_t offset = k == 0 ? 1 : 0;
  const std::size_t order = basis.size() + offset;

  ConstraintMatrix out{ConstraintKind::AltMultipoint, counts.m, k, RatMatrix(order, order), {}};
  if (k == 0) out.labels.push_back("1");
  for (const auto& w : basis) out.labels.push_back(label(w));

  if (k == 0) {
    out.matrix(0, 0) = Rational(counts.base);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Rational c = Rational(counts.at(basis[i]));
      out.matrix(0, i + 1) = c;
      out.matrix(i + 1, 0) = c;
      out.matrix(i + 1, i + 1) += c;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        for (const auto& t : values) out.matrix(i + 1, j + 1) += Rational(counts.at(basis[i], basis[j], t));
      }
    }
    return out;
  }

  const MultivariateKernel q(d, g.entries());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::uint64_t diagonal = counts.at(basis[i]);
    if (diagonal > 0) out.matrix(i, i) += Rational(diagonal) * q(k, basis[i], basis[i], 1);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      for (const auto& t : values) {
        const std::uint64_t c = counts.at(basis[i], basis[j], t);
        if (c > 0) out.matrix(i, j) += Rational(c) * q(k, basis[i], basis[j], t);
      }
    }
  }
  return out;
}

ConstraintMatrix build_alt_multipoint(const Configuration& x, int k, const GramMatrix& g) {
  check_block(g);
  return build_alt_multipoint(multipoint(x, g), x.dimension(), k);
}

ConstraintMatrix build_full_multipoint(const MultipointCounts& counts, int d, int k) {
  const auto m = static_cast<std::size_t>(counts.m);
  const GramMatrix g(counts.block);
  check_block(g);
  const auto basis = all_vectors(counts.values, m);
  ConstraintMatrix out{ConstraintKind::FullMultipoint, counts.m, k, RatMatrix(basis.size(), basis.size()), {}};
  for (const auto& w : basis) out.labels.push_back(label(w));
  const MultivariateKernel q(d, g.entries());
  for (const auto& [key, c] : counts.full) {
    const std::size_t i = index_of(basis, key.u);
    const std::size_t j = index_of(basis, key.v);
    out.matrix(i, j) += Rational(c) * (k == 0 ? Rational(1) : q(k, key.u, key.v, key.t));
  }
  return out;
}

RatMatrix compaction_map(const MultipointCounts& counts, int k) {
  const auto m = static_cast<std::size_t>(counts.m);
  const auto full_basis = all_vectors(counts.values, m);
  const auto compact_basis = all_vectors(without_unit(counts.values), m);
  const std::size_t offset = k == 0 ? 1 : 0;
  RatMatrix p(compact_basis.size() + offset, full_basis.size());
  for (std::size_t col = 0; col < full_basis.size(); ++col) {
    const RatVector& w = full_basis[col];
    bool placed = false;
    for (std::size_t row = 0; row < compact_basis.size() && !placed; ++row) {
      if (compact_basis[row] == w) {
        p(row + offset, col) = 1;
        placed = true;
      }
    }
    if (placed || k != 0) continue;
    for (std::size_t q = 0; q < m; ++q) {
      RatVector column(m);
      for (std::size_t i = 0; i < m; ++i) column[i] = counts.block(i, q);
      if (column == w) {
        p(0, col) = 1;
        break;
      }
    }
  }
  return p;
}

ConstraintMatrix build_reduced(const DistributionTable& table, int d, int k, const GramMatrix& g) {
  check_block(g);
  const auto m = static_cast<std::size_t>(g.order());
  if (table.level != static_cast<int>(m)) throw DimensionMismatch("distribution table level differs from block order");
  const Rational& a = table.alpha;
  std::vector<RatVector> basis;
  for (const auto& tail : all_vectors(RatVector{a, -a}, m - 1)) {
    RatVector w{a};
    w.insert(w.end(), tail.begin(), tail.end());
    basis.push_back(std::move(w));
  }
  const std::size_t offset = k == 0 ? 1 : 0;
  const std::size_t order = basis.size() + offset;
  ConstraintMatrix out{ConstraintKind::Reduced, static_cast<int>(m), k, RatMatrix(order, order), {}};
  if (k == 0) out.labels.push_back("1");
  for (const auto& w : basis) out.labels.push_back(label(w));
  const RatMatrix& gm = g.entries();

  if (k == 0) {
    out.matrix(0, 0) = Rational(table.count(gm));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Rational c = Rational(table.count(gm, basis[i]));
      out.matrix(0, i + 1) = c;
      out.matrix(i + 1, 0) = c;
      out.matrix(i + 1, i + 1) += c;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        for (const Rational& t : {a, -a}) out.matrix(i + 1, j + 1) += Rational(table.count(ExtendedGram{gm, basis[i], basis[j], t}));
      }
    }
    return out;
  }

  const MultivariateKernel q(d, gm);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out.matrix(i, i) += Rational(table.count(gm, basis[i])) * q(k, basis[i], basis[i], 1);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      for (const Rational& t : {a, -a}) {
        const std::uint64_t c = table.count(ExtendedGram{gm, basis[i], basis[j], t});
        if (c > 0) out.matrix(i, j) += Rational(c) * q(k, basis[i], basis[j], t);
      }
    }
  }
  return out;
}

ConstraintMatrix build_reduced(const Configuration& x, int k, const GramMatrix& g) {
  if (!x.is_equiangular()) throw NotEquiangular("switching reduction needs an equiangular configuration");
  check_block(g);
  return build_reduced(class_distribution(x, static_cast<int>(g.order())), x.dimension(), k, g);
}

HalvedIdentity halved_identity_check(const Configuration& x, int k, const GramMatrix& g) {
  if (!x.is_equiangular()) throw NotEquiangular("switching reduction needs an equiangular configuration");
  check_block(g);
  const auto m = g.order();
  const Rational a = *x.alpha();
  HalvedIdentity out;
  out.reduced = build_reduced(x, k, g).matrix;
  out.conjugated_sum = RatMatrix(out.reduced.rows(), out.reduced.cols());

  const std::size_t offset = k == 0 ? 1 : 0;
  const auto compact_basis = all_vectors(without_unit(x.extended_values()), m);
  std::vector<RatVector> reduced_basis;
  for (const auto& w : all_vectors(RatVector{a, -a}, m)) {
    if (w[0] == a) reduced_basis.push_back(w);
  }
  const Rational odd = k % 2 == 0 ? Rational(1) : Rational(-1);

  std::vector<int> signs(m);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    for (std::size_t i = 0; i < m; ++i) signs[i] = (mask >> i) & 1U ? -1 : 1;
    const GramMatrix switched = g.switched(signs);
    const RatMatrix alt = build_alt_multipoint(x, k, switched).matrix;

    // S sends e_w to e_u with u = Lambda w when u_1 = alpha, and to
    // (-1)^k e_{-u} otherwise; the unit slot is fixed.
    std::vector<std::size_t> target(alt.rows());
    std::vector<Rational> factor(alt.rows(), Rational(1));
    if (k == 0) target[0] = 0;
    for (std::size_t i = 0; i < compact_basis.size(); ++i) {
      RatVector u = compact_basis[i];
      for (std::size_t p = 0; p < m; ++p) u[p] *= Rational(signs[p]);
      if (u[0] != a) {
        for (auto& c : u) c = -c;
        factor[i + offset] = odd;
      }
      target[i + offset] = index_of(reduced_basis, u) + offset;
    }
    for (std::size_t i = 0; i < alt.rows(); ++i) {
      for (std::size_t j = 0; j < alt.cols(); ++j) {
        if (alt(i, j).is_zero()) continue;
        out.conjugated_sum(target[i], target[j]) += factor[i] * factor[j] * alt(i, j);
      }
    }
  }
  out.holds = out.conjugated_sum == out.reduced * Rational(2);
  return out;
}

}  // namespace eqlines
