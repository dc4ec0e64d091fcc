#include "eqlines/distributions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "eqlines/errors.hpp"
#include "eqlines/parallel.hpp"

namespace eqlines {

Configuration::Configuration(GramMatrix gram, int dimension, std::optional<Rational> alpha)
    : gram_(std::move(gram)), dimension_(dimension), alpha_(std::move(alpha)) {
  const std::size_t n = size();
  std::set<Rational> distinct;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) distinct.insert(gram_(i, j));
  }

  if (alpha_) {
    if (alpha_->sign() <= 0) throw NotEquiangular("alpha must be positive, got " + alpha_->str());
    for (const auto& x : distinct) {
      if (x.abs() != *alpha_) throw NotEquiangular("inner product " + x.str() + " is not +-" + alpha_->str());
    }
  } else if (!distinct.empty()) {
    const Rational c = distinct.begin()->abs();
    const bool single = std::all_of(distinct.begin(), distinct.end(), [&](const Rational& x) { return x.abs() == c; });
    if (single && c.sign() > 0 && c < Rational(1)) alpha_ = c;
  }

  values_.assign(distinct.rbegin(), distinct.rend());
  extended_.push_back(1);
  for (const auto& x : values_) {
    if (x != Rational(1)) extended_.push_back(x);
  }
  if (extended_.size() > 255) throw TooLarge("configuration has more than 254 distinct inner products");

  std::map<Rational, std::uint8_t> lookup;
  for (std::size_t i = 0; i < extended_.size(); ++i) lookup.emplace(extended_[i], static_cast<std::uint8_t>(i));
  codes_.resize(n * n);
  negative_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      codes_[i * n + j] = lookup.at(gram_(i, j));
      negative_[i * n + j] = i != j && gram_(i, j).sign() < 0;
    }
  }
}

std::optional<std::uint8_t> Configuration::code_of(const Rational& x) const {
  for (std::size_t i = 0; i < extended_.size(); ++i) {
    if (extended_[i] == x) return static_cast<std::uint8_t>(i);
  }
  return std::nullopt;
}

Configuration Configuration::switched(std::span<const int> signs) const {
  return Configuration(gram_.switched(signs), dimension_, alpha_);
}

Configuration Configuration::subset(std::span<const std::size_t> indices) const {
  for (auto i : indices) {
    if (i >= size()) throw IndexOutOfRange("subset index " + std::to_string(i) + " out of range");
  }
  return Configuration(GramMatrix(gram_.entries().principal_submatrix(indices)), dimension_, alpha_);
}

std::uint64_t falling_factorial(std::uint64_t n, int k) {
  std::uint64_t out = 1;
  for (int i = 0; i < k; ++i) {
    if (n < static_cast<std::uint64_t>(i) + 1) return 0;
    out *= n - static_cast<std::uint64_t>(i);
  }
  return out;
}

std::map<Rational, std::uint64_t> two_point(const Configuration& x) {
  const auto& values = x.extended_values();
  std::vector<std::uint64_t> dense(values.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) ++dense[x.code(i, j)];
  }
  std::map<Rational, std::uint64_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (dense[i] > 0) out[values[i]] = dense[i];
  }
  return out;
}

std::map<Triple, std::uint64_t> three_point(const Configuration& x) {
  const auto& values = x.extended_values();
  const std::size_t s = values.size();
  const std::size_t n = x.size();
  std::vector<std::vector<std::uint64_t>> partial(workers_for(n), std::vector<std::uint64_t>(s * s * s, 0));
  parallel_indices(n, [&](std::size_t worker, std::size_t b) {
    auto& dense = partial[worker];
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t head = (x.code(b, c) * s) * s;
      for (std::size_t c2 = 0; c2 < n; ++c2) ++dense[head + x.code(b, c2) * s + x.code(c, c2)];
    }
  });
  std::map<Triple, std::uint64_t> out;
  for (std::size_t idx = 0; idx < s * s * s; ++idx) {
    std::uint64_t total = 0;
    for (const auto& dense : partial) total += dense[idx];
    if (total == 0) continue;
    out[Triple{values[idx / (s * s)], values[(idx / s) % s], values[idx % s]}] = total;
  }
  return out;
}

std::uint64_t MultipointCounts::at(const RatVector& u, const RatVector& v, const Rational& t) const {
  const auto it = full.find(MultipointKey{u, v, t});
  return it == full.end() ? 0 : it->second;
}

std::uint64_t MultipointCounts::at(const RatVector& u) const {
  const auto it = partial.find(u);
  return it == partial.end() ? 0 : it->second;
}

namespace {

std::size_t int_pow(std::size_t base, std::size_t exponent) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) out *= base;
  return out;
}

RatVector decode(std::size_t index, std::size_t m, const RatVector& values) {
  const std::size_t s = values.size();
  RatVector out(m);
  for (std::size_t p = m; p-- > 0;) {
    out[p] = values[index % s];
    index /= s;
  }
  return out;
}

}  // namespace

MultipointCounts multipoint(const Configuration& x, const GramMatrix& g) {
  if (!g.is_proper()) throw ImproperGram("block Gram matrix is not positive definite");
  const std::size_t m = g.order();
  const std::size_t n = x.size();
  const RatVector& values = x.extended_values();
  const std::size_t s = values.size();
  const std::size_t vectors = int_pow(s, m);
  if (vectors * vectors * s > (std::size_t{1} << 26)) throw TooLarge("multipoint index space too large");

  MultipointCounts out;
  out.m = static_cast<int>(m);
  out.block = g.entries();
  out.values = values;

  // Block entries as codes; a value outside A' means no tuple can match.
  std::vector<std::uint8_t> block_codes(m * m, 0);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = 0; q < m; ++q) {
      const auto c = x.code_of(g(p, q));
      if (!c || (p != q && *c == 0)) return out;
      block_codes[p * m + q] = *c;
    }
  }

  struct Accumulator {
    std::uint64_t base = 0;
    std::vector<std::uint64_t> partial;
    std::vector<std::uint64_t> full;
  };
  std::vector<Accumulator> acc(workers_for(n));
  for (auto& a : acc) {
    a.partial.assign(vectors, 0);
    a.full.assign(vectors * vectors * s, 0);
  }

  parallel_indices(n, [&](std::size_t worker, std::size_t first) {
    Accumulator& a = acc[worker];
    std::vector<std::size_t> block(m);
    std::vector<std::size_t> index(n);
    std::function<void(std::size_t)> extend = [&](std::size_t depth) {
      if (depth == m) {
        ++a.base;
        for (std::size_t c = 0; c < n; ++c) {
          std::size_t id = 0;
          for (std::size_t p = 0; p < m; ++p) id = id * s + x.code(block[p], c);
          index[c] = id;
          ++a.partial[id];
        }
        for (std::size_t c = 0; c < n; ++c) {
          const std::size_t head = index[c] * vectors;
          for (std::size_t c2 = 0; c2 < n; ++c2) ++a.full[(head + index[c2]) * s + x.code(c, c2)];
        }
        return;
      }
      for (std::size_t b = 0; b < n; ++b) {
        bool ok = true;
        for (std::size_t q = 0; q < depth && ok; ++q) ok = block[q] != b && x.code(block[q], b) == block_codes[q * m + depth];
        if (!ok) continue;
        block[depth] = b;
        extend(depth + 1);
      }
    };
    if (m == 0) {
      if (first == 0) extend(0);
      return;
    }
    block[0] = first;
    extend(1);
  });

  for (const auto& a : acc) out.base += a.base;
  for (std::size_t id = 0; id < vectors; ++id) {
    std::uint64_t total = 0;
    for (const auto& a : acc) total += a.partial[id];
    if (total > 0) out.partial[decode(id, m, values)] = total;
  }
  for (std::size_t id = 0; id < vectors * vectors * s; ++id) {
    std::uint64_t total = 0;
    for (const auto& a : acc) total += a.full[id];
    if (total == 0) continue;
    const std::size_t pair = id / s;
    out.full[MultipointKey{decode(pair / vectors, m, values), decode(pair % vectors, m, values), values[id % s]}] =
        total;
  }
  return out;
}

std::vector<std::string> degeneration_violations(const MultipointCounts& counts) {
  const auto m = static_cast<std::size_t>(counts.m);
  const RatVector& values = counts.values;
  const std::size_t s = values.size();
  const std::size_t vectors = int_pow(s, m);
  const Rational one = 1;

  auto column = [&](std::size_t p) {
    RatVector col(m);
    for (std::size_t i = 0; i < m; ++i) col[i] = counts.block(i, p);
    return col;
  };
  auto first_unit = [&](const RatVector& w) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] == one) return i;
    }
    return std::nullopt;
  };

  std::vector<std::string> out;
  for (std::size_t ui = 0; ui < vectors; ++ui) {
    const RatVector u = decode(ui, m, values);
    const auto p = first_unit(u);
    for (std::size_t vi = 0; vi < vectors; ++vi) {
      const RatVector v = decode(vi, m, values);
      const auto q = first_unit(v);
      for (const auto& t : values) {
        std::optional<std::uint64_t> expected;
        const char* rule = "";
        if (p && q) {
          rule = "(a)";
          expected = (u == column(*p) && v == column(*q) && t == counts.block(*p, *q)) ? counts.base : 0;
        } else if (p) {
          rule = "(b)";
          expected = (u == column(*p) && t == v[*p]) ? counts.at(v) : 0;
        } else if (q) {
          rule = "(b')";
          expected = (v == column(*q) && t == u[*q]) ? counts.at(u) : 0;
        } else if (t == one) {
          rule = "(c)";
          expected = u == v ? counts.at(u) : 0;
        }
        if (!expected) continue;
        const std::uint64_t actual = counts.at(u, v, t);
        if (actual != *expected) {
          std::ostringstream os;
          os << "rule " << rule << " at u=" << ui << " v=" << vi << " t=" << t << ": expected " << *expected
             << ", counted " << actual;
          out.push_back(os.str());
        }
      }
    }
  }
  return out;
}

namespace {

void require_equiangular(const Configuration& x) {
  if (!x.is_equiangular()) throw NotEquiangular("class distributions need an equiangular configuration");
}

std::vector<std::vector<int>> all_permutations(int p) {
  std::vector<int> perm(static_cast<std::size_t>(p));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::map<SignPattern, std::uint64_t> trivial_level(const Configuration& x, int p) {
  std::map<SignPattern, std::uint64_t> out;
  const std::uint64_t count = falling_factorial(x.size(), p);
  if (count > 0) out[SignPattern{p, 0}] = count;
  return out;
}

std::map<SignPattern, std::uint64_t> level_fast(const Configuration& x, int p) {
  if (p <= 1 || x.size() < static_cast<std::size_t>(p)) return trivial_level(x, p);
  const std::size_t n = x.size();
  const std::size_t patterns = std::size_t{1} << SignPattern::pair_count(p);
  std::vector<std::vector<std::uint32_t>> mask(static_cast<std::size_t>(p), std::vector<std::uint32_t>(static_cast<std::size_t>(p)));
  for (int i = 0; i < p; ++i) {
    for (int k = i + 1; k < p; ++k) mask[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = std::uint32_t{1} << SignPattern::bit_of(p, i, k);
  }

  std::vector<std::vector<std::uint64_t>> histogram(workers_for(n), std::vector<std::uint64_t>(patterns, 0));
  parallel_indices(n, [&](std::size_t worker, std::size_t first) {
    auto& h = histogram[worker];
    std::vector<std::size_t> chosen(static_cast<std::size_t>(p));
    chosen[0] = first;
    std::function<void(int, std::uint32_t)> extend = [&](int depth, std::uint32_t bits) {
      if (depth == p) {
        ++h[bits];
        return;
      }
      for (std::size_t next = chosen[static_cast<std::size_t>(depth) - 1] + 1; next < n; ++next) {
        std::uint32_t b = bits;
        for (int i = 0; i < depth; ++i) {
          if (x.sign(chosen[static_cast<std::size_t>(i)], next) < 0) b |= mask[static_cast<std::size_t>(i)][static_cast<std::size_t>(depth)];
        }
        chosen[static_cast<std::size_t>(depth)] = next;
        extend(depth + 1, b);
      }
    };
    extend(1, 0);
  });

  const auto perms = all_permutations(p);
  std::map<SignPattern, std::uint64_t> out;
  for (std::size_t bits = 0; bits < patterns; ++bits) {
    std::uint64_t total = 0;
    for (const auto& h : histogram) total += h[bits];
    if (total == 0) continue;
    const SignPattern subset_pattern{p, static_cast<std::uint32_t>(bits)};
    for (const auto& perm : perms) out[subset_pattern.permuted(perm).normalized()] += total;
  }
  return out;
}

std::map<SignPattern, std::uint64_t> level_naive(const Configuration& x, int p) {
  if (p <= 1 || x.size() < static_cast<std::size_t>(p)) return trivial_level(x, p);
  const std::size_t n = x.size();
  std::vector<std::map<SignPattern, std::uint64_t>> partial(workers_for(n));
  parallel_indices(n, [&](std::size_t worker, std::size_t first) {
    auto& counts = partial[worker];
    std::vector<std::size_t> tuple(static_cast<std::size_t>(p));
    tuple[0] = first;
    std::function<void(int)> extend = [&](int depth) {
      if (depth == p) {
        SignPattern pattern{p, 0};
        for (int i = 0; i < p; ++i) {
          for (int j = i + 1; j < p; ++j) {
            pattern.set_sign(i, j, x.sign(tuple[static_cast<std::size_t>(i)], tuple[static_cast<std::size_t>(j)]));
          }
        }
        ++counts[pattern.normalized()];
        return;
      }
      for (std::size_t next = 0; next < n; ++next) {
        if (std::find(tuple.begin(), tuple.begin() + depth, next) != tuple.begin() + depth) continue;
        tuple[static_cast<std::size_t>(depth)] = next;
        extend(depth + 1);
      }
    };
    extend(1);
  });
  std::map<SignPattern, std::uint64_t> out;
  for (const auto& counts : partial) {
    for (const auto& [pattern, c] : counts) out[pattern] += c;
  }
  return out;
}

DistributionTable build_table(const Configuration& x, int m,
                              std::map<SignPattern, std::uint64_t> (*level)(const Configuration&, int)) {
  require_equiangular(x);
  if (m < 0 || m + 2 > kMaxClassPoints) {
    throw TooLarge("class distributions support 0 <= m <= " + std::to_string(kMaxClassPoints - 2));
  }
  DistributionTable table;
  table.level = m;
  table.points = x.size();
  table.alpha = *x.alpha();
  table.top = level(x, m + 2);
  table.middle = level(x, m + 1);
  table.bottom = level(x, m);
  return table;
}

std::uint64_t lookup(const std::map<SignPattern, std::uint64_t>& counts, const RatMatrix& gram, const Rational& alpha) {
  if (gram.rows() >= 2 && gram(0, 1).abs() != alpha) {
    throw MixedMagnitudes("entry " + gram(0, 1).str() + " is not +-" + alpha.str());
  }
  const auto it = counts.find(SignPattern::from_gram(gram).normalized());
  return it == counts.end() ? 0 : it->second;
}

}  // namespace

std::uint64_t DistributionTable::count(const ExtendedGram& e) const {
  if (e.order() != static_cast<std::size_t>(level)) throw DimensionMismatch("extended Gram has the wrong block order");
  return lookup(top, e.full(), alpha);
}

std::uint64_t DistributionTable::count(const RatMatrix& g, std::span<const Rational> u) const {
  const std::size_t m = g.rows();
  if (m != static_cast<std::size_t>(level) || u.size() != m) throw DimensionMismatch("(G; u) has the wrong order");
  RatMatrix full(m + 1, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) full(i, j) = g(i, j);
    full(i, m) = full(m, i) = u[i];
  }
  full(m, m) = 1;
  return lookup(middle, full, alpha);
}

std::uint64_t DistributionTable::count(const RatMatrix& g) const {
  if (g.rows() != static_cast<std::size_t>(level)) throw DimensionMismatch("G has the wrong order");
  return lookup(bottom, g, alpha);
}

std::map<SwitchingClassKey, std::uint64_t> DistributionTable::by_key() const {
  std::map<SwitchingClassKey, std::uint64_t> out;
  for (const auto& [pattern, c] : top) out[canonical_key(pattern)] += c;
  return out;
}

DistributionTable class_distribution(const Configuration& x, int m) { return build_table(x, m, level_fast); }

DistributionTable class_distribution_naive(const Configuration& x, int m) { return build_table(x, m, level_naive); }

std::vector<std::string> counting_identity_violations(const DistributionTable& table) {
  std::vector<std::string> out;
  auto expect = [&](const std::string& what, std::uint64_t got, std::uint64_t want) {
    if (got != want) {
      out.push_back(what + ": " + std::to_string(got) + " != " + std::to_string(want));
    }
  };
  auto total = [](const std::map<SignPattern, std::uint64_t>& counts) {
    std::uint64_t sum = 0;
    for (const auto& [pattern, c] : counts) sum += c;
    return sum;
  };
  const int m = table.level;
  const std::uint64_t n = table.points;
  expect("sum of level m+2 classes", total(table.top), falling_factorial(n, m + 2));
  expect("sum of level m+1 classes", total(table.middle), falling_factorial(n, m + 1));
  expect("sum of level m classes", total(table.bottom), falling_factorial(n, m));
  if (m < 1) return out;

  // Parameterized sums: G over switching representatives (row 0 all +),
  // u_1 = v_1 = alpha, remaining coordinates and t over +-alpha.
  const Rational& a = table.alpha;
  const auto mm = static_cast<std::size_t>(m);
  const std::uint32_t blocks = std::uint32_t{1} << SignPattern::pair_count(m - 1);
  const std::uint32_t tails = std::uint32_t{1} << (m - 1);
  auto vector_of = [&](std::uint32_t tail) {
    RatVector w(mm, a);
    for (std::size_t i = 1; i < mm; ++i) {
      if ((tail >> (i - 1)) & 1U) w[i] = -a;
    }
    return w;
  };
  std::uint64_t top_sum = 0;
  std::uint64_t middle_sum = 0;
  std::uint64_t bottom_sum = 0;
  for (std::uint32_t bits = 0; bits < blocks; ++bits) {
    const RatMatrix g = SignPattern{m, bits}.to_gram(a);
    bottom_sum += table.count(g);
    for (std::uint32_t ut = 0; ut < tails; ++ut) {
      const RatVector u = vector_of(ut);
      middle_sum += table.count(g, u);
      for (std::uint32_t vt = 0; vt < tails; ++vt) {
        for (const Rational& t : {a, -a}) top_sum += table.count(ExtendedGram{g, u, vector_of(vt), t});
      }
    }
  }
  expect("parameterized N_m[.] sum", top_sum, falling_factorial(n, m + 2));
  expect("parameterized N_{m-1}[.] sum", middle_sum, falling_factorial(n, m + 1));
  expect("parameterized N_{m-2}[.] sum", bottom_sum, falling_factorial(n, m));
  return out;
}

FourPointSummary four_point_summary(const DistributionTable& level2) {
  if (level2.level != 2) throw std::invalid_argument("four_point_summary needs a level-2 table");
  const Rational& a = level2.alpha;
  const RatMatrix g = GramMatrix::pair(a).entries();
  const RatVector u1{a, a};
  const RatVector u2{a, -a};
  FourPointSummary out;
  out.pairs = level2.count(g);
  out.y1 = level2.count(g, u1);
  out.y2 = level2.count(g, u2);
  out.z1 = level2.count(ExtendedGram{g, u1, u1, a});
  out.z2 = level2.count(ExtendedGram{g, u1, u1, -a});
  out.z3 = level2.count(ExtendedGram{g, u2, u2, -a});
  return out;
}

}  // namespace eqlines
