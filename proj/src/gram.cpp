#include "eqlines/gram.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "eqlines/errors.hpp"

namespace eqlines {

GramMatrix::GramMatrix(RatMatrix entries) : entries_(std::move(entries)) {
  if (!entries_.is_square()) throw InvalidGram("Gram matrix must be square");
  if (!entries_.is_symmetric()) throw InvalidGram("Gram matrix must be symmetric");
  for (std::size_t i = 0; i < entries_.rows(); ++i) {
    if (entries_(i, i) != Rational(1)) throw InvalidGram("Gram matrix must have unit diagonal");
  }
}

GramMatrix GramMatrix::pair(const Rational& x) { return GramMatrix(RatMatrix{{1, x}, {x, 1}}); }

bool GramMatrix::is_proper() const { return order() > 0 && is_positive_definite(entries_); }

GramMatrix GramMatrix::switched(std::span<const int> signs) const {
  if (signs.size() != order()) throw DimensionMismatch("switching sign vector has wrong length");
  RatMatrix out = entries_;
  for (std::size_t i = 0; i < order(); ++i) {
    for (std::size_t j = 0; j < order(); ++j) {
      if (signs[i] * signs[j] < 0) out(i, j) = -out(i, j);
    }
  }
  return GramMatrix(std::move(out));
}

int SignPattern::bit_of(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  const int index = i * n - i * (i + 1) / 2 + (j - i - 1);
  return pair_count(n) - 1 - index;
}

int SignPattern::sign(int i, int j) const {
  if (i == j) return 1;
  return (bits >> bit_of(n, i, j)) & 1U ? -1 : 1;
}

void SignPattern::set_sign(int i, int j, int s) {
  const std::uint32_t mask = std::uint32_t{1} << bit_of(n, i, j);
  if (s < 0) {
    bits |= mask;
  } else {
    bits &= ~mask;
  }
}

SignPattern SignPattern::permuted(std::span<const int> perm) const {
  SignPattern out{n, 0};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (sign(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) < 0) out.set_sign(i, j, -1);
    }
  }
  return out;
}

SignPattern SignPattern::switched(std::span<const int> signs) const {
  SignPattern out{n, 0};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int s = sign(i, j) * signs[static_cast<std::size_t>(i)] * signs[static_cast<std::size_t>(j)];
      if (s < 0) out.set_sign(i, j, -1);
    }
  }
  return out;
}

SignPattern SignPattern::normalized() const {
  std::vector<int> signs(static_cast<std::size_t>(n), 1);
  for (int j = 1; j < n; ++j) signs[static_cast<std::size_t>(j)] = sign(0, j);
  return switched(signs);
}

std::string SignPattern::str() const {
  std::string out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.push_back(sign(i, j) < 0 ? '-' : '+');
  }
  return out;
}

SignPattern SignPattern::from_gram(const RatMatrix& gram) {
  if (!gram.is_square()) throw InvalidGram("Gram matrix must be square");
  const int n = static_cast<int>(gram.rows());
  if (n > kMaxOrder) throw TooLarge("sign patterns support order <= " + std::to_string(kMaxOrder));
  SignPattern out{n, 0};
  if (n < 2) return out;
  const Rational alpha = gram(0, 1).abs();
  if (alpha.is_zero()) throw MixedMagnitudes("off-diagonal entry 0 is not +-alpha");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Rational& x = gram(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (x.abs() != alpha || gram(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) != x) {
        throw MixedMagnitudes("off-diagonal entry " + x.str() + " is not +-" + alpha.str());
      }
      if (x.sign() < 0) out.set_sign(i, j, -1);
    }
  }
  return out;
}

RatMatrix SignPattern::to_gram(const Rational& alpha) const {
  const auto size = static_cast<std::size_t>(n);
  RatMatrix out = RatMatrix::identity(size);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = alpha * Rational(sign(i, j));
    }
  }
  return out;
}

SwitchingClassKey canonical_key(const SignPattern& pattern) {
  if (pattern.n > SignPattern::kMaxOrder) {
    throw TooLarge("canonical_key supports order <= " + std::to_string(SignPattern::kMaxOrder));
  }
  std::vector<int> perm(static_cast<std::size_t>(pattern.n));
  std::iota(perm.begin(), perm.end(), 0);
  SignPattern best = pattern.normalized();
  do {
    const SignPattern candidate = pattern.permuted(perm).normalized();
    if (candidate.bits < best.bits) best = candidate;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best};
}

SwitchingClassKey canonical_key(const RatMatrix& gram) { return canonical_key(SignPattern::from_gram(gram)); }

std::vector<SwitchingClass> enumerate_classes(int n) {
  if (n < 1 || n > kMaxEnumerationOrder) {
    throw TooLarge("enumerate_classes supports 1 <= n <= " + std::to_string(kMaxEnumerationOrder));
  }
  // Only patterns with row 0 all + are visited: each switching class has
  // exactly one of them, and those bits sit in the low C(n-1, 2) positions.
  const int free_bits = SignPattern::pair_count(n - 1);
  const std::uint32_t count = std::uint32_t{1} << free_bits;
  const std::uint64_t switchings = std::uint64_t{1} << (n - 1);
  std::vector<bool> seen(count, false);
  std::vector<SwitchingClass> classes;
  std::vector<int> perm(static_cast<std::size_t>(n));

  for (std::uint32_t bits = 0; bits < count; ++bits) {
    if (seen[bits]) continue;
    // Increasing scan order makes the first unseen member the class minimum.
    const SignPattern rep{n, bits};
    std::uint64_t normalized_members = 0;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const SignPattern member = rep.permuted(perm).normalized();
      if (!seen[member.bits]) {
        seen[member.bits] = true;
        ++normalized_members;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    classes.push_back({{rep}, normalized_members * switchings});
  }
  return classes;
}

RatMatrix ExtendedGram::full() const {
  const std::size_t m = order();
  if (!gram.is_square() || u.size() != m || v.size() != m) {
    throw DimensionMismatch("extended Gram: block and vectors disagree in size");
  }
  RatMatrix out(m + 2, m + 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out(i, j) = gram(i, j);
    out(i, m) = out(m, i) = u[i];
    out(i, m + 1) = out(m + 1, i) = v[i];
  }
  out(m, m) = out(m + 1, m + 1) = 1;
  out(m, m + 1) = out(m + 1, m) = t;
  return out;
}

ExtendedGram ExtendedGram::switched(std::span<const int> block_signs, int first_sign, int second_sign) const {
  const std::size_t m = order();
  if (block_signs.size() != m) throw DimensionMismatch("switching sign vector has wrong length");
  ExtendedGram out = *this;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (block_signs[i] * block_signs[j] < 0) out.gram(i, j) = -out.gram(i, j);
    }
    if (first_sign * block_signs[i] < 0) out.u[i] = -out.u[i];
    if (second_sign * block_signs[i] < 0) out.v[i] = -out.v[i];
  }
  if (first_sign * second_sign < 0) out.t = -out.t;
  return out;
}

std::vector<ExtendedGram> switching_orbit(const ExtendedGram& e) {
  const std::size_t m = e.order();
  if (m > 16) throw TooLarge("switching_orbit: block too large");
  std::vector<ExtendedGram> orbit{e};
  std::vector<int> signs(m);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    for (std::size_t i = 0; i < m; ++i) signs[i] = (mask >> i) & 1U ? -1 : 1;
    for (int e1 : {1, -1}) {
      for (int e2 : {1, -1}) {
        ExtendedGram next = e.switched(signs, e1, e2);
        if (std::find(orbit.begin(), orbit.end(), next) == orbit.end()) orbit.push_back(std::move(next));
      }
    }
  }
  return orbit;
}

}  // namespace eqlines
