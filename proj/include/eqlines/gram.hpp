#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eqlines/matrix.hpp"
#include "eqlines/rational.hpp"

namespace eqlines {

/// Symmetric rational matrix with unit diagonal.
class GramMatrix {
 public:
  GramMatrix() = default;
  /// Throws InvalidGram unless `entries` is square, symmetric, unit diagonal.
  explicit GramMatrix(RatMatrix entries);

  /// 2x2 block [[1, x], [x, 1]].
  static GramMatrix pair(const Rational& x);

  std::size_t order() const { return entries_.rows(); }
  const RatMatrix& entries() const { return entries_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  /// Positive definite (all leading principal minors > 0).
  bool is_proper() const;

  /// Lambda M Lambda for a vector of +-1 signs.
  GramMatrix switched(std::span<const int> signs) const;

  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

 private:
  RatMatrix entries_;
};

/// Off-diagonal signs of an order-n pattern, stored as a bitset over the upper
/// triangle. Pairs are ordered (0,1), (0,2), ..., (0,n-1), (1,2), ... with
/// the first pair in the most significant bit; a set bit means -alpha. Integer
/// order on `bits` is therefore lexicographic order with + before -.
struct SignPattern {
  int n = 0;
  std::uint32_t bits = 0;

  static constexpr int kMaxOrder = 8;

  static int pair_count(int n) { return n * (n - 1) / 2; }
  /// Bit position of the pair {i, j}, i != j.
  static int bit_of(int n, int i, int j);

  /// -1 when the pair {i, j} carries -alpha, +1 otherwise (also for i == j).
  int sign(int i, int j) const;
  void set_sign(int i, int j, int s);

  /// Pattern of vertices perm[0], perm[1], ... in that order.
  SignPattern permuted(std::span<const int> perm) const;
  SignPattern switched(std::span<const int> signs) const;
  /// The unique switching of this pattern whose row 0 is all +.
  SignPattern normalized() const;

  /// +/- characters over the upper triangle in pair order.
  std::string str() const;

  /// Reads the signs of a Gram matrix whose off-diagonal entries are all
  /// +-alpha for one alpha > 0. Throws MixedMagnitudes otherwise.
  static SignPattern from_gram(const RatMatrix& gram);
  /// Gram matrix with unit diagonal and entries sign * alpha.
  RatMatrix to_gram(const Rational& alpha) const;

  friend auto operator<=>(const SignPattern&, const SignPattern&) = default;
};

/// Canonical representative of a switching-and-permutation class: the minimal
/// pattern over all switchings and vertex permutations.
struct SwitchingClassKey {
  SignPattern canonical;

  std::string str() const { return canonical.str(); }
  friend auto operator<=>(const SwitchingClassKey&, const SwitchingClassKey&) = default;
};

/// Brute force over n! permutations; each permuted pattern is normalized to
/// row 0 all +, which is the lexicographically smallest of its switchings.
/// Throws TooLarge for n > SignPattern::kMaxOrder.
SwitchingClassKey canonical_key(const SignPattern& pattern);
/// Throws MixedMagnitudes when an off-diagonal entry is not +-alpha.
SwitchingClassKey canonical_key(const RatMatrix& gram);

struct SwitchingClass {
  SwitchingClassKey key;
  /// Number of order-n patterns in the class.
  std::uint64_t orbit_size = 0;
};

inline constexpr int kMaxEnumerationOrder = 7;

/// All switching-and-permutation classes of order n, sorted by key.
/// Throws TooLarge unless 1 <= n <= kMaxEnumerationOrder.
std::vector<SwitchingClass> enumerate_classes(int n);

/// Extended Gram (G; u, v, t): block G plus two further unit vectors.
struct ExtendedGram {
  RatMatrix gram;
  RatVector u;
  RatVector v;
  Rational t;

  std::size_t order() const { return gram.rows(); }
  /// The (m+2) x (m+2) matrix [[G, u, v], [u^T, 1, t], [v^T, t, 1]].
  RatMatrix full() const;

  /// (Lambda G Lambda; e1 Lambda u, e2 Lambda v, e1 e2 t).
  ExtendedGram switched(std::span<const int> block_signs, int first_sign, int second_sign) const;

  friend bool operator==(const ExtendedGram&, const ExtendedGram&) = default;
};

/// Every distinct extended Gram in the switching class of (G; u, v, t); the
/// input comes first. The size divides 2^(m+1).
std::vector<ExtendedGram> switching_orbit(const ExtendedGram& e);

}  // namespace eqlines
