#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "eqlines/gram.hpp"
#include "eqlines/matrix.hpp"
#include "eqlines/rational.hpp"

namespace eqlines {

/// A finite set of unit vectors given by its Gram matrix and ambient dimension.
///
/// Inner products are interned: A(X) is kept in descending order and
/// A' = [1, A(X)...] indexes every entry of the Gram matrix by a small code
/// (code 0 is the diagonal value 1).
class Configuration {
 public:
  /// When `alpha` is given every off-diagonal entry must be +-alpha (else
  /// NotEquiangular). Without it, alpha is inferred when all off-diagonal
  /// entries share one nonzero magnitude.
  Configuration(GramMatrix gram, int dimension, std::optional<Rational> alpha = std::nullopt);

  std::size_t size() const { return gram_.order(); }
  int dimension() const { return dimension_; }
  const GramMatrix& gram() const { return gram_; }
  const std::optional<Rational>& alpha() const { return alpha_; }
  bool is_equiangular() const { return alpha_.has_value(); }

  /// A(X), descending.
  const RatVector& inner_products() const { return values_; }
  /// A' = [1] followed by A(X), descending.
  const RatVector& extended_values() const { return extended_; }

  std::uint8_t code(std::size_t i, std::size_t j) const { return codes_[i * size() + j]; }
  /// Position of x in A', or nullopt.
  std::optional<std::uint8_t> code_of(const Rational& x) const;

  /// Sign of the (i, j) entry relative to alpha; +1 on the diagonal. Requires
  /// an equiangular configuration.
  int sign(std::size_t i, std::size_t j) const { return negative_[i * size() + j] ? -1 : 1; }

  /// Re-projection by Lambda = diag(signs).
  Configuration switched(std::span<const int> signs) const;
  /// The configuration restricted to `indices`, in that order.
  Configuration subset(std::span<const std::size_t> indices) const;

 private:
  GramMatrix gram_;
  int dimension_;
  std::optional<Rational> alpha_;
  RatVector values_;
  RatVector extended_;
  std::vector<std::uint8_t> codes_;
  std::vector<std::uint8_t> negative_;
};

std::uint64_t falling_factorial(std::uint64_t n, int k);

/// x(t) for every t in A', including x(1) = N.
std::map<Rational, std::uint64_t> two_point(const Configuration& x);

using Triple = std::array<Rational, 3>;

/// y(u, v, t) over all of X^3, degenerate triples included.
std::map<Triple, std::uint64_t> three_point(const Configuration& x);

struct MultipointKey {
  RatVector u;
  RatVector v;
  Rational t;

  friend auto operator<=>(const MultipointKey&, const MultipointKey&) = default;
};

/// Raw counts for one proper block G, from a single scan over ordered tuples
/// (B, c, c') with B distinct and c, c' arbitrary points of X.
struct MultipointCounts {
  int m = 0;
  RatMatrix block;
  RatVector values;                              // A' of the configuration
  std::uint64_t base = 0;                        // N_{m-2}(G)
  std::map<RatVector, std::uint64_t> partial;    // N_{m-1}(G; u), nonzero only
  std::map<MultipointKey, std::uint64_t> full;   // N_m(G; u, v, t), nonzero only

  std::uint64_t at(const RatVector& u, const RatVector& v, const Rational& t) const;
  std::uint64_t at(const RatVector& u) const;
};

/// Throws ImproperGram unless G is positive definite with unit diagonal.
MultipointCounts multipoint(const Configuration& x, const GramMatrix& g);

/// Every failure of the degeneration rules (u_p = 1, v_q = 1, t = 1) over the
/// whole index space (A')^m x (A')^m x A'; empty when all hold.
std::vector<std::string> degeneration_violations(const MultipointCounts& counts);

inline constexpr int kMaxClassPoints = 6;

/// Switching-class counts at level m. Each ordered tuple of distinct points
/// is filed under its normalized sign pattern (switched so that row 0 is all
/// +), which names its switching class with the first point as b_1.
struct DistributionTable {
  int level = 0;
  std::uint64_t points = 0;  // N
  Rational alpha;
  std::map<SignPattern, std::uint64_t> top;     // m + 2 points: N_m[.]
  std::map<SignPattern, std::uint64_t> middle;  // m + 1 points: N_{m-1}[.]
  std::map<SignPattern, std::uint64_t> bottom;  // m points: N_{m-2}[.]

  /// N_m[G; u, v, t]
  std::uint64_t count(const ExtendedGram& e) const;
  /// N_{m-1}[G; u]
  std::uint64_t count(const RatMatrix& g, std::span<const Rational> u) const;
  /// N_{m-2}[G]
  std::uint64_t count(const RatMatrix& g) const;

  /// `top` merged over vertex permutations.
  std::map<SwitchingClassKey, std::uint64_t> by_key() const;

  friend bool operator==(const DistributionTable&, const DistributionTable&) = default;
};

/// Fast path: one pass over unordered subsets, then each subset pattern is
/// spread over its p! orderings. Throws NotEquiangular, or TooLarge for
/// m + 2 > kMaxClassPoints.
DistributionTable class_distribution(const Configuration& x, int m);
/// Reference scan over all ordered tuples.
DistributionTable class_distribution_naive(const Configuration& x, int m);

/// Sum rules: at each level p the class counts add up to N!/(N-p)!, summed
/// both over stored classes and, for m >= 1, over the parameterization with
/// u_1 = v_1 = alpha. Returns the failures.
std::vector<std::string> counting_identity_violations(const DistributionTable& table);

/// Named values at level 2: z1 = N_2[G; u1, u1, a], z2 = N_2[G; u1, u1, -a],
/// z3 = N_2[G; u2, u2, -a], and y1, y2 from level 1.
struct FourPointSummary {
  std::uint64_t pairs = 0;  // N(N-1)
  std::uint64_t y1 = 0;
  std::uint64_t y2 = 0;
  std::uint64_t z1 = 0;
  std::uint64_t z2 = 0;
  std::uint64_t z3 = 0;
};

FourPointSummary four_point_summary(const DistributionTable& level2);

}  // namespace eqlines
