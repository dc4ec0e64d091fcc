#pragma once

#include <string>
#include <vector>

#include "eqlines/distributions.hpp"
#include "eqlines/gram.hpp"
#include "eqlines/matrix.hpp"

namespace eqlines {

enum class ConstraintKind { AltThreePoint, OriginalThreePoint, AltMultipoint, FullMultipoint, Reduced };

std::string to_string(ConstraintKind kind);

/// A constraint matrix with one label per basis slot. Slot "1" is the
/// combined unit slot; other labels are inner-product vectors. Vectors run in
/// lexicographic order over the value list [1, A(X) descending].
struct ConstraintMatrix {
  ConstraintKind kind{};
  int m = 1;
  int k = 0;
  RatMatrix matrix;
  std::vector<std::string> labels;
};

/// Largest block order handled by the multipoint builders.
inline constexpr int kMaxConstraintBlock = 2;

/// N + sum over t in A(X) of x(t) P^d_k(t).
Rational lp_value(const Configuration& x, int k);

/// Order s + 1: sum over (u, v, t) in A'^3 of y(u, v, t) Q^d_k(u, v, t) e_u e_v^T.
ConstraintMatrix build_alt_threepoint(const Configuration& x, int k);

/// Order n + 1: sum over A'^3 of y Q^d_k (1, u, ..., u^n)(1, v, ..., v^n)^T.
ConstraintMatrix build_original_threepoint(const Configuration& x, int k, int n);

/// V[i][j] = points[i]^j.
RatMatrix vandermonde(const RatVector& points, int n);

/// Compact multipoint matrix for one proper block G: order s^m + 1 for k = 0
/// (unit slot first), s^m for k >= 1. Throws ImproperGram, TooLarge for
/// m > kMaxConstraintBlock.
ConstraintMatrix build_alt_multipoint(const Configuration& x, int k, const GramMatrix& g);
ConstraintMatrix build_alt_multipoint(const MultipointCounts& counts, int d, int k);

/// Uncompressed multipoint matrix of order (s + 1)^m over all u in A'^m.
ConstraintMatrix build_full_multipoint(const MultipointCounts& counts, int d, int k);

/// P with full = P^T compact P: e_u maps to e_u for u in A^m, each column
/// G_(p) maps to the unit slot when k = 0, and every other slot to zero.
RatMatrix compaction_map(const MultipointCounts& counts, int k);

/// Switching-reduced matrix with u_1 = v_1 = alpha: order 2^(m-1) + 1 for
/// k = 0 and 2^(m-1) for k >= 1. Throws NotEquiangular, ImproperGram.
ConstraintMatrix build_reduced(const Configuration& x, int k, const GramMatrix& g);
ConstraintMatrix build_reduced(const DistributionTable& table, int d, int k, const GramMatrix& g);

struct HalvedIdentity {
  RatMatrix conjugated_sum;  // sum over Lambda of S A_Lambda S^T
  RatMatrix reduced;         // the switching-reduced matrix
  bool holds = false;
};

/// Sums the compact matrices of every switched block Lambda G Lambda,
/// folded onto the reduced basis, and compares with twice the reduced matrix.
HalvedIdentity halved_identity_check(const Configuration& x, int k, const GramMatrix& g);

}  // namespace eqlines
