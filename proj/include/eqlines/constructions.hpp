#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqlines/distributions.hpp"
#include "eqlines/matrix.hpp"
#include "eqlines/rational.hpp"

namespace eqlines {

/// 28 lines in R^7 at angle arccos(1/3): for i < j in 1..8, v_ij has 3 at
/// positions i, j and -1 elsewhere, scaled to unit length. All lie in the
/// hyperplane of zero coordinate sum.
Configuration gen28();

/// Reads the Gram text format:
///
///   N d p/q
///   N rows of N rationals
///
/// Lines whose first non-blank character is '#' are comments. When `alpha`
/// is given it must match the header. Throws ParseError, NotEquiangular,
/// NotPSD, RankExceedsDimension.
Configuration parse_configuration(std::istream& in, std::optional<Rational> alpha = std::nullopt);
Configuration load_configuration(const std::string& path, std::optional<Rational> alpha = std::nullopt);

/// Writes the Gram text format. Requires an equiangular configuration.
void write_configuration(std::ostream& out, const Configuration& x);
std::string format_configuration(const Configuration& x);

/// 1 / alpha when it is an integer, else nullopt.
std::optional<long> integer_a(const Configuration& x);

/// Rank of the reduced k = 0, m = 2 matrix at G = [[1, a], [a, 1]]; when the
/// rank is 1, the generating vector scaled to first entry 1.
struct Rank1Audit {
  std::size_t rank = 0;
  std::optional<RatVector> vector;
  RatMatrix matrix;

  bool is_rank1() const { return vector.has_value(); }
};

Rank1Audit rank1_audit(const Configuration& x);

/// (1, (a+1)^3 (a-2) / 4, (a-1)^3 (a+2) / 4)
RatVector extremal_rank1_vector(long a);

/// (N_{b,b'}, N'_{b,b'}): third points c whose triangle with b, b' has
/// positive sign product, and the rest. Throws IndexOutOfRange, and
/// NotEquiangular for a non-equiangular input.
std::pair<std::size_t, std::size_t> two_fixed_point(const Configuration& x, std::size_t b, std::size_t b2);

struct DerivedCode {
  std::size_t base = 0;
  Rational plus;   // 1 / (a + 1)
  Rational minus;  // -1 / (a - 1)
  RatMatrix gram;  // order N - 1
  std::vector<std::size_t> points;  // original indices, in order
};

/// Switch every point to have inner product +alpha with `base`, project onto
/// the orthogonal complement of the base vector and renormalize.
DerivedCode derived_code(const Configuration& x, std::size_t base);

struct SrgParameters {
  long v = 0;
  long k = 0;
  long lambda = 0;
  long mu = 0;

  friend bool operator==(const SrgParameters&, const SrgParameters&) = default;
  std::string str() const;
};

/// (a^2(a^2-3)/2, (a+1)^3(a-2)/4, (a+1)(a+2)(a^2-5)/8, (a+1)^3(a-2)/8)
SrgParameters predicted_srg(long a);

/// Eigenvalue with multiplicity, ascending by value.
using Spectrum = std::vector<std::pair<Rational, std::size_t>>;

std::string spectrum_str(const Spectrum& s);

struct SrgReport {
  long a = 0;
  std::size_t base = 0;
  SrgParameters parameters;
  RatMatrix adjacency;
  Spectrum adjacency_spectrum;
  /// The characteristic polynomial divides exactly into the spectrum factors.
  bool charpoly_factors = false;
  Spectrum gram_spectrum;
  /// I + M/(a+1) - (J - I - M)/(a-1) equals the projected Gram matrix.
  bool gram_formula_holds = false;
};

/// Builds the derived code at `base`, checks strong regularity of its
/// +-graph pair by pair and computes both spectra from the candidate
/// eigenvalues. Throws NotExtremal, NotStronglyRegular.
SrgReport srg_extract(const Configuration& x, std::size_t base = 0);

/// 2 lambda = 3k - v - 1 and lambda agrees with predicted_srg(a).
bool lambda_identity_check(const SrgParameters& p, long a);

}  // namespace eqlines
