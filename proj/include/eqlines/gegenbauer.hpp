#pragma once

#include <deque>
#include <memory>
#include <mutex>
#include <span>

#include "eqlines/matrix.hpp"
#include "eqlines/polynomial.hpp"
#include "eqlines/rational.hpp"

namespace eqlines {

/// Default upper degree for kernel tables.
inline constexpr int kDefaultMaxDegree = 10;

/// Gegenbauer polynomials P^d_k normalized by P^d_k(1) = 1, generated by
///
///   P_0 = 1,  P_1 = t,
///   (k + d - 3) P_k = (2k + d - 4) t P_{k-1} - (k - 1) P_{k-2}.
///
/// The dimension is a rational so that kernels can be evaluated at a
/// non-integer d (the certificate treats d as a real parameter). Polynomials
/// are cached; the cache grows under a mutex, references stay valid, and
/// copies of a family share one cache.
class GegenbauerFamily {
 public:
  /// Throws BadDimension for d < 2.
  explicit GegenbauerFamily(Rational dimension);

  const Rational& dimension() const { return dimension_; }
  const UniPoly& poly(int k) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::deque<UniPoly> polys;
  };

  Rational dimension_;
  std::shared_ptr<Cache> cache_;
};

UniPoly gegenbauer_poly(const Rational& d, int k);

/// Parity form of a kernel: sum over j = k (mod 2) of c_j z^j w^((k-j)/2),
/// where c_j are the coefficients of `pk`, a polynomial of degree k and
/// parity k. Equals w^(k/2) pk(z / sqrt(w)) whenever w > 0.
Rational parity_kernel(const UniPoly& pk, int k, const Rational& z, const Rational& w);

/// Three-point kernel Q^d_k(u, v, t) = parity form of P^{d-1}_k with
/// z = t - uv and w = (1 - u^2)(1 - v^2). Requires d >= 3.
Rational q3(const Rational& d, int k, const Rational& u, const Rational& v, const Rational& t);

/// Multivariate kernel Q^{d,m}_k(G; u, v, t) for a proper m x m Gram block:
/// parity form of P^{d-m}_k with z = t - u G^{-1} v^T and
/// w = (1 - u G^{-1} u^T)(1 - v G^{-1} v^T).
///
/// Holds the inverse of G and the P^{d-m} family so repeated evaluations
/// against one block only pay for the quadratic forms.
class MultivariateKernel {
 public:
  /// Throws ImproperGram if G is not positive definite, BadDimension if
  /// d - m < 2.
  MultivariateKernel(const Rational& d, const RatMatrix& gram);

  std::size_t order() const { return gram_.rows(); }
  const RatMatrix& gram() const { return gram_; }

  Rational operator()(int k, std::span<const Rational> u, std::span<const Rational> v,
                      const Rational& t) const;

 private:
  RatMatrix gram_;
  RatMatrix gram_inverse_;
  GegenbauerFamily family_;
};

Rational qm(const Rational& d, int k, const RatMatrix& gram, std::span<const Rational> u,
            std::span<const Rational> v, const Rational& t);

/// A switching transform of an extended Gram (G; u, v, t): signs for the m
/// block vertices plus the two free points.
struct SwitchingTransform {
  std::vector<int> block_signs;
  int first_sign = 1;
  int second_sign = 1;
};

/// Q^{d,m}_k evaluated at the switched tuple
/// (Lambda G Lambda; e1 Lambda u, e2 Lambda v, e1 e2 t).
Rational switching_conjugate_value(const Rational& d, int k, const SwitchingTransform& transform,
                                   const RatMatrix& gram, std::span<const Rational> u,
                                   std::span<const Rational> v, const Rational& t);

}  // namespace eqlines
