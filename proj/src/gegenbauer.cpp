#include "eqlines/gegenbauer.hpp"

#include <stdexcept>

#include "eqlines/errors.hpp"

namespace eqlines {

GegenbauerFamily::GegenbauerFamily(Rational dimension)
    : dimension_(std::move(dimension)), cache_(std::make_shared<Cache>()) {
  if (dimension_ < Rational(2)) throw BadDimension("Gegenbauer dimension must be >= 2, got " + dimension_.str());
  cache_->polys.push_back(UniPoly::constant(1));
  cache_->polys.push_back(UniPoly::identity());
}

const UniPoly& GegenbauerFamily::poly(int k) const {
  if (k < 0) throw std::invalid_argument("Gegenbauer degree must be >= 0");
  std::lock_guard lock(cache_->mutex);
  auto& polys = cache_->polys;
  const UniPoly t = UniPoly::identity();
  while (static_cast<int>(polys.size()) <= k) {
    const int n = static_cast<int>(polys.size());
    const Rational a = Rational(2 * n - 4) + dimension_;
    const Rational b = n - 1;
    const Rational c = Rational(n - 3) + dimension_;
    UniPoly next = (t * polys[static_cast<std::size_t>(n - 1)]) * a - polys[static_cast<std::size_t>(n - 2)] * b;
    next *= c.inverse();
    polys.push_back(std::move(next));
  }
  return polys[static_cast<std::size_t>(k)];
}

UniPoly gegenbauer_poly(const Rational& d, int k) { return GegenbauerFamily(d).poly(k); }

Rational parity_kernel(const UniPoly& pk, int k, const Rational& z, const Rational& w) {
  Rational acc = 0;
  // Terms j = k, k-2, ...: powers of z rise while powers of w fall.
  for (int j = k; j >= 0; j -= 2) {
    const Rational c = pk.coeff(j);
    if (c.is_zero()) continue;
    acc += c * pow(z, static_cast<unsigned>(j)) * pow(w, static_cast<unsigned>((k - j) / 2));
  }
  return acc;
}

Rational q3(const Rational& d, int k, const Rational& u, const Rational& v, const Rational& t) {
  if (d < Rational(3)) throw BadDimension("q3 requires d >= 3, got " + d.str());
  const GegenbauerFamily family(d - 1);
  const Rational z = t - u * v;
  const Rational w = (Rational(1) - u * u) * (Rational(1) - v * v);
  return parity_kernel(family.poly(k), k, z, w);
}

MultivariateKernel::MultivariateKernel(const Rational& d, const RatMatrix& gram)
    : gram_(gram),
      family_([&] {
        if (!gram.is_square() || gram.rows() == 0) throw ImproperGram("Gram block must be square and nonempty");
        const Rational reduced = d - Rational(gram.rows());
        if (reduced < Rational(2)) {
          throw BadDimension("multivariate kernel needs d - m >= 2, got d = " + d.str() +
                             ", m = " + std::to_string(gram.rows()));
        }
        return reduced;
      }()) {
  for (std::size_t i = 0; i < gram_.rows(); ++i) {
    if (gram_(i, i) != Rational(1)) throw ImproperGram("Gram block must have unit diagonal");
  }
  if (!is_positive_definite(gram_)) throw ImproperGram("Gram block is not positive definite");
  gram_inverse_ = inverse(gram_);
}

Rational MultivariateKernel::operator()(int k, std::span<const Rational> u, std::span<const Rational> v,
                                        const Rational& t) const {
  const RatVector ginv_u = gram_inverse_ * u;
  const RatVector ginv_v = gram_inverse_ * v;
  const Rational z = t - dot(v, ginv_u);
  const Rational w = (Rational(1) - dot(u, ginv_u)) * (Rational(1) - dot(v, ginv_v));
  return parity_kernel(family_.poly(k), k, z, w);
}

Rational qm(const Rational& d, int k, const RatMatrix& gram, std::span<const Rational> u,
            std::span<const Rational> v, const Rational& t) {
  return MultivariateKernel(d, gram)(k, u, v, t);
}

Rational switching_conjugate_value(const Rational& d, int k, const SwitchingTransform& transform,
                                   const RatMatrix& gram, std::span<const Rational> u,
                                   std::span<const Rational> v, const Rational& t) {
  const std::size_t m = gram.rows();
  if (transform.block_signs.size() != m || u.size() != m || v.size() != m) {
    throw DimensionMismatch("switching_conjugate_value: sign vector length mismatch");
  }
  RatMatrix switched = gram;
  RatVector su(m), sv(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) switched(i, j) *= Rational(transform.block_signs[i] * transform.block_signs[j]);
    su[i] = u[i] * Rational(transform.first_sign * transform.block_signs[i]);
    sv[i] = v[i] * Rational(transform.second_sign * transform.block_signs[i]);
  }
  return qm(d, k, switched, su, sv, t * Rational(transform.first_sign * transform.second_sign));
}

}  // namespace eqlines
