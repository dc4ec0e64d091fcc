#include "eqlines/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "eqlines/errors.hpp"

namespace eqlines {

UniPoly::UniPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(const Rational& c, int degree) {
  if (degree < 0) throw std::invalid_argument("UniPoly::monomial: negative degree");
  std::vector<Rational> coeffs(static_cast<std::size_t>(degree) + 1);
  coeffs.back() = c;
  return UniPoly(std::move(coeffs));
}

UniPoly UniPoly::identity() { return monomial(1, 1); }

Rational UniPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

const Rational& UniPoly::leading() const {
  if (is_zero()) throw std::domain_error("UniPoly: leading coefficient of zero polynomial");
  return coeffs_.back();
}

Rational UniPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * Rational(i);
  return UniPoly(std::move(out));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  const Rational lead = leading();
  UniPoly out = *this;
  for (auto& c : out.coeffs_) c /= lead;
  return out;
}

UniPoly UniPoly::squarefree_part() const {
  if (degree() <= 0) return *this;
  const UniPoly g = gcd(*this, derivative());
  return divmod(*this, g).first;
}

UniPoly UniPoly::reflected() const {
  UniPoly out = *this;
  for (std::size_t i = 1; i < out.coeffs_.size(); i += 2) out.coeffs_[i] = -out.coeffs_[i];
  return out;
}

UniPoly& UniPoly::operator+=(const UniPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& rhs) {
  for (auto& c : coeffs_) c *= rhs;
  trim();
  return *this;
}

UniPoly UniPoly::operator-() const {
  UniPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

std::string UniPoly::str(char variable) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    const Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == Rational(1);
    if (!unit || i == 0) os << mag;
    if (i >= 1) {
      if (!unit) os << "*";
      os << variable;
      if (i >= 2) os << "^" << i;
    }
  }
  return os.str();
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& dividend, const UniPoly& divisor) {
  if (divisor.is_zero()) throw std::domain_error("UniPoly: division by zero polynomial");
  std::vector<Rational> rem = dividend.coefficients();
  const int dv = divisor.degree();
  if (dividend.degree() < dv) return {UniPoly{}, dividend};

  std::vector<Rational> quot(static_cast<std::size_t>(dividend.degree() - dv) + 1);
  const Rational& lead = divisor.leading();
  for (int i = dividend.degree(); i >= dv; --i) {
    const Rational q = rem[static_cast<std::size_t>(i)] / lead;
    quot[static_cast<std::size_t>(i - dv)] = q;
    if (q.is_zero()) continue;
    for (int j = 0; j <= dv; ++j) {
      rem[static_cast<std::size_t>(i - dv + j)] -= q * divisor.coeff(j);
    }
  }
  rem.resize(static_cast<std::size_t>(dv));
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a;
  UniPoly y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain;
  const UniPoly sq = p.squarefree_part();
  if (sq.is_zero()) return chain;
  chain.push_back(sq);
  UniPoly next = sq.derivative();
  while (!next.is_zero()) {
    chain.push_back(next);
    const std::size_t n = chain.size();
    // Positive rescaling keeps sign sequences intact and tames coefficient growth.
    UniPoly r = -divmod(chain[n - 2], chain[n - 1]).second;
    if (!r.is_zero()) r *= r.leading().abs().inverse();
    next = std::move(r);
  }
  return chain;
}

namespace {

int sign_variations(const std::vector<UniPoly>& chain, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = q(x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

}  // namespace

int sturm_count(const std::vector<UniPoly>& chain, const Rational& lo, const Rational& hi) {
  if (chain.empty() || !(lo < hi)) return 0;
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

int sturm_count(const UniPoly& p, const Rational& lo, const Rational& hi) {
  return sturm_count(sturm_chain(p), lo, hi);
}

Rational cauchy_bound(const UniPoly& p) {
  if (p.degree() < 1) return 1;
  Rational best = 0;
  const Rational& lead = p.leading();
  for (int i = 0; i < p.degree(); ++i) best = std::max(best, (p.coeff(i) / lead).abs());
  return best + 1;
}

RootInterval isolate_max_root(const UniPoly& p, const Rational& lo, const Rational& hi,
                              const Rational& width) {
  if (p.is_zero()) throw std::invalid_argument("isolate_max_root: zero polynomial");
  if (width.sign() <= 0) throw std::invalid_argument("isolate_max_root: width must be positive");
  const auto chain = sturm_chain(p);
  if (sturm_count(chain, lo, hi) == 0) throw NoRealRoot("no real root in (" + lo.str() + ", " + hi.str() + "]");

  // Invariant: at least one root in (l, h], none in (h, hi].
  Rational l = lo;
  Rational h = hi;
  while (h - l > width || sturm_count(chain, l, h) != 1) {
    const Rational mid = (l + h) / 2;
    if (sturm_count(chain, mid, h) >= 1) {
      l = mid;
    } else {
      h = mid;
    }
  }
  return {l, h};
}

}  // namespace eqlines
