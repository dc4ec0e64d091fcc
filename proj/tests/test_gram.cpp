#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "eqlines/errors.hpp"
#include "eqlines/gram.hpp"

using namespace eqlines;

namespace {

const Rational kAlpha = Rational::parse("1/3");

SignPattern pattern_from_string(int n, const std::string& s) {
  SignPattern p{n, 0};
  std::size_t at = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) p.set_sign(i, j, s.at(at++) == '-' ? -1 : 1);
  }
  return p;
}

SignPattern random_pattern(std::mt19937& rng, int n) {
  std::uniform_int_distribution<std::uint32_t> bits(0, (1u << SignPattern::pair_count(n)) - 1);
  return SignPattern{n, bits(rng)};
}

std::vector<int> random_signs(std::mt19937& rng, int n) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (auto& x : s) x = (rng() & 1) ? 1 : -1;
  return s;
}

}  // namespace

TEST_CASE("GramMatrix validation") {
  CHECK_NOTHROW(GramMatrix(RatMatrix{{1, kAlpha}, {kAlpha, 1}}));
  CHECK_THROWS_AS(GramMatrix(RatMatrix{{1, kAlpha}, {-kAlpha, 1}}), InvalidGram);
  CHECK_THROWS_AS(GramMatrix(RatMatrix{{2, 0}, {0, 1}}), InvalidGram);
  CHECK_THROWS_AS(GramMatrix(RatMatrix(2, 3)), InvalidGram);
  CHECK(GramMatrix::pair(kAlpha).is_proper());
  CHECK_FALSE(GramMatrix::pair(1).is_proper());
}

TEST_CASE("switching a Gram matrix") {
  const GramMatrix g(RatMatrix{{1, kAlpha, kAlpha}, {kAlpha, 1, kAlpha}, {kAlpha, kAlpha, 1}});
  const std::vector<int> id{1, 1, 1}, neg{-1, -1, -1}, last{1, 1, -1};
  CHECK(g.switched(id) == g);
  CHECK(g.switched(neg) == g);
  const GramMatrix s = g.switched(last);
  CHECK(s(0, 1) == kAlpha);
  CHECK(s(0, 2) == -kAlpha);
  CHECK(s(1, 2) == -kAlpha);
  CHECK(s.switched(last) == g);
}

TEST_CASE("sign pattern layout") {
  CHECK(SignPattern::pair_count(4) == 6);
  CHECK(SignPattern::bit_of(3, 0, 1) == 2);
  CHECK(SignPattern::bit_of(3, 0, 2) == 1);
  CHECK(SignPattern::bit_of(3, 1, 2) == 0);
  CHECK(SignPattern::bit_of(3, 2, 1) == 0);
  const SignPattern p = pattern_from_string(4, "+-+--+");
  CHECK(p.str() == "+-+--+");
  CHECK(p.sign(0, 2) == -1);
  CHECK(p.sign(2, 0) == -1);
  CHECK(p.sign(1, 1) == 1);
  CHECK(SignPattern::from_gram(p.to_gram(kAlpha)) == p);
  CHECK_THROWS_AS(SignPattern::from_gram(RatMatrix{{1, kAlpha, kAlpha}, {kAlpha, 1, Rational::parse("1/2")},
                                                    {kAlpha, Rational::parse("1/2"), 1}}),
                  MixedMagnitudes);
}

TEST_CASE("normalization makes row 0 positive and is switching invariant") {
  std::mt19937 rng(2);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + i % 6;
    const SignPattern p = random_pattern(rng, n);
    const SignPattern norm = p.normalized();
    for (int j = 1; j < n; ++j) CHECK(norm.sign(0, j) == 1);
    CHECK(p.switched(random_signs(rng, n)).normalized() == norm);
  }
}

TEST_CASE("two classes of three points") {
  std::set<SwitchingClassKey> keys;
  for (std::uint32_t bits = 0; bits < 8; ++bits) keys.insert(canonical_key(SignPattern{3, bits}));
  CHECK(keys.size() == 2);
  const SwitchingClassKey plus = canonical_key(pattern_from_string(3, "+++"));
  const SwitchingClassKey minus = canonical_key(pattern_from_string(3, "++-"));
  CHECK(plus != minus);
  // The four sign choices of each triangle class.
  for (const char* s : {"+++", "+--", "-+-", "--+"}) CHECK(canonical_key(pattern_from_string(3, s)) == plus);
  for (const char* s : {"++-", "+-+", "-++", "---"}) CHECK(canonical_key(pattern_from_string(3, s)) == minus);
}

TEST_CASE("six four-point Grams share one key") {
  // Row 0 all +, then the (1,2), (1,3), (2,3) signs.
  const std::vector<std::string> six{"++++-", "+++-+", "+++--", "++-++", "++-+-", "++--+"};
  std::set<SwitchingClassKey> keys;
  for (const auto& tail : six) keys.insert(canonical_key(pattern_from_string(4, "+" + tail)));
  CHECK(keys.size() == 1);
  const auto z1 = canonical_key(pattern_from_string(4, "++++++"));
  const auto z3 = canonical_key(pattern_from_string(4, "+++---"));
  CHECK(keys.count(z1) == 0);
  CHECK(keys.count(z3) == 0);
  CHECK(z1 != z3);
}

TEST_CASE("all-plus key is permutation stable") {
  for (int n = 2; n <= 6; ++n) {
    const SignPattern all{n, 0};
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    const auto key = canonical_key(all);
    do {
      CHECK(canonical_key(all.permuted(perm)) == key);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("canonical key invariant under switching and permutation") {
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    const int n = 3 + i % 4;
    const SignPattern p = random_pattern(rng, n);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto key = canonical_key(p);
    CHECK(canonical_key(p.switched(random_signs(rng, n))) == key);
    CHECK(canonical_key(p.permuted(perm)) == key);
    CHECK(canonical_key(p.to_gram(kAlpha)) == key);
  }
}

TEST_CASE("class counts for small orders") {
  const std::vector<std::size_t> expected{1, 1, 2, 3, 7, 16};
  for (int n = 1; n <= 6; ++n) CHECK(enumerate_classes(n).size() == expected[static_cast<std::size_t>(n - 1)]);
  CHECK_THROWS_AS(enumerate_classes(0), TooLarge);
  CHECK_THROWS_AS(enumerate_classes(8), TooLarge);
}

TEST_CASE("orbits partition all patterns") {
  for (int n = 1; n <= 5; ++n) {
    // Brute force: key of every pattern.
    std::map<SwitchingClassKey, std::uint64_t> sizes;
    const std::uint32_t total = 1u << SignPattern::pair_count(n);
    for (std::uint32_t bits = 0; bits < total; ++bits) ++sizes[canonical_key(SignPattern{n, bits})];
    const auto classes = enumerate_classes(n);
    REQUIRE(classes.size() == sizes.size());
    std::uint64_t sum = 0;
    for (const auto& c : classes) {
      CHECK(sizes.at(c.key) == c.orbit_size);
      sum += c.orbit_size;
    }
    CHECK(sum == total);
  }
}

TEST_CASE("each order-4 pattern switches to exactly one row-0-positive form") {
  std::set<SignPattern> reps;
  for (std::uint32_t bits = 0; bits < 64; ++bits) {
    std::set<SignPattern> reached;
    for (int mask = 0; mask < 16; ++mask) {
      std::vector<int> s(4);
      for (int i = 0; i < 4; ++i) s[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? -1 : 1;
      const SignPattern q = SignPattern{4, bits}.switched(s);
      if (q.sign(0, 1) == 1 && q.sign(0, 2) == 1 && q.sign(0, 3) == 1) reached.insert(q);
    }
    CHECK(reached.size() == 1);
    reps.insert(*reached.begin());
  }
  CHECK(reps.size() == 8);
}

TEST_CASE("switching orbits of three-point tuples") {
  using T = std::tuple<Rational, Rational, Rational>;
  auto orbit_set = [](const ExtendedGram& e) {
    std::set<T> out;
    for (const auto& x : switching_orbit(e)) out.emplace(x.u[0], x.v[0], x.t);
    return out;
  };
  const Rational a = kAlpha;
  const ExtendedGram y1{RatMatrix{{1}}, {a}, {a}, a};
  CHECK(orbit_set(y1) == std::set<T>{{a, a, a}, {a, -a, -a}, {-a, a, -a}, {-a, -a, a}});
  const ExtendedGram y2{RatMatrix{{1}}, {a}, {a}, -a};
  CHECK(orbit_set(y2) == std::set<T>{{a, a, -a}, {a, -a, a}, {-a, a, a}, {-a, -a, -a}});
  CHECK(switching_orbit(y1).front() == y1);
}

TEST_CASE("extended Gram switching is an involution") {
  std::mt19937 rng(5);
  const Rational a = kAlpha;
  for (int i = 0; i < 50; ++i) {
    const ExtendedGram e{RatMatrix{{1, a}, {a, 1}}, {a, -a}, {-a, -a}, a};
    const auto s = random_signs(rng, 2);
    const int e1 = (rng() & 1) ? 1 : -1, e2 = (rng() & 1) ? 1 : -1;
    CHECK(e.switched(s, e1, e2).switched(s, e1, e2) == e);
  }
  const ExtendedGram e{RatMatrix{{1, a}, {a, 1}}, {a, a}, {a, -a}, -a};
  const auto orbit = switching_orbit(e);
  CHECK(16 % orbit.size() == 0);
  CHECK(e.full() == RatMatrix{{1, a, a, a}, {a, 1, a, -a}, {a, a, 1, -a}, {a, -a, -a, 1}});
}
