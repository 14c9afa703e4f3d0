#include "nctspin/serialize.hpp"
#include "nctspin/torus.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace nctspin;
using testsupport::rand_element;
using testsupport::rand_monomial;
using testsupport::rand_theta;

namespace {

// Independent phase oracle: expand u^m u^n into a string of generator letters
// (index, +/-1), bubble-sort it back to normal order, and accumulate one
// exchange phase exponent theta(l,k) f e per transposition of (l,f) past (k,e).
Complex reordering_phase(const ThetaMatrix& theta, const Monomial& m, const Monomial& n) {
  struct Letter {
    int idx;
    int exp;
  };
  std::vector<Letter> word;
  auto push = [&word](const Monomial& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::int64_t r = 0; r < std::abs(v[i]); ++r)
        word.push_back({static_cast<int>(i), v[i] > 0 ? 1 : -1});
  };
  push(m);
  push(n);
  double turns = 0.0;
  for (bool swapped = true; swapped;) {
    swapped = false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
      if (word[i].idx > word[i + 1].idx) {
        turns += theta(word[i].idx, word[i + 1].idx) * word[i].exp * word[i + 1].exp;
        std::swap(word[i], word[i + 1]);
        swapped = true;
      }
  }
  return unit_phase(turns);
}

// Plain commutative convolution, for the undeformed cross-check.
std::map<Monomial, Complex> convolve(const TorusElement& a, const TorusElement& b) {
  std::map<Monomial, Complex> r;
  for (const auto& [m, c] : a.terms())
    for (const auto& [n, d] : b.terms()) r[exponent_sum(m, n)] += c * d;
  return r;
}

}  // namespace

TEST_CASE("theta matrix validates shape") {
  REQUIRE_THROWS_AS(ThetaMatrix(0), std::invalid_argument);
  REQUIRE_THROWS_AS(ThetaMatrix(2, {0.0, 0.3, 0.3, 0.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(ThetaMatrix(2, {0.1, 0.3, -0.3, 0.0}), std::invalid_argument);
  const ThetaMatrix t(2, {0.0, -0.25, 0.25, 0.0});
  REQUIRE(t(1, 0) == 0.25);
  REQUIRE(t == ThetaMatrix::from_scalar(0.25));
  REQUIRE(t.scaled(0.5)(1, 0) == 0.125);
}

TEST_CASE("monomial constructor and term bookkeeping") {
  const ThetaMatrix t = ThetaMatrix::from_scalar(0.3);
  const TorusElement u1 = monomial(t, {1, 0}, 1.0);
  REQUIRE(u1.support_size() == 1);
  REQUIRE(u1.coefficient({1, 0}) == Complex(1.0, 0.0));
  REQUIRE_THROWS_AS(monomial(t, {1, 0, 0}, 1.0), std::invalid_argument);

  TorusElement a(t);
  a.insert({2, -1}, Complex(0.5, 0.5));
  a.insert({2, -1}, Complex(-0.5, -0.5));
  REQUIRE(a.is_zero());  // cancelling coefficients prune the term
  a.insert({0, 0}, Complex(1e-16, 0.0));
  REQUIRE(a.is_zero());  // below the coefficient floor
}

TEST_CASE("generator commutation phase") {
  const double theta = 0.3;
  const ThetaMatrix t = ThetaMatrix::from_scalar(theta);
  const TorusElement u1 = generator(t, 0), u2 = generator(t, 1);
  // u2 u1 = exp(2 pi i theta) u1 u2
  const TorusElement lhs = star_product(u2, u1);
  const TorusElement rhs = unit_phase(theta) * star_product(u1, u2);
  REQUIRE(distance(lhs, rhs) < 1e-15);

  std::mt19937_64 rng(11);
  for (int n = 2; n <= 4; ++n) {
    const ThetaMatrix tn = rand_theta(rng, n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        const TorusElement a = star_product(generator(tn, k), generator(tn, l));
        const TorusElement b = unit_phase(tn(k, l)) * star_product(generator(tn, l), generator(tn, k));
        REQUIRE(distance(a, b) < 1e-15);
      }
  }
}

TEST_CASE("product phase matches the letter-reordering oracle") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const ThetaMatrix t = rand_theta(rng, n);
    const Monomial m = rand_monomial(rng, n, 3), k = rand_monomial(rng, n, 3);
    const TorusElement prod = star_product(monomial(t, m, 1.0), monomial(t, k, 1.0));
    REQUIRE(prod.support_size() == 1);
    const Complex phase = prod.coefficient(exponent_sum(m, k));
    REQUIRE(std::abs(phase - reordering_phase(t, m, k)) < 1e-12);
  }
}

TEST_CASE("undeformed products reduce to convolution") {
  std::mt19937_64 rng(31);
  const ThetaMatrix t0(3);
  for (int trial = 0; trial < 20; ++trial) {
    const TorusElement a = rand_element(rng, t0, 6, 4), b = rand_element(rng, t0, 6, 4);
    const TorusElement ab = star_product(a, b), ba = star_product(b, a);
    REQUIRE(distance(ab, ba) < 1e-12);
    const auto conv = convolve(a, b);
    for (const auto& [m, c] : conv) REQUIRE(std::abs(ab.coefficient(m) - c) < 1e-12);
    for (const auto& [m, c] : ab.terms()) {
      auto it = conv.find(m);
      REQUIRE(std::abs(c - (it == conv.end() ? Complex(0) : it->second)) < 1e-12);
    }
  }
}

TEST_CASE("star product is associative and distributive") {
  std::mt19937_64 rng(47);
  for (int n : {2, 3, 5}) {
    const ThetaMatrix t = rand_theta(rng, n);
    for (int trial = 0; trial < 25; ++trial) {
      const TorusElement a = rand_element(rng, t, 4, 5), b = rand_element(rng, t, 4, 5),
                         c = rand_element(rng, t, 4, 5);
      REQUIRE(distance(star_product(star_product(a, b), c), star_product(a, star_product(b, c))) < 1e-12);
      REQUIRE(distance(star_product(a, b + c), star_product(a, b) + star_product(a, c)) < 1e-12);
    }
  }
}

TEST_CASE("support obeys the sumset bound and identity is neutral") {
  std::mt19937_64 rng(53);
  const ThetaMatrix t = rand_theta(rng, 3);
  const TorusElement e = identity_element(t);
  for (int trial = 0; trial < 10; ++trial) {
    const TorusElement a = rand_element(rng, t, 5, 6), b = rand_element(rng, t, 5, 6);
    REQUIRE(star_product(a, b).support_size() <= a.support_size() * b.support_size());
    REQUIRE(distance(star_product(e, a), a) < 1e-15);
    REQUIRE(distance(star_product(a, e), a) < 1e-15);
  }
}

TEST_CASE("involution is an antihomomorphic involution with unitary generators") {
  std::mt19937_64 rng(61);
  for (int n : {2, 4}) {
    const ThetaMatrix t = rand_theta(rng, n);
    for (int k = 0; k < n; ++k) {
      const TorusElement u = generator(t, k);
      REQUIRE(distance(star_product(involution(u), u), identity_element(t)) < 1e-15);
      REQUIRE(distance(star_product(u, involution(u)), identity_element(t)) < 1e-15);
    }
    for (int trial = 0; trial < 25; ++trial) {
      const TorusElement a = rand_element(rng, t, 5, 5), b = rand_element(rng, t, 5, 5);
      REQUIRE(distance(involution(involution(a)), a) < 1e-12);
      REQUIRE(distance(involution(star_product(a, b)), star_product(involution(b), involution(a))) < 1e-12);
    }
  }
}

TEST_CASE("grade decomposition splits by exponent and recombines") {
  std::mt19937_64 rng(71);
  const ThetaMatrix t = rand_theta(rng, 2);
  const TorusElement a = rand_element(rng, t, 7, 5);
  const auto parts = grade_decompose(a);
  REQUIRE(parts.size() == a.support_size());
  TorusElement sum(t);
  for (const auto& [m, part] : parts) {
    REQUIRE(part.support_size() == 1);
    REQUIRE(part.coefficient(m) == a.coefficient(m));
    sum += part;
  }
  REQUIRE(distance(sum, a) == 0.0);
  REQUIRE(grade_decompose(TorusElement(t)).empty());
}

TEST_CASE("grades are additive under the product") {
  std::mt19937_64 rng(73);
  const ThetaMatrix t = rand_theta(rng, 3);
  for (int trial = 0; trial < 15; ++trial) {
    const Monomial m = rand_monomial(rng, 3, 4), k = rand_monomial(rng, 3, 4);
    const TorusElement prod = star_product(monomial(t, m, 1.0), monomial(t, k, 1.0));
    REQUIRE(prod.support_size() == 1);
    REQUIRE(prod.terms().begin()->first == exponent_sum(m, k));
  }
}

TEST_CASE("sign action flips odd exponents and is a *-automorphism") {
  const ThetaMatrix t = ThetaMatrix::from_scalar(0.2);
  const TorusElement a = monomial(t, {1, 0}, 1.0) + monomial(t, {0, 2}, Complex(0.0, 1.0));
  const TorusElement flipped = sign_action(a, {-1, 1});
  REQUIRE(flipped.coefficient({1, 0}) == Complex(-1.0, 0.0));
  REQUIRE(flipped.coefficient({0, 2}) == Complex(0.0, 1.0));
  REQUIRE_THROWS_AS(sign_action(a, {2, 1}), std::invalid_argument);
  REQUIRE_THROWS_AS(sign_action(a, {1}), std::invalid_argument);

  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    const ThetaMatrix tn = rand_theta(rng, 3);
    std::vector<int> eps(3);
    for (auto& e : eps) e = (rng() & 1u) ? 1 : -1;
    const TorusElement x = rand_element(rng, tn, 5, 4), y = rand_element(rng, tn, 5, 4);
    REQUIRE(distance(sign_action(star_product(x, y), eps),
                     star_product(sign_action(x, eps), sign_action(y, eps))) < 1e-12);
    REQUIRE(distance(sign_action(involution(x), eps), involution(sign_action(x, eps))) < 1e-12);
    REQUIRE(distance(sign_action(sign_action(x, eps), eps), x) == 0.0);
  }
}

TEST_CASE("mixing deformation parameters is rejected") {
  const TorusElement a = generator(ThetaMatrix::from_scalar(0.1), 0);
  const TorusElement b = generator(ThetaMatrix::from_scalar(0.2), 0);
  REQUIRE_THROWS_AS(star_product(a, b), std::invalid_argument);
  REQUIRE_THROWS_AS(a + b, std::invalid_argument);
  REQUIRE_THROWS_AS(distance(a, b), std::invalid_argument);
}

TEST_CASE("exponent overflow is caught") {
  const ThetaMatrix t(2);
  const TorusElement big = monomial(t, {INT64_MAX - 1, 0}, 1.0);
  REQUIRE_THROWS_AS(star_product(big, big), std::overflow_error);
}

TEST_CASE("json round trip is exact and lexicographically ordered") {
  std::mt19937_64 rng(97);
  const ThetaMatrix t = rand_theta(rng, 2);
  const TorusElement a = rand_element(rng, t, 8, 9);
  const auto j = element_to_json(a);
  const TorusElement back = element_from_json(j);
  REQUIRE(back.theta() == a.theta());
  REQUIRE(back.terms() == a.terms());

  Monomial prev;
  bool first = true;
  for (const auto& term : j["terms"]) {
    const auto m = term["m"].get<Monomial>();
    if (!first) REQUIRE(prev < m);
    prev = m;
    first = false;
  }
  REQUIRE(element_to_json(back).dump() == j.dump());

  REQUIRE_THROWS_AS(theta_from_json(nlohmann::json::parse("[[0.0,0.1],[0.1,0.0]]")),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(element_from_json(nlohmann::json::parse("{\"terms\":[]}")), std::invalid_argument);
}
