#include "nctspin/oracle.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace nctspin;
using testsupport::rand_coeff;
using testsupport::rand_element;

namespace {

// Integer-power matrix, multiplying step by step (negative powers through the
// adjoint, which is the inverse for unitaries); an independent route to the
// closed-form monomial matrices.
Eigen::MatrixXcd unitary_power(const Eigen::MatrixXcd& m, std::int64_t e) {
  const Eigen::MatrixXcd base = e >= 0 ? m : Eigen::MatrixXcd(m.adjoint());
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  for (std::int64_t i = 0; i < std::abs(e); ++i) r = r * base;
  return r;
}

}  // namespace

TEST_CASE("rational angles reduce") {
  const RationalTheta t(2, 4);
  REQUIRE(t.p() == 1);
  REQUIRE(t.q() == 2);
  REQUIRE(RationalTheta(-3, 6).p() == -1);
  REQUIRE(RationalTheta(0, 7).q() == 1);
  REQUIRE_THROWS_AS(RationalTheta(1, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(RationalTheta(1, -5), std::invalid_argument);
}

TEST_CASE("clock and shift matrices") {
  const FiniteRep one = build_rep(RationalTheta(0, 1));
  REQUIRE(one.U.rows() == 1);
  REQUIRE(std::abs(one.U(0, 0) - Complex(1.0)) < 1e-15);
  REQUIRE(std::abs(one.V(0, 0) - Complex(1.0)) < 1e-15);

  const FiniteRep two = build_rep(RationalTheta(1, 2));
  REQUIRE(std::abs(two.U(0, 0) - Complex(1.0)) < 1e-15);
  REQUIRE(std::abs(two.U(1, 1) - Complex(-1.0)) < 1e-15);
  REQUIRE(std::abs(two.V(0, 1) - Complex(1.0)) < 1e-15);
  REQUIRE(std::abs(two.V(1, 0) - Complex(1.0)) < 1e-15);

  for (auto [p, q] : {std::pair<std::int64_t, std::int64_t>{1, 2}, {1, 4}, {2, 5}, {5, 12}}) {
    const FiniteRep rep = build_rep(RationalTheta(p, q));
    const Complex w = unit_phase(static_cast<double>(p) / static_cast<double>(q));
    REQUIRE(frobenius_distance(rep.V * rep.U, w * rep.U * rep.V) < 1e-13);
    const auto id = Eigen::MatrixXcd::Identity(q, q);
    REQUIRE(frobenius_distance(rep.U * rep.U.adjoint(), id) < 1e-13);
    REQUIRE(frobenius_distance(rep.V * rep.V.adjoint(), id) < 1e-13);
  }
}

TEST_CASE("monomial matrices agree with stepwise powers") {
  std::mt19937_64 rng(5);
  for (auto [p, q] : {std::pair<std::int64_t, std::int64_t>{1, 3}, {1, 4}, {3, 5}, {1, 7}}) {
    const FiniteRep rep = build_rep(RationalTheta(p, q));
    for (int trial = 0; trial < 12; ++trial) {
      const std::int64_t a = testsupport::rand_exponent(rng, 9);
      const std::int64_t b = testsupport::rand_exponent(rng, 9);
      const Eigen::MatrixXcd direct = unitary_power(rep.U, a) * unitary_power(rep.V, b);
      REQUIRE(frobenius_distance(monomial_matrix(rep, a, b), direct) < 1e-12);
    }
  }
}

TEST_CASE("represent validates its input") {
  const FiniteRep rep = build_rep(RationalTheta(1, 3));
  const TorusElement wrong_angle = generator(ThetaMatrix::from_scalar(0.25), 0);
  REQUIRE_THROWS_AS(represent(rep, wrong_angle), std::invalid_argument);
  const TorusElement wrong_dim = generator(ThetaMatrix(3), 0);
  REQUIRE_THROWS_AS(represent(rep, wrong_dim), std::invalid_argument);
  REQUIRE(frobenius_distance(represent(rep, identity_element(rep.theta.matrix())),
                             Eigen::MatrixXcd::Identity(3, 3)) < 1e-15);
}

TEST_CASE("represent is a *-homomorphism") {
  std::mt19937_64 rng(7);
  for (auto [p, q] : {std::pair<std::int64_t, std::int64_t>{1, 2}, {1, 5}, {2, 7}, {1, 12}}) {
    const FiniteRep rep = build_rep(RationalTheta(p, q));
    const ThetaMatrix t = rep.theta.matrix();
    for (int trial = 0; trial < 15; ++trial) {
      const TorusElement a = rand_element(rng, t, 5, 8), b = rand_element(rng, t, 5, 8);
      REQUIRE(frobenius_distance(represent(rep, star_product(a, b)),
                                 represent(rep, a) * represent(rep, b)) < 1e-10);
      REQUIRE(frobenius_distance(represent(rep, involution(a)),
                                 represent(rep, a).adjoint()) < 1e-10);
      REQUIRE(frobenius_distance(represent(rep, a + b), represent(rep, a) + represent(rep, b)) < 1e-12);
    }
  }
}

TEST_CASE("normalized trace matches the canonical trace mod q") {
  const FiniteRep rep = build_rep(RationalTheta(1, 5));
  const ThetaMatrix t = rep.theta.matrix();
  for (std::int64_t m1 = -6; m1 <= 6; ++m1)
    for (std::int64_t m2 = -6; m2 <= 6; ++m2) {
      const Complex tr = normalized_trace(rep, represent(rep, monomial(t, {m1, m2}, 1.0)));
      const Complex expected = (m1 % 5 == 0 && m2 % 5 == 0) ? Complex(1.0) : Complex(0.0);
      REQUIRE(std::abs(tr - expected) < 1e-12);
    }

  std::mt19937_64 rng(9);
  const TorusElement a = rand_element(rng, t, 6, 4);
  Complex lattice_sum = 0.0;
  for (const auto& [m, c] : a.terms())
    if (m[0] % 5 == 0 && m[1] % 5 == 0) lattice_sum += c;
  REQUIRE(std::abs(normalized_trace(rep, represent(rep, a)) - lattice_sum) < 1e-12);
}
