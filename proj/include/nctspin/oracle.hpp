#pragma once

#include "nctspin/torus.hpp"

#include <Eigen/Dense>

#include <numeric>

namespace nctspin {

/// Reduced fraction p/q with q >= 1, used as an exact rational deformation angle.
class RationalTheta {
public:
  RationalTheta(std::int64_t p, std::int64_t q) {
    if (q <= 0) throw std::invalid_argument("RationalTheta: denominator must be positive");
    const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
    p_ = g ? p / g : p;
    q_ = g ? q / g : q;
  }

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  double value() const { return static_cast<double>(p_) / static_cast<double>(q_); }
  ThetaMatrix matrix() const { return ThetaMatrix::from_scalar(value()); }

private:
  std::int64_t p_;
  std::int64_t q_;
};

/// Clock-and-shift pair of q x q unitaries for theta = p/q:
///   U = diag(1, w, ..., w^{q-1}),  w = exp(2 pi i p/q),
///   V = cyclic down-shift (V e_k = e_{k-1 mod q}),
/// so that V U = w U V, mirroring u_2 u_1 = exp(2 pi i theta) u_1 u_2 under
/// u_1 -> U, u_2 -> V.
struct FiniteRep {
  RationalTheta theta;
  Eigen::MatrixXcd U;
  Eigen::MatrixXcd V;
};

namespace detail {

// w^t for w the primitive phase of the representation, via an exact table of
// q-th roots; t may be any integer (reduced mod q with a floored remainder).
inline Complex root_power(std::int64_t p, std::int64_t q, std::int64_t t) {
  std::int64_t r = ((p % q) * (t % q)) % q;
  if (r < 0) r += q;
  return unit_phase(static_cast<double>(r) / static_cast<double>(q));
}

}  // namespace detail

inline FiniteRep build_rep(const RationalTheta& t) {
  const auto q = t.q();
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(q, q);
  Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(q, q);
  for (std::int64_t r = 0; r < q; ++r) {
    U(r, r) = detail::root_power(t.p(), q, r);
    V((r + q - 1) % q, r) = 1.0;
  }
  return FiniteRep{t, std::move(U), std::move(V)};
}

/// Matrix of the normal-ordered monomial u^{(m1,m2)} -> U^{m1} V^{m2}, assembled
/// from integer phase arithmetic rather than repeated matrix products:
/// (U^a V^b)_{r,k} = w^{a r} [k == r + b mod q].
inline Eigen::MatrixXcd monomial_matrix(const FiniteRep& rep, std::int64_t m1, std::int64_t m2) {
  const auto q = rep.theta.q();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(q, q);
  for (std::int64_t r = 0; r < q; ++r) {
    std::int64_t k = (r + m2) % q;
    if (k < 0) k += q;
    M(r, k) = detail::root_power(rep.theta.p(), q, m1 * r);
  }
  return M;
}

/// Evaluates a two-dimensional element whose deformation angle equals the
/// representation's p/q.  Linear in the coefficients; monomials map through
/// monomial_matrix, so the result is exact up to one rounding per term.
inline Eigen::MatrixXcd represent(const FiniteRep& rep, const TorusElement& a) {
  if (a.dim() != 2) throw std::invalid_argument("represent: element must be two-dimensional");
  if (!(a.theta() == rep.theta.matrix()))
    throw std::invalid_argument("represent: deformation angle does not match the representation");
  const auto q = rep.theta.q();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(q, q);
  for (const auto& [m, c] : a.terms()) M += c * monomial_matrix(rep, m[0], m[1]);
  return M;
}

/// Normalized matrix trace (1/q) tr, the representation-side counterpart of the
/// canonical trace picking out the constant term.
inline Complex normalized_trace(const FiniteRep& rep, const Eigen::MatrixXcd& M) {
  return M.trace() / static_cast<double>(rep.theta.q());
}

inline double frobenius_distance(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  return (A - B).norm();
}

}  // namespace nctspin
