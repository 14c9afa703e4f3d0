#pragma once

#include "nctspin/theta.hpp"

#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

namespace nctspin {

/// Exponent vector of a normal-ordered monomial u^m = u_1^{m_1} ... u_N^{m_N}.
using Monomial = std::vector<std::int64_t>;

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("monomial exponent overflow");
  return r;
}

inline Monomial exponent_sum(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) throw std::invalid_argument("exponent_sum: dimension mismatch");
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

inline Monomial exponent_negate(const Monomial& a) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == INT64_MIN) throw std::overflow_error("monomial exponent overflow");
    r[i] = -a[i];
  }
  return r;
}

inline std::string exponent_string(const Monomial& m) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
  os << ')';
  return os.str();
}

/// Bilinear phase exponent sum_{k>l} theta(k,l) m_k n_l, in turns.  Bilinearity
/// in both arguments is what makes the deformed product associative on the nose.
inline double bicharacter_exponent(const ThetaMatrix& theta, const Monomial& m, const Monomial& n) {
  const int d = theta.dim();
  if (static_cast<int>(m.size()) != d || static_cast<int>(n.size()) != d)
    throw std::invalid_argument("bicharacter_exponent: dimension mismatch");
  double s = 0.0;
  for (int k = 1; k < d; ++k)
    for (int l = 0; l < k; ++l) s += theta(k, l) * static_cast<double>(m[k]) * static_cast<double>(n[l]);
  return s;
}

inline Complex product_phase(const ThetaMatrix& theta, const Monomial& m, const Monomial& n) {
  return unit_phase(bicharacter_exponent(theta, m, n));
}

/// Finitely supported element of the deformed torus algebra.  Terms are kept in
/// a map ordered lexicographically by exponent vector; coefficients of modulus
/// <= kCoeffEps are pruned on construction and after every operation.
///
/// Products are normal-ordered:  u^m * u^n = phi(m, n) u^{m+n}  with
/// phi(m, n) = exp(2 pi i sum_{k>l} theta(k,l) m_k n_l), so generators satisfy
/// u_k u_l = exp(2 pi i theta(k,l)) u_l u_k.  With the scalar convention
/// theta = theta(1,0) in dimension 2 this reads u_2 u_1 = exp(2 pi i theta) u_1 u_2.
/// The adjoint is (u^m)* = exp(2 pi i B(m,m)) u^{-m} with B the same bilinear
/// exponent, which makes every generator unitary.
class TorusElement {
public:
  using TermMap = std::map<Monomial, Complex>;

  explicit TorusElement(ThetaMatrix theta) : theta_(std::move(theta)) {}

  TorusElement(ThetaMatrix theta, const TermMap& terms) : theta_(std::move(theta)) {
    for (const auto& [m, c] : terms) insert(m, c);
  }

  const ThetaMatrix& theta() const { return theta_; }
  int dim() const { return theta_.dim(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }

  Complex coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
  }

  /// Accumulates c * u^m, pruning if the running coefficient collapses.
  void insert(const Monomial& m, Complex c) {
    if (static_cast<int>(m.size()) != dim())
      throw std::invalid_argument("TorusElement: monomial dimension mismatch");
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) it->second += c;
    if (std::abs(it->second) <= kCoeffEps) terms_.erase(it);
  }

  TorusElement& operator+=(const TorusElement& o) {
    require_same_theta(o);
    for (const auto& [m, c] : o.terms_) insert(m, c);
    return *this;
  }

  TorusElement& operator-=(const TorusElement& o) {
    require_same_theta(o);
    for (const auto& [m, c] : o.terms_) insert(m, -c);
    return *this;
  }

  TorusElement& operator*=(Complex s) {
    if (std::abs(s) <= kCoeffEps) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
  friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
  friend TorusElement operator*(TorusElement a, Complex s) { return a *= s; }
  friend TorusElement operator*(Complex s, TorusElement a) { return a *= s; }

  void require_same_theta(const TorusElement& o) const {
    if (!(theta_ == o.theta_)) throw std::invalid_argument("TorusElement: deformation parameters differ");
  }

private:
  ThetaMatrix theta_;
  TermMap terms_;
};

inline TorusElement monomial(const ThetaMatrix& theta, const Monomial& m, Complex c) {
  TorusElement a(theta);
  a.insert(m, c);
  return a;
}

/// The unitary generator u_k (k is zero-based).
inline TorusElement generator(const ThetaMatrix& theta, int k) {
  if (k < 0 || k >= theta.dim()) throw std::invalid_argument("generator: index out of range");
  Monomial m(theta.dim(), 0);
  m[k] = 1;
  return monomial(theta, m, Complex(1.0, 0.0));
}

inline TorusElement identity_element(const ThetaMatrix& theta) {
  return monomial(theta, Monomial(theta.dim(), 0), Complex(1.0, 0.0));
}

inline TorusElement star_product(const TorusElement& a, const TorusElement& b) {
  a.require_same_theta(b);
  TorusElement r(a.theta());
  for (const auto& [m, c] : a.terms())
    for (const auto& [n, d] : b.terms())
      r.insert(exponent_sum(m, n), c * d * product_phase(a.theta(), m, n));
  return r;
}

inline TorusElement operator*(const TorusElement& a, const TorusElement& b) { return star_product(a, b); }

inline TorusElement involution(const TorusElement& a) {
  TorusElement r(a.theta());
  for (const auto& [m, c] : a.terms())
    r.insert(exponent_negate(m), std::conj(c) * unit_phase(bicharacter_exponent(a.theta(), m, m)));
  return r;
}

/// Splits into homogeneous components of the torus-action grading (one
/// component per occupied exponent vector).
inline std::map<Monomial, TorusElement> grade_decompose(const TorusElement& a) {
  std::map<Monomial, TorusElement> parts;
  for (const auto& [m, c] : a.terms()) parts.emplace(m, monomial(a.theta(), m, c));
  return parts;
}

/// Action of a sign vector eps in {+1,-1}^N: u^m picks up prod_i eps_i^{m_i}.
inline TorusElement sign_action(const TorusElement& a, const std::vector<int>& eps) {
  if (static_cast<int>(eps.size()) != a.dim()) throw std::invalid_argument("sign_action: dimension mismatch");
  for (int e : eps)
    if (e != 1 && e != -1) throw std::invalid_argument("sign_action: entries must be +1 or -1");
  TorusElement r(a.theta());
  for (const auto& [m, c] : a.terms()) {
    std::int64_t flips = 0;
    for (std::size_t i = 0; i < eps.size(); ++i)
      if (eps[i] == -1) flips += m[i];
    r.insert(m, (flips % 2 != 0) ? -c : c);
  }
  return r;
}

/// Largest coefficient deviation between two elements (sup over monomials).
inline double distance(const TorusElement& a, const TorusElement& b) {
  a.require_same_theta(b);
  double d = 0.0;
  for (const auto& [m, c] : a.terms()) d = std::max(d, std::abs(c - b.coefficient(m)));
  for (const auto& [m, c] : b.terms()) d = std::max(d, std::abs(c - a.coefficient(m)));
  return d;
}

inline std::ostream& operator<<(std::ostream& os, const TorusElement& a) {
  if (a.is_zero()) return os << "0";
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    os << (first ? "" : " + ") << '(' << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)u^"
       << exponent_string(m);
    first = false;
  }
  return os;
}

}  // namespace nctspin
