#pragma once

#include "nctspin/torus.hpp"

#include <random>

namespace testsupport {

using nctspin::Complex;
using nctspin::Monomial;
using nctspin::ThetaMatrix;
using nctspin::TorusElement;

inline double u01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline Complex rand_coeff(std::mt19937_64& g) { return {2.0 * u01(g) - 1.0, 2.0 * u01(g) - 1.0}; }

inline std::int64_t rand_exponent(std::mt19937_64& g, std::int64_t bound) {
  return -bound + static_cast<std::int64_t>(g() % static_cast<std::uint64_t>(2 * bound + 1));
}

inline ThetaMatrix rand_theta(std::mt19937_64& g, int n) {
  ThetaMatrix t(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < k; ++l) t.set(k, l, 2.0 * u01(g) - 1.0);
  return t;
}

inline Monomial rand_monomial(std::mt19937_64& g, int n, std::int64_t bound) {
  Monomial m(static_cast<std::size_t>(n));
  for (auto& e : m) e = rand_exponent(g, bound);
  return m;
}

inline TorusElement rand_element(std::mt19937_64& g, const ThetaMatrix& theta, int support,
                                 std::int64_t bound) {
  TorusElement a(theta);
  for (int i = 0; i < support; ++i) a.insert(rand_monomial(g, theta.dim(), bound), rand_coeff(g));
  return a;
}

}  // namespace testsupport
