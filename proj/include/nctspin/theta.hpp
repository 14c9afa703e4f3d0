#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nctspin {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Coefficients with modulus at or below this are dropped at construction.
inline constexpr double kCoeffEps = 1e-15;

/// exp(2 pi i x); the argument is an angle in units of full turns.
inline Complex unit_phase(double turns) { return std::polar(1.0, kTwoPi * turns); }

/// Real skew-symmetric matrix of deformation angles, in units of full turns.
/// For dimension 2 the scalar convention is theta = entry (1, 0).
class ThetaMatrix {
public:
  explicit ThetaMatrix(int n)
      : n_(checked_dim(n)), e_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

  ThetaMatrix(int n, std::vector<double> row_major) : n_(checked_dim(n)), e_(std::move(row_major)) {
    if (e_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_))
      throw std::invalid_argument("ThetaMatrix: entry count does not match dimension");
    for (int k = 0; k < n_; ++k)
      for (int l = 0; l <= k; ++l)
        if (e_[idx(k, l)] != -e_[idx(l, k)])
          throw std::invalid_argument("ThetaMatrix: not skew-symmetric");
  }

  /// Two-dimensional matrix with entry (1, 0) = theta.
  static ThetaMatrix from_scalar(double theta) {
    ThetaMatrix t(2);
    t.set(1, 0, theta);
    return t;
  }

  int dim() const { return n_; }

  double operator()(int k, int l) const { return e_[idx(k, l)]; }

  /// Sets entry (k, l) = v and (l, k) = -v.  The diagonal must stay zero.
  void set(int k, int l, double v) {
    if (k == l && v != 0.0) throw std::invalid_argument("ThetaMatrix: nonzero diagonal entry");
    e_[idx(k, l)] = v;
    e_[idx(l, k)] = -v;
  }

  ThetaMatrix scaled(double f) const {
    ThetaMatrix t(n_);
    for (int k = 0; k < n_; ++k)
      for (int l = 0; l < k; ++l) t.set(k, l, f * (*this)(k, l));
    return t;
  }

  bool operator==(const ThetaMatrix& o) const = default;

private:
  static int checked_dim(int n) {
    if (n < 1) throw std::invalid_argument("ThetaMatrix: dimension must be at least 1");
    return n;
  }
  std::size_t idx(int k, int l) const {
    if (k < 0 || k >= n_ || l < 0 || l >= n_) throw std::out_of_range("ThetaMatrix: index out of range");
    return static_cast<std::size_t>(k) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(l);
  }

  int n_;
  std::vector<double> e_;
};

}  // namespace nctspin
