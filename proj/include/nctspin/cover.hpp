#pragma once

#include "nctspin/torus.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace nctspin {

/// Spin structure on the N-torus, one twist bit per fundamental loop.  Bit 1
/// means sections acquire a sign around that loop, so the structure only
/// untwists on the double cover of the corresponding circle factor.
class SpinStructure {
public:
  explicit SpinStructure(std::vector<int> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw std::invalid_argument("SpinStructure: needs at least one loop");
    for (int b : bits_)
      if (b != 0 && b != 1) throw std::invalid_argument("SpinStructure: bits must be 0 or 1");
  }

  SpinStructure(int j1, int j2) : SpinStructure(std::vector<int>{j1, j2}) {}

  int dim() const { return static_cast<int>(bits_.size()); }
  int bit(int i) const { return bits_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& bits() const { return bits_; }

  /// Zero-based indices of the twisted loops.
  std::vector<int> twist_set() const {
    std::vector<int> x;
    for (int i = 0; i < dim(); ++i)
      if (bits_[static_cast<std::size_t>(i)]) x.push_back(i);
    return x;
  }

  bool operator==(const SpinStructure& o) const = default;

private:
  std::vector<int> bits_;
};

enum class CoveringKind {
  TrivialDouble,  // no twisted loop: two disjoint copies of the torus
  OneLoopTwist,   // exactly one twisted loop: connected cover unwinding it
  MultiTwist,     // two or more twisted loops: connected cover, all of them halved
};

struct CoveringDescriptor {
  CoveringKind kind;
  std::vector<int> twist_set;  // zero-based loop indices
  std::vector<int> winding;    // degree of the covering circle over loop i: bit + 1
};

/// Classifies the double covering of the torus on which the given spin
/// structure untwists.
inline CoveringDescriptor classify_covering(const SpinStructure& j) {
  CoveringDescriptor d;
  d.twist_set = j.twist_set();
  d.kind = d.twist_set.empty()    ? CoveringKind::TrivialDouble
           : d.twist_set.size() == 1 ? CoveringKind::OneLoopTwist
                                     : CoveringKind::MultiTwist;
  for (int i = 0; i < j.dim(); ++i) d.winding.push_back(j.bit(i) + 1);
  return d;
}

/// Generator of the deck group of the double cover, as it acts dually on
/// covering-algebra monomials.  For a connected cover the action is the
/// character u^k -> (-1)^{k_x} u^k with x the first twisted loop; on the
/// admissible monomials of a multi-twist cover (all exponent parities equal on
/// the twist set) this coincides with the product-of-exponents sign.  The
/// trivial double instead exchanges the two sheets.
class DeckAction {
public:
  explicit DeckAction(const SpinStructure& j) : j_(j), twist_(j.twist_set()) {}

  bool fiber_swap() const { return twist_.empty(); }

  int monomial_sign(const Monomial& k) const {
    if (fiber_swap()) throw std::logic_error("DeckAction: trivial double acts by sheet exchange");
    if (static_cast<int>(k.size()) != j_.dim()) throw std::invalid_argument("DeckAction: dimension mismatch");
    return (k[static_cast<std::size_t>(twist_.front())] % 2 != 0) ? -1 : 1;
  }

  /// Point-level description of the nontrivial deck transformation in the
  /// covering coordinates (angles s_i, halved ones marked).
  std::string point_description() const {
    if (fiber_swap()) return "exchange of the two sheets";
    std::string s = "shift of the halved angle";
    s += twist_.size() > 1 ? "s (" : " (";
    for (std::size_t i = 0; i < twist_.size(); ++i)
      s += (i ? ", s" : "s") + std::to_string(twist_[i] + 1);
    s += ") by a half turn";
    return s;
  }

  const SpinStructure& structure() const { return j_; }

private:
  SpinStructure j_;
  std::vector<int> twist_;
};

inline DeckAction deck_action(const SpinStructure& j) { return DeckAction(j); }

/// The two unitary lifts of the torus translation by (s1, s2) to spinors, for
/// a two-dimensional structure: +/- exp(-i (j1 s1 + j2 s2) / 2).
inline std::pair<Complex, Complex> lift_phases(const SpinStructure& j, double s1, double s2) {
  if (j.dim() != 2) throw std::invalid_argument("lift_phases: two-dimensional structures only");
  const Complex l = std::polar(1.0, -0.5 * (j.bit(0) * s1 + j.bit(1) * s2));
  return {l, -l};
}

/// Sign vectors eps in {+1,-1}^N with eps_i = +1 off X and an even number of
/// -1 entries; these are the gauge symmetries of the halved exponents, of
/// order 2^{|X|-1} (trivial group when |X| <= 1).
inline std::vector<std::vector<int>> twist_group(const std::vector<int>& X, int n) {
  for (int i : X)
    if (i < 0 || i >= n) throw std::invalid_argument("twist_group: loop index out of range");
  std::vector<std::vector<int>> g;
  const std::size_t k = X.size();
  for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
    if (__builtin_popcountll(mask) % 2 != 0) continue;
    std::vector<int> eps(static_cast<std::size_t>(n), 1);
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1ull << i)) eps[static_cast<std::size_t>(X[i])] = -1;
    g.push_back(std::move(eps));
  }
  return g;
}

/// A monomial survives every twist-group sign exactly when its exponent
/// parities agree across the twist set.
inline bool is_fixed_monomial(const Monomial& m, const std::vector<int>& X) {
  if (X.size() < 2) return true;
  const bool first_odd = m.at(static_cast<std::size_t>(X[0])) % 2 != 0;
  for (std::size_t i = 1; i < X.size(); ++i)
    if ((m.at(static_cast<std::size_t>(X[i])) % 2 != 0) != first_odd) return false;
  return true;
}

/// Deformed function algebra of the double cover.  With no twisted loop it is
/// the direct sum of two copies of the base algebra (theta unchanged).  With
/// twisted loops the cover is again a torus whose twisted angles are halved,
/// so the deformation angle of an entry divides by 2 for each index in X:
///   theta~(k,l) = theta(k,l) / (d_k d_l),  d_i = 2 for i in X, else 1.
/// For |X| >= 2 only the twist-group-fixed monomials descend, so the algebra
/// carries the group along.
struct CoveringAlgebra {
  CoveringKind kind;
  ThetaMatrix theta_tilde;
  std::vector<int> twist_set;
  std::vector<std::int64_t> doubling;        // d_i as above
  std::vector<std::vector<int>> group;       // twist-group sign vectors

  bool trivial() const { return kind == CoveringKind::TrivialDouble; }
};

inline CoveringAlgebra deformed_cover(const ThetaMatrix& theta, const SpinStructure& j) {
  if (theta.dim() != j.dim()) throw std::invalid_argument("deformed_cover: dimension mismatch");
  CoveringAlgebra c{classify_covering(j).kind, ThetaMatrix(theta.dim()), j.twist_set(),
                    std::vector<std::int64_t>(static_cast<std::size_t>(theta.dim()), 1),
                    twist_group(j.twist_set(), j.dim())};
  for (int i : c.twist_set) c.doubling[static_cast<std::size_t>(i)] = 2;
  for (int k = 0; k < theta.dim(); ++k)
    for (int l = 0; l < k; ++l)
      c.theta_tilde.set(k, l, theta(k, l) / static_cast<double>(c.doubling[static_cast<std::size_t>(k)] *
                                                                c.doubling[static_cast<std::size_t>(l)]));
  return c;
}

/// Element of a covering algebra: two sheet components for the trivial double,
/// otherwise a single element of the halved-angle torus algebra.
class CoverElement {
public:
  CoverElement(TorusElement first, std::optional<TorusElement> second = std::nullopt)
      : first_(std::move(first)), second_(std::move(second)) {
    if (second_) first_.require_same_theta(*second_);
  }

  bool two_sheeted() const { return second_.has_value(); }
  const TorusElement& first() const { return first_; }
  const TorusElement& second() const {
    if (!second_) throw std::logic_error("CoverElement: single-sheet element");
    return *second_;
  }

  CoverElement swapped_sheets() const {
    if (!two_sheeted()) throw std::logic_error("CoverElement: single-sheet element");
    return CoverElement(*second_, first_);
  }

  friend CoverElement star_product(const CoverElement& a, const CoverElement& b) {
    a.check_shape(b);
    if (a.two_sheeted())
      return CoverElement(star_product(a.first_, b.first_), star_product(*a.second_, *b.second_));
    return CoverElement(star_product(a.first_, b.first_));
  }

  friend CoverElement involution(const CoverElement& a) {
    if (a.two_sheeted()) return CoverElement(involution(a.first_), involution(*a.second_));
    return CoverElement(involution(a.first_));
  }

  friend CoverElement operator+(const CoverElement& a, const CoverElement& b) {
    a.check_shape(b);
    if (a.two_sheeted()) return CoverElement(a.first_ + b.first_, *a.second_ + *b.second_);
    return CoverElement(a.first_ + b.first_);
  }

  friend CoverElement operator-(const CoverElement& a, const CoverElement& b) {
    a.check_shape(b);
    if (a.two_sheeted()) return CoverElement(a.first_ - b.first_, *a.second_ - *b.second_);
    return CoverElement(a.first_ - b.first_);
  }

  friend double distance(const CoverElement& a, const CoverElement& b) {
    a.check_shape(b);
    double d = distance(a.first_, b.first_);
    if (a.two_sheeted()) d = std::max(d, distance(*a.second_, *b.second_));
    return d;
  }

private:
  void check_shape(const CoverElement& o) const {
    if (two_sheeted() != o.two_sheeted()) throw std::invalid_argument("CoverElement: sheet shapes differ");
  }

  TorusElement first_;
  std::optional<TorusElement> second_;
};

/// Embeds the base algebra into the covering algebra.  The trivial double takes
/// a to the sheet-constant pair (a, a).  A twisted cover doubles the exponents
/// on the twist set, u^m -> u^{d . m}; no phase correction is needed because
/// theta~(k,l) d_k d_l = theta(k,l) entry by entry.
inline CoverElement embed_cover(const TorusElement& a, const SpinStructure& j) {
  if (a.dim() != j.dim()) throw std::invalid_argument("embed_cover: dimension mismatch");
  const CoveringAlgebra cov = deformed_cover(a.theta(), j);
  if (cov.trivial()) return CoverElement(a, a);
  TorusElement image(cov.theta_tilde);
  for (const auto& [m, c] : a.terms()) {
    Monomial dm(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (cov.doubling[i] == 2 && (m[i] > INT64_MAX / 2 || m[i] < INT64_MIN / 2))
        throw std::overflow_error("embed_cover: exponent overflow");
      dm[i] = m[i] * cov.doubling[i];
    }
    image.insert(dm, c);
  }
  return CoverElement(std::move(image));
}

struct DeckFixedReport {
  std::int64_t basis_dim = 0;  // covering-algebra monomial basis in the window
  std::int64_t fixed_dim = 0;  // deck-invariant subspace
  std::int64_t image_dim = 0;  // embedded base-algebra monomials in the window
  bool equal = false;          // fixed subspace == embedded image
};

namespace detail {

inline bool next_in_window(Monomial& m, std::int64_t cutoff) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < cutoff) {
      ++m[i];
      return true;
    }
    m[i] = -cutoff;
  }
  return false;
}

}  // namespace detail

/// Enumerates covering-algebra basis monomials with |k_i| <= cutoff and checks
/// that the deck-invariant span coincides with the embedded base algebra.  The
/// trivial double is handled sheet-wise: per monomial the swap fixes exactly
/// the symmetric combination, which is the embedded one.
inline DeckFixedReport deck_fixed_check(const SpinStructure& j, std::int64_t cutoff) {
  if (cutoff < 1) throw std::invalid_argument("deck_fixed_check: cutoff must be at least 1");
  DeckFixedReport rep;
  const auto X = j.twist_set();
  Monomial m(static_cast<std::size_t>(j.dim()), -cutoff);

  if (X.empty()) {
    // Each monomial contributes the 2-dim sheet space; the swap has a one-dim
    // fixed line (1,1), matching the embedding a -> (a, a).
    bool more = true;
    while (more) {
      rep.basis_dim += 2;
      rep.fixed_dim += 1;
      rep.image_dim += 1;
      more = detail::next_in_window(m, cutoff);
    }
    rep.equal = true;
    return rep;
  }

  const DeckAction deck(j);
  std::set<Monomial> fixed, image;
  bool more = true;
  while (more) {
    if (is_fixed_monomial(m, X)) {  // covering-algebra basis member
      ++rep.basis_dim;
      if (deck.monomial_sign(m) == 1) fixed.insert(m);
    }
    bool even_on_x = true;
    for (int i : X) even_on_x = even_on_x && (m[static_cast<std::size_t>(i)] % 2 == 0);
    if (even_on_x) image.insert(m);
    more = detail::next_in_window(m, cutoff);
  }
  rep.fixed_dim = static_cast<std::int64_t>(fixed.size());
  rep.image_dim = static_cast<std::int64_t>(image.size());
  rep.equal = fixed == image;
  return rep;
}

}  // namespace nctspin
