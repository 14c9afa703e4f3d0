#pragma once

#include "nctspin/spectral.hpp"

#include <algorithm>

namespace nctspin {

/// Finite sum of split tensors z^a (x) u^b in C(T^N) (x) C(T^N_theta): the left
/// leg multiplies as plain commutative characters, the right leg by the
/// deformed product.  The diagonal a = b spans the subalgebra invariant under
/// the combined translation action (weight of z^a cancels weight of u^b).
class WeightedTensorElement {
public:
  using Key = std::pair<Monomial, Monomial>;
  using TermMap = std::map<Key, Complex>;

  explicit WeightedTensorElement(ThetaMatrix theta) : theta_(std::move(theta)) {}

  const ThetaMatrix& theta() const { return theta_; }
  int dim() const { return theta_.dim(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void insert(const Monomial& a, const Monomial& b, Complex c) {
    if (static_cast<int>(a.size()) != dim() || static_cast<int>(b.size()) != dim())
      throw std::invalid_argument("WeightedTensorElement: monomial dimension mismatch");
    auto [it, fresh] = terms_.try_emplace(Key{a, b}, c);
    if (!fresh) it->second += c;
    if (std::abs(it->second) <= kCoeffEps) terms_.erase(it);
  }

  Complex coefficient(const Monomial& a, const Monomial& b) const {
    auto it = terms_.find(Key{a, b});
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
  }

  /// True when every term sits on the diagonal a = b, i.e. the element is
  /// fixed by the combined torus action.
  bool is_diagonal() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.first.first == t.first.second; });
  }

  friend WeightedTensorElement star_product(const WeightedTensorElement& x, const WeightedTensorElement& y) {
    if (!(x.theta_ == y.theta_)) throw std::invalid_argument("WeightedTensorElement: parameters differ");
    WeightedTensorElement r(x.theta_);
    for (const auto& [km, c] : x.terms_)
      for (const auto& [kn, d] : y.terms_)
        r.insert(exponent_sum(km.first, kn.first), exponent_sum(km.second, kn.second),
                 c * d * product_phase(x.theta_, km.second, kn.second));
    return r;
  }

  friend WeightedTensorElement involution(const WeightedTensorElement& x) {
    WeightedTensorElement r(x.theta_);
    for (const auto& [k, c] : x.terms_)
      r.insert(exponent_negate(k.first), exponent_negate(k.second),
               std::conj(c) * unit_phase(bicharacter_exponent(x.theta_, k.second, k.second)));
    return r;
  }

  friend WeightedTensorElement operator+(WeightedTensorElement x, const WeightedTensorElement& y) {
    if (!(x.theta_ == y.theta_)) throw std::invalid_argument("WeightedTensorElement: parameters differ");
    for (const auto& [k, c] : y.terms_) x.insert(k.first, k.second, c);
    return x;
  }

  friend double distance(const WeightedTensorElement& x, const WeightedTensorElement& y) {
    double d = 0.0;
    for (const auto& [k, c] : x.terms_) d = std::max(d, std::abs(c - y.coefficient(k.first, k.second)));
    for (const auto& [k, c] : y.terms_) d = std::max(d, std::abs(c - x.coefficient(k.first, k.second)));
    return d;
  }

private:
  ThetaMatrix theta_;
  TermMap terms_;
};

/// The splitting map u^m -> z^m (x) u^m, a unital *-isomorphism onto the
/// diagonal (translation-invariant) subalgebra.
inline WeightedTensorElement kappa(const TorusElement& x) {
  WeightedTensorElement r(x.theta());
  for (const auto& [m, c] : x.terms()) r.insert(m, m, c);
  return r;
}

/// Evaluation of the right leg at the identity point of the deformed torus
/// (every u^b -> 1), landing in the commutative algebra; composed with kappa
/// it returns the original coefficients.
inline TorusElement evaluate_right_leg(const WeightedTensorElement& x) {
  TorusElement r(ThetaMatrix(x.dim()));
  for (const auto& [k, c] : x.terms()) r.insert(k.first, c);
  return r;
}

/// Exponent pairs (a, b) in the window |a_i|, |b_i| <= cutoff whose combined
/// translation weight a - b vanishes.  Enumerated by brute force.
inline std::vector<std::pair<Monomial, Monomial>> invariant_split_basis(int n, std::int64_t cutoff) {
  if (n < 1 || cutoff < 0) throw std::invalid_argument("invariant_split_basis: bad window");
  std::vector<std::pair<Monomial, Monomial>> out;
  Monomial a(static_cast<std::size_t>(n), -cutoff);
  bool more_a = true;
  while (more_a) {
    Monomial b(static_cast<std::size_t>(n), -cutoff);
    bool more_b = true;
    while (more_b) {
      bool diag = true;
      for (std::size_t i = 0; i < a.size(); ++i) diag = diag && (a[i] - b[i] == 0);
      if (diag) out.emplace_back(a, b);
      more_b = detail::next_in_window(b, cutoff);
    }
    more_a = detail::next_in_window(a, cutoff);
  }
  return out;
}

struct FreenessReport {
  std::int64_t grades_checked = 0;
  std::int64_t full_rank_grades = 0;
  bool surjective_on_window = false;
  bool free_of_rank_two = false;
};

/// Spinor bimodule of a two-dimensional deformed torus with spin structure j,
/// realized inside spinors (x) covering algebra as the span of the terms whose
/// spinor weight matches the covering-generator weight.  A term is stored as a
/// covering monomial b with a C^2 coefficient; its weight is
///   w_i(b) = b_i / 2  (i twisted),  b_i  (otherwise),
/// and admissibility forces b_i odd on twisted loops (so w lands on the
/// momentum lattice of j).  For the trivial double the invariant fiber is the
/// sheet-symmetric one and is left implicit.
class SpinorBimodule {
public:
  struct Element {
    std::map<Monomial, Vec2> terms;

    bool is_zero() const { return terms.empty(); }

    void insert(const Monomial& b, const Vec2& v) {
      auto [it, fresh] = terms.try_emplace(b, v);
      if (!fresh) it->second = it->second + v;
      if (std::abs(it->second[0]) <= kCoeffEps && std::abs(it->second[1]) <= kCoeffEps) terms.erase(it);
    }

    double norm() const {
      double s = 0.0;
      for (const auto& [b, v] : terms) s += std::norm(v[0]) + std::norm(v[1]);
      return std::sqrt(s);
    }

    Element& operator+=(const Element& o) {
      for (const auto& [b, v] : o.terms) insert(b, v);
      return *this;
    }
    Element& operator-=(const Element& o) {
      for (const auto& [b, v] : o.terms) insert(b, Complex(-1.0) * v);
      return *this;
    }
    Element& operator*=(Complex s) {
      for (auto& [b, v] : terms) v = s * v;
      return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Complex s, Element a) { return a *= s; }
  };

  SpinorBimodule(const SpinStructure& j, double theta)
      : j_(j), base_theta_(ThetaMatrix::from_scalar(theta)), cov_(deformed_cover(base_theta_, j)) {
    if (j.dim() != 2) throw std::invalid_argument("SpinorBimodule: two-dimensional structures only");
  }

  const SpinStructure& structure() const { return j_; }
  const ThetaMatrix& base_theta() const { return base_theta_; }
  const CoveringAlgebra& cover() const { return cov_; }
  const ThetaMatrix& ambient_theta() const { return cov_.theta_tilde; }

  /// Covering monomials that carry spinor weights: exponents odd on twisted
  /// loops (for two twists this also makes them twist-group admissible).
  bool admissible(const Monomial& b) const {
    if (static_cast<int>(b.size()) != 2) return false;
    for (int i : cov_.twist_set)
      if (b[static_cast<std::size_t>(i)] % 2 == 0) return false;
    return true;
  }

  std::array<double, 2> weight(const Monomial& b) const {
    std::array<double, 2> w{};
    for (std::size_t i = 0; i < 2; ++i)
      w[i] = static_cast<double>(b[i]) / static_cast<double>(cov_.doubling[i]);
    return w;
  }

  Element make_term(const Monomial& b, const Vec2& v) const {
    if (!admissible(b)) throw std::invalid_argument("SpinorBimodule: inadmissible covering monomial");
    Element e;
    e.insert(b, v);
    return e;
  }

  /// Generating pair: spinor basis vectors over the covering monomial with
  /// exponent 1 on each twisted loop and 0 elsewhere.
  Element generator(int comp) const {
    if (comp != 0 && comp != 1) throw std::invalid_argument("SpinorBimodule: component must be 0 or 1");
    Monomial b0{j_.bit(0), j_.bit(1)};
    Vec2 v{0.0, 0.0};
    v[static_cast<std::size_t>(comp)] = 1.0;
    return make_term(b0, v);
  }

  /// Right action of the base algebra through the covering embedding
  /// u^k -> u^{d . k}; phases are those of the ambient halved-angle product.
  Element right_action(const Element& x, const TorusElement& a) const {
    require_base(a);
    Element r;
    for (const auto& [b, v] : x.terms)
      for (const auto& [k, c] : a.terms()) {
        const Monomial dk = doubled(k);
        r.insert(exponent_sum(b, dk), (c * product_phase(cov_.theta_tilde, b, dk)) * v);
      }
    return r;
  }

  Element left_action(const TorusElement& a, const Element& x) const {
    require_base(a);
    Element r;
    for (const auto& [b, v] : x.terms)
      for (const auto& [k, c] : a.terms()) {
        const Monomial dk = doubled(k);
        r.insert(exponent_sum(dk, b), (c * product_phase(cov_.theta_tilde, dk, b)) * v);
      }
    return r;
  }

  /// The flat Dirac operator through the splitting: multiplication by
  /// w(b) . sigma on the spinor leg, weights untouched.
  Element dirac(const Element& x) const {
    Element r;
    for (const auto& [b, v] : x.terms) {
      const auto w = weight(b);
      r.insert(b, (w[0] * sigma1() + w[1] * sigma2()).apply(v));
    }
    return r;
  }

  /// Antiunitary structure psi (x) t -> (C conj psi) (x) t*.  Squares to -1 and
  /// intertwines left and right actions.
  Element real_structure(const Element& x) const {
    Element r;
    const Mat2 c = sigma2();
    for (const auto& [b, v] : x.terms) {
      const Complex ph = unit_phase(bicharacter_exponent(cov_.theta_tilde, b, b));
      r.insert(exponent_negate(b), ph * c.apply({std::conj(v[0]), std::conj(v[1])}));
    }
    return r;
  }

  /// Covering-algebra-valued pairing (x, y) = sum (xi+ eta) (u^b)* u^{b'};
  /// sheet components coincide for the trivial double, so one torus element
  /// (over the ambient angle) represents it in every case.
  CoverElement pairing(const Element& x, const Element& y) const {
    TorusElement t(cov_.theta_tilde);
    for (const auto& [b, v] : x.terms)
      for (const auto& [b2, w] : y.terms) {
        const Complex amp = inner(v, w);
        if (std::abs(amp) <= kCoeffEps) continue;
        const Complex ph = unit_phase(bicharacter_exponent(cov_.theta_tilde, b, b)) *
                           product_phase(cov_.theta_tilde, exponent_negate(b), b2);
        t.insert(exponent_sum(exponent_negate(b), b2), amp * ph);
      }
    if (cov_.trivial()) return CoverElement(t, t);
    return CoverElement(std::move(t));
  }

  /// Pulls a pairing value back through the embedding: exponents must be
  /// divisible by the doubling on twisted loops.
  TorusElement pull_back(const CoverElement& c) const {
    const TorusElement& t = c.first();
    if (c.two_sheeted() && distance(c.first(), c.second()) > 1e-12)
      throw std::invalid_argument("pull_back: sheets differ, element is not in the embedded image");
    TorusElement r(base_theta_);
    for (const auto& [k, coeff] : t.terms()) {
      Monomial m(k.size());
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] % cov_.doubling[i] != 0)
          throw std::invalid_argument("pull_back: exponent not in the embedded image");
        m[i] = k[i] / cov_.doubling[i];
      }
      r.insert(m, coeff);
    }
    return r;
  }

  std::vector<Monomial> basis_window(std::int64_t cutoff) const {
    std::vector<Monomial> out;
    Monomial b(2, -cutoff);
    bool more = true;
    while (more) {
      if (admissible(b)) out.push_back(b);
      more = detail::next_in_window(b, cutoff);
    }
    return out;
  }

  /// Checks freeness of rank 2 over the embedded base algebra on a window: the
  /// generating pair, right-multiplied by monomials |k_i| <= cutoff, must hit
  /// every admissible grade in the window with an invertible 2x2 coefficient
  /// block, each grade exactly once.
  FreenessReport freeness(std::int64_t cutoff) const {
    FreenessReport rep;
    std::map<Monomial, std::array<Vec2, 2>> blocks;
    Monomial k(2, -cutoff);
    bool more = true;
    while (more) {
      const TorusElement mono = monomial(base_theta_, k, 1.0);
      for (int comp = 0; comp < 2; ++comp) {
        const Element img = right_action(generator(comp), mono);
        if (img.terms.size() != 1) return rep;  // fails: image of a monomial must be one term
        const auto& [b, v] = *img.terms.begin();
        auto [it, fresh] = blocks.try_emplace(b);
        if (!fresh && comp == 0) return rep;  // two monomials landed on one grade
        it->second[static_cast<std::size_t>(comp)] = v;
      }
      more = detail::next_in_window(k, cutoff);
    }
    for (const auto& [b, cols] : blocks) {
      ++rep.grades_checked;
      const Complex det = cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0];
      if (std::abs(det) > 0.5) ++rep.full_rank_grades;
    }
    rep.surjective_on_window = true;
    for (const auto& b : basis_window(cutoff))
      if (!blocks.count(b)) rep.surjective_on_window = false;
    rep.free_of_rank_two = rep.surjective_on_window && rep.grades_checked == rep.full_rank_grades &&
                           rep.grades_checked > 0;
    return rep;
  }

  /// Eigenvalues of the restricted Dirac operator on the admissible grades
  /// with |w_i(b)| <= wcut, computed by assembling each grade's 2x2 block from
  /// actual applications.  Ascending.
  std::vector<double> dirac_spectrum(double wcut) const {
    std::vector<double> eig;
    const auto cutoff = static_cast<std::int64_t>(std::ceil(2.0 * wcut)) + 1;
    Monomial b(2, -cutoff);
    bool more = true;
    while (more) {
      if (admissible(b)) {
        const auto w = weight(b);
        if (std::abs(w[0]) <= wcut && std::abs(w[1]) <= wcut) {
          Mat2 block = Mat2::zero();
          for (int comp = 0; comp < 2; ++comp) {
            Vec2 e{0.0, 0.0};
            e[static_cast<std::size_t>(comp)] = 1.0;
            const Element img = dirac(make_term(b, e));
            const Vec2 col = img.terms.count(b) ? img.terms.at(b) : Vec2{0.0, 0.0};
            block.a[static_cast<std::size_t>(comp)] = col[0];
            block.a[2 + static_cast<std::size_t>(comp)] = col[1];
          }
          const auto ev = block.hermitian_eigenvalues();
          eig.push_back(ev[0]);
          eig.push_back(ev[1]);
        }
      }
      more = detail::next_in_window(b, cutoff);
    }
    std::sort(eig.begin(), eig.end());
    return eig;
  }

private:
  void require_base(const TorusElement& a) const {
    if (!(a.theta() == base_theta_))
      throw std::invalid_argument("SpinorBimodule: element is not over the base angle");
  }

  Monomial doubled(const Monomial& k) const {
    Monomial dk(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (cov_.doubling[i] == 2 && (k[i] > INT64_MAX / 2 || k[i] < INT64_MIN / 2))
        throw std::overflow_error("SpinorBimodule: exponent overflow");
      dk[i] = k[i] * cov_.doubling[i];
    }
    return dk;
  }

  SpinStructure j_;
  ThetaMatrix base_theta_;
  CoveringAlgebra cov_;
};

/// Commutation phase of the two translation directions against each other in a
/// rank-one construction: acts on a monomial with both orders of the two given
/// generators and returns the coefficient ratio.
inline Complex commutation_phase(const TorusElement& g1, const TorusElement& g2) {
  const TorusElement a = star_product(g1, g2);
  const TorusElement b = star_product(g2, g1);
  if (a.support_size() != 1 || b.support_size() != 1)
    throw std::invalid_argument("commutation_phase: generators must be monomials");
  return b.terms().begin()->second / a.terms().begin()->second;
}

/// Finite test for h in the cyclic group generated by g (both unit modulus).
inline bool in_cyclic_group(Complex g, Complex h, int max_power = 128, double tol = 1e-9) {
  Complex p(1.0, 0.0);
  for (int n = 0; n <= max_power; ++n) {
    if (std::abs(p - h) <= tol || std::abs(std::conj(p) - h) <= tol) return true;
    p *= g;
  }
  return false;
}

/// Compares the two candidate untwisted-structure bimodules over angle theta:
/// (a) spinors over the halved-angle torus, where translations commute with the
///     algebra action up to powers of exp(pi i theta);
/// (b) the sheet-symmetric bimodule over the trivial double, where the phases
///     are powers of exp(2 pi i theta).
/// Both phase generators are measured from actual monomial actions; the
/// constructions agree exactly when the two cyclic phase groups coincide.
struct BimodulePhaseReport {
  double theta = 0.0;
  Complex halved_phase;     // construction (a)
  Complex two_sheet_phase;  // construction (b)
  bool groups_distinct = false;
};

inline BimodulePhaseReport compare_trivial_bimodules(double theta) {
  BimodulePhaseReport rep;
  rep.theta = theta;

  // (a) right multiplications in the halved-angle algebra.
  const ThetaMatrix half = ThetaMatrix::from_scalar(theta / 2.0);
  rep.halved_phase = commutation_phase(generator(half, 0), generator(half, 1));

  // (b) right multiplications on the sheet-symmetric module of the trivial
  // double, measured through the module action itself.
  const SpinorBimodule mod(SpinStructure(0, 0), theta);
  const TorusElement u1 = generator(mod.base_theta(), 0);
  const TorusElement u2 = generator(mod.base_theta(), 1);
  const SpinorBimodule::Element x = mod.generator(0);
  const SpinorBimodule::Element xy = mod.right_action(mod.right_action(x, u1), u2);
  const SpinorBimodule::Element yx = mod.right_action(mod.right_action(x, u2), u1);
  const Monomial tgt{1, 1};
  rep.two_sheet_phase = yx.terms.at(tgt)[0] / xy.terms.at(tgt)[0];

  const bool a_in_b = in_cyclic_group(rep.two_sheet_phase, rep.halved_phase);
  const bool b_in_a = in_cyclic_group(rep.halved_phase, rep.two_sheet_phase);
  rep.groups_distinct = !(a_in_b && b_in_a);
  return rep;
}

}  // namespace nctspin
