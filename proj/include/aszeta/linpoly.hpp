#pragma once

// Additive (linearized) polynomials sum_i a_i X^{p^i} over a finite field.
// Composition is the twisted product: (L o M)_k = sum_{i+j=k} a_i b_j^{p^i}.

#include <vector>

#include "aszeta/fp_linalg.hpp"
#include "aszeta/gf.hpp"

namespace aszeta {

class LinPoly {
 public:
  LinPoly() = default;
  /// The zero polynomial over `field`.
  explicit LinPoly(FieldPtr field);
  /// coeffs[i] is the coefficient of X^{p^i}; trailing zeros are dropped.
  LinPoly(FieldPtr field, std::vector<Elem> coeffs);

  /// a X^{p^i}.
  static LinPoly monomial(const Elem& a, unsigned i);
  /// X.
  static LinPoly identity(const FieldPtr& field);

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<Elem>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Exponent index of the leading term; -1 for the zero polynomial.
  int h() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of X^{p^i}, zero beyond the degree.
  Elem coeff(unsigned i) const;
  const Elem& leading() const;
  /// Coefficient of X, which is the formal derivative.
  Elem derivative() const { return coeff(0); }

  LinPoly& operator+=(const LinPoly& o);
  LinPoly& operator-=(const LinPoly& o);
  friend LinPoly operator+(LinPoly a, const LinPoly& b) { return a += b; }
  friend LinPoly operator-(LinPoly a, const LinPoly& b) { return a -= b; }
  /// Scalar multiple c * L.
  friend LinPoly operator*(const Elem& c, const LinPoly& L);

  friend bool operator==(const LinPoly& a, const LinPoly& b);

 private:
  void trim();

  FieldPtr field_;
  std::vector<Elem> coeffs_;
};

/// L with every coefficient pushed into `target`.
LinPoly lp_embed(const LinPoly& L, const FieldPtr& target);

/// sum a_i x^{p^i}. If x lives in a proper extension of L's field the
/// coefficients are embedded first.
Elem lp_eval(const LinPoly& L, const Elem& x);

/// L(X)^p = sum a_i^p X^{p^{i+1}}.
LinPoly lp_pth_power(const LinPoly& L);

/// L o M.
LinPoly lp_compose(const LinPoly& L, const LinPoly& M);

/// E(X) = R(X)^{p^h} + sum_i (a_i X)^{p^{h-i}}.
LinPoly build_E(const LinPoly& R);

/// Matrix of x -> L(x) on `ambient` in its power basis over F_p.
FpMatrix lp_matrix(const LinPoly& L, const FieldPtr& ambient);

/// Deterministic F_p-basis of {x in ambient : L(x) = 0}.
std::vector<Elem> lp_kernel(const LinPoly& L, const FieldPtr& ambient);

inline constexpr unsigned kDefaultSplittingCap = 64;

/// Least m, a multiple of the coefficient field degree, with F_{p^m}
/// containing all p^{h} roots of the separable L. Throws ResourceError past
/// `cap` and DomainError when L is not separable.
unsigned splitting_degree(const LinPoly& L, unsigned cap = kDefaultSplittingCap);

/// theta with theta o U = Theta, by peeling the top coefficient. Throws
/// DivisibilityError when a nonzero remainder is left.
LinPoly lp_left_decompose(const LinPoly& Theta, const LinPoly& U);

std::ostream& operator<<(std::ostream& os, const LinPoly& L);

}  // namespace aszeta
