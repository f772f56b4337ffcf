#pragma once

// The curve C_R : Y^p - Y = X R(X) for an additive R over F_{p^r}.

#include <cstdint>
#include <optional>
#include <vector>

#include "aszeta/bigint.hpp"
#include "aszeta/gf.hpp"
#include "aszeta/linpoly.hpp"

namespace aszeta {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

struct Curve {
  std::uint32_t p = 0;
  FieldPtr base;             // F_{p^r}
  LinPoly R;                 // over base
  unsigned h = 0;
  std::uint64_t genus = 0;   // p^h (p-1)/2
  LinPoly E;                 // over base
  unsigned q_degree = 0;     // splitting degree of E
  FieldPtr splitting_field;  // F_q
  LinPoly R_q;               // R embedded in F_q
  LinPoly E_q;
  std::vector<Elem> W;       // F_p-basis of ker E in F_q, size 2h

  unsigned r() const { return base->degree(); }
};

/// Builds the curve for nonzero R. Throws DomainError for R = 0 and
/// InvariantViolation if the kernel of E in F_q does not have dimension 2h.
Curve make_curve(const LinPoly& R, unsigned splitting_cap = kDefaultSplittingCap);

/// coeffs[i] is a_i as a coordinate vector over F_{p^r} (length r, or a
/// single integer for a prime-field value). Rejects p = 2.
Curve make_curve(std::uint32_t p, unsigned r, const std::vector<std::vector<std::int64_t>>& coeffs);

/// Basis of W(F_{p^s}) = W n F_{p^s}. Computed twice, as the radical of
/// Tr(x R(y) + y R(x)) and as ker E on F_{p^s}; the two must span the same
/// space. Returns the ker E basis. Requires r | s.
std::vector<Elem> w_space(const Curve& C, unsigned s);

struct BPoly {
  Elem c;
  LinPoly B;         // over the field of c; zero iff c = 0
  Elem b_canonical;  // B(c)/2
};

/// B_c from the recursion b_0 = -c a_0 - R(c), b_i = -c a_i + b_{i-1}^p.
/// c may live in any extension of the base field. Throws NotInKernel with
/// the residual b_{h-1}^p - c a_h (or 2 a_0 c when h = 0) if c is not in W.
BPoly b_poly(const Curve& C, const Elem& c);

/// The residual above without throwing; zero iff c lies in W. A nonzero
/// `b0_shift` is added to b_0 before the recursion runs (negative control).
Elem b_residual(const Curve& C, const Elem& c, const Elem* b0_shift = nullptr);

/// #C(F_{p^s}) by enumeration: 1 + p #{x : Tr(x R(x)) = 0}. The range is
/// split across `jobs` threads. Throws ResourceError when p^s > budget.
std::uint64_t count_points_oracle(const Curve& C, unsigned s, std::uint64_t budget = kDefaultBudget,
                                  unsigned jobs = 1);

struct QuadricCount {
  BigInt N;          // #C(F_{p^s})
  unsigned w = 0;    // dim W(F_{p^s})
  unsigned n = 0;    // s - w
  int sign = 0;      // 0 for n odd, else +1 / -1 in Joly's formula
  std::vector<std::int64_t> diagonal;
  Eigen::Index gram_rank = 0;
};

/// #C(F_{p^s}) from the quadric on V_s = F_{p^s}/W(F_{p^s}).
QuadricCount count_points_quadric(const Curve& C, unsigned s);

/// Gram matrix of Q_s(x, y) = Tr(x R(y) + y R(x)) / 2 on the given vectors.
FpMatrix quadric_gram(const Curve& C, const std::vector<Elem>& vectors);

/// Some y with y^p - y = t, if one exists in the field of t.
std::optional<Elem> solve_artin_schreier(const Elem& t);

struct Point {
  Elem x;
  Elem y;
};

bool on_curve(const Curve& C, const Point& pt);

/// Up to `count` affine points over `field` (which must contain the base
/// field), taking x in canonical order and the least y for each.
std::vector<Point> sample_points(const Curve& C, const FieldPtr& field, std::size_t count);

/// Hasse-Weil window: |N - (p^s + 1)| <= 2 g p^{s/2}, checked exactly.
bool within_hasse_weil(const BigInt& N, std::uint32_t p, unsigned s, std::uint64_t genus);

}  // namespace aszeta
