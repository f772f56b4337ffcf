#pragma once

// Zeta functions of C_R: the quotient-curve reduction to Y^p - Y = a X^2, the
// closed-form L-polynomial over F_{p^s} with F_q inside F_{p^s}, and the
// independent reconstruction from point counts through Newton's identities.

#include <optional>
#include <string>
#include <vector>

#include "aszeta/autgrp.hpp"
#include "aszeta/curve.hpp"

namespace aszeta {

enum class LForm { Linear, Quadratic };

/// Linear:    (1 + sign p^{s/2} T)^{2g}, s even.
/// Quadratic: (1 + sign p^s T^2)^g.
struct LPoly {
  LForm form = LForm::Linear;
  int sign = 1;
  std::uint32_t p = 0;
  unsigned s = 0;
  std::uint64_t g = 0;

  /// Expanded coefficients c_0 .. c_{2g}.
  std::vector<BigInt> coefficients() const;
  std::string to_string() const;
};

/// N_n = 1 + p^{sn} - sum alpha_i^n over F_{p^{sn}}.
BigInt predicted_count(const LPoly& L, unsigned n);
/// sum alpha_i^n.
BigInt power_sum(const LPoly& L, unsigned n);

/// The structured form matching an expanded coefficient list, if any.
std::optional<LPoly> identify_form(const std::vector<BigInt>& coeffs, std::uint32_t p, unsigned s);

/// c_{2g-k} = p^{s(g-k)} c_k for all k, c_0 = 1.
bool check_functional_equation(const std::vector<BigInt>& coeffs, std::uint32_t p, unsigned s);

/// Every Newton slope of the coefficient sequence equals s/2.
bool is_supersingular(const std::vector<BigInt>& coeffs, std::uint32_t p, unsigned s);
bool is_supersingular(const LPoly& L);

/// Exact check that all reciprocal roots have absolute value p^{s/2}: the
/// sequence must be one of the two structured shapes, whose roots are known.
bool roots_on_weil_circle(const std::vector<BigInt>& coeffs, std::uint32_t p, unsigned s);

/// L(T) from N_1..N_g (counts over F_{p^s}, ..., F_{p^{sg}}), completed by
/// the functional equation. Throws InvariantViolation if a Newton step is not
/// an exact division.
std::vector<BigInt> lpoly_from_counts(const std::vector<BigInt>& counts, std::uint32_t p, unsigned s,
                                      std::uint64_t g);

struct Reconstruction {
  std::vector<BigInt> coefficients;
  std::vector<BigInt> counts;        // N_1..N_g
  std::vector<std::string> sources;  // "oracle" or "quadric" per count
};

/// Counts by the oracle while p^{sn} <= budget and by the quadric beyond it,
/// or throws ResourceError there when allow_quadric is false. Requires r | s.
Reconstruction reconstruct_lpoly(const Curve& C, unsigned s, std::uint64_t budget = kDefaultBudget,
                                 unsigned jobs = 1, bool allow_quadric = true);

// ---------------------------------------------------------------- twists

enum class SquareClass { Square, Nonsquare, Single };

struct TwistClass {
  Elem representative;
  /// Class modulo F_q^{*2} F_p^*. When [F_q : F_p] is odd that group is all
  /// of F_q^* and the tag is Single.
  SquareClass tag = SquareClass::Single;
};

TwistClass twist_class(const Elem& e);
/// e1 / e2 = u v with u a square and v in F_p^*. Throws DomainError on zero.
bool twist_equivalent(const Elem& e1, const Elem& e2);
std::string to_string(SquareClass c);

// ---------------------------------------------------------------- quotients

struct QuotientStep {
  Curve quotient;  // V^p - V = U Rt(U), over the field of c
  Elem c;
  Elem gamma;      // -B_c(c) / (2 c^2)
  LinPoly U;       // X^p - c^{p-1} X
  LinPoly Theta;
  LinPoly theta;
  bool theta_vanishes_at_c = false;
  bool leading_ok = false;  // a_h / c^{p-1}, halved when h = 1
  bool genus_ok = false;
  bool points_ok = false;   // U, V fixed by sigma and (U, V) on the quotient
  std::optional<bool> count_ok;  // oracle vs quadric on the quotient
  std::size_t sample_points = 0;

  bool ok() const { return theta_vanishes_at_c && leading_ok && genus_ok && points_ok && count_ok.value_or(true); }
};

/// One reduction C_R -> C_R / <sigma_{B_c(c)/2, c}>. Requires h >= 1, c in W
/// nonzero. The count cross-check is skipped above budget.
QuotientStep quotient_step(const Curve& C, const Elem& c, std::uint64_t budget = kDefaultBudget,
                           std::size_t sample_count = 8);

/// (a_h / 2) prod of the nonzero elements of span(Abar); a_0 when h = 0.
/// Throws DomainError unless Abar is an isotropic basis of dimension h.
Elem a_constant(const Curve& C, const std::vector<Elem>& Abar);

struct IteratedQuotient {
  Elem constant;  // a_0 of the final h = 0 curve
  std::vector<QuotientStep> steps;
  bool ok() const;
};

/// Quotients by c_h, then by the images c_i^p - c_h^{p-1} c_i, until h = 0.
IteratedQuotient iterated_quotient(const Curve& C, const std::vector<Elem>& Abar,
                                   std::uint64_t budget = kDefaultBudget);

// ---------------------------------------------------------------- L-polynomials

struct LResult {
  LPoly L;
  Elem a;              // a_A embedded in F_{p^s}
  bool square = false;
  std::string row;     // case of the table that applied
};

/// Closed form over F_{p^s}; requires q_degree | s, otherwise DomainError.
LResult l_polynomial(const Curve& C, unsigned s);

/// The table keyed by (p mod 4, s, square class of a in F_{p^s}).
LPoly l_polynomial_table(std::uint32_t p, unsigned s, std::uint64_t g, bool square, std::string* row = nullptr);

enum class Classification { Maximal, Minimal, Neither };
std::string to_string(Classification c);

/// Maximal / Minimal / Neither from a count over F_{p^s}.
Classification classify_count(const BigInt& N, std::uint32_t p, unsigned s, std::uint64_t g);

struct ClassifyResult {
  Classification cls = Classification::Neither;
  std::string method;  // "l_polynomial", "oracle" or "quadric"
  BigInt N;
};

/// Closed form when q_degree | s, else the oracle within budget, else the
/// quadric count. Requires r | s.
ClassifyResult classify(const Curve& C, unsigned s, std::uint64_t budget = kDefaultBudget, unsigned jobs = 1);

/// Y^p - Y = a X^2 over F_{p^{2s}}: Maximal or Minimal.
Classification maximality_table_h0(std::uint32_t p, unsigned s, bool square);

struct KaniRosenCheck {
  bool ok = false;
  std::vector<BigInt> lhs;    // L of C_R over F_q from counts
  std::vector<BigInt> rhs;    // L of D_{a_A} over F_q, to the power p^h
  std::vector<BigInt> table;  // l_polynomial(C, q) expanded
  std::vector<std::string> sources;
  Elem a;
};

/// L_{C_R, F_q} = L_{D, F_q}^{p^h} with D : Y^p - Y = a_A X^2.
KaniRosenCheck kani_rosen_check(const Curve& C, std::uint64_t budget = kDefaultBudget, unsigned jobs = 1,
                                bool allow_quadric = true);

std::vector<BigInt> poly_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b);
std::vector<BigInt> poly_pow(const std::vector<BigInt>& a, std::uint64_t e);

}  // namespace aszeta
