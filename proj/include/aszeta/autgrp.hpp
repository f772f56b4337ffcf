#pragma once

// Automorphisms sigma_{a,b,c,d}: (x, y) -> (a x + c, d y + b + B_c(a x)) of
// C_R fixing the point at infinity, and the p-group P of those with a = d = 1.
//
// Composition is of maps, right to left: (s1 * s2)(pt) = s1(s2(pt)). With
// this convention s_{b1,c1} s_{b2,c2} = s_{b1+b2+B_{c1}(c2), c1+c2} and the
// commutator s1 s2 s1^-1 s2^-1 equals rho^{eps(c1,c2)}.

#include <optional>
#include <string>
#include <vector>

#include "aszeta/curve.hpp"

namespace aszeta {

struct AutElem {
  Elem a;  // nonzero
  Elem b;
  Elem c;
  Residue d = 1;  // in F_p^*
  LinPoly B;      // B_c over the field of the constants
};

/// sigma_{b,c} with canonical b = B_c(c)/2 + i. Constants in c's field.
AutElem make_p_element(const Curve& C, const Elem& c, Residue i = 0);
/// rho^k = sigma_{1,k,0,1} over `field`.
AutElem rho_power(const FieldPtr& field, Residue k);

struct SMembership {
  bool member = false;
  std::string reason;
  /// g(X) = B_c(aX) + B_c(c)/2 + i for i in F_p, as (additive part, constant).
  std::vector<std::pair<LinPoly, Elem>> witnesses;
};

/// Decides (a, c, d) in S(X R(X)): c in W and a R(aX) = d R(X). Each witness
/// is checked against f(aX + c) - d f(X) = g^p - g as a polynomial identity.
SMembership s_membership(const Curve& C, const Elem& a, const Elem& c, Residue d);

/// The polynomial identity (aX+c) R(aX+c) - d X R(X) - (g^p - g) = 0 with
/// g = B(aX) + b, over the field of the constants.
bool preserves_curve(const Curve& C, const AutElem& s);

/// Throws DomainError if the point is not on C. The point may live in any
/// field containing the constants of s.
Point apply_aut(const Curve& C, const AutElem& s, const Point& pt);

/// Products inside P (a = d = 1); throws FieldMismatch / DomainError otherwise.
AutElem compose(const AutElem& s1, const AutElem& s2);
AutElem inverse(const AutElem& s);
AutElem power(const AutElem& s, std::uint64_t n);
bool same_element(const AutElem& s1, const AutElem& s2);

/// eps(c1, c2) = B_{c1}(c2) - B_{c2}(c1), an element of F_p.
Residue epsilon(const Curve& C, const Elem& c1, const Elem& c2);

/// k with s1 s2 s1^-1 s2^-1 = rho^k, computed by composing; throws
/// InvariantViolation if the commutator is not a power of rho.
Residue commutator_exponent(const AutElem& s1, const AutElem& s2);

struct GroupCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

class GroupP {
 public:
  explicit GroupP(const Curve& C);

  const Curve& curve() const { return C_; }
  std::size_t order() const { return order_; }
  unsigned rank() const { return static_cast<unsigned>(C_.W.size()); }
  /// The element with W-coordinates given by `cindex` (base-p digits) and
  /// b = B_c(c)/2 + i.
  AutElem element(std::uint64_t cindex, Residue i) const;
  AutElem element(std::uint64_t id) const { return element(id / C_.p, static_cast<Residue>(id % C_.p)); }
  /// Inverse of element(): id = cindex * p + i.
  std::uint64_t id_of(const AutElem& s) const;
  std::vector<Residue> coordinates(const Elem& c) const;
  Elem from_coordinates(std::span<const Residue> coords) const;
  LinPoly B_of(std::span<const Residue> coords) const;
  /// Generators rho, sigma_{w_1}, ..., sigma_{w_2h}.
  std::vector<AutElem> generators() const;

  /// Runs every structural check; sample_points bounds the point checks.
  std::vector<GroupCheck> verify(std::size_t sample_count = 6) const;

 private:
  Curve C_;
  std::size_t order_;
  std::vector<LinPoly> basis_B_;  // B_{w_k} for the W basis
  FpMatrix w_coords_;             // W basis as columns
};

/// |H| = e (p-1)/2 gcd_{a_i != 0}(p^i + 1).
BigInt h_order_formula(const Curve& C);

struct HOrder {
  BigInt formula;
  std::optional<std::uint64_t> enumerated;
  unsigned search_degree = 0;
  std::vector<Elem> solutions;  // a with a R(aX) = d R(X), in F_{p^search_degree}
};

/// Formula plus brute-force count of a in F_{p^m}^*, m = lcm(r, 2 max(1, i0))
/// with i0 the least index of a nonzero coefficient; every solution lies in
/// that field. Enumeration is skipped above budget.
HOrder subgroup_h_order(const Curve& C, std::uint64_t budget = kDefaultBudget);

/// For h in H and each generator of P, h s h^-1 is again in P: c' = a c,
/// b' = d b, B_{ac}(X) = d B_c(X/a). Works in a field containing F_q and the
/// solutions of the H equation.
GroupCheck check_semidirect(const Curve& C, std::uint64_t budget = kDefaultBudget);

/// Warning text when R is monic and equals X or X^p (full automorphism group
/// is larger than the stabilizer of infinity).
std::optional<std::string> special_automorphism_flag(const Curve& C);

struct SymplecticBasis {
  std::vector<Elem> c;       // c_1..c_h
  std::vector<Elem> cprime;  // c'_1..c'_h
};

/// eps(c_i, c'_j) = delta_ij, eps(c_i, c_j) = eps(c'_i, c'_j) = 0. Built from
/// the W basis in order. Empty when h = 0.
SymplecticBasis symplectic_basis(const Curve& C);

/// Gram matrix of eps on the given vectors.
FpMatrix epsilon_gram(const Curve& C, const std::vector<Elem>& vs);

struct IsotropicDecomposition {
  std::vector<std::uint64_t> cal_A;               // ids of the maximal abelian subgroup
  std::vector<std::vector<std::uint64_t>> parts;  // A_1, ..., A_p (A_p = <sigma_i>)
  std::vector<GroupCheck> checks;
};

/// A_j = tau^j A_p tau^-j with tau = sigma_{B(c')/2, c'_1 + ... + c'_h}.
/// Empty when h = 0.
IsotropicDecomposition isotropic_decomposition(const GroupP& P, const SymplecticBasis& basis);

}  // namespace aszeta
