#include "aszeta/linpoly.hpp"

#include <algorithm>

namespace aszeta {

LinPoly::LinPoly(FieldPtr field) : field_(std::move(field)) {}

LinPoly::LinPoly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (&c.field() != field_.get()) throw FieldMismatch("linearized polynomial coefficient in wrong field");
  }
  trim();
}

LinPoly LinPoly::monomial(const Elem& a, unsigned i) {
  std::vector<Elem> c(i + 1, Elem(a.field_ptr()));
  c[i] = a;
  return LinPoly(a.field_ptr(), std::move(c));
}

LinPoly LinPoly::identity(const FieldPtr& field) { return monomial(Elem::one(field), 0); }

void LinPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Elem LinPoly::coeff(unsigned i) const { return i < coeffs_.size() ? coeffs_[i] : Elem(field_); }

const Elem& LinPoly::leading() const {
  if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

LinPoly& LinPoly::operator+=(const LinPoly& o) {
  if (field_ != o.field_) throw FieldMismatch("adding polynomials over different fields");
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Elem(field_));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

LinPoly& LinPoly::operator-=(const LinPoly& o) {
  if (field_ != o.field_) throw FieldMismatch("subtracting polynomials over different fields");
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Elem(field_));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

LinPoly operator*(const Elem& c, const LinPoly& L) {
  std::vector<Elem> out;
  out.reserve(L.coeffs_.size());
  for (const auto& a : L.coeffs_) out.push_back(c * a);
  return LinPoly(L.field_, std::move(out));
}

bool operator==(const LinPoly& a, const LinPoly& b) { return a.field_ == b.field_ && a.coeffs_ == b.coeffs_; }

LinPoly lp_embed(const LinPoly& L, const FieldPtr& target) {
  if (L.field() == target) return L;
  std::vector<Elem> out;
  out.reserve(L.coeffs().size());
  for (const auto& a : L.coeffs()) out.push_back(embed(a, target));
  return LinPoly(target, std::move(out));
}

Elem lp_eval(const LinPoly& L, const Elem& x) {
  if (&x.field() != L.field().get()) {
    const unsigned a = L.field()->degree(), b = x.field().degree();
    if (L.field()->p() != x.p() || b % a != 0)
      throw FieldMismatch("cannot evaluate: argument field does not contain the coefficient field");
    return lp_eval(lp_embed(L, x.field_ptr()), x);
  }
  Elem acc(L.field());
  Elem power = x;
  for (std::size_t i = 0; i < L.coeffs().size(); ++i) {
    if (i > 0) power = frobenius(power, 1);
    if (!L.coeffs()[i].is_zero()) acc += L.coeffs()[i] * power;
  }
  return acc;
}

LinPoly lp_pth_power(const LinPoly& L) {
  if (L.is_zero()) return L;
  std::vector<Elem> c{Elem(L.field())};
  for (const auto& a : L.coeffs()) c.push_back(frobenius(a, 1));
  return LinPoly(L.field(), std::move(c));
}

LinPoly lp_compose(const LinPoly& L, const LinPoly& M) {
  if (L.field() != M.field()) throw FieldMismatch("composing polynomials over different fields");
  if (L.is_zero() || M.is_zero()) return LinPoly(L.field());
  const auto& a = L.coeffs();
  const auto& b = M.coeffs();
  std::vector<Elem> c(a.size() + b.size() - 1, Elem(L.field()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] += a[i] * frobenius(b[j], static_cast<unsigned>(i));
    }
  }
  return LinPoly(L.field(), std::move(c));
}

LinPoly build_E(const LinPoly& R) {
  if (R.is_zero()) throw DomainError("build_E: R is the zero polynomial");
  const auto h = static_cast<unsigned>(R.h());
  const FieldPtr& F = R.field();
  LinPoly E = lp_compose(LinPoly::monomial(Elem::one(F), h), R);
  for (unsigned i = 0; i <= h; ++i) {
    const Elem& ai = R.coeffs()[i];
    if (ai.is_zero()) continue;
    E += LinPoly::monomial(frobenius(ai, h - i), h - i);
  }
  return E;
}

FpMatrix lp_matrix(const LinPoly& L, const FieldPtr& ambient) {
  const LinPoly La = lp_embed(L, ambient);
  const unsigned m = ambient->degree();
  FpMatrix a(m, m);
  for (unsigned j = 0; j < m; ++j) {
    Elem e(ambient);
    e.mutable_coeffs()[j] = 1;
    const Elem img = lp_eval(La, e);
    for (unsigned i = 0; i < m; ++i) a(i, j) = img.coeffs()[i];
  }
  return a;
}

std::vector<Elem> lp_kernel(const LinPoly& L, const FieldPtr& ambient) {
  const FpMatrix ker = fp_linear_kernel(lp_matrix(L, ambient), ambient->p());
  std::vector<Elem> basis;
  basis.reserve(static_cast<std::size_t>(ker.cols()));
  for (Eigen::Index k = 0; k < ker.cols(); ++k) {
    std::vector<Residue> c(ambient->degree());
    for (unsigned i = 0; i < ambient->degree(); ++i) c[i] = static_cast<Residue>(ker(i, k));
    basis.emplace_back(ambient, std::move(c));
  }
  return basis;
}

unsigned splitting_degree(const LinPoly& L, unsigned cap) {
  if (L.is_zero() || L.derivative().is_zero())
    throw DomainError("splitting_degree: polynomial is not separable");
  const unsigned r = L.field()->degree();
  const auto want = static_cast<Eigen::Index>(L.h());
  for (unsigned m = r; m <= cap; m += r) {
    const FieldPtr F = make_field(L.field()->p(), m);
    const Eigen::Index rank = fp_rank(lp_matrix(L, F), F->p());
    if (static_cast<Eigen::Index>(m) - rank == want) return m;
  }
  throw ResourceError("splitting field degree exceeds cap " + std::to_string(cap), cap);
}

LinPoly lp_left_decompose(const LinPoly& Theta, const LinPoly& U) {
  if (U.is_zero()) throw DomainError("left division by the zero polynomial");
  if (Theta.field() != U.field()) throw FieldMismatch("left division over different fields");
  const FieldPtr& F = U.field();
  if (Theta.is_zero()) return LinPoly(F);
  const int t = U.h();
  const int k = Theta.h();
  if (k < t) throw DivisibilityError("left division: dividend has smaller degree than divisor");

  LinPoly rem = Theta;
  std::vector<Elem> quotient(static_cast<std::size_t>(k - t + 1), Elem(F));
  for (int j = k; j >= t; --j) {
    const Elem top = rem.coeff(static_cast<unsigned>(j));
    if (top.is_zero()) continue;
    const auto shift = static_cast<unsigned>(j - t);
    const Elem mu = top / frobenius(U.leading(), shift);
    quotient[shift] = mu;
    rem -= lp_compose(LinPoly::monomial(mu, shift), U);
  }
  if (!rem.is_zero()) throw DivisibilityError("left division left a nonzero remainder");
  return LinPoly(F, std::move(quotient));
}

std::ostream& operator<<(std::ostream& os, const LinPoly& L) {
  if (L.is_zero()) return os << "0";
  bool first = true;
  for (std::size_t i = 0; i < L.coeffs().size(); ++i) {
    if (L.coeffs()[i].is_zero()) continue;
    os << (first ? "" : " + ") << L.coeffs()[i] << "*X^(p^" << i << ")";
    first = false;
  }
  return os;
}

}  // namespace aszeta
