#include "aszeta/autgrp.hpp"

#include <iterator>
#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace aszeta {

namespace {

LinPoly embedded_R(const Curve& C, const FieldPtr& F) {
  if (F == C.splitting_field) return C.R_q;
  return lp_embed(C.R, F);
}

Elem half(const Elem& x) { return x * inv(Elem::from_int(x.field_ptr(), 2)); }

/// L(aX) as an additive polynomial: coefficients l_j a^{p^j}.
LinPoly scale_argument(const LinPoly& L, const Elem& a) {
  std::vector<Elem> out;
  for (std::size_t j = 0; j < L.coeffs().size(); ++j)
    out.push_back(L.coeffs()[j] * frobenius(a, static_cast<unsigned>(j)));
  return LinPoly(L.field(), std::move(out));
}

void require_p_element(const AutElem& s) {
  if (!s.a.is_one() || s.d != 1) throw DomainError("element is not in P (a = d = 1 required)");
}

GroupCheck check(std::string name, bool ok, std::string detail = {}) {
  return GroupCheck{std::move(name), ok, std::move(detail)};
}

std::uint64_t ipow64(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

AutElem make_p_element(const Curve& C, const Elem& c, Residue i) {
  BPoly bp = b_poly(C, c);
  const FieldPtr F = c.field_ptr();
  return AutElem{Elem::one(F), bp.b_canonical + Elem::from_int(F, i), c, 1, std::move(bp.B)};
}

AutElem rho_power(const FieldPtr& field, Residue k) {
  return AutElem{Elem::one(field), Elem::from_int(field, k), Elem(field), 1, LinPoly(field)};
}

bool preserves_curve(const Curve& C, const AutElem& s) {
  const FieldPtr F = s.c.field_ptr();
  const LinPoly RF = embedded_R(C, F);
  const unsigned h = C.h;
  const Elem d = Elem::from_int(F, s.d);
  const Elem Rc = lp_eval(RF, s.c);
  // The identity only involves monomials X^{p^i+1}, X^{p^j} and 1, which never
  // coincide for odd p; collect each family separately.
  std::vector<Elem> quad(h + 1, Elem(F)), lin(h + 2, Elem(F));
  Elem constant(F);
  for (unsigned i = 0; i <= h; ++i) {
    const Elem ai = RF.coeff(i);
    const Elem scaled = ai * frobenius(s.a, i);  // coefficient of X^{p^i} in R(aX)
    quad[i] += s.a * scaled - d * ai;
    lin[i] += s.c * scaled;
  }
  lin[0] += s.a * Rc;
  constant += s.c * Rc;
  // g = B(aX) + b; subtract g^p - g.
  const LinPoly Ba = scale_argument(s.B, s.a);
  for (std::size_t j = 0; j < Ba.coeffs().size(); ++j) {
    if (j + 1 >= lin.size()) lin.resize(j + 2, Elem(F));
    lin[j + 1] -= frobenius(Ba.coeffs()[j], 1);
    lin[j] += Ba.coeffs()[j];
  }
  constant -= frobenius(s.b, 1) - s.b;
  auto zero = [](const Elem& e) { return e.is_zero(); };
  return std::all_of(quad.begin(), quad.end(), zero) && std::all_of(lin.begin(), lin.end(), zero) &&
         constant.is_zero();
}

SMembership s_membership(const Curve& C, const Elem& a, const Elem& c, Residue d) {
  SMembership out;
  if (a.is_zero()) {
    out.reason = "a = 0";
    return out;
  }
  if (d == 0 || d >= C.p) {
    out.reason = "d not in F_p^*";
    return out;
  }
  if (&a.field() != &c.field()) throw FieldMismatch("a and c must share a field");
  const FieldPtr F = a.field_ptr();
  const Elem eps = b_residual(C, c);
  if (!eps.is_zero()) {
    out.reason = "c not in W (residual " + to_string(eps) + ")";
    return out;
  }
  const LinPoly RF = embedded_R(C, F);
  const Elem dF = Elem::from_int(F, d);
  for (unsigned i = 0; i <= C.h; ++i) {
    const Elem ai = RF.coeff(i);
    if (a * ai * frobenius(a, i) != dF * ai) {
      out.reason = "a R(aX) != d R(X) at X^{p^" + std::to_string(i) + "}";
      return out;
    }
  }
  const BPoly bp = b_poly(C, c);
  const LinPoly Ba = scale_argument(bp.B, a);
  for (Residue i = 0; i < C.p; ++i) {
    const Elem b = bp.b_canonical + Elem::from_int(F, i);
    if (!preserves_curve(C, AutElem{a, b, c, d, bp.B}))
      throw InvariantViolation("witness g(X) fails the curve identity");
    out.witnesses.emplace_back(Ba, b);
  }
  out.member = true;
  return out;
}

Point apply_aut(const Curve& C, const AutElem& s, const Point& pt) {
  if (!on_curve(C, pt)) throw DomainError("point is not on the curve");
  const FieldPtr G = pt.x.field_ptr();
  const Elem a = embed(s.a, G), b = embed(s.b, G), c = embed(s.c, G);
  const LinPoly B = lp_embed(s.B, G);
  const Elem ax = a * pt.x;
  return Point{ax + c, pt.y.scaled(s.d) + b + lp_eval(B, ax)};
}

AutElem compose(const AutElem& s1, const AutElem& s2) {
  require_p_element(s1);
  require_p_element(s2);
  if (&s1.c.field() != &s2.c.field()) throw FieldMismatch("composing automorphisms over different fields");
  return AutElem{s1.a, s1.b + s2.b + lp_eval(s1.B, s2.c), s1.c + s2.c, 1, s1.B + s2.B};
}

AutElem inverse(const AutElem& s) {
  require_p_element(s);
  const Elem minus_one = Elem::from_int(s.c.field_ptr(), -1);
  return AutElem{s.a, -s.b + lp_eval(s.B, s.c), -s.c, 1, minus_one * s.B};
}

AutElem power(const AutElem& s, std::uint64_t n) {
  AutElem result = rho_power(s.c.field_ptr(), 0);
  AutElem base = s;
  while (n > 0) {
    if (n & 1u) result = compose(result, base);
    base = compose(base, base);
    n >>= 1u;
  }
  return result;
}

bool same_element(const AutElem& s1, const AutElem& s2) {
  return s1.a == s2.a && s1.b == s2.b && s1.c == s2.c && s1.d == s2.d;
}

Residue epsilon(const Curve& C, const Elem& c1, const Elem& c2) {
  const LinPoly B1 = b_poly(C, c1).B, B2 = b_poly(C, c2).B;
  const Elem e = lp_eval(B1, c2) - lp_eval(B2, c1);
  const auto r = e.as_prime();
  if (!r) throw InvariantViolation("eps(c1, c2) is not in F_p: " + to_string(e));
  return *r;
}

Residue commutator_exponent(const AutElem& s1, const AutElem& s2) {
  const AutElem k = compose(compose(s1, s2), compose(inverse(s1), inverse(s2)));
  const auto r = k.b.as_prime();
  if (!k.c.is_zero() || !r) throw InvariantViolation("commutator is not a power of rho");
  return *r;
}

FpMatrix epsilon_gram(const Curve& C, const std::vector<Elem>& vs) {
  const auto n = static_cast<Eigen::Index>(vs.size());
  std::vector<LinPoly> Bs;
  for (const auto& v : vs) Bs.push_back(b_poly(C, v).B);
  FpMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Elem e = lp_eval(Bs[i], vs[j]) - lp_eval(Bs[j], vs[i]);
      const auto r = e.as_prime();
      if (!r) throw InvariantViolation("eps takes a value outside F_p");
      g(i, j) = *r;
    }
  return g;
}

// ---------------------------------------------------------------- GroupP

GroupP::GroupP(const Curve& C) : C_(C) {
  const std::uint64_t pw = ipow64(C.p, 2 * C.h + 1);
  order_ = static_cast<std::size_t>(pw);
  const unsigned m = C.q_degree;
  w_coords_ = FpMatrix(m, static_cast<Eigen::Index>(C.W.size()));
  for (std::size_t k = 0; k < C.W.size(); ++k) {
    basis_B_.push_back(b_poly(C, C.W[k]).B);
    for (unsigned i = 0; i < m; ++i) w_coords_(i, static_cast<Eigen::Index>(k)) = C.W[k].coeffs()[i];
  }
}

std::vector<Residue> GroupP::coordinates(const Elem& c) const {
  if (&c.field() != C_.splitting_field.get()) throw FieldMismatch("element not in the splitting field");
  FpVector v(C_.q_degree);
  for (unsigned i = 0; i < C_.q_degree; ++i) v(i) = c.coeffs()[i];
  const auto sol = fp_solve(w_coords_, v, C_.p);
  if (!sol) throw DomainError("element is not in W");
  std::vector<Residue> out(C_.W.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<Residue>((*sol)(static_cast<Eigen::Index>(k)));
  return out;
}

Elem GroupP::from_coordinates(std::span<const Residue> coords) const {
  Elem c(C_.splitting_field);
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (coords[k] != 0) c += C_.W[k].scaled(coords[k]);
  return c;
}

LinPoly GroupP::B_of(std::span<const Residue> coords) const {
  LinPoly B(C_.splitting_field);
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (coords[k] != 0) B += Elem::from_int(C_.splitting_field, coords[k]) * basis_B_[k];
  return B;
}

AutElem GroupP::element(std::uint64_t cindex, Residue i) const {
  std::vector<Residue> coords(C_.W.size());
  for (auto& d : coords) {
    d = static_cast<Residue>(cindex % C_.p);
    cindex /= C_.p;
  }
  const Elem c = from_coordinates(coords);
  LinPoly B = B_of(coords);
  const FieldPtr& F = C_.splitting_field;
  Elem b = half(lp_eval(B, c)) + Elem::from_int(F, i);
  return AutElem{Elem::one(F), std::move(b), c, 1, std::move(B)};
}

std::uint64_t GroupP::id_of(const AutElem& s) const {
  require_p_element(s);
  const auto coords = coordinates(s.c);
  const LinPoly B = B_of(coords);
  if (!(B == s.B)) throw InvariantViolation("element carries a B polynomial that differs from B_c");
  const auto i = (s.b - half(lp_eval(B, s.c))).as_prime();
  if (!i) throw DomainError("b - B_c(c)/2 is not in F_p");
  std::uint64_t cindex = 0;
  for (std::size_t k = coords.size(); k-- > 0;) cindex = cindex * C_.p + coords[k];
  return cindex * C_.p + *i;
}

std::vector<AutElem> GroupP::generators() const {
  std::vector<AutElem> gens{rho_power(C_.splitting_field, 1)};
  for (std::size_t k = 0; k < C_.W.size(); ++k) gens.push_back(element(ipow64(C_.p, static_cast<unsigned>(k)), 0));
  return gens;
}

std::vector<GroupCheck> GroupP::verify(std::size_t sample_count) const {
  std::vector<GroupCheck> out;
  const std::uint32_t p = C_.p;
  const unsigned h = C_.h;
  std::vector<AutElem> all;
  all.reserve(order_);

  bool bijective = true, preserving = true;
  for (std::uint64_t id = 0; id < order_; ++id) {
    all.push_back(element(id));
    if (id_of(all.back()) != id) bijective = false;
    if (!preserves_curve(C_, all.back())) preserving = false;
  }
  std::ostringstream od;
  od << order_ << " = " << p << "^" << 2 * h + 1;
  out.push_back(check("order", bijective && all.size() == ipow64(p, 2 * h + 1), od.str()));
  out.push_back(check("curve_identity", preserving));

  bool exp_ok = true;
  for (const auto& s : all)
    if (!same_element(power(s, p), rho_power(C_.splitting_field, 0))) exp_ok = false;
  out.push_back(check("exponent_p", exp_ok));

  const auto gens = generators();
  std::vector<std::uint64_t> centre;
  for (std::uint64_t id = 0; id < order_; ++id) {
    bool central = true;
    for (const auto& g : gens)
      if (!same_element(compose(all[id], g), compose(g, all[id]))) {
        central = false;
        break;
      }
    if (central) centre.push_back(id);
  }
  // rho^i has id i (cindex 0).
  bool centre_ok = centre.size() == (h == 0 ? order_ : p);
  if (h > 0)
    for (std::size_t k = 0; k < centre.size() && centre_ok; ++k) centre_ok = centre[k] == k;
  out.push_back(check("centre_is_rho", centre_ok, "|Z(P)| = " + std::to_string(centre.size())));

  std::set<Residue> comm;
  const bool all_pairs = order_ <= 729;
  for (std::uint64_t x = 0; x < order_; ++x) {
    if (all_pairs) {
      for (std::uint64_t y = 0; y < order_; ++y) comm.insert(commutator_exponent(all[x], all[y]));
    } else {
      for (const auto& g : gens) comm.insert(commutator_exponent(all[x], g));
    }
  }
  const bool comm_ok = h == 0 ? comm == std::set<Residue>{0} : comm.size() > 1;
  out.push_back(check("commutator_subgroup_is_rho", comm_ok,
                      std::to_string(comm.size()) + " distinct commutator exponents"));

  // P/Z is abelian (commutators are central), has exponent p, and has order
  // |P|/|Z|; the kernel of sigma_{b,c} -> c is exactly the centre.
  const std::size_t quotient_order = order_ / (h == 0 ? order_ : p);
  unsigned rank = 0;
  for (std::size_t q = quotient_order; q > 1; q /= p) ++rank;
  out.push_back(check("quotient_elementary_abelian", rank == 2 * h && centre_ok && exp_ok,
                      "rank " + std::to_string(rank)));

  bool formula_ok = true;
  for (const auto& g1 : gens)
    for (const auto& g2 : gens)
      if (commutator_exponent(g1, g2) != epsilon(C_, g1.c, g2.c)) formula_ok = false;
  out.push_back(check("commutator_formula", formula_ok));

  const auto pts = sample_points(C_, C_.splitting_field, sample_count);
  bool action_ok = !pts.empty();
  for (const auto& pt : pts) {
    for (const auto& g1 : gens) {
      const Point back = apply_aut(C_, inverse(g1), apply_aut(C_, g1, pt));
      if (!(back.x == pt.x && back.y == pt.y)) action_ok = false;
      for (const auto& g2 : gens) {
        const Point lhs = apply_aut(C_, compose(g1, g2), pt);
        const Point rhs = apply_aut(C_, g1, apply_aut(C_, g2, pt));
        if (!(lhs.x == rhs.x && lhs.y == rhs.y) || !on_curve(C_, lhs)) action_ok = false;
        Point q = apply_aut(C_, inverse(g2), pt);
        q = apply_aut(C_, inverse(g1), q);
        q = apply_aut(C_, g2, q);
        q = apply_aut(C_, g1, q);
        const Point expect = apply_aut(C_, rho_power(C_.splitting_field, epsilon(C_, g1.c, g2.c)), pt);
        if (!(q.x == expect.x && q.y == expect.y)) action_ok = false;
      }
    }
  }
  out.push_back(check("point_action", action_ok, std::to_string(pts.size()) + " sample points"));

  if (h > 0) {
    const FpMatrix g = epsilon_gram(C_, C_.W);
    const bool alternating = (g + g.transpose()).unaryExpr([p](std::int64_t v) { return v % p; }).isZero() &&
                             g.diagonal().isZero();
    const auto rk = fp_rank(g, p);
    out.push_back(check("eps_nondegenerate", alternating && rk == static_cast<Eigen::Index>(2 * h),
                        "rank " + std::to_string(rk)));
  }
  return out;
}

// ---------------------------------------------------------------- H

BigInt h_order_formula(const Curve& C) {
  std::vector<unsigned> idx;
  for (unsigned i = 0; i <= C.h; ++i)
    if (!C.R.coeff(i).is_zero()) idx.push_back(i);
  const bool same_parity =
      std::all_of(idx.begin(), idx.end(), [&](unsigned i) { return i % 2 == idx.front() % 2; });
  BigInt g = 0;
  for (auto i : idx) g = boost::multiprecision::gcd(g, BigInt(ipow(C.p, i) + 1));
  const unsigned e = same_parity ? 2 : 1;
  return BigInt(e) * (C.p - 1) / 2 * g;
}

namespace {

unsigned h_search_degree(const Curve& C) {
  unsigned i0 = 0;
  while (C.R.coeff(i0).is_zero()) ++i0;
  return std::lcm(C.r(), 2 * std::max(1u, i0));
}

/// d if a R(aX) = d R(X) for some d in F_p^*.
std::optional<Residue> h_multiplier(const LinPoly& RF, const Elem& a) {
  std::optional<Residue> d;
  for (unsigned i = 0; i < RF.coeffs().size(); ++i) {
    if (RF.coeffs()[i].is_zero()) continue;
    const auto v = (a * frobenius(a, i)).as_prime();
    if (!v || *v == 0 || (d && *d != *v)) return std::nullopt;
    d = *v;
  }
  return d;
}

}  // namespace

HOrder subgroup_h_order(const Curve& C, std::uint64_t budget) {
  HOrder out;
  out.formula = h_order_formula(C);
  out.search_degree = h_search_degree(C);
  const FieldPtr F = make_field(C.p, out.search_degree);
  const auto card = F->cardinality();
  if (!card || *card > budget) return out;
  const LinPoly RF = lp_embed(C.R, F);
  std::uint64_t count = 0;
  for (std::uint64_t k = 1; k < *card; ++k) {
    const Elem a = Elem::from_index(F, k);
    const auto d = h_multiplier(RF, a);
    if (!d) continue;
    // Cross-check against the coefficient comparison in a R(aX) = d R(X).
    for (unsigned i = 0; i <= C.h; ++i)
      if (a * RF.coeff(i) * frobenius(a, i) != Elem::from_int(F, *d) * RF.coeff(i))
        throw InvariantViolation("H multiplier disagrees with coefficient comparison");
    ++count;
    out.solutions.push_back(a);
  }
  out.enumerated = count;
  return out;
}

GroupCheck check_semidirect(const Curve& C, std::uint64_t budget) {
  const unsigned dh = h_search_degree(C);
  const unsigned m = std::lcm(C.q_degree, dh);
  const FieldPtr F = make_field(C.p, m);
  const std::uint64_t sub_card = ipow64(C.p, dh);
  if (dh > 40 || sub_card > budget) return check("semidirect", false, "H search exceeds budget");
  const LinPoly RF = lp_embed(C.R, F);
  const std::vector<Elem> WF = lp_kernel(lp_embed(C.E, F), F);
  if (WF.size() != 2 * C.h) return check("semidirect", false, "W not split in the ambient field");

  // Enumerate the degree-dh subfield inside F so all constants share one field.
  const auto sub = subfield_basis(F, dh);
  std::vector<Elem> hs;
  std::vector<Residue> digits(dh, 0);
  for (std::uint64_t k = 0; k < sub_card; ++k) {
    Elem a(F);
    for (unsigned i = 0; i < dh; ++i)
      if (digits[i]) a += sub[i].scaled(digits[i]);
    if (!a.is_zero() && h_multiplier(RF, a)) hs.push_back(a);
    for (unsigned i = 0; i < dh; ++i) {
      if (++digits[i] < C.p) break;
      digits[i] = 0;
    }
  }
  if (hs.size() != h_order_formula(C)) return check("semidirect", false, "H size differs from formula");

  std::size_t tested = 0;
  for (const auto& a : hs) {
    const Residue d = *h_multiplier(RF, a);
    const Elem dF = Elem::from_int(F, d);
    const Elem a_inv = inv(a);
    for (const auto& c : WF) {
      const BPoly bp = b_poly(C, c);
      const Elem c2 = a * c;
      // Conjugate h s h^-1 of s = sigma_{b,c} by h = sigma_{a,0,0,d}.
      const LinPoly B2 = dF * scale_argument(bp.B, a_inv);
      BPoly bp2;
      try {
        bp2 = b_poly(C, c2);
      } catch (const NotInKernel&) {
        return check("semidirect", false, "a c left W");
      }
      if (!(bp2.B == B2)) return check("semidirect", false, "B_{ac}(X) != d B_c(X/a)");
      if (!(dF * bp.b_canonical - bp2.b_canonical).as_prime())
        return check("semidirect", false, "conjugate has b outside B_c(c)/2 + F_p");
      ++tested;
    }
  }
  return check("semidirect", tested > 0,
               std::to_string(hs.size()) + " elements of H against " + std::to_string(WF.size()) + " generators");
}

std::optional<std::string> special_automorphism_flag(const Curve& C) {
  if (C.h > 1 || !C.R.leading().is_one()) return std::nullopt;
  for (unsigned i = 0; i < C.h; ++i)
    if (!C.R.coeff(i).is_zero()) return std::nullopt;
  if (C.h == 0) return std::string("R = X: the full automorphism group is SL_2(p), larger than the stabilizer of infinity");
  return std::string("R = X^p: the full automorphism group is PGU_3(p), larger than the stabilizer of infinity");
}

// ---------------------------------------------------------------- symplectic structure

SymplecticBasis symplectic_basis(const Curve& C) {
  SymplecticBasis out;
  if (C.h == 0) return out;
  const std::uint32_t p = C.p;
  const FpMatrix omega = epsilon_gram(C, C.W);
  const auto n = static_cast<Eigen::Index>(C.W.size());
  auto eps = [&](const FpVector& u, const FpVector& v) -> std::int64_t {
    return fp_reduce((u.transpose() * omega * v).eval(), p)(0, 0);
  };
  std::vector<FpVector> pool;
  for (Eigen::Index k = 0; k < n; ++k) pool.push_back(FpVector::Unit(n, k));
  auto to_elem = [&](const FpVector& v) {
    Elem e(C.splitting_field);
    for (Eigen::Index k = 0; k < n; ++k)
      if (v(k) != 0) e += C.W[static_cast<std::size_t>(k)].scaled(v(k));
    return e;
  };
  while (!pool.empty()) {
    const FpVector u = pool.front();
    std::size_t j = 1;
    while (j < pool.size() && eps(u, pool[j]) == 0) ++j;
    if (j == pool.size()) throw InvariantViolation("eps is degenerate on W");
    const std::int64_t scale = inv_mod_p(static_cast<Residue>(eps(u, pool[j])), p);
    const FpVector v = fp_reduce((pool[j] * scale).eval(), p);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
    pool.erase(pool.begin());
    for (auto& w : pool) {
      // Project onto the eps-complement of <u, v>, where eps(u, v) = 1.
      const std::int64_t wv = eps(w, v), wu = eps(w, u);
      w = fp_reduce((w - wv * u + wu * v).eval(), p);
    }
    out.c.push_back(to_elem(u));
    out.cprime.push_back(to_elem(v));
  }
  std::vector<Elem> all = out.c;
  all.insert(all.end(), out.cprime.begin(), out.cprime.end());
  const FpMatrix g = epsilon_gram(C, all);
  const auto h = static_cast<Eigen::Index>(C.h);
  FpMatrix expected = FpMatrix::Zero(2 * h, 2 * h);
  for (Eigen::Index i = 0; i < h; ++i) {
    expected(i, h + i) = 1;
    expected(h + i, i) = p - 1;
  }
  if (g != expected) throw InvariantViolation("symplectic basis has the wrong Gram matrix");
  return out;
}

IsotropicDecomposition isotropic_decomposition(const GroupP& P, const SymplecticBasis& basis) {
  IsotropicDecomposition out;
  const Curve& C = P.curve();
  const unsigned h = static_cast<unsigned>(basis.c.size());
  if (h == 0) return out;
  const std::uint32_t p = C.p;

  std::vector<AutElem> sig;
  for (const auto& c : basis.c) sig.push_back(make_p_element(C, c, 0));
  std::vector<AutElem> Ap{rho_power(C.splitting_field, 0)};
  for (const auto& s : sig) {
    std::vector<AutElem> next;
    for (const auto& x : Ap) {
      AutElem y = x;
      for (Residue k = 0; k < p; ++k) {
        next.push_back(y);
        y = compose(y, s);
      }
    }
    Ap = std::move(next);
  }
  Elem csum(C.splitting_field);
  for (const auto& c : basis.cprime) csum += c;
  const AutElem tau = make_p_element(C, csum, 0);
  const AutElem tau_inv = inverse(tau);

  std::vector<std::set<std::uint64_t>> parts(p);
  std::vector<AutElem> cur = Ap;
  for (Residue j = 0; j < p; ++j) {
    // parts[j] holds tau^j A_p tau^-j; j = 0 is A_p itself and is listed last.
    for (const auto& x : cur) parts[j].insert(P.id_of(x));
    for (auto& x : cur) x = compose(compose(tau, x), tau_inv);
  }
  std::set<std::uint64_t> calA;
  for (Residue k = 0; k < p; ++k)
    for (const auto& x : Ap) calA.insert(P.id_of(compose(rho_power(C.splitting_field, k), x)));
  out.cal_A.assign(calA.begin(), calA.end());
  for (Residue j = 1; j < p; ++j) out.parts.emplace_back(parts[j].begin(), parts[j].end());
  out.parts.emplace_back(parts[0].begin(), parts[0].end());

  const std::uint64_t ph = ipow64(p, h);
  bool sizes = calA.size() == ph * p;
  bool meets_centre = true, disjoint = true;
  std::set<std::uint64_t> uni;
  for (Residue k = 0; k < p; ++k) uni.insert(k);  // Z(P) = {rho^k}, ids 0..p-1
  for (std::size_t j = 0; j < parts.size(); ++j) {
    sizes = sizes && parts[j].size() == ph;
    for (auto id : parts[j]) {
      if (id < p && id != 0) meets_centre = false;
      uni.insert(id);
    }
    for (std::size_t k = j + 1; k < parts.size(); ++k) {
      std::vector<std::uint64_t> both;
      std::set_intersection(parts[j].begin(), parts[j].end(), parts[k].begin(), parts[k].end(),
                            std::back_inserter(both));
      if (both != std::vector<std::uint64_t>{0}) disjoint = false;
    }
  }
  bool abelian = true;
  for (const auto& x : sig)
    for (const auto& y : sig)
      if (commutator_exponent(x, y) != 0) abelian = false;
  bool conj = true;
  for (const auto& s : sig) {
    const AutElem lhs = compose(compose(tau, s), tau_inv);
    const AutElem rhs = compose(rho_power(C.splitting_field, p - 1), s);
    if (!same_element(lhs, rhs)) conj = false;
  }
  out.checks.push_back(check("part_sizes", sizes, "|A_i| = " + std::to_string(ph)));
  out.checks.push_back(check("parts_meet_centre_trivially", meets_centre));
  // For h >= 2 two subgroups of order p^h inside |A| = p^{h+1} always share a
  // subgroup of order p^{h-1}, so only h = 1 can give a partition.
  const std::string overlap_note = h >= 2 ? "no partition exists for h >= 2" : "";
  out.checks.push_back(check("parts_pairwise_trivial", disjoint, overlap_note));
  out.checks.push_back(check("partition_covers_maximal_abelian",
                             std::set<std::uint64_t>(out.cal_A.begin(), out.cal_A.end()) == uni,
                             "|A| = " + std::to_string(calA.size()) + (h >= 2 ? "; " + overlap_note : "")));
  out.checks.push_back(check("maximal_abelian_is_abelian", abelian));
  out.checks.push_back(check("tau_conjugation", conj, "tau sigma_i tau^-1 = rho^-1 sigma_i"));
  return out;
}

}  // namespace aszeta
