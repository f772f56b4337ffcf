#include "aszeta/curve.hpp"

#include <algorithm>
#include <thread>

namespace aszeta {

namespace {

std::uint64_t checked_genus(std::uint32_t p, unsigned h) {
  std::uint64_t ph = 1;
  for (unsigned i = 0; i < h; ++i) {
    if (ph > (1ull << 62) / p) throw DomainError("genus does not fit in 64 bits");
    ph *= p;
  }
  return ph * ((p - 1) / 2);
}

Elem half(const Elem& x) { return x * inv(Elem::from_int(x.field_ptr(), 2)); }

FpMatrix coordinate_matrix(const std::vector<Elem>& vs, unsigned m) {
  FpMatrix a(m, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (unsigned i = 0; i < m; ++i) a(i, static_cast<Eigen::Index>(j)) = vs[j].coeffs()[i];
  return a;
}

LinPoly embedded_R(const Curve& C, const FieldPtr& F) {
  if (F == C.splitting_field) return C.R_q;
  return lp_embed(C.R, F);
}

}  // namespace

Curve make_curve(const LinPoly& R, unsigned splitting_cap) {
  if (!R.field()) throw DomainError("curve polynomial has no coefficient field");
  if (R.is_zero()) throw DomainError("R must be a nonzero additive polynomial");
  Curve C;
  C.p = R.field()->p();
  C.base = R.field();
  C.R = R;
  C.h = static_cast<unsigned>(R.h());
  C.genus = checked_genus(C.p, C.h);
  C.E = build_E(R);
  C.q_degree = splitting_degree(C.E, splitting_cap);
  C.splitting_field = make_field(C.p, C.q_degree);
  C.R_q = lp_embed(R, C.splitting_field);
  C.E_q = lp_embed(C.E, C.splitting_field);
  C.W = lp_kernel(C.E_q, C.splitting_field);
  if (C.W.size() != 2 * C.h)
    throw InvariantViolation("dim W = " + std::to_string(C.W.size()) + " but 2h = " + std::to_string(2 * C.h));
  return C;
}

Curve make_curve(std::uint32_t p, unsigned r, const std::vector<std::vector<std::int64_t>>& coeffs) {
  if (p == 2) throw DomainError("characteristic 2 is not supported");
  const FieldPtr F = make_field(p, r);
  std::vector<Elem> cs;
  cs.reserve(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto& v = coeffs[i];
    if (v.size() == 1) {
      cs.push_back(Elem::from_int(F, v[0]));
    } else if (v.size() == r) {
      std::vector<Residue> c(r);
      for (unsigned k = 0; k < r; ++k) c[k] = mod_p(v[k], p);
      cs.emplace_back(F, std::move(c));
    } else {
      throw DomainError("coefficient " + std::to_string(i) + " has length " + std::to_string(v.size()) +
                        ", expected 1 or " + std::to_string(r));
    }
  }
  return make_curve(LinPoly(F, std::move(cs)));
}

std::vector<Elem> w_space(const Curve& C, unsigned s) {
  if (s == 0 || s % C.r() != 0)
    throw DomainError("W(F_p^s) needs r | s (r = " + std::to_string(C.r()) + ", s = " + std::to_string(s) + ")");
  const FieldPtr F = make_field(C.p, s);
  const LinPoly RF = embedded_R(C, F);
  const std::uint32_t p = C.p;

  std::vector<Elem> basis, images;
  for (unsigned j = 0; j < s; ++j) {
    Elem e(F);
    e.mutable_coeffs()[j] = 1;
    images.push_back(lp_eval(RF, e));
    basis.push_back(std::move(e));
  }
  FpMatrix gram(s, s);
  for (unsigned i = 0; i < s; ++i)
    for (unsigned j = 0; j < s; ++j)
      gram(i, j) = trace_to_prime(basis[i] * images[j] + basis[j] * images[i]);
  const FpMatrix radical = fp_linear_kernel(gram, p);

  const std::vector<Elem> kerE = lp_kernel(lp_embed(C.E, F), F);
  const FpMatrix K = coordinate_matrix(kerE, s);
  FpMatrix both(s, radical.cols() + K.cols());
  both << radical, K;
  const Eigen::Index rk = fp_rank(both, p);
  if (radical.cols() != K.cols() || rk != K.cols())
    throw InvariantViolation("bilinear radical and ker E disagree on F_p^" + std::to_string(s));
  return kerE;
}

Elem b_residual(const Curve& C, const Elem& c, const Elem* b0_shift) {
  const LinPoly RF = embedded_R(C, c.field_ptr());
  const Elem Rc = lp_eval(RF, c);
  const Elem shift = b0_shift ? *b0_shift : Elem(c.field_ptr());
  if (C.h == 0) return c * RF.coeff(0) + Rc + shift;
  Elem b = -(c * RF.coeff(0)) - Rc + shift;
  for (unsigned i = 1; i < C.h; ++i) b = frobenius(b, 1) - c * RF.coeff(i);
  return frobenius(b, 1) - c * RF.coeff(C.h);
}

BPoly b_poly(const Curve& C, const Elem& c) {
  const FieldPtr F = c.field_ptr();
  const LinPoly RF = embedded_R(C, F);
  const Elem Rc = lp_eval(RF, c);
  if (C.h == 0) {
    const Elem eps = c * RF.coeff(0) + Rc;
    if (!eps.is_zero()) throw NotInKernel("c is not in W (h = 0 forces c = 0)", to_string(eps));
    return BPoly{c, LinPoly(F), Elem(F)};
  }
  std::vector<Elem> b;
  b.reserve(C.h);
  b.push_back(-(c * RF.coeff(0)) - Rc);
  for (unsigned i = 1; i < C.h; ++i) b.push_back(frobenius(b.back(), 1) - c * RF.coeff(i));
  const Elem eps = frobenius(b.back(), 1) - c * RF.coeff(C.h);
  if (!eps.is_zero()) throw NotInKernel("c is not in W: b_{h-1}^p != c a_h", to_string(eps));
  LinPoly B(F, std::move(b));
  Elem bc = half(lp_eval(B, c));
  return BPoly{c, std::move(B), std::move(bc)};
}

std::uint64_t count_points_oracle(const Curve& C, unsigned s, std::uint64_t budget, unsigned jobs) {
  if (s == 0 || s % C.r() != 0) throw DomainError("point count needs r | s");
  const FieldPtr F = make_field(C.p, s);
  const auto card = F->cardinality();
  if (!card || *card > budget)
    throw ResourceError("p^s = " + (card ? std::to_string(*card) : std::string("> 2^64")) +
                            " exceeds enumeration budget " + std::to_string(budget),
                        card.value_or(UINT64_MAX));
  const LinPoly RF = embedded_R(C, F);
  const Field& field = *F;
  const unsigned m = F->degree();
  std::vector<std::vector<Residue>> coef;
  for (const auto& a : RF.coeffs()) coef.emplace_back(a.coeffs().begin(), a.coeffs().end());

  auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<Residue> pw(m), tmp(m), acc(m), prod(m);
    std::uint64_t hits = 0;
    for_each_element(field, begin, end, [&](std::span<const Residue> x) {
      std::fill(acc.begin(), acc.end(), 0);
      std::copy(x.begin(), x.end(), pw.begin());
      for (std::size_t i = 0; i < coef.size(); ++i) {
        if (i > 0) {
          field.frobenius(pw, tmp);
          pw.swap(tmp);
        }
        field.mul(coef[i], pw, prod);
        field.add(acc, prod, acc);
      }
      field.mul(x, acc, prod);
      if (field.trace(prod) == 0) ++hits;
    });
    return hits;
  };

  const std::uint64_t total = *card;
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 256))));
  std::uint64_t hits = 0;
  if (jobs == 1) {
    hits = count_range(0, total);
  } else {
    std::vector<std::uint64_t> partial(jobs, 0);
    std::vector<std::thread> workers;
    const std::uint64_t chunk = (total + jobs - 1) / jobs;
    for (unsigned t = 0; t < jobs; ++t) {
      const std::uint64_t lo = std::min(total, t * chunk), hi = std::min(total, lo + chunk);
      workers.emplace_back([&, t, lo, hi] { partial[t] = count_range(lo, hi); });
    }
    for (auto& w : workers) w.join();
    for (auto v : partial) hits += v;
  }
  return 1 + static_cast<std::uint64_t>(C.p) * hits;
}

FpMatrix quadric_gram(const Curve& C, const std::vector<Elem>& vectors) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  FpMatrix g(n, n);
  if (n == 0) return g;
  const LinPoly RF = embedded_R(C, vectors[0].field_ptr());
  std::vector<Elem> images;
  for (const auto& v : vectors) images.push_back(lp_eval(RF, v));
  const std::int64_t inv2 = inv_mod_p(2, C.p);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l) {
      const auto t = trace_to_prime(vectors[k] * images[l] + vectors[l] * images[k]);
      g(k, l) = static_cast<std::int64_t>(t) * inv2 % C.p;
    }
  return g;
}

QuadricCount count_points_quadric(const Curve& C, unsigned s) {
  const std::uint32_t p = C.p;
  const std::vector<Elem> Ws = w_space(C, s);
  const FieldPtr F = make_field(p, s);
  QuadricCount out;
  out.w = static_cast<unsigned>(Ws.size());
  out.n = s - out.w;

  const auto added = fp_complete_basis(coordinate_matrix(Ws, s), p);
  if (added.size() != out.n) throw InvariantViolation("basis completion of W(F_p^s) failed");
  std::vector<Elem> reps;
  for (auto j : added) {
    Elem e(F);
    e.mutable_coeffs()[static_cast<std::size_t>(j)] = 1;
    reps.push_back(std::move(e));
  }
  const FpMatrix gram = quadric_gram(C, reps);
  out.gram_rank = fp_rank(gram, p);
  if (out.gram_rank != static_cast<Eigen::Index>(out.n))
    throw InvariantViolation("quadric on V_s is degenerate (rank " + std::to_string(out.gram_rank) + " < " +
                             std::to_string(out.n) + ")");
  out.diagonal = diagonalize_form(gram, p);

  BigInt N0;
  const unsigned n = out.n;
  if (n == 0) {
    N0 = 1;
  } else if (n % 2 == 1) {
    N0 = ipow(p, n - 1);
  } else {
    std::int64_t disc = (n / 2) % 2 == 0 ? 1 : p - 1;
    for (auto d : out.diagonal) disc = disc * d % p;
    out.sign = pow_mod_p(static_cast<Residue>(disc), (p - 1) / 2, p) == 1 ? 1 : -1;
    const BigInt delta = ipow(p, n / 2) - ipow(p, n / 2 - 1);
    N0 = ipow(p, n - 1) + (out.sign > 0 ? delta : BigInt(-delta));
  }
  out.N = ipow(p, out.w + 1) * N0 + 1;
  return out;
}

std::optional<Elem> solve_artin_schreier(const Elem& t) {
  const FieldPtr F = t.field_ptr();
  const unsigned m = F->degree();
  FpMatrix a(m, m);
  for (unsigned j = 0; j < m; ++j) {
    Elem e(F);
    e.mutable_coeffs()[j] = 1;
    const Elem img = frobenius(e, 1) - e;
    for (unsigned i = 0; i < m; ++i) a(i, j) = img.coeffs()[i];
  }
  FpVector rhs(m);
  for (unsigned i = 0; i < m; ++i) rhs(i) = t.coeffs()[i];
  const auto sol = fp_solve(a, rhs, F->p());
  if (!sol) return std::nullopt;
  std::vector<Residue> c(m);
  for (unsigned i = 0; i < m; ++i) c[i] = static_cast<Residue>((*sol)(i));
  return Elem(F, std::move(c));
}

bool on_curve(const Curve& C, const Point& pt) {
  if (&pt.x.field() != &pt.y.field()) throw FieldMismatch("point coordinates in different fields");
  const LinPoly RF = embedded_R(C, pt.x.field_ptr());
  return frobenius(pt.y, 1) - pt.y == pt.x * lp_eval(RF, pt.x);
}

std::vector<Point> sample_points(const Curve& C, const FieldPtr& field, std::size_t count) {
  const LinPoly RF = embedded_R(C, field);
  const std::uint64_t limit = field->cardinality().value_or(UINT64_MAX);
  std::vector<Point> out;
  for (std::uint64_t k = 0; k < limit && out.size() < count; ++k) {
    Elem x = Elem::from_index(field, k);
    const Elem t = x * lp_eval(RF, x);
    if (trace_to_prime(t) != 0) continue;
    auto y = solve_artin_schreier(t);
    if (!y) throw InvariantViolation("trace-zero element without Artin-Schreier root");
    out.push_back(Point{std::move(x), std::move(*y)});
  }
  return out;
}

bool within_hasse_weil(const BigInt& N, std::uint32_t p, unsigned s, std::uint64_t genus) {
  const BigInt dev = N - ipow(p, s) - 1;
  const BigInt g = genus;
  return dev * dev <= 4 * g * g * ipow(p, s);
}

}  // namespace aszeta
