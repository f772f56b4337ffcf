#include "properties.hpp"

#include <sstream>

#include "aszeta/zeta.hpp"
#include "gen.hpp"
#include "oracles.hpp"

namespace aszeta::testing {

namespace {

constexpr std::uint64_t kNaiveLimit = 20000;

class Recorder {
 public:
  explicit Recorder(std::string name) { r_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    ++r_.cases;
    if (ok) return;
    if (r_.failures++ == 0) r_.first_failure = what;
  }

  PropertyResult done() { return std::move(r_); }

 private:
  PropertyResult r_;
};

std::string label(const Curve& C) {
  std::ostringstream os;
  os << "p=" << C.p << " r=" << C.r() << " R=" << C.R;
  return os.str();
}

Elem random_w(Gen& g, const Curve& C) {
  Elem c(C.splitting_field);
  for (const Elem& w : C.W) c += w.scaled(static_cast<std::int64_t>(g.below(C.p)));
  return c;
}

std::vector<Elem> power_basis(const FieldPtr& F) {
  std::vector<Elem> out;
  for (unsigned i = 0; i < F->degree(); ++i) {
    Elem e(F);
    e.mutable_coeffs()[i] = 1;
    out.push_back(e);
  }
  return out;
}

void check_shape(Recorder& rec, const std::vector<BigInt>& coeffs, std::uint32_t p, unsigned s, std::uint64_t g,
                 const std::string& what) {
  rec.check(check_functional_equation(coeffs, p, s), what + ": functional equation");
  rec.check(roots_on_weil_circle(coeffs, p, s), what + ": roots on the Weil circle");
  rec.check(is_supersingular(coeffs, p, s), what + ": Newton slopes");
  rec.check(coeffs.size() == 2 * g + 1, what + ": degree 2g");
}

}  // namespace

PropertyResult prop_quadric_nondegenerate(std::uint64_t seed, std::size_t curves) {
  Recorder rec("quadric_nondegenerate");
  Gen g(seed);
  for (std::size_t k = 0; k < curves; ++k) {
    const Curve C = g.curve();
    for (unsigned s = C.r(); s <= 2 * C.q_degree && s <= 16; s += C.r()) {
      const QuadricCount qc = count_points_quadric(C, s);
      const std::string what = label(C) + " s=" + std::to_string(s);
      rec.check(qc.gram_rank == static_cast<Eigen::Index>(qc.n) && qc.n + qc.w == s, what + ": rank = n");
      // Rank of the full Gram matrix on F_{p^s} is s - dim W(F_{p^s}).
      const FieldPtr F = make_field(C.p, s);
      const Eigen::Index full = fp_rank(quadric_gram(C, power_basis(F)), C.p);
      rec.check(full == static_cast<Eigen::Index>(qc.n), what + ": full Gram rank");
      if (ipow(C.p, s) <= kNaiveLimit) {
        rec.check(naive_kernel_size(C.E, F) == ipow(C.p, qc.w), what + ": dim W by enumeration");
        rec.check(qc.N == naive_count(C, s), what + ": quadric count vs naive count");
      }
    }
  }
  return rec.done();
}

PropertyResult prop_b_invariants(std::uint64_t seed, std::size_t curves) {
  Recorder rec("b_invariants");
  Gen g(seed);
  for (std::size_t k = 0; k < curves; ++k) {
    const Curve C = g.curve();
    const FieldPtr Fq = C.splitting_field;
    for (int trial = 0; trial < 4; ++trial) {
      const Elem c1 = random_w(g, C), c2 = random_w(g, C);
      const std::string what = label(C) + " c=" + to_string(c1);
      const BPoly b1 = b_poly(C, c1);
      const Elem Rc = naive_eval(C.R, c1);
      rec.check(lp_pth_power(b1.B) - b1.B == c1 * C.R_q + LinPoly::monomial(Rc, 0), what + ": B^p - B");
      if (C.h >= 1)
        rec.check(pow(b1.B.coeff(C.h - 1), C.p) == c1 * C.R_q.coeff(C.h), what + ": leading b_{h-1}^p = c a_h");
      rec.check(pow(b1.b_canonical, C.p) - b1.b_canonical == c1 * Rc, what + ": b^p - b = cR(c)");
      rec.check(b_poly(C, c1 + c2).B == b1.B + b_poly(C, c2).B, what + ": additive in c");
      rec.check(trace_to_prime(c1 * Rc) == 0, what + ": Tr(cR(c)) = 0");
      rec.check(b_residual(C, c1).is_zero(), what + ": zero residual on W");
    }
    // Off W the recursion does not close.
    const auto card = Fq->cardinality();
    if (card && *card > ipow(C.p, C.W.size())) {
      for (int trial = 0; trial < 4; ++trial) {
        const Elem x = g.elem(Fq);
        if (!naive_eval(C.E_q, x).is_zero())
          rec.check(!b_residual(C, x).is_zero(), label(C) + " x=" + to_string(x) + ": residual off W");
      }
    }
  }
  return rec.done();
}

PropertyResult prop_lpoly_shape(std::uint64_t seed, std::size_t curves) {
  Recorder rec("lpoly_shape");
  Gen g(seed);
  for (std::size_t k = 0; k < curves; ++k) {
    const Curve C = g.curve();
    for (unsigned m = 1; m <= 2; ++m) {
      const unsigned s = m * C.q_degree;
      const LResult lr = l_polynomial(C, s);
      const std::vector<BigInt> closed = lr.L.coefficients();
      check_shape(rec, closed, C.p, s, C.genus, label(C) + " closed form s=" + std::to_string(s));
      for (unsigned n = 1; n <= 2 * C.genus && n <= 8; ++n) {
        const BigInt S = power_sum(lr.L, n);
        rec.check(S * S <= BigInt(4) * C.genus * C.genus * ipow(C.p, s * n),
                  label(C) + ": |S_n| <= 2g p^{sn/2}");
      }
      if (s * C.genus <= 24) {
        const Reconstruction r = reconstruct_lpoly(C, s, kNaiveLimit);
        check_shape(rec, r.coefficients, C.p, s, C.genus, label(C) + " from counts s=" + std::to_string(s));
        rec.check(r.coefficients == closed, label(C) + ": counts reproduce the closed form");
      }
    }
  }
  return rec.done();
}

PropertyResult prop_newton_roundtrip(std::uint64_t seed, std::size_t cases) {
  Recorder rec("newton_roundtrip");
  Gen g(seed);
  for (std::size_t k = 0; k < cases; ++k) {
    const std::uint32_t p = g.pick(std::vector<std::uint32_t>{3, 5, 7, 11, 13});
    const unsigned s = 1 + static_cast<unsigned>(g.below(8));
    // Genera of the family: p^h (p - 1)/2, even when p = 1 mod 4.
    const std::uint64_t genus = (p <= 5 && g.coin() ? p : 1) * (p - 1) / 2;
    const LPoly L = l_polynomial_table(p, s, genus, g.coin());
    std::vector<BigInt> counts;
    for (unsigned n = 1; n <= genus; ++n) counts.push_back(predicted_count(L, n));
    const std::vector<BigInt> back = lpoly_from_counts(counts, p, s, genus);
    rec.check(back == L.coefficients(), "p=" + std::to_string(p) + " s=" + std::to_string(s) + " g=" +
                                            std::to_string(genus) + " " + L.to_string());
    check_shape(rec, back, p, s, genus, L.to_string());
  }
  return rec.done();
}

std::vector<PropertyResult> run_property_suites(std::uint64_t seed, std::size_t curves) {
  return {prop_quadric_nondegenerate(seed, curves), prop_b_invariants(seed + 1, curves),
          prop_lpoly_shape(seed + 2, curves), prop_newton_roundtrip(seed + 3, 4 * curves)};
}

std::string describe(const PropertyResult& r) {
  std::ostringstream os;
  os << r.name << ": " << r.cases << " cases, " << r.failures << " failures";
  if (r.failures) os << " (first: " << r.first_failure << ")";
  return os.str();
}

}  // namespace aszeta::testing
