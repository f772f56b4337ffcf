#include "aszeta/zeta.hpp"

#include <sstream>

namespace aszeta {

namespace {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

unsigned valuation(BigInt v, std::uint32_t p) {
  unsigned k = 0;
  while (v != 0 && v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

Elem half(const Elem& x) { return x * inv(Elem::from_int(x.field_ptr(), 2)); }

}  // namespace

// ---------------------------------------------------------------- LPoly

std::vector<BigInt> LPoly::coefficients() const {
  std::vector<BigInt> c(2 * g + 1, 0);
  if (form == LForm::Linear) {
    const BigInt root = BigInt(sign) * ipow(p, s / 2);
    BigInt pw = 1;
    for (std::uint64_t k = 0; k <= 2 * g; ++k) {
      c[k] = binomial(2 * g, k) * pw;
      pw *= root;
    }
  } else {
    const BigInt root = BigInt(sign) * ipow(p, s);
    BigInt pw = 1;
    for (std::uint64_t k = 0; k <= g; ++k) {
      c[2 * k] = binomial(g, k) * pw;
      pw *= root;
    }
  }
  return c;
}

std::string LPoly::to_string() const {
  std::ostringstream os;
  const char op = sign > 0 ? '+' : '-';
  if (form == LForm::Linear)
    os << "(1 " << op << " " << p << "^" << s / 2 << " T)^" << 2 * g;
  else
    os << "(1 " << op << " " << p << "^" << s << " T^2)^" << g;
  return os.str();
}

BigInt power_sum(const LPoly& L, unsigned n) {
  const BigInt two_g = BigInt(2) * L.g;
  if (L.form == LForm::Linear) {
    // Every reciprocal root is -sign p^{s/2}.
    BigInt v = two_g * ipow(L.p, static_cast<std::uint64_t>(L.s / 2) * n);
    return (L.sign > 0 && n % 2 == 1) ? BigInt(-v) : v;
  }
  // Roots come in pairs +-sqrt(-sign p^s).
  if (n % 2 == 1) return 0;
  BigInt v = two_g * ipow(L.p, static_cast<std::uint64_t>(L.s) * (n / 2));
  return (L.sign > 0 && (n / 2) % 2 == 1) ? BigInt(-v) : v;
}

BigInt predicted_count(const LPoly& L, unsigned n) {
  if (n == 0) throw DomainError("extension index must be at least 1");
  return 1 + ipow(L.p, static_cast<std::uint64_t>(L.s) * n) - power_sum(L, n);
}

std::optional<LPoly> identify_form(const std::vector<BigInt>& coeffs, std::uint32_t p, unsigned s) {
  if (coeffs.empty() || coeffs.size() % 2 == 0) return std::nullopt;
  const std::uint64_t g = (coeffs.size() - 1) / 2;
  std::vector<LPoly> candidates;
  for (int sign : {1, -1}) {
    if (s % 2 == 0) candidates.push_back(LPoly{LForm::Linear, sign, p, s, g});
    candidates.push_back(LPoly{LForm::Quadratic, sign, p, s, g});
  }
  for (const auto& L : candidates)
    if (L.coefficients() == coeffs) return L;
  return std::nullopt;
}

bool check_functional_equation(const std::vector<BigInt>& coeffs, std::uint32_t p, unsigned s) {
  if (coeffs.empty() || coeffs.size() % 2 == 0 || coeffs[0] != 1) return false;
  const std::size_t g = (coeffs.size() - 1) / 2;
  for (std::size_t k = 0; k <= g; ++k)
    if (coeffs[2 * g - k] != ipow(p, static_cast<std::uint64_t>(s) * (g - k)) * coeffs[k]) return false;
  return true;
}

bool is_supersingular(const std::vector<BigInt>& coeffs, std::uint32_t p, unsigned s) {
  if (coeffs.empty() || coeffs[0] != 1 || coeffs.size() % 2 == 0) return false;
  const std::size_t n = coeffs.size() - 1;
  if (coeffs[n] == 0 || 2 * valuation(coeffs[n], p) != n * s) return false;
  for (std::size_t k = 1; k < n; ++k)
    if (coeffs[k] != 0 && 2 * static_cast<std::uint64_t>(valuation(coeffs[k], p)) < k * s) return false;
  return true;
}

bool is_supersingular(const LPoly& L) { return is_supersingular(L.coefficients(), L.p, L.s); }

bool roots_on_weil_circle(const std::vector<BigInt>& coeffs, std::uint32_t p, unsigned s) {
  return identify_form(coeffs, p, s).has_value();
}

std::vector<BigInt> lpoly_from_counts(const std::vector<BigInt>& counts, std::uint32_t p, unsigned s,
                                      std::uint64_t g) {
  if (counts.size() < g) throw DomainError("need counts N_1..N_g");
  std::vector<BigInt> S(g + 1, 0), e(g + 1, 0);
  for (std::uint64_t n = 1; n <= g; ++n) S[n] = 1 + ipow(p, static_cast<std::uint64_t>(s) * n) - counts[n - 1];
  e[0] = 1;
  for (std::uint64_t k = 1; k <= g; ++k) {
    BigInt acc = 0;
    for (std::uint64_t i = 1; i <= k; ++i) acc += (i % 2 == 1 ? 1 : -1) * e[k - i] * S[i];
    if (acc % k != 0) throw InvariantViolation("Newton identity division is not exact at k = " + std::to_string(k));
    e[k] = acc / k;
  }
  std::vector<BigInt> c(2 * g + 1, 0);
  for (std::uint64_t k = 0; k <= g; ++k) c[k] = (k % 2 == 0) ? e[k] : BigInt(-e[k]);
  for (std::uint64_t k = 0; k < g; ++k) c[2 * g - k] = ipow(p, static_cast<std::uint64_t>(s) * (g - k)) * c[k];
  return c;
}

Reconstruction reconstruct_lpoly(const Curve& C, unsigned s, std::uint64_t budget, unsigned jobs,
                                 bool allow_quadric) {
  if (s == 0 || s % C.r() != 0) throw DomainError("reconstruction needs r | s");
  Reconstruction out;
  for (std::uint64_t n = 1; n <= C.genus; ++n) {
    const std::uint64_t sn = s * n;
    if (sn > kMaxExtensionDegree) throw ResourceError("extension degree above the supported maximum", sn);
    if (ipow(C.p, sn) <= budget) {
      out.counts.emplace_back(count_points_oracle(C, static_cast<unsigned>(sn), budget, jobs));
      out.sources.emplace_back("oracle");
    } else if (allow_quadric) {
      out.counts.push_back(count_points_quadric(C, static_cast<unsigned>(sn)).N);
      out.sources.emplace_back("quadric");
    } else {
      throw ResourceError("oracle count over F_{p^" + std::to_string(sn) + "} exceeds budget",
                          static_cast<std::uint64_t>(ipow(C.p, sn) > BigInt(UINT64_MAX) ? UINT64_MAX
                                                                                         : ipow(C.p, sn)));
    }
  }
  out.coefficients = lpoly_from_counts(out.counts, C.p, s, C.genus);
  return out;
}

// ---------------------------------------------------------------- twists

std::string to_string(SquareClass c) {
  switch (c) {
    case SquareClass::Square: return "square";
    case SquareClass::Nonsquare: return "nonsquare";
    case SquareClass::Single: return "single";
  }
  return "?";
}

TwistClass twist_class(const Elem& e) {
  if (e.is_zero()) throw DomainError("twist constant must be nonzero");
  if (e.field().degree() % 2 == 1) return TwistClass{e, SquareClass::Single};
  return TwistClass{e, is_square(e) ? SquareClass::Square : SquareClass::Nonsquare};
}

bool twist_equivalent(const Elem& e1, const Elem& e2) {
  if (e1.is_zero() || e2.is_zero()) throw DomainError("twist constants must be nonzero");
  if (&e1.field() != &e2.field()) throw FieldMismatch("twist constants over different fields");
  const Elem ratio = e1 / e2;
  for (std::uint32_t v = 1; v < e1.p(); ++v)
    if (is_square(ratio * inv(Elem::from_int(ratio.field_ptr(), v)))) return true;
  return false;
}

// ---------------------------------------------------------------- quotients

QuotientStep quotient_step(const Curve& C, const Elem& c, std::uint64_t budget, std::size_t sample_count) {
  if (C.h == 0) throw DomainError("quotient step needs h >= 1");
  if (c.is_zero()) throw DomainError("quotient step needs c != 0");
  const FieldPtr F = c.field_ptr();
  const std::uint32_t p = C.p;
  const BPoly bp = b_poly(C, c);

  QuotientStep out;
  out.c = c;
  const Elem c_pm1 = pow(c, p - 1);
  out.U = LinPoly(F, {-c_pm1, Elem::one(F)});
  const Elem Bc = lp_eval(bp.B, c);
  out.gamma = -Bc * inv((c * c).scaled(2));

  const Elem inv_cp = inv(c_pm1 * c);
  out.Theta = inv_cp * lp_pth_power(bp.B) - LinPoly::monomial(frobenius(Bc, 1) * inv_cp * inv(c), 0);
  out.theta_vanishes_at_c = lp_eval(out.Theta, c).is_zero();
  try {
    out.theta = lp_left_decompose(out.Theta, out.U);
  } catch (const DivisibilityError& e) {
    throw InvariantViolation(std::string("Theta is not divisible by U: ") + e.what());
  }
  const LinPoly Rt = out.theta + LinPoly::monomial(frobenius(out.gamma, 1), 0);
  out.quotient = make_curve(Rt);

  Elem expected = embed(C.R.leading(), F) * inv(c_pm1);
  if (C.h == 1) expected = half(expected);
  out.leading_ok = Rt.h() == static_cast<int>(C.h) - 1 && Rt.leading() == expected;
  out.genus_ok = out.quotient.genus * p == C.genus;

  const AutElem sigma = make_p_element(C, c, 0);
  const Elem inv_c = inv(c);
  auto image = [&](const Point& pt) {
    const Elem v = -pt.y + out.gamma * pt.x * pt.x + pt.x * inv_c * lp_eval(bp.B, pt.x);
    return Point{lp_eval(out.U, pt.x), v};
  };
  const auto pts = sample_points(C, F, sample_count);
  out.sample_points = pts.size();
  out.points_ok = !pts.empty();
  for (const auto& pt : pts) {
    const Point q = image(pt);
    const Point q2 = image(apply_aut(C, sigma, pt));
    if (!(q.x == q2.x && q.y == q2.y) || !on_curve(out.quotient, q)) out.points_ok = false;
  }

  const unsigned s = out.quotient.r();
  if (ipow(p, s) <= budget)
    out.count_ok = BigInt(count_points_oracle(out.quotient, s, budget)) == count_points_quadric(out.quotient, s).N;
  return out;
}

Elem a_constant(const Curve& C, const std::vector<Elem>& Abar) {
  if (C.h == 0) {
    if (!Abar.empty()) throw DomainError("h = 0 takes an empty isotropic basis");
    return C.R.coeff(0);
  }
  if (Abar.size() != C.h) throw DomainError("isotropic basis must have h elements");
  const FieldPtr F = Abar.front().field_ptr();
  const std::uint32_t p = C.p;
  for (const auto& c : Abar) {
    if (&c.field() != F.get()) throw FieldMismatch("isotropic basis spans several fields");
    if (!b_residual(C, c).is_zero()) throw DomainError("isotropic basis element is not in W");
  }
  for (std::size_t i = 0; i < Abar.size(); ++i)
    for (std::size_t j = i + 1; j < Abar.size(); ++j)
      if (epsilon(C, Abar[i], Abar[j]) != 0) throw DomainError("basis is not isotropic for eps");
  FpMatrix coords(F->degree(), static_cast<Eigen::Index>(Abar.size()));
  for (std::size_t k = 0; k < Abar.size(); ++k)
    for (unsigned i = 0; i < F->degree(); ++i) coords(i, static_cast<Eigen::Index>(k)) = Abar[k].coeffs()[i];
  if (fp_rank(coords, p) != static_cast<Eigen::Index>(Abar.size()))
    throw DomainError("isotropic basis is linearly dependent");
  const BigInt span = ipow(p, C.h);
  if (span > BigInt(kDefaultBudget) * 100) throw ResourceError("isotropic span too large to enumerate", UINT64_MAX);

  Elem prod = Elem::one(F);
  std::vector<Residue> digits(C.h, 0);
  const auto total = static_cast<std::uint64_t>(span);
  for (std::uint64_t k = 1; k < total; ++k) {
    for (unsigned i = 0; i < C.h; ++i) {
      if (++digits[i] < p) break;
      digits[i] = 0;
    }
    Elem v(F);
    for (unsigned i = 0; i < C.h; ++i)
      if (digits[i]) v += Abar[i].scaled(digits[i]);
    prod *= v;
  }
  return half(embed(C.R.leading(), F)) * prod;
}

bool IteratedQuotient::ok() const {
  for (const auto& s : steps)
    if (!s.ok()) return false;
  return true;
}

IteratedQuotient iterated_quotient(const Curve& C, const std::vector<Elem>& Abar, std::uint64_t budget) {
  if (Abar.size() != C.h) throw DomainError("isotropic basis must have h elements");
  IteratedQuotient out;
  Curve cur = C;
  std::vector<Elem> cs = Abar;
  while (!cs.empty()) {
    const Elem c = cs.back();
    cs.pop_back();
    QuotientStep step = quotient_step(cur, c, budget);
    for (auto& x : cs) x = lp_eval(step.U, x);
    cur = step.quotient;
    out.steps.push_back(std::move(step));
  }
  if (cur.h != 0) throw InvariantViolation("iterated quotient did not reach h = 0");
  out.constant = cur.R.coeff(0);
  return out;
}

// ---------------------------------------------------------------- L-polynomials

LPoly l_polynomial_table(std::uint32_t p, unsigned s, std::uint64_t g, bool square, std::string* row) {
  LPoly L{LForm::Linear, 1, p, s, g};
  std::string label;
  if (s % 2 == 1) {
    L.form = LForm::Quadratic;
    L.sign = p % 4 == 1 ? -1 : 1;
    label = p % 4 == 1 ? "p = 1 mod 4, s odd" : "p = 3 mod 4, s odd";
  } else if (p % 4 == 1) {
    L.sign = square ? -1 : 1;
    label = std::string("p = 1 mod 4, s even, a ") + (square ? "square" : "nonsquare");
  } else if (s % 4 == 0) {
    L.sign = square ? -1 : 1;
    label = std::string("p = 3 mod 4, s = 0 mod 4, a ") + (square ? "square" : "nonsquare");
  } else {
    L.sign = square ? 1 : -1;
    label = std::string("p = 3 mod 4, s = 2 mod 4, a ") + (square ? "square" : "nonsquare");
  }
  if (row) *row = label;
  return L;
}

LResult l_polynomial(const Curve& C, unsigned s) {
  if (s == 0 || s % C.q_degree != 0)
    throw DomainError("closed form needs q_degree | s (q_degree = " + std::to_string(C.q_degree) +
                      ", s = " + std::to_string(s) + "); use the point-count path");
  const Elem a_q = C.h == 0 ? C.R.coeff(0) : a_constant(C, symplectic_basis(C).c);
  LResult out;
  out.a = embed(a_q, make_field(C.p, s));
  out.square = is_square(out.a);
  out.L = l_polynomial_table(C.p, s, C.genus, out.square, &out.row);
  return out;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Maximal: return "maximal";
    case Classification::Minimal: return "minimal";
    case Classification::Neither: return "neither";
  }
  return "?";
}

Classification classify_count(const BigInt& N, std::uint32_t p, unsigned s, std::uint64_t g) {
  if (s % 2 == 1) return Classification::Neither;
  const BigInt base = ipow(p, s) + 1;
  const BigInt dev = BigInt(2) * g * ipow(p, s / 2);
  if (N == base + dev) return Classification::Maximal;
  if (N == base - dev) return Classification::Minimal;
  return Classification::Neither;
}

ClassifyResult classify(const Curve& C, unsigned s, std::uint64_t budget, unsigned jobs) {
  if (s == 0 || s % C.r() != 0) throw DomainError("classification needs r | s");
  ClassifyResult out;
  if (s % C.q_degree == 0) {
    out.N = predicted_count(l_polynomial(C, s).L, 1);
    out.method = "l_polynomial";
  } else if (ipow(C.p, s) <= budget) {
    out.N = count_points_oracle(C, s, budget, jobs);
    out.method = "oracle";
  } else {
    out.N = count_points_quadric(C, s).N;
    out.method = "quadric";
  }
  out.cls = classify_count(out.N, C.p, s, C.genus);
  return out;
}

Classification maximality_table_h0(std::uint32_t p, unsigned s, bool square) {
  bool maximal;
  if (p % 4 == 1)
    maximal = !square;
  else if (s % 2 == 0)
    maximal = !square;
  else
    maximal = square;
  return maximal ? Classification::Maximal : Classification::Minimal;
}

std::vector<BigInt> poly_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<BigInt> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<BigInt> poly_pow(const std::vector<BigInt>& a, std::uint64_t e) {
  std::vector<BigInt> result{1}, base = a;
  while (e > 0) {
    if (e & 1u) result = poly_mul(result, base);
    e >>= 1u;
    if (e) base = poly_mul(base, base);
  }
  return result;
}

KaniRosenCheck kani_rosen_check(const Curve& C, std::uint64_t budget, unsigned jobs, bool allow_quadric) {
  KaniRosenCheck out;
  const unsigned q = C.q_degree;
  const LResult lr = l_polynomial(C, q);
  out.table = lr.L.coefficients();
  out.a = lr.a;
  const Reconstruction rec = reconstruct_lpoly(C, q, budget, jobs, allow_quadric);
  out.lhs = rec.coefficients;
  out.sources = rec.sources;
  const Curve D = make_curve(LinPoly::monomial(lr.a, 0));
  out.rhs = poly_pow(l_polynomial(D, q).L.coefficients(), static_cast<std::uint64_t>(ipow(C.p, C.h)));
  out.ok = out.lhs == out.rhs && out.table == out.rhs;
  return out;
}

}  // namespace aszeta
