#include "aszeta/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "aszeta/fp_linalg.hpp"

namespace aszeta {

namespace {

// Polynomials over F_p, low-to-high, no trailing zeros (zero = empty).
using Poly = std::vector<Residue>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const Residue lead_inv = inv_mod_p(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t coef = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<Residue>((a[shift + i] + (p - coef) * m[i]) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    }
  }
  Poly r(acc.begin(), acc.end());
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1u) result = poly_mulmod(result, base, m, p);
    e >>= 1u;
    if (e > 0) base = poly_mulmod(base, base, m, p);
  }
  return poly_mod(std::move(result), m, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Extended Euclid in F_p[X]: inverse of a modulo the irreducible f.
Poly poly_inverse_mod(const Poly& a, const Poly& f, std::uint32_t p) {
  Poly r0 = f, r1 = a, s0{}, s1{1};
  trim(r1);
  while (!r1.empty()) {
    // q = r0 / r1
    Poly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
    Poly rem = r0;
    const Residue lead_inv = inv_mod_p(r1.back(), p);
    while (rem.size() >= r1.size() && !rem.empty()) {
      const std::size_t shift = rem.size() - r1.size();
      const std::uint64_t coef = static_cast<std::uint64_t>(rem.back()) * lead_inv % p;
      q[shift] = static_cast<Residue>(coef);
      for (std::size_t i = 0; i < r1.size(); ++i) {
        rem[shift + i] = static_cast<Residue>((rem[shift + i] + (p - coef) * r1[i]) % p);
      }
      trim(rem);
    }
    trim(q);
    // s2 = s0 - q s1
    Poly qs(q.size() + s1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j)
        qs[i + j] = static_cast<Residue>((qs[i + j] + static_cast<std::uint64_t>(q[i]) * s1[j]) % p);
    Poly s2(std::max(s0.size(), qs.size()), 0);
    for (std::size_t i = 0; i < s2.size(); ++i) {
      const Residue x = i < s0.size() ? s0[i] : 0;
      const Residue y = i < qs.size() ? qs[i] : 0;
      s2[i] = (x + p - y) % p;
    }
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant since f is irreducible and a != 0 mod f.
  const Residue c = inv_mod_p(r0.at(0), p);
  for (auto& v : s0) v = static_cast<Residue>(static_cast<std::uint64_t>(v) * c % p);
  return poly_mod(std::move(s0), f, p);
}

std::vector<Residue> smallest_irreducible(std::uint32_t p, unsigned m) {
  // Candidates ordered by (c_0, c_1, ..., c_{m-1}) lexicographically.
  // c_0 = 0 gives a reducible f for m > 1, so that block is skipped outright.
  std::vector<Residue> digits(m, 0);
  if (m > 1) digits[0] = 1;
  for (;;) {
    Poly f(digits.begin(), digits.end());
    f.push_back(1);
    if (m == 1 || f[0] != 0) {
      if (is_irreducible_over_prime(f, p)) return f;
    }
    // Increment with c_{m-1} fastest.
    int i = static_cast<int>(m) - 1;
    while (i >= 0) {
      if (++digits[static_cast<std::size_t>(i)] < p) break;
      digits[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) throw InvariantViolation("no irreducible polynomial found");
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Residue mod_p(std::int64_t v, std::uint32_t p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<Residue>(r < 0 ? r + p : r);
}

Residue pow_mod_p(Residue a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p, base = a % p;
  while (e > 0) {
    if (e & 1u) result = result * base % p;
    base = base * base % p;
    e >>= 1u;
  }
  return static_cast<Residue>(result);
}

Residue inv_mod_p(Residue a, std::uint32_t p) {
  if (a % p == 0) throw DivisionByZero("inverse of zero mod p");
  return pow_mod_p(a, p - 2, p);
}

bool is_irreducible_over_prime(const std::vector<Residue>& f_in, std::uint32_t p) {
  Poly f = f_in;
  trim(f);
  if (f.size() < 2) return false;
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  if (m == 1) return true;
  // x^{p^k} mod f for k = 1..m.
  std::vector<Poly> xpk(m + 1);
  xpk[0] = poly_mod(Poly{0, 1}, f, p);
  for (unsigned k = 1; k <= m; ++k) xpk[k] = poly_powmod(xpk[k - 1], p, f, p);
  auto minus_x = [&](Poly a) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = (a[1] + p - 1) % p;
    trim(a);
    return a;
  };
  if (!minus_x(xpk[m]).empty()) return false;
  for (unsigned q : prime_divisors(m)) {
    Poly g = poly_gcd(f, minus_x(xpk[m / q]), p);
    if (g.size() != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Field

Field::Field(std::uint32_t p, unsigned m, std::vector<Residue> f) : p_(p), m_(m), f_(std::move(f)) {
  std::uint64_t card = 1;
  bool overflow = false;
  for (unsigned i = 0; i < m_; ++i) {
    if (card > UINT64_MAX / p_) {
      overflow = true;
      break;
    }
    card *= p_;
  }
  if (!overflow) card_ = card;

  // Frobenius images of the power basis: (X^j)^p = (X^p)^j mod f.
  Poly xp = (m_ == 1) ? Poly{} : poly_powmod(Poly{0, 1}, p_, f_, p_);
  frob_cols_.assign(m_, std::vector<Residue>(m_, 0));
  if (m_ == 1) {
    frob_cols_[0][0] = 1;
  } else {
    Poly cur{1};
    for (unsigned j = 0; j < m_; ++j) {
      for (std::size_t i = 0; i < cur.size(); ++i) frob_cols_[j][i] = cur[i];
      cur = poly_mulmod(cur, xp, f_, p_);
    }
  }

  trace_basis_.assign(m_, 0);
  std::vector<Residue> x(m_), y(m_);
  for (unsigned j = 0; j < m_; ++j) {
    std::fill(x.begin(), x.end(), 0);
    x[j] = 1;
    std::uint64_t t = 0;
    for (unsigned k = 0; k < m_; ++k) {
      t += x[0];
      frobenius(x, y);
      std::swap(x, y);
    }
    trace_basis_[j] = static_cast<Residue>(t % p_);
  }
}

void Field::add(std::span<const Residue> a, std::span<const Residue> b, std::span<Residue> out) const {
  for (unsigned i = 0; i < m_; ++i) {
    const Residue s = a[i] + b[i];
    out[i] = s >= p_ ? s - p_ : s;
  }
}

void Field::sub(std::span<const Residue> a, std::span<const Residue> b, std::span<Residue> out) const {
  for (unsigned i = 0; i < m_; ++i) out[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + p_ - b[i];
}

void Field::mul(std::span<const Residue> a, std::span<const Residue> b, std::span<Residue> out) const {
  if (m_ == 1) {
    out[0] = static_cast<Residue>(static_cast<std::uint64_t>(a[0]) * b[0] % p_);
    return;
  }
  // Schoolbook product; each slot accumulates at most m terms below p^2.
  thread_local std::vector<std::uint64_t> acc;
  acc.assign(2 * m_ - 1, 0);
  for (unsigned i = 0; i < m_; ++i) {
    if (a[i] == 0) continue;
    const std::uint64_t ai = a[i];
    for (unsigned j = 0; j < m_; ++j) acc[i + j] += ai * b[j];
  }
  // Reduce by the monic f from the top down.
  for (unsigned k = 2 * m_ - 2; k >= m_; --k) {
    const std::uint64_t coef = acc[k] % p_;
    if (coef != 0) {
      const std::uint64_t neg = p_ - coef;
      const unsigned base = k - m_;
      for (unsigned i = 0; i < m_; ++i) {
        if (f_[i] != 0) acc[base + i] = (acc[base + i] + neg * f_[i]) % p_;
      }
    }
  }
  for (unsigned i = 0; i < m_; ++i) out[i] = static_cast<Residue>(acc[i] % p_);
}

void Field::frobenius(std::span<const Residue> a, std::span<Residue> out) const {
  if (m_ == 1) {
    out[0] = a[0];
    return;
  }
  thread_local std::vector<std::uint64_t> acc;
  acc.assign(m_, 0);
  for (unsigned j = 0; j < m_; ++j) {
    if (a[j] == 0) continue;
    const std::uint64_t aj = a[j];
    const auto& col = frob_cols_[j];
    for (unsigned i = 0; i < m_; ++i) acc[i] += aj * col[i];
  }
  for (unsigned i = 0; i < m_; ++i) out[i] = static_cast<Residue>(acc[i] % p_);
}

Residue Field::trace(std::span<const Residue> a) const {
  std::uint64_t t = 0;
  for (unsigned i = 0; i < m_; ++i) t += static_cast<std::uint64_t>(a[i]) * trace_basis_[i];
  return static_cast<Residue>(t % p_);
}

FieldPtr make_field(std::uint32_t p, unsigned m) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw DomainError("characteristic must be an odd prime, got " + std::to_string(p));
  if (p >= kMaxCharacteristic) throw DomainError("characteristic too large: " + std::to_string(p));
  if (m < 1 || m > kMaxExtensionDegree)
    throw DomainError("extension degree out of range: " + std::to_string(m));

  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, unsigned>, FieldPtr> registry;
  {
    std::lock_guard lock(mu);
    if (auto it = registry.find({p, m}); it != registry.end()) return it->second;
  }
  auto f = smallest_irreducible(p, m);
  auto field = std::make_shared<const Field>(p, m, std::move(f));
  std::lock_guard lock(mu);
  return registry.try_emplace({p, m}, std::move(field)).first->second;
}

// ---------------------------------------------------------------- Elem

Elem::Elem(const FieldPtr& field) : field_(field.get()), c_(field->degree(), 0) {}

Elem::Elem(const FieldPtr& field, std::vector<Residue> coeffs) : field_(field.get()), c_(std::move(coeffs)) {
  if (c_.size() != field_->degree())
    throw DomainError("coefficient vector length " + std::to_string(c_.size()) + " != field degree " +
                      std::to_string(field_->degree()));
  for (auto& v : c_) v %= field_->p();
}

Elem Elem::from_int(const FieldPtr& field, std::int64_t v) {
  Elem e(field);
  e.c_[0] = mod_p(v, field->p());
  return e;
}

Elem Elem::from_index(const FieldPtr& field, std::uint64_t index) {
  Elem e(field);
  for (unsigned i = 0; i < field->degree(); ++i) {
    e.c_[i] = static_cast<Residue>(index % field->p());
    index /= field->p();
  }
  if (index != 0) throw DomainError("element index out of range");
  return e;
}

bool Elem::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](Residue v) { return v == 0; });
}

bool Elem::is_one() const noexcept {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](Residue v) { return v == 0; });
}

std::optional<Residue> Elem::as_prime() const noexcept {
  if (c_.empty()) return std::nullopt;
  if (!std::all_of(c_.begin() + 1, c_.end(), [](Residue v) { return v == 0; })) return std::nullopt;
  return c_[0];
}

std::uint64_t Elem::index() const {
  if (!field_->cardinality()) throw ResourceError("field too large to index", UINT64_MAX);
  std::uint64_t idx = 0;
  for (std::size_t i = c_.size(); i-- > 0;) idx = idx * field_->p() + c_[i];
  return idx;
}

void Elem::check_same_field(const Elem& o) const {
  if (field_ != o.field_) {
    if (!field_ || !o.field_) throw FieldMismatch("operation on an element without a field");
    throw FieldMismatch("elements of F_" + std::to_string(field_->p()) + "^" + std::to_string(field_->degree()) +
                        " and F_" + std::to_string(o.field_->p()) + "^" + std::to_string(o.field_->degree()));
  }
}

Elem& Elem::operator+=(const Elem& o) {
  check_same_field(o);
  field_->add(c_, o.c_, c_);
  return *this;
}

Elem& Elem::operator-=(const Elem& o) {
  check_same_field(o);
  field_->sub(c_, o.c_, c_);
  return *this;
}

Elem& Elem::operator*=(const Elem& o) {
  check_same_field(o);
  field_->mul(c_, o.c_, c_);
  return *this;
}

Elem& Elem::operator/=(const Elem& o) {
  check_same_field(o);
  return *this *= inv(o);
}

Elem Elem::operator-() const {
  Elem r = *this;
  for (auto& v : r.c_) v = v == 0 ? 0 : field_->p() - v;
  return r;
}

Elem Elem::scaled(std::int64_t k) const {
  const std::uint64_t s = mod_p(k, field_->p());
  Elem r = *this;
  for (auto& v : r.c_) v = static_cast<Residue>(v * s % field_->p());
  return r;
}

bool operator==(const Elem& a, const Elem& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

std::strong_ordering operator<=>(const Elem& a, const Elem& b) {
  a.check_same_field(b);
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    if (a.c_[i] != b.c_[i]) return a.c_[i] <=> b.c_[i];
  }
  return std::strong_ordering::equal;
}

Elem pow(const Elem& x, std::uint64_t e) {
  Elem result = Elem::one(x.field_ptr());
  Elem base = x;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

Elem inv(const Elem& x) {
  if (x.is_zero()) throw DivisionByZero("inverse of zero");
  const Field& f = x.field();
  Poly a(x.coeffs().begin(), x.coeffs().end());
  Poly r = poly_inverse_mod(a, f.defining_poly(), f.p());
  r.resize(f.degree(), 0);
  return Elem(x.field_ptr(), std::move(r));
}

Elem frobenius(const Elem& x, unsigned j) {
  const Field& f = x.field();
  j %= f.degree();
  Elem r = x;
  std::vector<Residue> tmp(f.degree());
  for (unsigned k = 0; k < j; ++k) {
    f.frobenius(r.coeffs(), tmp);
    std::copy(tmp.begin(), tmp.end(), r.mutable_coeffs().begin());
  }
  return r;
}

Residue trace_to_prime(const Elem& x) { return x.field().trace(x.coeffs()); }

Residue norm_to_prime(const Elem& x) {
  const Field& f = x.field();
  Elem acc = x;
  Elem conj = x;
  for (unsigned k = 1; k < f.degree(); ++k) {
    conj = frobenius(conj, 1);
    acc *= conj;
  }
  const auto r = acc.as_prime();
  if (!r) throw InvariantViolation("norm did not land in the prime field");
  return *r;
}

bool is_square(const Elem& x) {
  if (x.is_zero()) throw DomainError("is_square of zero");
  // x^{(Q-1)/2} = N(x)^{(p-1)/2} since (Q-1)/(p-1) = 1 + p + ... + p^{m-1}.
  const std::uint32_t p = x.p();
  return pow_mod_p(norm_to_prime(x), (p - 1) / 2, p) == 1;
}

std::vector<Elem> enumerate_field(const FieldPtr& field, std::uint64_t budget) {
  const auto card = field->cardinality();
  if (!card || *card > budget)
    throw ResourceError("field of size " + (card ? std::to_string(*card) : std::string("> 2^64")) +
                            " exceeds enumeration budget " + std::to_string(budget),
                        card.value_or(UINT64_MAX));
  std::vector<Elem> out;
  out.reserve(*card);
  for_each_element(*field, 0, *card, [&](std::span<const Residue> c) {
    out.emplace_back(field, std::vector<Residue>(c.begin(), c.end()));
  });
  return out;
}

void for_each_element(const Field& field, std::uint64_t begin, std::uint64_t end,
                      const std::function<void(std::span<const Residue>)>& fn) {
  if (begin >= end) return;
  const unsigned m = field.degree();
  const std::uint32_t p = field.p();
  std::vector<Residue> c(m, 0);
  std::uint64_t idx = begin;
  for (unsigned i = 0; i < m; ++i) {
    c[i] = static_cast<Residue>(idx % p);
    idx /= p;
  }
  for (std::uint64_t k = begin; k < end; ++k) {
    fn(c);
    for (unsigned i = 0; i < m; ++i) {
      if (++c[i] < p) break;
      c[i] = 0;
    }
  }
}

// ---------------------------------------------------------------- subfields, embeddings

std::vector<Elem> subfield_basis(const FieldPtr& field, unsigned d) {
  const unsigned m = field->degree();
  if (d == 0 || m % d != 0) throw EmbeddingError("no subfield of degree " + std::to_string(d));
  // Matrix of x -> x^{p^d} - x.
  FpMatrix a(m, m);
  for (unsigned j = 0; j < m; ++j) {
    Elem e(field);
    e.mutable_coeffs()[j] = 1;
    const Elem img = frobenius(e, d) - e;
    for (unsigned i = 0; i < m; ++i) a(i, j) = img.coeffs()[i];
  }
  const FpMatrix ker = fp_linear_kernel(a, field->p());
  std::vector<Elem> basis;
  for (Eigen::Index k = 0; k < ker.cols(); ++k) {
    std::vector<Residue> c(m);
    for (unsigned i = 0; i < m; ++i) c[i] = static_cast<Residue>(ker(i, k));
    basis.emplace_back(field, std::move(c));
  }
  return basis;
}

namespace {

// Polynomials over an extension field, low-to-high, no trailing zeros.
using EPoly = std::vector<Elem>;

void etrim(EPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

EPoly emod(EPoly a, const EPoly& m) {
  etrim(a);
  const Elem lead_inv = inv(m.back());
  while (a.size() >= m.size()) {
    const Elem coef = a.back() * lead_inv;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] -= coef * m[i];
    etrim(a);
  }
  return a;
}

EPoly emulmod(const EPoly& a, const EPoly& b, const EPoly& m) {
  if (a.empty() || b.empty()) return {};
  EPoly out(a.size() + b.size() - 1, Elem(a.front().field_ptr()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return emod(std::move(out), m);
}

EPoly epowmod(EPoly base, std::uint64_t e, const EPoly& m) {
  EPoly result{Elem::one(m.front().field_ptr())};
  while (e > 0) {
    if (e & 1u) result = emulmod(result, base, m);
    e >>= 1u;
    if (e > 0) base = emulmod(base, base, m);
  }
  return result;
}

EPoly emonic_gcd(EPoly a, EPoly b) {
  etrim(a);
  etrim(b);
  while (!b.empty()) {
    EPoly r = emod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  const Elem lead_inv = inv(a.back());
  for (Elem& c : a) c *= lead_inv;
  return a;
}

// One root of the squarefree f over F_p whose roots all lie in the subfield
// spanned by `sub`. Trace splitting: for roots in F_{p^a}, Tr(delta x) lies
// in F_p, and as delta runs over a basis these values separate the roots.
Elem split_to_root(const std::vector<Residue>& f, const FieldPtr& F, const std::vector<Elem>& sub) {
  EPoly g;
  for (Residue c : f) g.push_back(Elem::from_int(F, c));
  const std::uint32_t p = F->p();
  const unsigned a = static_cast<unsigned>(sub.size());
  while (g.size() > 2) {
    bool split = false;
    for (std::size_t k = 0; k < sub.size() && !split; ++k) {
      EPoly t = emod(EPoly{Elem(F), sub[k]}, g), tr;
      for (unsigned j = 0; j < a; ++j) {
        tr.resize(std::max(tr.size(), t.size()), Elem(F));
        for (std::size_t i = 0; i < t.size(); ++i) tr[i] += t[i];
        t = epowmod(t, p, g);
      }
      for (std::uint32_t c = 0; c < p && !split; ++c) {
        EPoly shifted = tr;
        if (shifted.empty()) shifted.push_back(Elem(F));
        shifted[0] -= Elem::from_int(F, c);
        const EPoly h = emonic_gcd(g, shifted);
        if (h.size() > 1 && h.size() < g.size()) {
          g = h;
          split = true;
        }
      }
    }
    if (!split) throw InvariantViolation("trace splitting failed to separate roots");
  }
  return -g[0] * inv(g[1]);
}

}  // namespace

Embedding::Embedding(FieldPtr source, FieldPtr target) : src_(std::move(source)), dst_(std::move(target)) {
  const unsigned a = src_->degree(), b = dst_->degree();
  if (src_->p() != dst_->p()) throw EmbeddingError("embedding between different characteristics");
  if (b % a != 0)
    throw EmbeddingError("cannot embed F_p^" + std::to_string(a) + " into F_p^" + std::to_string(b));
  Elem root = Elem::one(dst_);
  if (a == b) {
    root = Elem(dst_);
    if (a > 1) root.mutable_coeffs()[1] = 1;
    else root = Elem::from_int(dst_, -static_cast<std::int64_t>(src_->defining_poly()[0]));
  } else if (a > 1) {
    // The roots of the source defining polynomial are the conjugates of any
    // one of them; keep the least in the target's canonical order.
    const Elem beta = split_to_root(src_->defining_poly(), dst_, subfield_basis(dst_, a));
    root = beta;
    Elem conj = beta;
    for (unsigned j = 1; j < a; ++j) {
      conj = frobenius(conj, 1);
      if (conj < root) root = conj;
    }
  }
  images_.reserve(a);
  Elem power = Elem::one(dst_);
  for (unsigned j = 0; j < a; ++j) {
    images_.push_back(power);
    power *= root;
  }
}

Elem Embedding::operator()(const Elem& x) const {
  if (&x.field() != src_.get()) throw FieldMismatch("embedding applied to element of another field");
  Elem out(dst_);
  for (std::size_t j = 0; j < images_.size(); ++j) {
    if (x.coeffs()[j] != 0) out += images_[j].scaled(x.coeffs()[j]);
  }
  return out;
}

const Embedding& embedding(const FieldPtr& source, const FieldPtr& target) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, unsigned, unsigned>, std::unique_ptr<Embedding>> registry;
  const auto key = std::make_tuple(source->p(), source->degree(), target->degree());
  {
    std::lock_guard lock(mu);
    if (auto it = registry.find(key); it != registry.end()) return *it->second;
  }
  auto emb = std::make_unique<Embedding>(source, target);
  std::lock_guard lock(mu);
  return *registry.try_emplace(key, std::move(emb)).first->second;
}

Elem embed(const Elem& x, const FieldPtr& target) {
  if (&x.field() == target.get()) return x;
  return embedding(x.field_ptr(), target)(x);
}

std::string to_string(const Elem& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Elem& x) {
  if (!x.valid()) return os << "<no field>";
  os << '[';
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) os << (i ? "," : "") << x.coeffs()[i];
  return os << ']';
}

}  // namespace aszeta
