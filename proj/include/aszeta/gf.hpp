#pragma once

// Dense arithmetic in finite fields F_{p^m}, p odd.
//
// A field is the quotient F_p[X]/(f) for the lexicographically smallest monic
// irreducible f of degree m; elements are coefficient vectors in the power
// basis of the class of X. Fields are interned: make_field(p, m) always
// returns the same object, so raw Field pointers held by elements stay valid
// for the lifetime of the process.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "aszeta/error.hpp"

namespace aszeta {

using Residue = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Largest supported characteristic. Products of two residues summed over a
/// row of length m must fit in 64 bits.
inline constexpr std::uint32_t kMaxCharacteristic = 1u << 20;
inline constexpr unsigned kMaxExtensionDegree = 512;

bool is_prime(std::uint64_t n);

class Field : public std::enable_shared_from_this<Field> {
 public:
  std::uint32_t p() const noexcept { return p_; }
  unsigned degree() const noexcept { return m_; }
  /// Monic defining polynomial, low-to-high, length degree() + 1.
  const std::vector<Residue>& defining_poly() const noexcept { return f_; }
  /// p^m, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> cardinality() const noexcept { return card_; }

  // Raw kernels on coefficient spans of length degree(). Output spans may not
  // alias inputs unless stated.
  void add(std::span<const Residue> a, std::span<const Residue> b, std::span<Residue> out) const;
  void sub(std::span<const Residue> a, std::span<const Residue> b, std::span<Residue> out) const;
  void mul(std::span<const Residue> a, std::span<const Residue> b, std::span<Residue> out) const;
  /// out = a^p; uses the precomputed Frobenius matrix.
  void frobenius(std::span<const Residue> a, std::span<Residue> out) const;
  Residue trace(std::span<const Residue> a) const;

  /// Column j is the coordinate vector of (X^j)^p.
  const std::vector<std::vector<Residue>>& frobenius_columns() const noexcept { return frob_cols_; }

  Field(std::uint32_t p, unsigned m, std::vector<Residue> f);

 private:
  std::uint32_t p_;
  unsigned m_;
  std::vector<Residue> f_;
  std::optional<std::uint64_t> card_;
  std::vector<std::vector<Residue>> frob_cols_;
  std::vector<Residue> trace_basis_;
};

/// Interned field of order p^m. Throws DomainError unless p is an odd prime
/// below kMaxCharacteristic and 1 <= m <= kMaxExtensionDegree.
FieldPtr make_field(std::uint32_t p, unsigned m);

/// Rabin irreducibility test for a monic polynomial over F_p (low-to-high).
bool is_irreducible_over_prime(const std::vector<Residue>& f, std::uint32_t p);

class Elem {
 public:
  Elem() = default;
  /// Zero of the given field.
  explicit Elem(const FieldPtr& field);
  Elem(const FieldPtr& field, std::vector<Residue> coeffs);

  static Elem from_int(const FieldPtr& field, std::int64_t v);
  /// Inverse of index(): coefficients are the base-p digits, low digit first.
  static Elem from_index(const FieldPtr& field, std::uint64_t index);
  static Elem one(const FieldPtr& field) { return from_int(field, 1); }

  bool valid() const noexcept { return field_ != nullptr; }
  const Field& field() const { return *field_; }
  FieldPtr field_ptr() const { return field_->shared_from_this(); }
  std::uint32_t p() const { return field_->p(); }
  std::span<const Residue> coeffs() const noexcept { return c_; }
  std::vector<Residue>& mutable_coeffs() noexcept { return c_; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  /// The residue if the element lies in the prime field.
  std::optional<Residue> as_prime() const noexcept;
  /// Position in the canonical enumeration order (base-p odometer, low digit
  /// fastest). Requires the field cardinality to fit in 64 bits.
  std::uint64_t index() const;

  Elem& operator+=(const Elem& o);
  Elem& operator-=(const Elem& o);
  Elem& operator*=(const Elem& o);
  Elem& operator/=(const Elem& o);
  Elem operator-() const;

  friend Elem operator+(Elem a, const Elem& b) { return a += b; }
  friend Elem operator-(Elem a, const Elem& b) { return a -= b; }
  friend Elem operator*(Elem a, const Elem& b) { return a *= b; }
  friend Elem operator/(Elem a, const Elem& b) { return a /= b; }

  /// Multiplication by an integer (image of the integer in F_p).
  Elem scaled(std::int64_t k) const;

  friend bool operator==(const Elem& a, const Elem& b);
  /// Canonical enumeration order: compare from the top coefficient down.
  friend std::strong_ordering operator<=>(const Elem& a, const Elem& b);

 private:
  void check_same_field(const Elem& o) const;

  const Field* field_ = nullptr;
  std::vector<Residue> c_;
};

Elem pow(const Elem& x, std::uint64_t e);
Elem inv(const Elem& x);
/// x^{p^j}.
Elem frobenius(const Elem& x, unsigned j);
Residue trace_to_prime(const Elem& x);
/// Product of the Galois conjugates, an element of F_p.
Residue norm_to_prime(const Elem& x);
/// Quadratic character for nonzero x; throws DomainError on zero.
bool is_square(const Elem& x);

/// Reduction of an integer into [0, p).
Residue mod_p(std::int64_t v, std::uint32_t p);
Residue inv_mod_p(Residue a, std::uint32_t p);
Residue pow_mod_p(Residue a, std::uint64_t e, std::uint32_t p);

/// All elements in canonical order. Throws ResourceError above budget.
std::vector<Elem> enumerate_field(const FieldPtr& field, std::uint64_t budget);

/// Visits the elements with index in [begin, end) in canonical order, reusing
/// one buffer. The callback sees the coefficient span of each element.
void for_each_element(const Field& field, std::uint64_t begin, std::uint64_t end,
                      const std::function<void(std::span<const Residue>)>& fn);

/// Deterministic ring embedding F_{p^a} -> F_{p^b}: the generator goes to the
/// least root (canonical order) of the source defining polynomial.
class Embedding {
 public:
  Embedding(FieldPtr source, FieldPtr target);
  const FieldPtr& source() const noexcept { return src_; }
  const FieldPtr& target() const noexcept { return dst_; }
  Elem operator()(const Elem& x) const;

 private:
  FieldPtr src_;
  FieldPtr dst_;
  std::vector<Elem> images_;  // image of X^j
};

/// Interned embedding; throws EmbeddingError unless source degree divides
/// target degree.
const Embedding& embedding(const FieldPtr& source, const FieldPtr& target);

/// embed(x, target) = embedding(x.field, target)(x). Identity when the fields
/// coincide.
Elem embed(const Elem& x, const FieldPtr& target);

/// Subfield F_{p^d} of the given field as an F_p-basis (elements fixed by the
/// d-th Frobenius power).
std::vector<Elem> subfield_basis(const FieldPtr& field, unsigned d);

std::string to_string(const Elem& x);
std::ostream& operator<<(std::ostream& os, const Elem& x);

}  // namespace aszeta

template <>
struct std::hash<aszeta::Elem> {
  std::size_t operator()(const aszeta::Elem& x) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto c : x.coeffs()) h = (h ^ c) * 1099511628211ull;
    return h;
  }
};
