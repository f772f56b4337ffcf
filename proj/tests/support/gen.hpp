#pragma once

// Seeded random inputs for the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "aszeta/curve.hpp"

namespace aszeta::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
  bool coin() { return below(2) == 1; }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

  Elem elem(const FieldPtr& F) {
    std::vector<Residue> c(F->degree());
    for (auto& v : c) v = static_cast<Residue>(below(F->p()));
    return Elem(F, std::move(c));
  }

  Elem nonzero(const FieldPtr& F) {
    for (;;) {
      Elem x = elem(F);
      if (!x.is_zero()) return x;
    }
  }

  /// sum_{i <= h} a_i X^{p^i} with a_h != 0; lower terms are zero half the time.
  LinPoly additive(const FieldPtr& F, unsigned h) {
    std::vector<Elem> c;
    for (unsigned i = 0; i < h; ++i) c.push_back(coin() ? elem(F) : Elem(F));
    c.push_back(nonzero(F));
    return LinPoly(F, std::move(c));
  }

  /// A curve over F_{p^r} with p in {3, 5}, r in {1, 2}, h in {0, 1} (and
  /// h = 2 for p = 3, r = 1), redrawn until its splitting degree is at most
  /// max_q.
  Curve curve(unsigned max_q = 12) {
    for (;;) {
      const std::uint32_t p = coin() ? 3 : 5;
      const unsigned r = 1 + static_cast<unsigned>(below(2));
      unsigned h = static_cast<unsigned>(below(2));
      if (p == 3 && r == 1 && below(4) == 0) h = 2;
      try {
        Curve C = make_curve(additive(make_field(p, r), h), max_q);
        if (C.q_degree <= max_q) return C;
      } catch (const ResourceError&) {
      }
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace aszeta::testing
