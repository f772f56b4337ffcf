#include "aszeta/gf.hpp"

#include <gtest/gtest.h>

#include "gen.hpp"
#include "oracles.hpp"

namespace aszeta {
namespace {

using testing::Gen;

const std::vector<std::pair<std::uint32_t, unsigned>> kFields = {{3, 1}, {3, 2}, {3, 5}, {5, 3}, {7, 2}, {11, 4}, {3, 12}};

TEST(Field, RejectsBadParameters) {
  EXPECT_THROW(make_field(2, 1), DomainError);
  EXPECT_THROW(make_field(9, 1), DomainError);
  EXPECT_THROW(make_field(3, 0), DomainError);
  EXPECT_THROW(make_field(kMaxCharacteristic + 7, 1), DomainError);
}

TEST(Field, Interned) { EXPECT_EQ(make_field(3, 4).get(), make_field(3, 4).get()); }

TEST(Field, SmallestDefiningPolynomials) {
  // x^2 + 1 is irreducible mod 3; mod 5 it splits and x^2 + x + 1 is next.
  EXPECT_EQ(make_field(3, 2)->defining_poly(), (std::vector<Residue>{1, 0, 1}));
  EXPECT_EQ(make_field(5, 2)->defining_poly(), (std::vector<Residue>{1, 1, 1}));
  // Cubics: x^3 + 1 and x^3 + x^2 + 1 vanish at 2 and 1; x^3 + 2x^2 + 1 has no root.
  EXPECT_EQ(make_field(3, 3)->defining_poly(), (std::vector<Residue>{1, 0, 2, 1}));
}

TEST(Field, LargeDegreeConstructionIsFast) {
  for (unsigned m : {24u, 36u, 40u, 48u}) EXPECT_EQ(make_field(5, m)->degree(), m);
}

TEST(Irreducible, MatchesRootTestInLowDegree) {
  for (std::uint32_t p : {3u, 5u})
    for (unsigned m : {2u, 3u}) {
      const std::uint64_t total = ipow(p, m).convert_to<std::uint64_t>();
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<Residue> f(m + 1, 1);
        std::uint64_t t = idx;
        for (unsigned i = 0; i < m; ++i, t /= p) f[i] = static_cast<Residue>(t % p);
        bool root = false;
        for (std::uint64_t x = 0; x < p && !root; ++x) {
          std::uint64_t v = 0;
          for (unsigned i = m + 1; i-- > 0;) v = (v * x + f[i]) % p;
          root = v == 0;
        }
        EXPECT_EQ(is_irreducible_over_prime(f, p), !root) << "p=" << p << " idx=" << idx;
      }
    }
}

TEST(Field, AxiomsOnRandomElements) {
  Gen g(11);
  for (const auto& [p, m] : kFields) {
    const FieldPtr F = make_field(p, m);
    for (int k = 0; k < 60; ++k) {
      const Elem a = g.elem(F), b = g.elem(F), c = g.elem(F);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a - a, Elem(F));
      EXPECT_EQ(a + (-a), Elem(F));
      EXPECT_EQ(a.scaled(p), Elem(F));
      if (!a.is_zero()) {
        EXPECT_TRUE((a * inv(a)).is_one());
        EXPECT_EQ(b / a * a, b);
      }
    }
  }
}

TEST(Field, FrobeniusIsAnAutomorphismOfOrderM) {
  Gen g(12);
  for (const auto& [p, m] : kFields) {
    const FieldPtr F = make_field(p, m);
    for (int k = 0; k < 30; ++k) {
      const Elem a = g.elem(F), b = g.elem(F);
      EXPECT_EQ(frobenius(a, 1), pow(a, p));
      EXPECT_EQ(frobenius(a + b, 1), frobenius(a, 1) + frobenius(b, 1));
      EXPECT_EQ(frobenius(a * b, 1), frobenius(a, 1) * frobenius(b, 1));
      EXPECT_EQ(frobenius(a, m), a);
    }
  }
}

TEST(Field, TraceAndNormAreConjugateSumAndProduct) {
  Gen g(13);
  for (const auto& [p, m] : kFields) {
    const FieldPtr F = make_field(p, m);
    for (int k = 0; k < 20; ++k) {
      const Elem a = g.elem(F);
      Elem sum(F), prod = Elem::one(F), x = a;
      for (unsigned j = 0; j < m; ++j, x = pow(x, p)) {
        sum += x;
        prod *= x;
      }
      EXPECT_EQ(Elem::from_int(F, trace_to_prime(a)), sum);
      EXPECT_EQ(Elem::from_int(F, norm_to_prime(a)), prod);
    }
  }
}

TEST(Field, IndexRoundTripAndOrder) {
  const FieldPtr F = make_field(3, 3);
  const auto all = enumerate_field(F, 27);
  ASSERT_EQ(all.size(), 27u);
  for (std::uint64_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(all[i].index(), i);
    EXPECT_EQ(Elem::from_index(F, i), all[i]);
    if (i > 0) EXPECT_LT(all[i - 1], all[i]);
  }
  EXPECT_THROW(enumerate_field(F, 26), ResourceError);
  EXPECT_THROW(Elem::from_index(F, 27), DomainError);
}

TEST(Field, MixedFieldsAreRejected) {
  const Elem a = Elem::one(make_field(3, 2)), b = Elem::one(make_field(3, 4));
  EXPECT_THROW(a + b, FieldMismatch);
  EXPECT_THROW(inv(Elem(make_field(3, 2))), DivisionByZero);
}

TEST(Field, IsSquareOnF9MatchesSquaring) {
  const FieldPtr F = make_field(3, 2);
  const auto sq = testing::squares(F);
  EXPECT_EQ(sq.size(), 4u);
  for (const Elem& x : enumerate_field(F, 9)) {
    if (x.is_zero()) {
      EXPECT_THROW(is_square(x), DomainError);
      continue;
    }
    EXPECT_EQ(is_square(x), sq.count(x) == 1) << x;
  }
  // Every element of F_3 is a square in F_9.
  EXPECT_TRUE(is_square(Elem::from_int(F, 2)));
}

TEST(Field, IsSquareMatchesSquaringInOddDegree) {
  for (const auto& [p, m] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 3}, {5, 2}, {7, 2}, {3, 5}}) {
    const FieldPtr F = make_field(p, m);
    const auto sq = testing::squares(F);
    for (const Elem& x : enumerate_field(F, UINT64_MAX))
      if (!x.is_zero()) EXPECT_EQ(is_square(x), sq.count(x) == 1);
  }
}

TEST(Embedding, IsAnInjectiveRingMap) {
  Gen g(14);
  for (const auto& [a, b] : std::vector<std::pair<unsigned, unsigned>>{{1, 4}, {2, 4}, {2, 6}, {3, 6}, {4, 8}}) {
    const FieldPtr S = make_field(3, a), T = make_field(3, b);
    const Embedding& e = embedding(S, T);
    EXPECT_TRUE(e(Elem::one(S)).is_one());
    for (int k = 0; k < 40; ++k) {
      const Elem x = g.elem(S), y = g.elem(S);
      EXPECT_EQ(e(x + y), e(x) + e(y));
      EXPECT_EQ(e(x * y), e(x) * e(y));
      EXPECT_EQ(frobenius(e(x), a), e(x)) << "image must lie in the degree-a subfield";
      if (!(x == y)) EXPECT_NE(e(x), e(y));
    }
  }
}

TEST(Embedding, GeneratorGoesToTheLeastRoot) {
  for (const auto& [p, a, b] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {3, 2, 4}, {3, 2, 6}, {3, 3, 6}, {3, 4, 8}, {5, 2, 4}, {5, 3, 6}, {7, 2, 4}}) {
    const FieldPtr S = make_field(p, a), T = make_field(p, b);
    const auto& f = S->defining_poly();
    std::optional<Elem> least;
    for (const Elem& x : enumerate_field(T, UINT64_MAX)) {
      Elem v(T);
      for (unsigned i = a + 1; i-- > 0;) v = v * x + Elem::from_int(T, f[i]);
      if (v.is_zero() && (!least || x < *least)) least = x;
    }
    Elem gen(S);
    gen.mutable_coeffs()[1] = 1;
    ASSERT_TRUE(least.has_value());
    EXPECT_EQ(embed(gen, T), *least) << p << " " << a << " " << b;
  }
}

TEST(Embedding, RejectsNonDivisorDegrees) {
  EXPECT_THROW(embedding(make_field(3, 2), make_field(3, 3)), EmbeddingError);
  EXPECT_THROW(embedding(make_field(3, 1), make_field(5, 2)), EmbeddingError);
}

TEST(Embedding, ChainsAgreeUpToConjugation) {
  // Least-root embeddings need not compose; the two routes differ by a power
  // of Frobenius on the image of the small field.
  Gen g(15);
  const FieldPtr S = make_field(3, 2), M = make_field(3, 4), T = make_field(3, 8);
  Elem gen(S);
  gen.mutable_coeffs()[1] = 1;
  const Elem direct = embed(gen, T), chained = embed(embed(gen, M), T);
  bool conjugate = false;
  for (unsigned j = 0; j < 2; ++j) conjugate = conjugate || frobenius(direct, j) == chained;
  EXPECT_TRUE(conjugate);
  for (int k = 0; k < 20; ++k) {
    const Elem x = g.elem(S);
    EXPECT_EQ(trace_to_prime(embed(x, T)), (4 * trace_to_prime(x)) % 3);
    EXPECT_EQ(embed(frobenius(x, 1), T), frobenius(embed(x, T), 1));
  }
  EXPECT_EQ(embed(Elem::from_int(make_field(3, 1), 2), S), Elem::from_int(S, 2));
}

TEST(Subfield, BasisSpansFixedField) {
  const FieldPtr F = make_field(3, 4);
  const auto basis = subfield_basis(F, 2);
  ASSERT_EQ(basis.size(), 2u);
  for (const Elem& b : basis) EXPECT_EQ(frobenius(b, 2), b);
  EXPECT_THROW(subfield_basis(F, 3), EmbeddingError);
}

}  // namespace
}  // namespace aszeta
