#include "aszeta/zeta.hpp"

#include <gtest/gtest.h>

#include "gen.hpp"
#include "oracles.hpp"

namespace aszeta {
namespace {

using testing::Gen;

std::vector<BigInt> ints(std::initializer_list<std::int64_t> xs) { return {xs.begin(), xs.end()}; }

Curve x_cubed() { return make_curve(3, 1, {{0}, {1}}); }
// a_1 X^3 over F_9 with a_1^2 = -1; the class of X in F_3[X]/(X^2 + 1).
Curve i_x_cubed() { return make_curve(3, 2, {{0, 0}, {0, 1}}); }

TEST(Table, RowsMatchTheClosedForms) {
  struct Row {
    std::uint32_t p;
    unsigned s;
    bool square;
    LForm form;
    int sign;
  };
  const std::vector<Row> rows = {
      {5, 1, true, LForm::Quadratic, -1}, {5, 3, false, LForm::Quadratic, -1},
      {5, 2, true, LForm::Linear, -1},    {5, 2, false, LForm::Linear, 1},
      {3, 1, true, LForm::Quadratic, 1},  {3, 5, false, LForm::Quadratic, 1},
      {3, 4, true, LForm::Linear, -1},    {3, 4, false, LForm::Linear, 1},
      {3, 2, true, LForm::Linear, 1},     {3, 6, false, LForm::Linear, -1},
  };
  for (const Row& r : rows) {
    const LPoly L = l_polynomial_table(r.p, r.s, 2, r.square);
    EXPECT_EQ(L.form, r.form) << r.p << " " << r.s;
    EXPECT_EQ(L.sign, r.sign) << r.p << " " << r.s << " " << r.square;
  }
}

TEST(LPoly, ExpansionAndCounts) {
  const LPoly L{LForm::Linear, -1, 3, 4, 3};
  EXPECT_EQ(L.coefficients(), ints({1, -54, 1215, -14580, 98415, -354294, 531441}));
  EXPECT_EQ(predicted_count(L, 1), 28);
  EXPECT_EQ(predicted_count(L, 2), 6561 + 1 - 6 * 81);
  const LPoly Q{LForm::Quadratic, 1, 3, 1, 1};
  EXPECT_EQ(Q.coefficients(), ints({1, 0, 3}));
  EXPECT_EQ(predicted_count(Q, 1), 4);
  EXPECT_EQ(predicted_count(Q, 2), 9 + 1 + 6);
  EXPECT_EQ(power_sum(Q, 2), -6);
}

TEST(LPoly, IdentifyFormRoundTrip) {
  for (std::uint32_t p : {3u, 5u})
    for (unsigned s = 1; s <= 4; ++s)
      for (bool sq : {true, false}) {
        const LPoly L = l_polynomial_table(p, s, 3, sq);
        const auto back = identify_form(L.coefficients(), p, s);
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(back->coefficients(), L.coefficients());
      }
  EXPECT_FALSE(identify_form(ints({1, 1, 3}), 3, 1).has_value());
}

TEST(LPoly, NegativeControls) {
  // An ordinary elliptic curve over F_3: slope 0 appears.
  EXPECT_TRUE(check_functional_equation(ints({1, -1, 3}), 3, 1));
  EXPECT_FALSE(is_supersingular(ints({1, -1, 3}), 3, 1));
  // Real reciprocal roots (5 +- sqrt 13) / 2 are off the circle.
  EXPECT_FALSE(roots_on_weil_circle(ints({1, 5, 3}), 3, 1));
  EXPECT_FALSE(check_functional_equation(ints({1, 0, 4}), 3, 1));
}

TEST(Newton, ReconstructsFromCounts) {
  const std::vector<BigInt> counts = {28, 6076, 527068};  // (1 - 9T)^6 over F_{3^{4n}}
  EXPECT_EQ(lpoly_from_counts(counts, 3, 4, 3), (LPoly{LForm::Linear, -1, 3, 4, 3}.coefficients()));
  EXPECT_THROW(lpoly_from_counts({29, 6076, 527068}, 3, 4, 3), InvariantViolation);
}

TEST(Twist, ExhaustiveOnF9) {
  const FieldPtr F = make_field(3, 2);
  const auto sq = testing::squares(F);
  std::unordered_set<Elem> classes;  // u^2 v
  for (const Elem& u2 : sq)
    for (std::int64_t v : {1, 2}) classes.insert(u2 * Elem::from_int(F, v));
  const auto all = enumerate_field(F, 9);
  for (const Elem& a : all)
    for (const Elem& b : all) {
      if (a.is_zero() || b.is_zero()) continue;
      EXPECT_EQ(twist_equivalent(a, b), classes.count(a / b) == 1) << a << " " << b;
    }
  EXPECT_THROW(twist_equivalent(all[0], all[1]), DomainError);
}

TEST(Twist, ClassTags) {
  const FieldPtr F9 = make_field(3, 2), F27 = make_field(3, 3);
  EXPECT_EQ(twist_class(Elem::one(F9)).tag, SquareClass::Square);
  EXPECT_EQ(twist_class(Elem::one(F27)).tag, SquareClass::Single);
  Elem x(F9);
  x.mutable_coeffs()[0] = 1;
  x.mutable_coeffs()[1] = 1;  // 1 + i, norm 2, a nonsquare
  EXPECT_EQ(twist_class(x).tag, SquareClass::Nonsquare);
}

TEST(LPolynomial, ExamplesOverTheirSplittingFields) {
  const LResult a = l_polynomial(x_cubed(), 4);
  EXPECT_EQ(a.L.coefficients(), (LPoly{LForm::Linear, -1, 3, 4, 3}.coefficients()));
  EXPECT_EQ(classify(x_cubed(), 4).cls, Classification::Minimal);
  const LResult b = l_polynomial(i_x_cubed(), 2);
  EXPECT_EQ(predicted_count(b.L, 1), 28);
  EXPECT_EQ(classify(i_x_cubed(), 2).cls, Classification::Maximal);
  EXPECT_THROW(l_polynomial(x_cubed(), 2), DomainError);
}

TEST(LPolynomial, ClosedFormMatchesOracleOnRandomCurves) {
  Gen g(51);
  for (int k = 0; k < 20; ++k) {
    const Curve C = g.curve(8);
    for (unsigned s = C.q_degree; ipow(C.p, s) <= 20000; s += C.q_degree)
      EXPECT_EQ(predicted_count(l_polynomial(C, s).L, 1), count_points_oracle(C, s)) << C.R << " s=" << s;
  }
}

TEST(Classify, Methods) {
  const Curve C = x_cubed();
  EXPECT_EQ(classify(C, 4).method, "l_polynomial");
  EXPECT_EQ(classify(C, 3).method, "oracle");
  EXPECT_EQ(classify(C, 3, 10).method, "quadric");
  EXPECT_EQ(classify(C, 3, 10).N, classify(C, 3).N);
  EXPECT_EQ(classify_count(28, 3, 4, 3), Classification::Minimal);
  EXPECT_EQ(classify_count(136, 3, 4, 3), Classification::Maximal);
  EXPECT_EQ(classify_count(82, 3, 4, 3), Classification::Neither);
  EXPECT_EQ(classify_count(4, 3, 1, 3), Classification::Neither);
}

TEST(Classify, MaximalityTableAgreesWithCounts) {
  for (std::uint32_t p : {3u, 5u})
    for (unsigned s = 1; ipow(p, 2 * s) <= 20000; ++s) {
      const FieldPtr F = make_field(p, 2 * s);
      const auto sq = testing::squares(F);
      for (bool square : {true, false}) {
        Elem a = Elem::one(F);
        for (const Elem& x : enumerate_field(F, UINT64_MAX))
          if (!x.is_zero() && (sq.count(x) == 1) == square) {
            a = x;
            break;
          }
        const Curve D = make_curve(LinPoly::monomial(a, 0));
        EXPECT_EQ(classify(D, 2 * s).cls, maximality_table_h0(p, s, square)) << p << " " << s << " " << square;
        EXPECT_EQ(classify_count(count_points_oracle(D, 2 * s), p, 2 * s, D.genus), maximality_table_h0(p, s, square));
      }
    }
}

TEST(Quotient, StepOnXCubed) {
  const Curve C = x_cubed();
  const QuotientStep q = quotient_step(C, C.W[0]);
  EXPECT_TRUE(q.ok());
  EXPECT_EQ(q.quotient.h, 0u);
  EXPECT_EQ(q.quotient.genus, 1u);
  EXPECT_TRUE(q.leading_ok);
  ASSERT_TRUE(q.count_ok.has_value());
  EXPECT_TRUE(*q.count_ok);
  EXPECT_THROW(quotient_step(C, Elem(C.splitting_field)), DomainError);
}

TEST(Quotient, IteratedConstantIsATwistOfTheClosedForm) {
  for (const Curve& C : {x_cubed(), i_x_cubed(), make_curve(3, 1, {{1}, {1}}), make_curve(5, 1, {{0}, {1}})}) {
    const auto Abar = symplectic_basis(C).c;
    const IteratedQuotient it = iterated_quotient(C, Abar);
    EXPECT_TRUE(it.ok()) << C.R;
    EXPECT_TRUE(twist_equivalent(it.constant, a_constant(C, Abar))) << C.R;
  }
}

TEST(Quotient, XCubedConstantsFrozen) {
  const Curve C = x_cubed();
  const auto Abar = symplectic_basis(C).c;
  EXPECT_EQ(a_constant(C, Abar), Elem(C.splitting_field, {1, 2, 1, 0}));
  EXPECT_EQ(iterated_quotient(C, Abar).constant, Elem(C.splitting_field, {1, 1, 2, 0}));
}

TEST(Quotient, DepthTwo) {
  const Curve C = make_curve(3, 1, {{0}, {0}, {1}});
  const auto Abar = symplectic_basis(C).c;
  const IteratedQuotient it = iterated_quotient(C, Abar, 20000);
  EXPECT_EQ(it.steps.size(), 2u);
  EXPECT_TRUE(it.ok());
  EXPECT_TRUE(twist_equivalent(it.constant, a_constant(C, Abar)));
}

TEST(KaniRosen, BothExamplesFromOracleCounts) {
  for (const Curve& C : {x_cubed(), i_x_cubed()}) {
    const KaniRosenCheck kr = kani_rosen_check(C);
    EXPECT_TRUE(kr.ok);
    for (const auto& src : kr.sources) EXPECT_EQ(src, "oracle");
  }
}

TEST(KaniRosen, QuadricPathAboveBudget) {
  const KaniRosenCheck kr = kani_rosen_check(x_cubed(), 100);
  EXPECT_TRUE(kr.ok);
  EXPECT_EQ(kr.sources.front(), "oracle");
  EXPECT_EQ(kr.sources.back(), "quadric");
  EXPECT_THROW(kani_rosen_check(x_cubed(), 100, 1, false), ResourceError);
}

TEST(PolyArith, PowMatchesRepeatedMul) {
  const std::vector<BigInt> a = ints({1, -2, 3});
  EXPECT_EQ(poly_pow(a, 3), poly_mul(a, poly_mul(a, a)));
  EXPECT_EQ(poly_pow(a, 0), ints({1}));
}

}  // namespace
}  // namespace aszeta
