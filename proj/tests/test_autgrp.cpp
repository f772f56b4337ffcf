#include "aszeta/autgrp.hpp"

#include <gtest/gtest.h>

#include "gen.hpp"
#include "oracles.hpp"

namespace aszeta {
namespace {

using testing::Gen;

struct Case {
  std::uint32_t p;
  std::vector<std::vector<std::int64_t>> R;
};

const std::vector<Case> kGroups = {{3, {{0}, {1}}}, {3, {{1}, {1}}}, {5, {{0}, {1}}}, {5, {{2}, {1}}}, {3, {{0}, {0}, {1}}}};

TEST(GroupP, StructuralChecksPass) {
  for (const auto& [p, R] : kGroups) {
    const Curve C = make_curve(p, 1, R);
    const GroupP P(C);
    EXPECT_EQ(P.order(), ipow(p, 2 * C.h + 1).convert_to<std::size_t>());
    for (const GroupCheck& c : P.verify()) EXPECT_TRUE(c.ok) << C.R << ": " << c.name << " " << c.detail;
  }
}

TEST(GroupP, GeneratorsCloseToTheRightOrder) {
  for (const auto& [p, R] : kGroups) {
    const GroupP P(make_curve(p, 1, R));
    EXPECT_EQ(testing::naive_closure_order(P.generators(), 1000), P.order());
  }
}

TEST(GroupP, IdsRoundTrip) {
  const GroupP P(make_curve(3, 1, {{0}, {1}}));
  for (std::uint64_t id = 0; id < P.order(); ++id) EXPECT_EQ(P.id_of(P.element(id)), id);
  EXPECT_TRUE(same_element(P.element(1), rho_power(P.element(1).c.field_ptr(), 1)));
}

TEST(GroupP, ExponentPAndInverses) {
  Gen g(41);
  for (const auto& [p, R] : kGroups) {
    const GroupP P(make_curve(p, 1, R));
    for (int k = 0; k < 20; ++k) {
      const AutElem s = P.element(g.below(P.order()));
      const AutElem one = rho_power(s.c.field_ptr(), 0);
      EXPECT_TRUE(same_element(power(s, p), one));
      EXPECT_TRUE(same_element(compose(s, inverse(s)), one));
    }
  }
}

TEST(GroupP, CommutatorIsRhoToTheEpsilon) {
  Gen g(42);
  for (const auto& [p, R] : kGroups) {
    const GroupP P(make_curve(p, 1, R));
    for (int k = 0; k < 25; ++k) {
      const AutElem s1 = P.element(g.below(P.order())), s2 = P.element(g.below(P.order()));
      EXPECT_EQ(commutator_exponent(s1, s2), epsilon(P.curve(), s1.c, s2.c));
    }
  }
}

TEST(GroupP, ComposeActsAsCompositionOfMaps) {
  Gen g(43);
  for (const auto& [p, R] : kGroups) {
    const Curve C = make_curve(p, 1, R);
    const GroupP P(C);
    const auto pts = sample_points(C, C.splitting_field, 6);
    for (int k = 0; k < 10; ++k) {
      const AutElem s1 = P.element(g.below(P.order())), s2 = P.element(g.below(P.order()));
      for (const Point& pt : pts) {
        const Point a = apply_aut(C, compose(s1, s2), pt);
        const Point b = apply_aut(C, s1, apply_aut(C, s2, pt));
        EXPECT_TRUE(on_curve(C, a));
        EXPECT_EQ(a.x, b.x);
        EXPECT_EQ(a.y, b.y);
      }
    }
  }
}

TEST(GroupP, ElementsPreserveTheCurve) {
  for (const auto& [p, R] : kGroups) {
    const GroupP P(make_curve(p, 1, R));
    for (std::uint64_t id = 0; id < P.order(); id += 7) EXPECT_TRUE(preserves_curve(P.curve(), P.element(id)));
  }
}

TEST(SMembership, KernelTranslationsOnly) {
  const Curve C = make_curve(3, 1, {{0}, {1}});
  const FieldPtr F = C.splitting_field;
  const Elem one = Elem::one(F);
  const SMembership in = s_membership(C, one, C.W[0], 1);
  EXPECT_TRUE(in.member) << in.reason;
  EXPECT_EQ(in.witnesses.size(), 3u);
  EXPECT_FALSE(s_membership(C, one, one, 1).member);
  EXPECT_FALSE(s_membership(C, Elem(F), Elem(F), 1).member);
}

TEST(HOrder, FormulaMatchesEnumerationAndHandCounts) {
  struct HCase {
    std::uint32_t p;
    std::vector<std::vector<std::int64_t>> R;
    std::uint64_t expected;  // 2(p-1), p^2 - 1 and p - 1 solutions
  };
  const std::vector<HCase> cases = {{3, {{1}}, 4},         {5, {{1}}, 8},         {3, {{0}, {1}}, 8},
                                    {5, {{0}, {1}}, 24},   {3, {{1}, {1}}, 2},    {5, {{1}, {1}}, 4}};
  for (const auto& [p, R, expected] : cases) {
    const Curve C = make_curve(p, 1, R);
    const HOrder H = subgroup_h_order(C);
    EXPECT_EQ(H.formula, expected) << C.R;
    ASSERT_TRUE(H.enumerated.has_value());
    EXPECT_EQ(*H.enumerated, expected) << C.R;
    EXPECT_EQ(testing::naive_h_count(C.R, make_field(p, H.search_degree)), expected) << C.R;
    // A larger field holds no further solutions.
    EXPECT_EQ(testing::naive_h_count(C.R, make_field(p, 2 * H.search_degree)), expected) << C.R;
  }
}

TEST(HOrder, SemidirectAction) {
  for (const auto& [p, R] : kGroups) {
    const GroupCheck c = check_semidirect(make_curve(p, 1, R));
    EXPECT_TRUE(c.ok) << c.detail;
  }
}

TEST(SpecialFlag, OnlyForMonicXAndXp) {
  EXPECT_TRUE(special_automorphism_flag(make_curve(3, 1, {{1}})).has_value());
  EXPECT_TRUE(special_automorphism_flag(make_curve(5, 1, {{0}, {1}})).has_value());
  EXPECT_FALSE(special_automorphism_flag(make_curve(3, 1, {{2}})).has_value());
  EXPECT_FALSE(special_automorphism_flag(make_curve(3, 1, {{1}, {1}})).has_value());
  EXPECT_FALSE(special_automorphism_flag(make_curve(3, 1, {{0}, {0}, {1}})).has_value());
}

TEST(Symplectic, BasisHasStandardGram) {
  Gen g(44);
  for (int k = 0; k < 15; ++k) {
    const Curve C = g.curve();
    const SymplecticBasis b = symplectic_basis(C);
    ASSERT_EQ(b.c.size(), C.h);
    std::vector<Elem> all = b.c;
    all.insert(all.end(), b.cprime.begin(), b.cprime.end());
    if (all.empty()) continue;
    const FpMatrix G = epsilon_gram(C, all);
    for (unsigned i = 0; i < 2 * C.h; ++i)
      for (unsigned j = 0; j < 2 * C.h; ++j) {
        std::int64_t want = 0;
        if (j == i + C.h) want = 1;
        if (i == j + C.h) want = C.p - 1;
        EXPECT_EQ(G(i, j), want) << C.R;
      }
  }
}

TEST(Symplectic, EpsilonIsAlternatingAndBilinear) {
  Gen g(45);
  for (int k = 0; k < 15; ++k) {
    const Curve C = g.curve();
    if (C.h == 0) continue;
    auto rand_w = [&] {
      Elem c(C.splitting_field);
      for (const Elem& w : C.W) c += w.scaled(static_cast<std::int64_t>(g.below(C.p)));
      return c;
    };
    const Elem a = rand_w(), b = rand_w(), c = rand_w();
    EXPECT_EQ(epsilon(C, a, a), 0u);
    EXPECT_EQ((epsilon(C, a, b) + epsilon(C, b, a)) % C.p, 0u);
    EXPECT_EQ(epsilon(C, a + b, c), (epsilon(C, a, c) + epsilon(C, b, c)) % C.p);
  }
}

TEST(Isotropic, DecompositionForHOne) {
  for (const auto& [p, R] : kGroups) {
    const Curve C = make_curve(p, 1, R);
    if (C.h != 1) continue;
    const GroupP P(C);
    const IsotropicDecomposition d = isotropic_decomposition(P, symplectic_basis(C));
    EXPECT_EQ(d.parts.size(), p);
    EXPECT_EQ(d.cal_A.size(), p * p);
    for (const GroupCheck& c : d.checks) EXPECT_TRUE(c.ok) << c.name << " " << c.detail;
  }
}

TEST(Isotropic, ConjugatesOverlapForHTwo) {
  // For h >= 2 two subgroups of order p^h inside one of order p^{h+1}
  // share at least p^{h-1} elements, so the conjugates cannot partition.
  const Curve C = make_curve(3, 1, {{0}, {0}, {1}});
  const GroupP P(C);
  const IsotropicDecomposition d = isotropic_decomposition(P, symplectic_basis(C));
  for (const GroupCheck& c : d.checks) {
    if (c.name == "parts_pairwise_trivial" || c.name == "partition_covers_maximal_abelian")
      EXPECT_FALSE(c.ok) << c.name;
    else
      EXPECT_TRUE(c.ok) << c.name << " " << c.detail;
  }
}

}  // namespace
}  // namespace aszeta
