#include <gtest/gtest.h>

#include <random>

#include "ddbkit/graded_group.hpp"

namespace ddbkit {
namespace {

GradedAbGroup wu_manifold() {
  GradedAbGroup g;
  g.add_free(0, 1);
  g.add_torsion(3, 2);
  g.add_free(5, 1);
  return g;
}

GradedAbGroup random_group(std::mt19937& rng, bool torsion) {
  GradedAbGroup g;
  std::uniform_int_distribution<int> deg(0, 12), rank(0, 3), order(2, 12), coin(0, 2);
  const int n = 1 + static_cast<int>(rng() % 5);
  for (int i = 0; i < n; ++i) {
    const int d = deg(rng);
    g.add_free(d, rank(rng));
    if (torsion && coin(rng) == 0) g.add_torsion(d, order(rng));
  }
  return g;
}

TEST(EulerChar, Examples) {
  EXPECT_EQ(euler_char(GradedAbGroup::sphere(6)), 2);
  EXPECT_EQ(euler_char(wu_manifold()), 0);
  EXPECT_EQ(euler_char(GradedAbGroup::product_of_spheres(3, 2)), 0);
  EXPECT_EQ(euler_char(GradedAbGroup::sphere(5)), 0);
  EXPECT_EQ(euler_char(GradedAbGroup::point()), 1);
}

TEST(EulerChar, ProductOfOddAndEvenSphereByDirectSum) {
  for (int l1 : {1, 3, 5, 7}) {
    for (int l2 : {2, 4, 6}) {
      const auto s = direct_sum(GradedAbGroup::sphere(l1), GradedAbGroup::sphere(l1).shifted(l2));
      EXPECT_EQ(s, GradedAbGroup::product_of_spheres(l1, l2));
      EXPECT_EQ(euler_char(s), 0);
    }
  }
}

TEST(EulerChar, AdditiveOverDirectSums) {
  std::mt19937 rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_group(rng, true);
    const auto b = random_group(rng, true);
    EXPECT_EQ(euler_char(direct_sum(a, b)), euler_char(a) + euler_char(b));
  }
}

TEST(EulerCheck, Examples) {
  EXPECT_TRUE(ddb_euler_check(2, 0, 0));
  EXPECT_TRUE(ddb_euler_check(2, 2, 2));
  EXPECT_FALSE(ddb_euler_check(0, 0, 0));
}

TEST(Gysin, S2WithFiveSphereFiber) {
  EXPECT_EQ(gysin_total_space(GradedAbGroup::sphere(2), 5, true), GradedAbGroup::product_of_spheres(2, 5));
}

TEST(Gysin, HomotopySphereBase) {
  for (int lm : {2, 4, 6}) {
    for (int lp : {3, 5, 7}) {
      EXPECT_EQ(gysin_total_space(GradedAbGroup::sphere(lm), lp, true),
                GradedAbGroup::product_of_spheres(lm, lp));
    }
  }
}

TEST(Gysin, PointBase) {
  for (int l = 1; l <= 9; ++l) EXPECT_EQ(gysin_total_space(GradedAbGroup::point(), l, true), GradedAbGroup::sphere(l));
}

TEST(Gysin, NonzeroEulerClassRefused) {
  try {
    gysin_total_space(GradedAbGroup::sphere(2), 5, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kUnsupported);
  }
  EXPECT_THROW(gysin_total_space(GradedAbGroup::sphere(2), 0, true), Error);
}

TEST(Gysin, EulerProductFormula) {
  std::mt19937 rng(50);
  for (int i = 0; i < 50; ++i) {
    const auto base = random_group(rng, i % 2 == 0);
    const int l = 1 + static_cast<int>(rng() % 9);
    const auto total = gysin_total_space(base, l, true);
    EXPECT_EQ(euler_char(total), euler_char(base) * (1 + (l % 2 == 0 ? 1 : -1)));
  }
}

TEST(Gysin, TorsionFreeBaseGivesTorsionFreeTotal) {
  std::mt19937 rng(51);
  for (int i = 0; i < 50; ++i) {
    const auto base = random_group(rng, false);
    ASSERT_TRUE(base.is_torsion_free());
    EXPECT_TRUE(gysin_total_space(base, 1 + static_cast<int>(rng() % 9), true).is_torsion_free());
  }
}

TEST(Torsion, EqualityNormalizesPrimePowers) {
  GradedAbGroup a, b, c;
  a.add_torsion(3, 6);
  b.add_torsion(3, 2);
  b.add_torsion(3, 3);
  c.add_torsion(3, 4);
  c.add_torsion(3, 3);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == c);
  EXPECT_EQ(a.normalized_torsion(3), (std::vector<std::int64_t>{2, 3}));
}

TEST(Torsion, Invariants) {
  GradedAbGroup g;
  EXPECT_THROW(g.add_torsion(2, 1), Error);
  EXPECT_THROW(g.add_free(2, -1), Error);
  EXPECT_THROW(g.add_free(-1, 1), Error);
  EXPECT_EQ(g.top_degree(), -1);
  g.add_free(7, 0);
  EXPECT_EQ(g.top_degree(), -1);
}

TEST(TextFormat, RoundTrip) {
  const auto g = wu_manifold();
  EXPECT_EQ(g.to_text(), "deg 0: Z^1\ndeg 3: Z^0 + Z/2\ndeg 5: Z^1\n");
  EXPECT_EQ(GradedAbGroup::parse(g.to_text()), g);
  std::mt19937 rng(9);
  for (int i = 0; i < 100; ++i) {
    const auto r = random_group(rng, true);
    EXPECT_EQ(GradedAbGroup::parse(r.to_text()), r);
    EXPECT_EQ(GradedAbGroup::parse(r.to_text()).to_text(), r.to_text());
  }
}

TEST(TextFormat, CommentsAndWhitespace) {
  const auto g = GradedAbGroup::parse("# S^2\n\ndeg 0: Z^1\n  deg 2 :Z^1   # top\n");
  EXPECT_EQ(g, GradedAbGroup::sphere(2));
}

TEST(TextFormat, Rejects) {
  for (const char* bad : {"deg x: Z^1", "deg 0 Z^1", "deg 0: Z^1 + Z/1", "deg 0: Z^1 +", "deg 0: Z^1\ndeg 0: Z^1",
                          "degree 0: Z^1", "deg 0: Z^1 Z/2"}) {
    try {
      GradedAbGroup::parse(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kSyntax) << bad;
    }
  }
}

TEST(JsonFormat, RoundTrip) {
  std::mt19937 rng(10);
  for (int i = 0; i < 100; ++i) {
    const auto r = random_group(rng, true);
    EXPECT_EQ(GradedAbGroup::from_json(nlohmann::json::parse(r.to_json().dump())), r);
  }
  const auto j = wu_manifold().to_json();
  EXPECT_EQ(j[1]["degree"], 3);
  EXPECT_EQ(j[1]["free_rank"], 0);
  EXPECT_EQ(j[1]["torsion"], nlohmann::json::array({2}));
}

TEST(Btop, WuManifold) {
  const auto r = btop_ring(5, 2);
  EXPECT_EQ(r.s, 1);
  ASSERT_TRUE(r.torsion_order.has_value());
  EXPECT_EQ(*r.torsion_order, 2);
  EXPECT_EQ(r.presentation(), "Z[e,a]/<2e, ea, a^2, e^2> with |e| = 3, |a| = 5");
  EXPECT_EQ(r.groups(), wu_manifold());
}

TEST(Btop, OddFiberLeavesOrderSymbolic) {
  const auto r = btop_ring(11, 3);
  EXPECT_EQ(r.s, 2);
  EXPECT_FALSE(r.torsion_order.has_value());
  EXPECT_EQ(r.presentation(), "Z[e,a]/<me, ea, a^2, e^3> with |e| = 4, |a| = 11");
  EXPECT_THROW(r.groups(), Error);
}

TEST(Btop, CongruenceRejection) {
  try {
    btop_ring(6, 2);
    FAIL();
  } catch (const BtopError& e) {
    EXPECT_EQ(e.why(), BtopRejection::kCongruence);
    EXPECT_NE(std::string(e.what()).find("homotopy sphere"), std::string::npos);
  }
}

TEST(Btop, EvenFiberNeedsDimension2kPlus1) {
  // 8 = -1 mod 3, but k = 2 is even and 8 != 5.
  try {
    btop_ring(8, 2);
    FAIL();
  } catch (const BtopError& e) {
    EXPECT_EQ(e.why(), BtopRejection::kEvenFiber);
  }
}

TEST(Btop, DiagonalAlwaysSucceeds) {
  for (int k = 1; k <= 30; ++k) {
    const auto r = btop_ring(2 * k + 1, k);
    EXPECT_EQ(r.s, 1) << k;
    if (k % 2 == 0) EXPECT_EQ(r.torsion_order, 2);
  }
}

TEST(Btop, ExhaustiveCongruenceScan) {
  for (int k = 1; k <= 10; ++k) {
    for (int d = k + 1; d <= 60; ++d) {
      const bool congruent = (d - k) % (k + 1) == 0;
      const bool expected = congruent && (k % 2 == 1 || d == 2 * k + 1);
      bool ok = true;
      try {
        const auto r = btop_ring(d, k);
        EXPECT_EQ(r.s, (d - k) / (k + 1));
        EXPECT_GE(r.s, 1);
      } catch (const BtopError& e) {
        ok = false;
        EXPECT_EQ(e.why(), congruent ? BtopRejection::kEvenFiber : BtopRejection::kCongruence);
      }
      EXPECT_EQ(ok, expected) << "d=" << d << " k=" << k;
      if (d % (k + 1) != k) EXPECT_FALSE(ok);
    }
  }
}

TEST(Btop, Preconditions) {
  EXPECT_THROW(btop_ring(5, 0), Error);
  EXPECT_THROW(btop_ring(5, 5), Error);
}

}  // namespace
}  // namespace ddbkit
