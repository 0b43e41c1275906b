#include <gtest/gtest.h>

#include <random>

#include "ddbkit/mod2_poly.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

namespace ddbkit {
namespace {

const SWRing kR6 = SWRing::oriented(6);

Mod2Poly P(const char* text, const SWRing& ring = kR6) { return parse_poly(text, ring); }

TEST(Parse, ProductAndSum) {
  const auto p = P("w2*w3 + w5");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.to_string(), "w2*w3 + w5");
  EXPECT_TRUE(p.contains(Monomial(std::vector<int>{2, 3})));
  EXPECT_TRUE(p.contains(Monomial::generator(5)));
}

TEST(Parse, CancelsModTwo) { EXPECT_TRUE(P("w3 + w3").is_zero()); }

TEST(Parse, RejectsGeneratorOutsideRing) {
  try {
    P("w1");
    FAIL() << "w1 accepted in oriented ring";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kOutOfRange);
  }
  EXPECT_THROW(P("w7"), Error);
  EXPECT_NO_THROW(parse_poly("w1", SWRing::unoriented(3)));
}

TEST(Parse, RejectsBadSyntax) {
  for (const char* bad : {"", "w", "w2 +", "x2", "w2^", "w2^0", "w0", "w2 w3", "+ w2", "w2**w3"}) {
    try {
      P(bad);
      FAIL() << "accepted: '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == Errc::kSyntax || e.code() == Errc::kOutOfRange) << bad;
    }
  }
}

TEST(Parse, PowersAndWhitespace) {
  EXPECT_EQ(P("w2^3*w3").to_string(), "w2^3*w3");
  EXPECT_EQ(P("w3*w2*w2").to_string(), "w2^2*w3");
  EXPECT_EQ(P("  w2 +w3+  w4 ").to_string(), "w2 + w3 + w4");
  EXPECT_EQ(P("0").to_string(), "0");
  EXPECT_EQ(P("1 + w2").to_string(), "1 + w2");
}

TEST(Mul, Frobenius) { EXPECT_EQ(P("w2 + w3") * P("w2 + w3"), P("w2^2 + w3^2")); }

TEST(Mul, ZeroAbsorbs) { EXPECT_TRUE((P("w2") * Mod2Poly::zero(kR6)).is_zero()); }

TEST(Mul, HandExpansion) { EXPECT_EQ(P("w2 + w3") * P("w2"), P("w2^2 + w2*w3")); }

TEST(Mul, RingMismatch) {
  try {
    (void)(P("w2") * parse_poly("w2", SWRing::oriented(5)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kRingMismatch);
  }
}

TEST(Mul, HomogeneousDegreesAdd) {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    const int a = 2 + static_cast<int>(rng() % 6), b = 2 + static_cast<int>(rng() % 6);
    const auto p = testing::random_homogeneous(rng, kR6, a);
    const auto q = testing::random_homogeneous(rng, kR6, b);
    const auto pq = p * q;
    EXPECT_TRUE(pq.is_homogeneous());
    if (!pq.is_zero()) EXPECT_EQ(pq.max_degree(), a + b);
  }
}

TEST(BinomParity, Examples) {
  EXPECT_EQ(binom_parity(-1, 0), 1);
  EXPECT_EQ(binom_parity(2, 3), 0);
  EXPECT_EQ(binom_parity(6, 2), 1);
  EXPECT_EQ(binom_parity(4, 2), 0);
}

TEST(BinomParity, AgreesWithFactorialOracle) {
  for (int n = 0; n <= 20; ++n) {
    for (int k = 0; k <= 22; ++k) {
      EXPECT_EQ(binom_parity(n, k), oracle::factorial_binomial(n, k) % 2) << n << "," << k;
    }
  }
}

TEST(BinomParity, AgreesWithGeneralizedOracleForNegativeN) {
  for (int n = -40; n < 0; ++n) {
    for (int k = 0; k <= 20; ++k) {
      const auto c = oracle::generalized_binomial(n, k);
      EXPECT_EQ(binom_parity(n, k), static_cast<int>(c % 2 != 0)) << n << "," << k;
    }
  }
}

TEST(Basis, Examples) {
  const auto r4 = SWRing::oriented(4);
  const auto b = basis_of_degree(r4, 4);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].to_string(), "w2^2");
  EXPECT_EQ(b[1].to_string(), "w4");
  const auto unit = basis_of_degree(r4, 0);
  ASSERT_EQ(unit.size(), 1u);
  EXPECT_TRUE(unit[0].is_unit());
  EXPECT_TRUE(basis_of_degree(r4, 1).empty());
}

TEST(Basis, MatchesExhaustiveEnumeration) {
  const auto r4 = SWRing::oriented(4);
  const auto b = basis_of_degree(r4, 4);
  const auto o = oracle::monomials_of_degree(oracle::Ring{2, 4}, 4);
  EXPECT_EQ(b.size(), o.size());
}

TEST(Basis, UnboundedRingRejected) {
  try {
    basis_of_degree(SWRing::oriented_unbounded(), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kUnboundedRing);
  }
}

TEST(Basis, CountsMatchPartitionOracle) {
  for (int min_gen : {1, 2}) {
    for (int m : {2, 3, 5, 8, 13}) {
      const SWRing ring = min_gen == 1 ? SWRing::unoriented(m) : SWRing::oriented(m);
      for (int d = 0; d <= 20; ++d) {
        const auto basis = basis_of_degree(ring, d);
        EXPECT_EQ(static_cast<std::int64_t>(basis.size()), oracle::partition_count(min_gen, m, d))
            << ring.describe() << " d=" << d;
        EXPECT_TRUE(std::is_sorted(basis.begin(), basis.end()));
        for (const auto& mono : basis) EXPECT_EQ(mono.degree(), d);
      }
    }
  }
}

TEST(Basis, Deterministic) {
  const auto r = SWRing::oriented(9);
  EXPECT_EQ(basis_of_degree(r, 15), basis_of_degree(r, 15));
}

TEST(Order, CanonicalSerialization) {
  // Degree first, then lexicographic on the sorted generator list.
  EXPECT_EQ(P("w6 + w3^2 + w2^3 + w2*w4 + w2 + 1").to_string(),
            "1 + w2 + w2^3 + w2*w4 + w3^2 + w6");
}

TEST(Project, DropsGeneratorsAboveRank) {
  const auto big = SWRing::oriented(9);
  const auto p = parse_poly("w2*w3 + w5 + w9 + w2*w7", big);
  EXPECT_EQ(p.project(SWRing::oriented(5)).to_string(), "w2*w3 + w5");
}

// Ring axioms on random triples.
class RingAxioms : public ::testing::TestWithParam<int> {};

TEST_P(RingAxioms, Hold) {
  std::mt19937 rng(static_cast<unsigned>(GetParam()));
  const auto ring = SWRing::oriented(8);
  for (int i = 0; i < 40; ++i) {
    const auto p = testing::random_poly(rng, ring, 12);
    const auto q = testing::random_poly(rng, ring, 12);
    const auto r = testing::random_poly(rng, ring, 12);
    EXPECT_TRUE((p + p).is_zero());
    EXPECT_EQ((p + q) + r, p + (q + r));
    EXPECT_EQ(p + q, q + p);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_EQ(p * Mod2Poly::one(ring), p);
    EXPECT_EQ((p + q) * (p + q), p * p + q * q);
    EXPECT_EQ(testing::to_oracle(p * q), oracle::mul(testing::to_oracle(p), testing::to_oracle(q)));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RingAxioms, ::testing::Range(1, 6));

TEST(RoundTrip, ThousandRandomPolynomials) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const SWRing ring = (i % 2 == 0) ? SWRing::oriented(10) : SWRing::unoriented(7);
    const auto p = testing::random_poly(rng, ring, 14);
    const std::string text = p.to_string();
    const auto back = parse_poly(text, ring);
    ASSERT_EQ(back, p) << text;
    ASSERT_EQ(back.to_string(), text);
  }
}

TEST(RoundTrip, ParseThenSerializeIsCanonical) {
  EXPECT_EQ(P("w5+w3*w2 + w2^2 + w4 + w4").to_string(), "w2^2 + w2*w3 + w5");
}

}  // namespace
}  // namespace ddbkit
