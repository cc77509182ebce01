#include "oracles.hpp"
#include "rainbow/bounds.hpp"
#include "rainbow/rng.hpp"

#include <gtest/gtest.h>

namespace rainbow {
namespace {

Rational q(std::int64_t num, std::int64_t den = 1) { return Rational(Integer(num), Integer(den)); }

TEST(BinomialTest, MatchesPascal) {
  for (unsigned n = 0; n <= 70; ++n)
    for (unsigned k = 0; k <= n + 1; ++k)
      ASSERT_EQ(binomial(n, k), oracle::pascal_binomial(n, k)) << n << " " << k;
}

TEST(BinomialTest, CentralBeyond64Bits) {
  // binom(68, 34) no longer fits in 64 bits.
  EXPECT_GT(binomial(68, 34), Integer(UINT64_MAX));
  EXPECT_EQ(binomial(6, 3), 20);
  EXPECT_EQ(binomial(8, 4), 70);
}

TEST(FloorRootTest, AgreesWithBisection) {
  Rng rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    Integer x = rng.next();
    for (int w = 0; w < trial % 4; ++w) x = (x << 64) + rng.next();
    const unsigned k = 1 + static_cast<unsigned>(rng.below(12));
    ASSERT_EQ(floor_root(x, k), oracle::floor_root_by_bisection(x, k)) << x << " " << k;
  }
  for (std::int64_t x = 0; x < 2000; ++x)
    for (unsigned k = 1; k <= 4; ++k) ASSERT_EQ(floor_root(x, k), oracle::floor_root_by_bisection(x, k));
}

TEST(FloorRootTest, PerfectPowers) {
  EXPECT_EQ(floor_root(ipow(1000, 2), 3), 100);
  EXPECT_EQ(floor_root(ipow(4096, 5), 6), 1024);
  EXPECT_EQ(floor_root(ipow(4096, 5), 6) , oracle::floor_root_by_bisection(ipow(4096, 5), 6));
  EXPECT_THROW(floor_root(-1, 2), std::invalid_argument);
}

TEST(FloorCeilTest, NegativeRationals) {
  EXPECT_EQ(floor_of(q(-7, 2)), -4);
  EXPECT_EQ(ceil_of(q(-7, 2)), -3);
  EXPECT_EQ(floor_of(q(7, 2)), 3);
  EXPECT_EQ(ceil_of(q(7, 2)), 4);
  EXPECT_EQ(floor_of(q(6, 3)), 2);
  EXPECT_EQ(ceil_of(q(6, 3)), 2);
}

TEST(LowerBoundGPrimeTest, Checkpoints) {
  EXPECT_EQ(lower_bound_g_prime(3, 100).value, q(45));
  EXPECT_EQ(lower_bound_g_prime(4, 50).value, q(6));
  EXPECT_EQ(lower_bound_g_prime(3, 10).value, q(0));
  EXPECT_TRUE(lower_bound_g_prime(3, 10).domain_ok);
  BoundValue odd = lower_bound_g_prime(3, 11);
  EXPECT_EQ(odd.value, q(1, 2));
  EXPECT_EQ(odd.floor, 0);
  EXPECT_EQ(odd.ceil, 1);
}

TEST(LowerBoundGPrimeTest, OutOfDomainIsFlagged) {
  BoundValue b = lower_bound_g_prime(2, 10);
  EXPECT_FALSE(b.domain_ok);
  EXPECT_FALSE(b.domain_note.empty());
}

TEST(LowerBoundGPrimeTest, NeverExceedsN) {
  for (int r = 3; r <= 6; ++r)
    for (std::int64_t n = 1; n <= 300; ++n) ASSERT_LT(lower_bound_g_prime(r, n).value, q(n));
}

TEST(UpperBoundGTest, ExactCheckpoint) {
  BoundValue b = upper_bound_g(3, 1000);
  EXPECT_TRUE(b.domain_ok);
  EXPECT_TRUE(b.exact);
  EXPECT_EQ(b.value, q(8975, 9));
  EXPECT_EQ(b.floor, 997);
  EXPECT_LT(abs(b.real - Real(8975) / 9), Real("1e-45"));
}

TEST(UpperBoundGTest, BoundaryIsOutOfDomain) {
  EXPECT_FALSE(upper_bound_g(3, 216).domain_ok);
  EXPECT_TRUE(upper_bound_g(3, 217).domain_ok);
  EXPECT_FALSE(upper_bound_g(2, 1000).domain_ok);
}

TEST(UpperBoundGTest, IntegerFourthRoot) {
  BoundValue b = upper_bound_g(4, 1297);
  EXPECT_TRUE(b.domain_ok);
  EXPECT_FALSE(b.exact);
  const Integer root = oracle::floor_root_by_bisection(ipow(1297, 3), 4);
  EXPECT_EQ(b.value, Rational(1297) - Rational(root, Integer(48)));
  // The floor-root value can only overstate the true bound, by under 1/48.
  EXPECT_GT(Real(numerator(b.value)) / Real(denominator(b.value)), b.real);
  EXPECT_LT(Real(numerator(b.value)) / Real(denominator(b.value)) - b.real, Real(1) / 48);
}

TEST(BoundsHTest, PowersOfTwo) {
  HBounds h = bounds_h(3, 4096);
  EXPECT_EQ(h.lower.value, q(36928, 9));
  EXPECT_EQ(h.upper.value, q(35840));
  EXPECT_TRUE(h.lower.exact);
  EXPECT_TRUE(h.upper.exact);
  EXPECT_TRUE(h.lower.domain_ok);
  EXPECT_NE(h.upper.domain_note.find("unquantified"), std::string::npos);
}

TEST(BoundsHTest, LowerAtThousand) { EXPECT_EQ(bounds_h(3, 1000).lower.value, q(9025, 9)); }

TEST(BoundsHTest, LowerBelowUpperSweep) {
  for (int r = 3; r <= 5; ++r) {
    const std::int64_t start = ipow(6, static_cast<unsigned>(r)).convert_to<std::int64_t>() + 1;
    for (std::int64_t n = start; n < start + 4000; n += 37) {
      HBounds h = bounds_h(r, n);
      ASSERT_TRUE(h.lower.domain_ok);
      ASSERT_LT(h.lower.value, h.upper.value) << r << " " << n;
      ASSERT_LT(h.lower.real, h.upper.real);
    }
  }
}

TEST(WeakAsymptoticTest, Checkpoints) {
  EXPECT_EQ(weak_asymptotic_bound(3, 64).value, q(0));
  EXPECT_EQ(weak_asymptotic_bound(3, 256).value, q(128));
  EXPECT_EQ(weak_asymptotic_bound(4, 256).value, q(0));
  EXPECT_TRUE(weak_asymptotic_bound(3, 256).exact);
}

TEST(WeakAsymptoticTest, NonSquareUsesRealValue) {
  BoundValue b = weak_asymptotic_bound(3, 50);
  EXPECT_FALSE(b.exact);
  EXPECT_EQ(b.value, q(50 - 8 * 7));
  EXPECT_LT(abs(b.real - (Real(50) - 8 * sqrt(Real(50)))), Real("1e-45"));
}

TEST(AchBoundTest, Checkpoints) {
  EXPECT_EQ(ach_bound(3, 4).value, q(2));
  EXPECT_EQ(ach_bound(5, 100).value, q(92));
  EXPECT_EQ(ach_bound(3, 5).value, q(4));
}

TEST(CheckGiboundsTest, Checkpoints) {
  GiCheck tight = check_gibounds(3, 10, 10, 5);
  EXPECT_TRUE(tight.holds);
  EXPECT_EQ(tight.lhs, q(0));
  EXPECT_EQ(tight.rhs, q(50));

  GiCheck small = check_gibounds(3, 10, 10, 2);
  EXPECT_FALSE(small.holds);
  EXPECT_EQ(small.lhs, q(48));
  EXPECT_EQ(small.rhs, q(20));
}

TEST(CheckGiboundsTest, RejectsDegenerateR) { EXPECT_THROW(check_gibounds(1, 3, 3, 1), std::invalid_argument); }

}  // namespace
}  // namespace rainbow
