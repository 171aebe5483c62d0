#include <gtest/gtest.h>

#include "hsp/errors.hpp"
#include "hsp/number_theory.hpp"
#include "hsp/rng.hpp"

using namespace hsp;

namespace {

u64 naive_pow(u64 base, u64 exp, u64 m) {
  u64 acc = 1 % m;
  for (u64 k = 0; k < exp; ++k) acc = acc * (base % m) % m;
  return acc;
}

u64 naive_order(u64 x, u64 m) {
  u64 acc = x % m;
  for (u64 k = 1;; ++k) {
    if (acc == 1 % m) return k;
    acc = acc * x % m;
  }
}

}  // namespace

TEST(ModPow, Examples) {
  EXPECT_EQ(mod_pow(5, 0, 11).value, 1u);
  EXPECT_EQ(mod_pow(3, 2, 7).value, 2u);
  EXPECT_EQ(mod_pow(3, 14, 49).value, 30u);
  EXPECT_EQ(mod_pow(3, 14, 49).value, naive_pow(3, 14, 49));
  EXPECT_EQ(mod_pow(-2, 3, 7).value, 6u);
  EXPECT_EQ(mod_pow(4, 5, 1).value, 0u);
}

TEST(ModPow, ExponentsAdd) {
  Rng rng(11);
  for (int k = 0; k < 2000; ++k) {
    const u64 m = 1 + rng.uniform(u64{1} << 31);
    const i64 x = static_cast<i64>(rng.uniform(u64{1} << 40));
    const u64 a = rng.uniform(1'000'000), b = rng.uniform(1'000'000);
    EXPECT_EQ(mod_pow(x, a + b, m).value,
              mulmod(mod_pow(x, a, m).value, mod_pow(x, b, m).value, m));
  }
}

TEST(ModPow, AgreesWithRepeatedMultiplication) {
  for (u64 m = 1; m < 60; ++m)
    for (u64 x = 0; x < m; ++x)
      for (u64 e = 0; e < 20; ++e) ASSERT_EQ(mod_pow(static_cast<i64>(x), e, m).value, naive_pow(x, e, m));
}

TEST(ModInv, Examples) {
  EXPECT_EQ(mod_inv(1, 13).value, 1u);
  EXPECT_EQ(mod_inv(2, 7).value, 4u);
  EXPECT_THROW(mod_inv(7, 49), NonUnit);
  EXPECT_EQ(mod_inv(-1, 10).value, 9u);
}

TEST(ModInv, IsAnInverseWheneverItReturns) {
  for (u64 m = 2; m < 400; ++m) {
    for (u64 x = 0; x < m; ++x) {
      if (gcd(x, m) == 1) {
        ASSERT_EQ(mulmod(mod_inv(static_cast<i64>(x), m).value, x, m), 1u) << x << " mod " << m;
      } else {
        ASSERT_THROW(mod_inv(static_cast<i64>(x), m), NonUnit);
      }
    }
  }
}

TEST(MultiplicativeOrder, Examples) {
  EXPECT_EQ(multiplicative_order(1, 10), 1u);
  EXPECT_EQ(multiplicative_order(30, 49), 3u);
  EXPECT_EQ(multiplicative_order(3, 49), 42u);
  EXPECT_THROW(multiplicative_order(7, 49), NonUnit);
}

TEST(MultiplicativeOrder, MatchesScanForSmallModuli) {
  for (u64 m = 2; m <= 1000; ++m)
    for (u64 x = 1; x < m; ++x) {
      if (gcd(x, m) == 1) {
        ASSERT_EQ(multiplicative_order(static_cast<i64>(x), m), naive_order(x, m));
      }
    }
}

TEST(MultiplicativeOrder, DividesEulerPhi) {
  Rng rng(5);
  for (u64 m = 2; m <= 10'000; ++m) {
    const u64 phi = euler_phi(m);
    for (int k = 0; k < 8; ++k) {
      const u64 x = rng.uniform(m);
      if (gcd(x, m) != 1) continue;
      ASSERT_EQ(phi % multiplicative_order(static_cast<i64>(x), m), 0u) << x << " mod " << m;
    }
  }
}

TEST(PrimitiveRoot, Examples) {
  EXPECT_EQ(find_primitive_root(3, 1).value, 2u);
  EXPECT_EQ(find_primitive_root(7, 1).value, 3u);
  EXPECT_EQ(find_primitive_root(7, 2).value, 3u);
  EXPECT_EQ(find_primitive_root(7, 2).modulus, 49u);
}

TEST(PrimitiveRoot, HasFullOrderAndIsSmallest) {
  for (u64 p : {3, 5, 7, 11, 13, 19, 23, 31, 37, 43}) {
    for (unsigned r = 1; ipow(p, r) < 20'000; ++r) {
      const u64 pr = ipow(p, r);
      const u64 u = find_primitive_root(p, r).value;
      ASSERT_EQ(naive_order(u, pr), ipow(p, r - 1) * (p - 1));
      for (u64 c = 2; c < u; ++c) {
        if (c % p != 0) {
          ASSERT_LT(naive_order(c, pr), ipow(p, r - 1) * (p - 1));
        }
      }
    }
  }
}

TEST(Helpers, ValuationAndPrimes) {
  EXPECT_EQ(valuation(343, 7), 3u);
  EXPECT_EQ(valuation(18, 3), 2u);
  EXPECT_EQ(valuation(5, 3), 0u);
  EXPECT_EQ(prime_factors(360), (std::vector<u64>{2, 3, 5}));
  EXPECT_EQ(euler_phi(49), 42u);
  EXPECT_TRUE(is_prime(3331));
  EXPECT_FALSE(is_prime(3333));
  EXPECT_EQ(reduce(-1, 7), 6u);
}

TEST(Helpers, MulmodNearTheTopOfTheRange) {
  const u64 m = (u64{1} << 62) + 135;
  const u64 a = m - 1, b = m - 2;
  // (-1)(-2) = 2
  EXPECT_EQ(mulmod(a, b, m), 2u);
  EXPECT_EQ(addmod(a, a, m), m - 2);
}
