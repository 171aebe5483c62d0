#include <gtest/gtest.h>

#include <algorithm>

#include "hsp/errors.hpp"
#include "hsp/group.hpp"
#include "hsp/rng.hpp"

using namespace hsp;

namespace {

GroupParams G21() { return make_params(7, 3, 1, 1, 1); }

}  // namespace

TEST(MakeParams, Examples) {
  EXPECT_EQ(G21().alpha(), 2u);
  EXPECT_EQ(G21().u(), 3u);
  const auto P = make_params(7, 3, 2, 1, 1);
  EXPECT_EQ(P.alpha(), 30u);
  EXPECT_EQ(P.u(), 3u);
  EXPECT_EQ(P.order(), 147u);
  EXPECT_EQ(make_params(19, 3, 1, 2, 2).alpha(), 4u);  // 2^(18/9)
}

TEST(MakeParams, RejectsWithReason) {
  auto reason = [](auto&& fn) {
    try {
      fn();
    } catch (const InvalidParams& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(reason([] { make_params(7, 5, 1, 1, 1); }), "q^t does not divide p-1");
  EXPECT_EQ(reason([] { make_params(7, 3, 1, 2, 2); }), "q^t does not divide p-1");
  EXPECT_EQ(reason([] { make_params(7, 3, 1, 1, 2); }), "t must lie in [1, s]");
  EXPECT_EQ(reason([] { make_params(7, 3, 1, 1, 0); }), "t must lie in [1, s]");
  EXPECT_EQ(reason([] { make_params(7, 7, 1, 1, 1); }), "p and q must be distinct");
  EXPECT_EQ(reason([] { make_params(9, 3, 1, 1, 1); }), "p must be an odd prime");
  EXPECT_EQ(reason([] { make_params(7, 2, 1, 1, 1); }), "q must be an odd prime");
  EXPECT_EQ(reason([] { make_params(7, 3, 1, 1, 1, 3); }), "l is not a unit modulo q^t");
  EXPECT_EQ(reason([] { make_params(7, 3, 0, 1, 1); }), "r must be positive");
}

TEST(MakeParams, AlphaHasOrderQtForEveryL) {
  for (const auto& base : enumerate_valid_params(3000)) {
    for (u64 l = 1; l < base.qt(); ++l) {
      if (l % base.q() == 0) continue;
      const auto P = make_params(base.p(), base.q(), base.r(), base.s(), base.t(), l);
      ASSERT_EQ(multiplicative_order(static_cast<i64>(P.alpha()), P.pr()), P.qt());
      ASSERT_EQ(mod_pow(static_cast<i64>(P.alpha()), P.qs(), P.pr()).value, 1u);
    }
  }
}

TEST(Multiply, Examples) {
  const auto P = G21();
  EXPECT_EQ(multiply(P, identity(), GroupElement{4, 2}), (GroupElement{4, 2}));
  EXPECT_EQ(multiply(P, {1, 1}, {1, 0}), (GroupElement{3, 1}));
  EXPECT_EQ(multiply(P, {0, 1}, {1, 0}), (GroupElement{2, 1}));
}

TEST(Inverse, Examples) {
  const auto P = G21();
  EXPECT_EQ(inverse(P, identity()), identity());
  EXPECT_EQ(inverse(P, {1, 1}), (GroupElement{3, 2}));
  EXPECT_EQ(inverse(P, {5, 0}), (GroupElement{2, 0}));
}

TEST(Power, Examples) {
  const auto P = G21();
  EXPECT_EQ(power(P, {1, 1}, 0), identity());
  EXPECT_EQ(power(P, {1, 1}, 2), (GroupElement{3, 2}));
  EXPECT_EQ(power(P, {1, 1}, 3), identity());
  EXPECT_EQ(power(P, {1, 1}, -1), inverse(P, {1, 1}));
}

TEST(Commutator, Examples) {
  const auto P = G21();
  EXPECT_EQ(commutator(P, {1, 1}, {1, 1}), identity());
  EXPECT_EQ(commutator(P, {1, 1}, {1, 0}), (GroupElement{1, 0}));
  EXPECT_EQ(commutator(P, {2, 0}, {5, 0}), identity());
}

TEST(SOf, Examples) {
  const auto P = G21();
  EXPECT_EQ(S_of(P, 0, 0).value, 0u);
  EXPECT_EQ(S_of(P, 1, 0).value, 1u);
  EXPECT_EQ(S_of(P, 2, 0).value, 3u);
  EXPECT_EQ(S_of(make_params(7, 3, 2, 1, 1), 2, 0).value, 31u);
  EXPECT_THROW(S_of(P, 1, 1), NonUnitDenominator);
}

TEST(SOf, SatisfiesTheRecurrence) {
  for (const auto& P : enumerate_valid_params(3000)) {
    for (unsigned j = 0; j < P.t(); ++j) {
      const u64 step = P.alpha_pow(ipow(P.q(), j));
      for (u64 n = 0; n < 2 * P.qs(); ++n)
        ASSERT_EQ(S_of(P, n + 1, j).value,
                  addmod(1, mulmod(step, S_of(P, n, j).value, P.pr()), P.pr()));
    }
  }
}

TEST(IsoPhi, Examples) {
  const auto P = G21();
  EXPECT_EQ(iso_phi(P, 1, {4, 2}), (GroupElement{4, 2}));
  EXPECT_EQ(iso_phi(P, 2, {1, 1}), (GroupElement{1, 2}));
  EXPECT_THROW(iso_phi(P, 3, {1, 1}), NonUnit);
}

TEST(IsoPhi, IsABijectiveHomomorphismOnSmallGroups) {
  for (const auto& P : enumerate_valid_params(400)) {
    for (u64 l = 1; l < P.qt(); ++l) {
      if (l % P.q() == 0) continue;
      const auto Q = make_params(P.p(), P.q(), P.r(), P.s(), P.t(), l);
      std::vector<char> hit(P.order(), 0);
      for (std::size_t x = 0; x < P.order(); ++x) {
        const auto g = P.element(x);
        hit[Q.index(iso_phi(P, l, g))] = 1;
        for (std::size_t y = 0; y < P.order(); ++y) {
          const auto h = P.element(y);
          ASSERT_EQ(iso_phi(P, l, multiply(P, g, h)),
                    multiply(Q, iso_phi(P, l, g), iso_phi(P, l, h)));
        }
      }
      ASSERT_EQ(std::count(hit.begin(), hit.end(), 1), static_cast<long>(P.order()));
    }
  }
}

TEST(GroupLaws, PowerMatchesRepeatedMultiplication) {
  for (const auto& P : enumerate_valid_params(1000)) {
    for (std::size_t x = 0; x < P.order(); ++x) {
      const auto g = P.element(x);
      GroupElement acc = identity();
      for (u64 k = 0; k <= P.order(); ++k) {
        ASSERT_EQ(power(P, g, static_cast<i64>(k)), acc) << describe(P) << " " << to_string(g);
        acc = multiply(P, acc, g);
      }
    }
  }
}

TEST(GroupLaws, CommutatorClosedForm) {
  for (const auto& P : enumerate_valid_params(1000)) {
    for (std::size_t x = 0; x < P.order(); ++x)
      for (std::size_t y = 0; y < P.order(); ++y) {
        const auto g = P.element(x), h = P.element(y);
        ASSERT_EQ(commutator(P, g, h), (GroupElement{commutator_exponent(P, g, h), 0}));
      }
  }
}

TEST(GroupLaws, AssociativityIdentityInverse) {
  Rng rng(7);
  for (const auto& P : enumerate_valid_params(20'000)) {
    for (int k = 0; k < 200; ++k) {
      const auto a = P.element(rng.uniform(P.order()));
      const auto b = P.element(rng.uniform(P.order()));
      const auto c = P.element(rng.uniform(P.order()));
      ASSERT_EQ(multiply(P, multiply(P, a, b), c), multiply(P, a, multiply(P, b, c)));
      ASSERT_EQ(multiply(P, a, identity()), a);
      ASSERT_EQ(multiply(P, identity(), a), a);
      ASSERT_EQ(multiply(P, a, inverse(P, a)), identity());
      ASSERT_EQ(multiply(P, inverse(P, a), a), identity());
      ASSERT_EQ(conjugate(P, a, b), multiply(P, multiply(P, a, b), inverse(P, a)));
    }
  }
}

TEST(GroupLaws, OrderOfElementsWithTwistFreeYPart) {
  for (const auto& P : enumerate_valid_params(1500)) {
    for (std::size_t x = 0; x < P.order(); ++x) {
      const auto g = P.element(x);
      if (g.b % P.qt() != 0) continue;
      const unsigned i = g.a == 0 ? P.r() : valuation(g.a, P.p());
      const unsigned j = g.b == 0 ? P.s() : valuation(g.b, P.q());
      ASSERT_EQ(element_order(P, g), ipow(P.p(), P.r() - i) * ipow(P.q(), P.s() - j));
    }
  }
}

TEST(QuotientParams, ReducesAlpha) {
  const auto P = make_params(7, 3, 2, 2, 1);
  const auto Q = quotient_params(P, 1);
  EXPECT_EQ(Q.r(), 1u);
  EXPECT_EQ(Q.alpha(), P.alpha() % 7);
  EXPECT_EQ(quotient_params(P, 2), P);
}

TEST(EnumerateValidParams, ContainsTheStandardSets) {
  const auto all = enumerate_valid_params(10'000);
  auto has = [&](u64 p, u64 q, unsigned r, unsigned s, unsigned t) {
    return std::any_of(all.begin(), all.end(), [&](const GroupParams& P) {
      return P.p() == p && P.q() == q && P.r() == r && P.s() == s && P.t() == t;
    });
  };
  EXPECT_TRUE(has(7, 3, 1, 1, 1));
  EXPECT_TRUE(has(7, 3, 2, 1, 1));
  EXPECT_TRUE(has(7, 3, 2, 2, 1));
  EXPECT_TRUE(has(19, 3, 1, 2, 2));
  EXPECT_TRUE(has(19, 3, 1, 2, 1));
  for (const auto& P : all) EXPECT_LE(P.order(), 10'000u);
}
