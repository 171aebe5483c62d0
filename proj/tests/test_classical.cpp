#include <gtest/gtest.h>

#include "hsp/classical.hpp"
#include "hsp/errors.hpp"

using namespace hsp;

TEST(RecoverFromCollision, Examples) {
  const auto P = make_params(7, 3, 1, 1, 1);
  CollisionRecord rec;
  rec.u = 1;
  rec.v = 1;
  EXPECT_EQ(recover_from_collision(rec, P, 0), 1u);
  rec.u = 3;
  rec.v = 2;  // (3, 2) = (x y)^2
  EXPECT_EQ(recover_from_collision(rec, P, 0), 1u);
  rec.v = 0;
  EXPECT_THROW(recover_from_collision(rec, P, 0), DegenerateV);
  rec.v = 3;
  EXPECT_THROW(recover_from_collision(rec, make_params(7, 3, 1, 2, 1), 0), DegenerateV);
}

// Every nontrivial element of <x^3 y> that a collision can produce yields 3.
TEST(RecoverFromCollision, EveryCollidingPairOfPlantedThree) {
  const auto P = make_params(7, 3, 2, 1, 1);
  auto f = build_oracle(P, SubgroupDescriptor::twogen(2, 3, 0));
  std::vector<CosetLabel> labels(P.order());
  for (std::size_t k = 0; k < P.order(); ++k) labels[k] = f.evaluate(P.element(k));
  int pairs = 0;
  for (std::size_t x = 0; x < P.order(); ++x)
    for (std::size_t y = 0; y < P.order(); ++y) {
      if (x == y || labels[x] != labels[y]) continue;
      const auto g1 = P.element(x), g2 = P.element(y);
      const auto d = multiply(P, inverse(P, g2), g1);
      CollisionRecord rec{g1, g2, d.a, d.b, 0};
      ASSERT_EQ(recover_from_collision(rec, P, 0), 3u) << to_string(g1) << " " << to_string(g2);
      ++pairs;
    }
  EXPECT_EQ(pairs, 49 * 3 * 2);
}

TEST(CollisionSearch, FindsAGenuineCollision) {
  const auto P = make_params(7, 3, 2, 2, 1);
  auto f = build_oracle(P, SubgroupDescriptor::twogen(2, 5, 0));
  Rng rng(10);
  for (int k = 0; k < 50; ++k) {
    const auto rec = find_collision(f, rng);
    EXPECT_NE(rec.g1, rec.g2);
    EXPECT_EQ(f.evaluate(rec.g1), f.evaluate(rec.g2));
    EXPECT_EQ(multiply(P, rec.g2, GroupElement{rec.u, rec.v}), rec.g1);
    EXPECT_GE(rec.queries_used, 2u);
  }
}

TEST(CollisionSearch, SamplesWithoutReplacement) {
  const auto P = make_params(7, 3, 1, 1, 1);
  auto f = build_oracle(P, SubgroupDescriptor::cyclic(1, 1));
  Rng rng(1);
  CollisionSearch search(f, rng);
  EXPECT_THROW(search.next(), NoCollision);
  EXPECT_EQ(search.queries(), P.order());
  EXPECT_EQ(f.query_count(), P.order());
}

TEST(CollisionSearch, ExhaustsAllCollisionsOfASmallGroup) {
  const auto P = make_params(7, 3, 1, 1, 1);
  auto f = build_oracle(P, SubgroupDescriptor::twogen(1, 2, 0));
  Rng rng(3);
  CollisionSearch search(f, rng);
  int found = 0;
  try {
    while (true) {
      search.next();
      ++found;
    }
  } catch (const NoCollision&) {
  }
  // each of the 7 cosets of size 3 reports two repeats
  EXPECT_EQ(found, 14);
  EXPECT_EQ(search.queries(), 21u);
}

TEST(ClassicalSolve, RoundTripsEverySubgroup) {
  for (const auto& P : {make_params(7, 3, 1, 1, 1), make_params(7, 3, 2, 1, 1),
                        make_params(7, 3, 2, 2, 1), make_params(19, 3, 1, 2, 2),
                        make_params(19, 3, 1, 2, 1)}) {
    Rng rng(derive_seed(5, P.order()));
    for (const auto& d : enumerate_subgroups(P)) {
      auto f = build_oracle(P, d);
      const auto res = classical_solve(f, rng);
      ASSERT_EQ(res.descriptor, d) << describe(P) << " " << to_string(d);
      EXPECT_EQ(res.queries, f.query_count());
    }
  }
}

TEST(ClassicalSolve, CyclicAmbiguousCaseSeesOnlyDegenerateCollisions) {
  const auto P = make_params(7, 3, 1, 2, 1);
  auto f = build_oracle(P, SubgroupDescriptor::cyclic(1, 1));  // <y^3>
  Rng rng(4);
  const auto res = classical_solve(f, rng);
  EXPECT_EQ(res.descriptor, SubgroupDescriptor::cyclic(1, 1));
  EXPECT_FALSE(res.collisions.empty());
  EXPECT_EQ(res.degenerate, res.collisions.size());
}
