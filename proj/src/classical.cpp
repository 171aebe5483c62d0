#include "hsp/classical.hpp"

#include <optional>

#include "hsp/errors.hpp"

namespace hsp {

std::size_t CollisionSearch::draw() {
  const std::size_t n = oracle_->params().order();
  const std::size_t pick = drawn_ + rng_->uniform(n - drawn_);
  auto slot = [&](std::size_t k) {
    auto it = swapped_.find(k);
    return it == swapped_.end() ? k : it->second;
  };
  const std::size_t chosen = slot(pick);
  swapped_[pick] = slot(drawn_);
  swapped_.erase(drawn_);
  ++drawn_;
  return chosen;
}

CollisionRecord CollisionSearch::next() {
  const auto& P = oracle_->params();
  const std::uint64_t start = queries_;
  while (drawn_ < P.order()) {
    const GroupElement g = P.element(draw());
    const CosetLabel label = oracle_->evaluate(g);
    ++queries_;
    auto [it, fresh] = first_seen_.try_emplace(label, g);
    if (fresh) continue;
    const GroupElement diff = multiply(P, inverse(P, it->second), g);
    return {g, it->second, diff.a, diff.b, queries_ - start};
  }
  throw NoCollision("every element queried without a repeated label", queries_);
}

CollisionRecord find_collision(Oracle& oracle, Rng& rng) {
  CollisionSearch search(oracle, rng);
  return search.next();
}

u64 recover_from_collision(const CollisionRecord& rec, const GroupParams& P, unsigned j) {
  if (rec.v % P.qt() == 0)
    throw DegenerateV("v = " + std::to_string(rec.v) + " is a multiple of q^t");
  const u64 pr = P.pr();
  const u64 num = submod(P.alpha_pow(ipow(P.q(), j)), 1 % pr, pr);
  const u64 den = mod_inv(static_cast<i64>(submod(P.alpha_pow(rec.v), 1 % pr, pr)), pr).value;
  return mulmod(rec.u, mulmod(num, den, pr), pr);
}

ClassicalResult classical_solve(Oracle& oracle, Rng& rng) {
  constexpr int kMaxCollisions = 50;
  const auto& P = oracle.params();
  const std::uint64_t before = oracle.query_count();
  const CosetLabel at_identity = oracle.evaluate(identity());

  // smallest k with x^(p^k) in H, and likewise for y
  unsigned i = 0;
  while (i < P.r() && oracle.evaluate({ipow(P.p(), i), 0}) != at_identity) ++i;
  unsigned j_y = 0;
  while (j_y < P.s() && oracle.evaluate({0, ipow(P.q(), j_y)}) != at_identity) ++j_y;

  ClassicalResult res;
  const unsigned t = P.t();
  if (j_y < t) {
    res.descriptor = SubgroupDescriptor::twogen(i, 0, j_y);
  } else if (j_y > t || i == 0) {
    res.descriptor = SubgroupDescriptor::cyclic(i, j_y);
  } else {
    // class ii with a != 0 shows up as a collision with q^t not dividing v;
    // <x^(p^i) y^(q^t)> only ever produces multiples of q^t
    struct Found {
      unsigned j;
      u64 a;
    };
    std::optional<Found> best;
    CollisionSearch search(oracle, rng);
    for (int attempt = 0; attempt < kMaxCollisions; ++attempt) {
      CollisionRecord rec;
      try {
        rec = search.next();
      } catch (const NoCollision&) {
        break;
      }
      res.collisions.push_back(rec);
      if (rec.v % P.qt() == 0) {
        ++res.degenerate;
        continue;
      }
      // b-parts of H are multiples of q^j, so the smallest valuation seen is j
      const unsigned jv = valuation(rec.v, P.q());
      const u64 a = recover_from_collision(rec, P, jv) % ipow(P.p(), i);
      if (!best || jv < best->j) best = Found{jv, a};
      if (jv == 0) break;
    }
    res.descriptor = best ? SubgroupDescriptor::twogen(i, best->a, best->j)
                          : SubgroupDescriptor::cyclic(i, t);
  }

  for (const auto& g : generators(P, res.descriptor))
    if (oracle.evaluate(g) != at_identity)
      throw Error("classical result " + to_string(res.descriptor) + " has a generator outside H");
  res.queries = oracle.query_count() - before;
  return res;
}

}  // namespace hsp
