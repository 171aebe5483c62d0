#pragma once

// Classical baseline: birthday search for a collision f(g1) = f(g2), and the
// recovery of a from g2^-1 g1 = x^u y^v.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hsp/group.hpp"
#include "hsp/oracle.hpp"
#include "hsp/rng.hpp"
#include "hsp/subgroups.hpp"

namespace hsp {

struct CollisionRecord {
  GroupElement g1;
  GroupElement g2;
  u64 u = 0;  // g2^-1 g1 = (u, v)
  u64 v = 0;
  std::uint64_t queries_used = 0;
};

/// Uniform sampling without replacement with every label remembered. Each
/// call to next() keeps sampling until a fresh element repeats a label.
class CollisionSearch {
 public:
  CollisionSearch(Oracle& oracle, Rng& rng) : oracle_(&oracle), rng_(&rng) {}

  /// Throws NoCollision once every element has been queried.
  CollisionRecord next();

  std::uint64_t queries() const noexcept { return queries_; }

 private:
  std::size_t draw();

  Oracle* oracle_;
  Rng* rng_;
  std::size_t drawn_ = 0;
  std::unordered_map<std::size_t, std::size_t> swapped_;  // sparse Fisher-Yates
  std::unordered_map<CosetLabel, GroupElement, CosetLabelHash> first_seen_;
  std::uint64_t queries_ = 0;
};

CollisionRecord find_collision(Oracle& oracle, Rng& rng);

/// a = u (alpha^(q^j) - 1) / (alpha^v - 1) mod p^r. Throws DegenerateV when
/// q^t divides v.
u64 recover_from_collision(const CollisionRecord& rec, const GroupParams& P, unsigned j);

struct ClassicalResult {
  SubgroupDescriptor descriptor;
  std::vector<CollisionRecord> collisions;
  std::uint64_t degenerate = 0;
  std::uint64_t queries = 0;
};

/// i and the y-part from probing f on powers of x and y; when those leave the
/// subgroup ambiguous, collisions decide between class i and class ii.
ClassicalResult classical_solve(Oracle& oracle, Rng& rng);

}  // namespace hsp
