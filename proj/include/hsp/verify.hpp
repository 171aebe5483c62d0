#pragma once

// Exhaustive checks of the structural results on one parameter set. Each
// suite reports how many cases it examined and the first failure, if any.

#include <cstdint>
#include <string>
#include <vector>

#include "hsp/group.hpp"

namespace hsp {

struct SuiteResult {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::uint64_t checked = 0;
  std::string detail;  // first failure, or why the suite was skipped
};

/// x^a y^b -> x^a y^(l^-1 b) is a bijective homomorphism G_{t,1} -> G_{t,l}
/// for every unit l mod q^t. All pairs when |G| <= exhaustive_limit, else
/// `samples` seeded random pairs.
SuiteResult verify_isomorphisms(const GroupParams& P, std::uint64_t exhaustive_limit = 4096,
                                std::uint64_t samples = 1'000'000);

/// The descriptor list and the brute-force subgroup family coincide.
SuiteResult verify_classification(const GroupParams& P, std::uint64_t cap = 10'000);

/// Every cyclic subgroup <x^a y^b> equals <x^a' y^(q^j)> (q^j || b, j < t)
/// or <x^(p^i) y^(q^j)> (j >= t).
SuiteResult verify_cyclic_subgroups(const GroupParams& P);

/// alpha^b - 1 is a unit mod p^r whenever q^t does not divide b.
SuiteResult verify_unit_denominators(const GroupParams& P);

std::vector<SuiteResult> verify_all(const GroupParams& P);

}  // namespace hsp
