#pragma once

// Canonical descriptors for every subgroup of G_t, and an independent
// brute-force enumeration used to check them.
//
//   Cyclic(i, j), t <= j <= s:          <x^(p^i) y^(q^j)>
//   TwoGen(i, a, j), 0 <= j < t:        <x^(p^i), x^a y^(q^j)>, 0 <= a < p^i
//
// In TwoGen, x^(p^i) lies in the subgroup, so a only matters modulo p^i.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsp/group.hpp"

namespace hsp {

struct SubgroupDescriptor {
  enum class Kind { Cyclic, TwoGen };

  Kind kind = Kind::Cyclic;
  unsigned i = 0;
  u64 a = 0;  // always 0 for Cyclic
  unsigned j = 0;

  static SubgroupDescriptor cyclic(unsigned i, unsigned j) { return {Kind::Cyclic, i, 0, j}; }
  static SubgroupDescriptor twogen(unsigned i, u64 a, unsigned j) {
    return {Kind::TwoGen, i, a, j};
  }

  bool is_cyclic() const noexcept { return kind == Kind::Cyclic; }

  friend auto operator<=>(const SubgroupDescriptor&, const SubgroupDescriptor&) = default;
};

/// "cyclic:i,j" or "twogen:i,a,j".
std::string to_string(const SubgroupDescriptor& d);
SubgroupDescriptor parse_descriptor(std::string_view text);

/// Throws InvalidDescriptor when d is outside the canonical ranges for P.
void validate(const GroupParams& P, const SubgroupDescriptor& d);

/// p^(r-i) q^(s-j).
u64 subgroup_order(const GroupParams& P, const SubgroupDescriptor& d);

std::vector<GroupElement> generators(const GroupParams& P, const SubgroupDescriptor& d);

/// A subgroup given by its sorted element list.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::vector<GroupElement> elements);  // sorts and dedups

  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(const GroupElement& g) const;

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  friend auto operator<=>(const ElementSet&, const ElementSet&) = default;

 private:
  std::vector<GroupElement> elements_;
};

/// Subgroup generated by `gens`, by breadth-first closure.
ElementSet closure(const GroupParams& P, std::span<const GroupElement> gens);

/// All subgroups, one canonical descriptor each, in sorted order.
std::vector<SubgroupDescriptor> enumerate_subgroups(const GroupParams& P);

/// Expected size of enumerate_subgroups.
u64 subgroup_count(const GroupParams& P);

ElementSet elements_of(const GroupParams& P, const SubgroupDescriptor& d);

/// Arithmetic membership test.
bool contains(const GroupParams& P, const SubgroupDescriptor& d, const GroupElement& g);

/// Every subgroup, found without using the descriptor classification:
/// starting from the trivial subgroup, one subgroup per conjugacy class is
/// extended by each element normalizing it, until no new subgroup appears.
/// Result is sorted. Throws CapExceeded when |G| > cap.
std::vector<ElementSet> brute_force_subgroups(const GroupParams& P, u64 cap = 10'000);

/// True when `set` is closed under multiplication and contains the identity.
bool is_subgroup(const GroupParams& P, const ElementSet& set);

/// Canonical descriptor of a subgroup. Throws NotASubgroup, or
/// UnclassifiableSet if no descriptor produces exactly `set`.
SubgroupDescriptor classify(const GroupParams& P, const ElementSet& set);

}  // namespace hsp
