#include "hsp/subgroups.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <unordered_map>

#include "hsp/errors.hpp"

namespace hsp {

std::string to_string(const SubgroupDescriptor& d) {
  if (d.is_cyclic()) return "cyclic:" + std::to_string(d.i) + "," + std::to_string(d.j);
  return "twogen:" + std::to_string(d.i) + "," + std::to_string(d.a) + "," + std::to_string(d.j);
}

namespace {

std::vector<u64> parse_fields(std::string_view body, std::string_view original) {
  std::vector<u64> out;
  while (true) {
    const auto comma = body.find(',');
    std::string_view field = body.substr(0, comma);
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
      throw InvalidDescriptor("malformed descriptor: " + std::string(original));
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

SubgroupDescriptor parse_descriptor(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw InvalidDescriptor("descriptor needs a kind prefix: " + std::string(text));
  const std::string_view kind = text.substr(0, colon);
  const auto fields = parse_fields(text.substr(colon + 1), text);
  if (kind == "cyclic" && fields.size() == 2)
    return SubgroupDescriptor::cyclic(static_cast<unsigned>(fields[0]),
                                      static_cast<unsigned>(fields[1]));
  if (kind == "twogen" && fields.size() == 3)
    return SubgroupDescriptor::twogen(static_cast<unsigned>(fields[0]), fields[1],
                                      static_cast<unsigned>(fields[2]));
  throw InvalidDescriptor("malformed descriptor: " + std::string(text));
}

void validate(const GroupParams& P, const SubgroupDescriptor& d) {
  if (d.i > P.r()) throw InvalidDescriptor("i exceeds r in " + to_string(d));
  if (d.is_cyclic()) {
    if (d.j < P.t() || d.j > P.s())
      throw InvalidDescriptor("cyclic descriptor needs t <= j <= s: " + to_string(d));
    if (d.a != 0) throw InvalidDescriptor("cyclic descriptor carries no a: " + to_string(d));
  } else {
    if (d.j >= P.t()) throw InvalidDescriptor("twogen descriptor needs j < t: " + to_string(d));
    if (d.a >= ipow(P.p(), d.i))
      throw InvalidDescriptor("twogen a must be reduced modulo p^i: " + to_string(d));
  }
}

u64 subgroup_order(const GroupParams& P, const SubgroupDescriptor& d) {
  return ipow(P.p(), P.r() - d.i) * ipow(P.q(), P.s() - d.j);
}

std::vector<GroupElement> generators(const GroupParams& P, const SubgroupDescriptor& d) {
  const u64 xi = ipow(P.p(), d.i) % P.pr();
  const u64 yj = ipow(P.q(), d.j) % P.qs();
  if (d.is_cyclic()) return {{xi, yj}};
  return {{xi, 0}, {d.a, yj}};
}

ElementSet::ElementSet(std::vector<GroupElement> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool ElementSet::contains(const GroupElement& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

ElementSet closure(const GroupParams& P, std::span<const GroupElement> gens) {
  std::vector<char> seen(P.order(), 0);
  std::vector<GroupElement> found{identity()};
  seen[P.index(identity())] = 1;
  for (std::size_t k = 0; k < found.size(); ++k) {
    for (const auto& g : gens) {
      GroupElement h = multiply(P, found[k], g);
      auto& flag = seen[P.index(h)];
      if (!flag) {
        flag = 1;
        found.push_back(h);
      }
    }
  }
  return ElementSet(std::move(found));
}

u64 subgroup_count(const GroupParams& P) {
  u64 geometric = 0;
  for (unsigned i = 0; i <= P.r(); ++i) geometric += ipow(P.p(), i);
  return u64{P.r() + 1} * (P.s() - P.t() + 1) + u64{P.t()} * geometric;
}

std::vector<SubgroupDescriptor> enumerate_subgroups(const GroupParams& P) {
  std::vector<SubgroupDescriptor> out;
  out.reserve(subgroup_count(P));
  for (unsigned i = 0; i <= P.r(); ++i) {
    for (unsigned j = P.t(); j <= P.s(); ++j) out.push_back(SubgroupDescriptor::cyclic(i, j));
    const u64 pi = ipow(P.p(), i);
    for (unsigned j = 0; j < P.t(); ++j)
      for (u64 a = 0; a < pi; ++a) out.push_back(SubgroupDescriptor::twogen(i, a, j));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ElementSet elements_of(const GroupParams& P, const SubgroupDescriptor& d) {
  validate(P, d);
  const auto gens = generators(P, d);
  return closure(P, gens);
}

bool contains(const GroupParams& P, const SubgroupDescriptor& d, const GroupElement& g) {
  const u64 pi = ipow(P.p(), d.i);
  const u64 qj = ipow(P.q(), d.j);
  if (g.b % qj != 0) return false;
  if (d.is_cyclic()) return g.a % pi == 0;
  // elements are x^(M p^i + a S(N)) y^(N q^j)
  const u64 shift = mulmod(d.a, S_of(P, g.b / qj, d.j).value, P.pr());
  return submod(g.a, shift, P.pr()) % pi == 0;
}

namespace {

// Subgroup record for the brute-force search: membership bitset plus the
// generators it was built from.
struct Candidate {
  std::vector<std::uint64_t> bits;
  std::vector<std::uint32_t> members;  // sorted element indices
  std::vector<GroupElement> gens;
};

bool test_bit(const std::vector<std::uint64_t>& bits, std::size_t k) {
  return (bits[k >> 6] >> (k & 63)) & 1;
}

void set_bit(std::vector<std::uint64_t>& bits, std::size_t k) {
  bits[k >> 6] |= std::uint64_t{1} << (k & 63);
}

std::uint64_t hash_bits(const std::vector<std::uint64_t>& bits) {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto w : bits) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::vector<ElementSet> brute_force_subgroups(const GroupParams& P, u64 cap) {
  const std::size_t n = P.order();
  if (n > cap)
    throw CapExceeded("group order " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  const std::size_t words = (n + 63) / 64;

  std::vector<Candidate> family;
  std::vector<std::size_t> representatives;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash;

  // returns false when the subgroup is already known
  auto insert = [&](Candidate&& c) {
    const auto h = hash_bits(c.bits);
    auto& bucket = by_hash[h];
    for (auto id : bucket)
      if (family[id].bits == c.bits) return false;
    bucket.push_back(family.size());
    family.push_back(std::move(c));
    return true;
  };

  auto conjugate_by = [&](const Candidate& c, const GroupElement& g) {
    Candidate out{std::vector<std::uint64_t>(words, 0), {}, {}};
    out.members.reserve(c.members.size());
    for (auto k : c.members) {
      const auto idx = P.index(conjugate(P, g, P.element(k)));
      set_bit(out.bits, idx);
      out.members.push_back(static_cast<std::uint32_t>(idx));
    }
    std::sort(out.members.begin(), out.members.end());
    for (const auto& h : c.gens) out.gens.push_back(conjugate(P, g, h));
    return out;
  };

  // a new subgroup enters as the representative of its conjugacy class; the
  // rest of the class is added by conjugating with the generators x and y
  auto add_class = [&](Candidate&& c) {
    if (!insert(std::move(c))) return;
    representatives.push_back(family.size() - 1);
    for (std::size_t k = family.size() - 1; k < family.size(); ++k)
      for (const auto& g : {gen_x(), gen_y()}) insert(conjugate_by(family[k], g));
  };

  Candidate trivial{std::vector<std::uint64_t>(words, 0), {0}, {}};
  set_bit(trivial.bits, P.index(identity()));
  add_class(std::move(trivial));

  // Every subgroup K != 1 of a solvable group has a normal subgroup M of
  // prime index, so K = M<g> for some g normalizing M. Extending each found
  // subgroup by every normalizing element therefore reaches all subgroups.
  // Extensions commute with conjugation, so one subgroup per class suffices.
  for (std::size_t r = 0; r < representatives.size(); ++r) {
    const std::size_t id = representatives[r];
    const auto bits = family[id].bits;
    const auto members = family[id].members;
    const auto gens = family[id].gens;

    std::vector<std::uint64_t> covered = bits;
    for (std::size_t k = 0; k < n; ++k) {
      if (test_bit(covered, k)) continue;
      const GroupElement g = P.element(k);
      bool normalizes = true;
      for (const auto& h : gens) {
        if (!test_bit(bits, P.index(conjugate(P, g, h)))) {
          normalizes = false;
          break;
        }
      }
      if (!normalizes) continue;

      // powers of g up to the first one inside H
      std::vector<GroupElement> pows{identity()};
      GroupElement gk = g;
      while (!test_bit(bits, P.index(gk))) {
        pows.push_back(gk);
        gk = multiply(P, gk, g);
      }
      const std::size_t m = pows.size();

      Candidate joined{std::vector<std::uint64_t>(words, 0), {}, gens};
      joined.gens.push_back(g);
      joined.members.reserve(members.size() * m);
      for (std::size_t e = 0; e < m; ++e) {
        // H g^e and H g^e' generate the same extension when gcd(e, m) = 1
        const bool same_extension = std::gcd(e, m) == 1;
        for (auto hk : members) {
          const std::size_t idx = P.index(multiply(P, P.element(hk), pows[e]));
          set_bit(joined.bits, idx);
          joined.members.push_back(static_cast<std::uint32_t>(idx));
          if (same_extension) set_bit(covered, idx);
        }
      }
      std::sort(joined.members.begin(), joined.members.end());
      add_class(std::move(joined));
    }
  }

  std::vector<ElementSet> out;
  out.reserve(family.size());
  for (const auto& c : family) {
    std::vector<GroupElement> els;
    els.reserve(c.members.size());
    for (auto k : c.members) els.push_back(P.element(k));
    out.emplace_back(std::move(els));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_subgroup(const GroupParams& P, const ElementSet& set) {
  if (!set.contains(identity())) return false;
  for (const auto& g : set)
    if (!P.valid(g)) return false;
  // greedy generating set; the set is a subgroup iff it equals their closure
  std::vector<GroupElement> gens;
  ElementSet span = closure(P, gens);
  for (const auto& g : set) {
    if (span.contains(g)) continue;
    gens.push_back(g);
    span = closure(P, gens);
    if (span.size() > set.size()) return false;
  }
  return span == set;
}

SubgroupDescriptor classify(const GroupParams& P, const ElementSet& set) {
  if (!is_subgroup(P, set)) throw NotASubgroup("element set is not a subgroup");

  u64 x_part = 0;
  unsigned j = P.s();
  for (const auto& g : set) {
    if (g.b == 0)
      ++x_part;
    else
      j = std::min(j, valuation(g.b, P.q()));
  }
  unsigned x_exp = 0;
  for (u64 v = x_part; v > 1; v /= P.p()) {
    if (v % P.p() != 0) throw UnclassifiableSet("x-part order is not a power of p");
    ++x_exp;
  }
  const unsigned i = P.r() - x_exp;

  SubgroupDescriptor d = SubgroupDescriptor::cyclic(i, j);
  if (j < P.t()) {
    const u64 qj = ipow(P.q(), j);
    auto it = std::find_if(set.begin(), set.end(), [&](const GroupElement& g) { return g.b == qj; });
    if (it == set.end()) throw UnclassifiableSet("no element with b = q^j");
    d = SubgroupDescriptor::twogen(i, it->a % ipow(P.p(), i), j);
  }
  if (elements_of(P, d) != set)
    throw UnclassifiableSet("descriptor " + to_string(d) + " does not reproduce the set");
  return d;
}

}  // namespace hsp
