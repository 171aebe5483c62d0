#include "hsp/verify.hpp"

#include <algorithm>

#include "hsp/errors.hpp"
#include "hsp/rng.hpp"
#include "hsp/subgroups.hpp"

namespace hsp {

namespace {

void fail(SuiteResult& res, const std::string& detail) {
  if (res.passed) res.detail = detail;
  res.passed = false;
}

}  // namespace

SuiteResult verify_isomorphisms(const GroupParams& P, std::uint64_t exhaustive_limit,
                                std::uint64_t samples) {
  SuiteResult res;
  res.name = "isomorphisms";
  const GroupParams src = make_params(P.p(), P.q(), P.r(), P.s(), P.t(), 1);
  const std::size_t n = src.order();
  const bool exhaustive = n <= exhaustive_limit;
  Rng rng(0x15e0);

  for (u64 l = 1; l < src.qt(); ++l) {
    if (l % src.q() == 0) continue;
    const GroupParams dst = make_params(P.p(), P.q(), P.r(), P.s(), P.t(), l);
    std::vector<GroupElement> image(n);
    std::vector<char> hit(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      image[k] = iso_phi(src, l, src.element(k));
      hit[dst.index(image[k])] = 1;
    }
    if (std::count(hit.begin(), hit.end(), 1) != static_cast<std::ptrdiff_t>(n))
      fail(res, "l = " + std::to_string(l) + ": map is not a bijection");

    auto check = [&](std::size_t x, std::size_t y) {
      const auto lhs = image[src.index(multiply(src, src.element(x), src.element(y)))];
      const auto rhs = multiply(dst, image[x], image[y]);
      ++res.checked;
      if (lhs != rhs)
        fail(res, "l = " + std::to_string(l) + ": not a homomorphism at " +
                      to_string(src.element(x)) + ", " + to_string(src.element(y)));
    };
    if (exhaustive) {
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) check(x, y);
    } else {
      for (std::uint64_t k = 0; k < samples; ++k) check(rng.uniform(n), rng.uniform(n));
    }
  }
  if (!exhaustive && res.passed) res.detail = "random pairs";
  return res;
}

SuiteResult verify_classification(const GroupParams& P, std::uint64_t cap) {
  SuiteResult res;
  res.name = "classification";
  if (P.order() > cap) {
    res.skipped = true;
    res.detail = "group order exceeds the brute-force cap " + std::to_string(cap);
    return res;
  }
  const auto descriptors = enumerate_subgroups(P);
  if (descriptors.size() != subgroup_count(P))
    fail(res, "descriptor count " + std::to_string(descriptors.size()) + " differs from formula " +
                  std::to_string(subgroup_count(P)));

  std::vector<ElementSet> from_descriptors;
  from_descriptors.reserve(descriptors.size());
  for (const auto& d : descriptors) {
    auto set = elements_of(P, d);
    if (set.size() != subgroup_order(P, d))
      fail(res, to_string(d) + " has " + std::to_string(set.size()) + " elements");
    from_descriptors.push_back(std::move(set));
  }
  std::sort(from_descriptors.begin(), from_descriptors.end());
  if (std::adjacent_find(from_descriptors.begin(), from_descriptors.end()) !=
      from_descriptors.end())
    fail(res, "two descriptors give the same subgroup");

  const auto brute = brute_force_subgroups(P, cap);
  res.checked = brute.size();
  if (brute != from_descriptors)
    fail(res, "descriptors give " + std::to_string(from_descriptors.size()) +
                  " subgroups, brute force finds " + std::to_string(brute.size()));
  return res;
}

SuiteResult verify_cyclic_subgroups(const GroupParams& P) {
  SuiteResult res;
  res.name = "cyclic_subgroups";
  const u64 pr = P.pr();
  for (std::size_t k = 0; k < P.order(); ++k) {
    const GroupElement g = P.element(k);
    const GroupElement gens[] = {g};
    const ElementSet actual = closure(P, gens);
    const unsigned j = g.b == 0 ? P.s() : valuation(g.b, P.q());

    SubgroupDescriptor expected;
    if (j < P.t()) {
      // <x^a y^b> = <x^a' y^(q^j)>, a' = a (alpha^(q^j) - 1) / (alpha^b - 1)
      const u64 num = submod(P.alpha_pow(ipow(P.q(), j)), 1, pr);
      const u64 den = mod_inv(static_cast<i64>(submod(P.alpha_pow(g.b), 1, pr)), pr).value;
      expected = SubgroupDescriptor::twogen(P.r(), mulmod(g.a, mulmod(num, den, pr), pr), j);
    } else {
      const unsigned i = g.a == 0 ? P.r() : valuation(g.a, P.p());
      expected = SubgroupDescriptor::cyclic(i, j);
    }
    ++res.checked;
    if (elements_of(P, expected) != actual)
      fail(res, "<" + to_string(g) + "> differs from " + to_string(expected));
  }
  return res;
}

SuiteResult verify_unit_denominators(const GroupParams& P) {
  SuiteResult res;
  res.name = "unit_denominators";
  for (u64 b = 0; b < P.qs(); ++b) {
    if (b % P.qt() == 0) continue;
    ++res.checked;
    if (gcd(submod(P.alpha_pow(b), 1, P.pr()), P.p()) != 1)
      fail(res, "alpha^" + std::to_string(b) + " - 1 is divisible by p");
  }
  return res;
}

std::vector<SuiteResult> verify_all(const GroupParams& P) {
  return {verify_isomorphisms(P), verify_classification(P), verify_cyclic_subgroups(P),
          verify_unit_denominators(P)};
}

}  // namespace hsp
