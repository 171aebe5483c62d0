#include "hsp/oracle.hpp"

#include <algorithm>
#include <unordered_set>

#include "hsp/errors.hpp"

namespace hsp {

std::vector<CosetLabel> Oracle::evaluate_superposed(std::span<const GroupElement> grid) {
  queries_.fetch_add(1, std::memory_order_relaxed);
  std::vector<CosetLabel> out;
  out.reserve(grid.size());
  for (const auto& g : grid) out.push_back(lookup(g));
  return out;
}

HiddenSubgroupOracle::HiddenSubgroupOracle(GroupParams params, SubgroupDescriptor hidden)
    : params_(std::move(params)), hidden_(hidden) {
  const auto H = elements_of(params_, hidden_);
  const std::size_t n = params_.order();
  labels_.resize(n);
  std::vector<char> done(n, 0);
  std::vector<GroupElement> coset;
  coset.reserve(H.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (done[k]) continue;
    const GroupElement g = params_.element(k);
    coset.clear();
    for (const auto& h : H) coset.push_back(multiply(params_, g, h));
    const CosetLabel label(*std::min_element(coset.begin(), coset.end()));
    for (const auto& c : coset) {
      const auto idx = params_.index(c);
      labels_[idx] = label;
      done[idx] = 1;
    }
    ++distinct_;
  }
}

HiddenSubgroupOracle build_oracle(const GroupParams& params, const SubgroupDescriptor& hidden) {
  return HiddenSubgroupOracle(params, hidden);
}

QuotientOracle::QuotientOracle(Oracle& parent, unsigned i)
    : parent_(&parent), params_(quotient_params(parent.params(), i)), i_(i) {}

std::optional<SubgroupDescriptor> QuotientOracle::planted() const {
  auto d = parent_->planted();
  if (!d || d->i > i_) return std::nullopt;
  // generators reduce modulo p^i unchanged, since a < p^(d.i) <= p^i
  return d;
}

std::vector<CosetLabel> QuotientOracle::evaluate_superposed(std::span<const GroupElement> grid) {
  Oracle::record_superposed_query();
  return parent_->evaluate_superposed(grid);
}

void QuotientOracle::record_superposed_query() {
  Oracle::record_superposed_query();
  parent_->record_superposed_query();
}

CosetLabel QuotientOracle::lookup(const GroupElement& g) const {
  // c in [0, p^i) is its own lift
  return parent_->evaluate(g);
}

CyclicOracle restrict_x(Oracle& oracle) {
  const auto& P = oracle.params();
  const u64 n = P.pr();
  return CyclicOracle(
      P.p(), P.r(), [&oracle](u64 z) { return oracle.evaluate({z, 0}); },
      [&oracle, n] {
        std::vector<GroupElement> grid;
        grid.reserve(n);
        for (u64 z = 0; z < n; ++z) grid.push_back({z, 0});
        return oracle.evaluate_superposed(grid);
      });
}

CyclicOracle restrict_y(Oracle& oracle) {
  const auto& P = oracle.params();
  const u64 n = P.qs();
  return CyclicOracle(
      P.q(), P.s(), [&oracle](u64 z) { return oracle.evaluate({0, z}); },
      [&oracle, n] {
        std::vector<GroupElement> grid;
        grid.reserve(n);
        for (u64 z = 0; z < n; ++z) grid.push_back({0, z});
        return oracle.evaluate_superposed(grid);
      });
}

u64 hidden_order_by_counting(Oracle& oracle) {
  const auto& P = oracle.params();
  std::vector<GroupElement> grid;
  grid.reserve(P.order());
  for (std::size_t k = 0; k < P.order(); ++k) grid.push_back(P.element(k));
  const auto labels = oracle.evaluate_superposed(grid);
  std::unordered_set<CosetLabel, CosetLabelHash> distinct(labels.begin(), labels.end());
  return P.order() / distinct.size();
}

}  // namespace hsp
