#pragma once

// Coset-separating functions. Solvers only see labels through evaluate()
// and may compare them for equality; every evaluation is counted.

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hsp/group.hpp"
#include "hsp/subgroups.hpp"

namespace hsp {

/// Value of a hiding function. Holds the lexicographically smallest member of
/// the left coset; the ordering exists only so labels can key containers.
class CosetLabel {
 public:
  CosetLabel() = default;
  explicit CosetLabel(GroupElement rep) : rep_(rep) {}

  const GroupElement& representative() const noexcept { return rep_; }

  friend auto operator<=>(const CosetLabel&, const CosetLabel&) = default;

 private:
  GroupElement rep_;
};

struct CosetLabelHash {
  std::size_t operator()(const CosetLabel& l) const noexcept {
    return std::hash<std::uint64_t>{}(l.representative().a * 0x9e3779b97f4a7c15ULL ^
                                      l.representative().b);
  }
};

/// Black-box access to a function hiding some subgroup of G_t.
class Oracle {
 public:
  virtual ~Oracle() = default;

  virtual const GroupParams& params() const = 0;

  /// One classical query.
  CosetLabel evaluate(const GroupElement& g) {
    queries_.fetch_add(1, std::memory_order_relaxed);
    return lookup(g);
  }

  /// One quantum query on a uniform superposition over `grid`. The simulator
  /// needs every value, but the resource count advances by one.
  virtual std::vector<CosetLabel> evaluate_superposed(std::span<const GroupElement> grid);

  /// Counts a superposed query whose measurement outcome the caller samples
  /// directly instead of materializing every label.
  virtual void record_superposed_query() { queries_.fetch_add(1, std::memory_order_relaxed); }

  std::uint64_t query_count() const noexcept { return queries_.load(std::memory_order_relaxed); }
  void reset_query_count() noexcept { queries_.store(0, std::memory_order_relaxed); }

  /// The planted subgroup, when the oracle was built from one. Simulation
  /// shortcuts and precondition checks may read it; solvers may not.
  virtual std::optional<SubgroupDescriptor> planted() const { return std::nullopt; }

 protected:
  Oracle() = default;
  Oracle(const Oracle& other) : queries_(other.query_count()) {}
  Oracle& operator=(const Oracle& other) {
    queries_.store(other.query_count());
    return *this;
  }

  virtual CosetLabel lookup(const GroupElement& g) const = 0;

 private:
  std::atomic<std::uint64_t> queries_{0};
};

/// Table-backed oracle hiding a planted subgroup.
class HiddenSubgroupOracle : public Oracle {
 public:
  HiddenSubgroupOracle(GroupParams params, SubgroupDescriptor hidden);

  const GroupParams& params() const override { return params_; }
  std::optional<SubgroupDescriptor> planted() const override { return hidden_; }
  const SubgroupDescriptor& hidden() const noexcept { return hidden_; }

  std::size_t distinct_labels() const noexcept { return distinct_; }

 protected:
  CosetLabel lookup(const GroupElement& g) const override { return labels_[params_.index(g)]; }

 private:
  GroupParams params_;
  SubgroupDescriptor hidden_;
  std::vector<CosetLabel> labels_;
  std::size_t distinct_ = 0;
};

HiddenSubgroupOracle build_oracle(const GroupParams& params, const SubgroupDescriptor& hidden);

/// Oracle on G / <x^(p^i)> induced by a parent whose hidden subgroup contains
/// x^(p^i): f'(c, d) = f(c, d) with c lifted from Z_{p^i} to Z_{p^r}.
/// Queries are forwarded to (and counted by) both this oracle and the parent.
class QuotientOracle : public Oracle {
 public:
  QuotientOracle(Oracle& parent, unsigned i);

  const GroupParams& params() const override { return params_; }
  std::optional<SubgroupDescriptor> planted() const override;

  std::vector<CosetLabel> evaluate_superposed(std::span<const GroupElement> grid) override;
  void record_superposed_query() override;

 protected:
  CosetLabel lookup(const GroupElement& g) const override;

 private:
  Oracle* parent_;
  GroupParams params_;
  unsigned i_;
};

/// A hiding function on a cyclic group Z_N with N = prime^exponent.
class CyclicOracle {
 public:
  CyclicOracle(u64 prime, unsigned exponent, std::function<CosetLabel(u64)> f,
               std::function<std::vector<CosetLabel>()> f_superposed)
      : prime_(prime),
        exponent_(exponent),
        modulus_(ipow(prime, exponent)),
        f_(std::move(f)),
        f_superposed_(std::move(f_superposed)) {}

  u64 prime() const noexcept { return prime_; }
  unsigned exponent() const noexcept { return exponent_; }
  u64 modulus() const noexcept { return modulus_; }

  CosetLabel operator()(u64 z) const { return f_(z % modulus_); }
  /// Labels of all of Z_N through a single superposed query.
  std::vector<CosetLabel> evaluate_all() const { return f_superposed_(); }

 private:
  u64 prime_;
  unsigned exponent_;
  u64 modulus_;
  std::function<CosetLabel(u64)> f_;
  std::function<std::vector<CosetLabel>()> f_superposed_;
};

/// f_x(a) = f(a, 0), hiding H meet <x> = <x^(p^i)> in Z_{p^r}.
CyclicOracle restrict_x(Oracle& oracle);
/// f_y(b) = f(0, b), hiding H meet <y> = <y^(q^j)> in Z_{q^s}.
CyclicOracle restrict_y(Oracle& oracle);

/// |G| divided by the number of distinct labels, read off one superposed
/// query over all of G.
u64 hidden_order_by_counting(Oracle& oracle);

}  // namespace hsp
