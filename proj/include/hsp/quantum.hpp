#pragma once

// State-vector simulation of the procedure that recovers a from an oracle
// hiding <x^a y> when t = 1, the Fourier sampling stage for the cyclic
// restrictions, and the full solver built on both.

#include <cstdint>
#include <optional>
#include <vector>

#include "hsp/errors.hpp"
#include "hsp/group.hpp"
#include "hsp/oracle.hpp"
#include "hsp/rng.hpp"
#include "hsp/state_vector.hpp"
#include "hsp/subgroups.hpp"

namespace hsp {

/// How |Psi_2> is produced. Sampled draws (m0, n0) and writes the state down
/// from the planted subgroup; Full builds |Psi_1> with a label register and
/// measures it. Full is used whenever the oracle has no planted subgroup.
enum class StatePrep { Sampled, Full };

/// How U is extended to basis states outside its defining partial map.
enum class UCompletion { Lexicographic, ReverseLexicographic };

struct EngineOptions {
  StatePrep prep = StatePrep::Sampled;
  UCompletion completion = UCompletion::Lexicographic;
  bool retry_until_verified = false;
  std::uint64_t max_runs = 100'000;  // cap when retrying
};

struct PreparedState {
  StateVector state;  // registers (p^r, q^(t-j))
  u64 m0 = 0;
  u64 n0 = 0;
};

/// (1/sqrt(q^(t-j))) sum_n |m0 + a alpha^n0 S(n)>|n0 + n q^j>, n in Z_{q^(t-j)}.
StateVector psi2_state(const GroupParams& P, u64 a, unsigned j, u64 m0, u64 n0);

/// Draws m0 in Z_{p^r}, n0 in Z_{q^(t-j)} and returns the printed |Psi_2>.
/// `hidden` must be TwoGen(r, a, j) with j < t; otherwise InvalidHidden.
PreparedState prepare_psi2_sampled(const GroupParams& P, const SubgroupDescriptor& hidden,
                                   Rng& rng);

/// |Psi_1> with an explicit third register indexing the distinct labels seen
/// on the grid Z_{p^r} x Z_{q^(t-j)}. One superposed query.
struct FullState {
  StateVector state;
  std::vector<CosetLabel> labels;  // third-register basis
};
FullState prepare_psi1_full(Oracle& oracle, unsigned j = 0);

/// Measures the label register of |Psi_1> and drops it. m0, n0 report the
/// smallest support point, which is a valid choice of coset representative.
PreparedState collapse_psi1(const FullState& psi1, Rng& rng);

/// Every post-measurement |Psi_2> with its probability, for both
/// preparations; used to check the sampled shortcut against the full state.
struct Branch {
  double probability;
  StateVector state;
};
std::vector<Branch> psi2_branches_sampled(const GroupParams& P, const SubgroupDescriptor& hidden);
std::vector<Branch> psi2_branches_full(Oracle& oracle, unsigned j = 0);

/// Two summation indices that land on the same second-register value
/// n q^j mod q^(t-j), or the same S value; empty when U can be built.
std::optional<CollisionWitness> u_injectivity_witness(const GroupParams& P, unsigned j);

/// The operator U|m>|n> = |m S(n)>|n - S^-1(m S(n) / k0)> on
/// Z_{p^r} x Z_{q^(t-j)}, completed to a permutation.
class UOperator {
 public:
  /// Throws NonInjectiveS when the register map or S is not injective, and
  /// NonUnit when k0 is not a unit.
  static UOperator build(const GroupParams& P, u64 k0, unsigned j = 0,
                         UCompletion completion = UCompletion::Lexicographic);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  /// Image of basis index m * cols + n.
  std::size_t image(std::size_t index) const { return perm_[index]; }
  const std::vector<std::size_t>& permutation() const noexcept { return perm_; }
  /// Number of basis states mapped by the defining formula rather than the
  /// completion.
  std::size_t defined_count() const noexcept { return defined_; }

 private:
  std::size_t rows_ = 0, cols_ = 0, defined_ = 0;
  std::vector<std::size_t> perm_;
};

StateVector apply_U(const UOperator& U, const StateVector& state);
StateVector apply_U(const GroupParams& P, const StateVector& state, u64 k0,
                    UCompletion completion = UCompletion::Lexicographic);

/// (1/sqrt(N)) sum_j w_N^(ja) |j>.
StateVector perfect_state(std::size_t n, u64 a);

/// |<a~|psi>| over the first register; the second register must be |0>.
double fidelity_with_perfect(const StateVector& state, u64 a);

struct RunTranscript {
  u64 m0 = 0;
  u64 n0 = 0;
  u64 k0 = 0;
  bool k0_is_unit = false;
  std::optional<u64> candidate_a;
  bool verified = false;
  std::vector<double> per_step_norms;
  std::uint64_t seed = 0;
  std::optional<double> fidelity;  // only when the planted a is known
};

/// One pass of steps 1-5, inverse transform, measurement and verification.
/// Requires t = 1 and a hidden subgroup <x^a y>; InvalidHidden otherwise.
RunTranscript recover_a_once(Oracle& oracle, Rng& rng, const EngineOptions& options = {});

/// ceil(p^(r+1) / (2 (p-1) q)).
u64 repetition_count(const GroupParams& P);

struct RecoverResult {
  u64 a = 0;
  std::uint64_t runs = 0;
  std::vector<RunTranscript> transcripts;
};

/// Repeats recover_a_once with per-run seeds rng.split(k) until a candidate
/// verifies: at most repetition_count runs, or max_runs with
/// retry_until_verified. Throws Exhausted.
RecoverResult recover_a(Oracle& oracle, Rng& rng, const EngineOptions& options = {});

/// One Fourier sample for a function on Z_N given by its label table: the
/// label register is measured, the coset state transformed and measured.
u64 fourier_sample(const std::vector<CosetLabel>& labels, Rng& rng);

/// The exponent e' with hidden subgroup <prime^e'> of Z_{prime^e}, from the
/// gcd of e + 4 Fourier samples; resamples until f(prime^e') = f(0).
unsigned abelian_find_divisor(const CyclicOracle& f, Rng& rng);

struct SolveResult {
  SubgroupDescriptor descriptor;
  unsigned i = 0;    // from f_x
  unsigned j_y = 0;  // from f_y
  std::optional<RecoverResult> recovery;
  std::uint64_t queries = 0;
};

/// Full pipeline. Class-ii subgroups need t = 1; for t > 1 they raise
/// UnsupportedT, carrying the injectivity witness when one exists.
SolveResult solve_hsp(Oracle& oracle, Rng& rng, const EngineOptions& options = {});

}  // namespace hsp
