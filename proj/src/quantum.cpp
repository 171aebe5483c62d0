#include "hsp/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hsp {

namespace {

constexpr double kSameStateTol = 1e-12;

bool is_recovery_target(const GroupParams& P, const SubgroupDescriptor& d) {
  return !d.is_cyclic() && d.i == P.r() && d.j < P.t();
}

bool same_state(const StateVector& x, const StateVector& y) {
  if (x.dims() != y.dims()) return false;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (std::abs(x[k] - y[k]) > kSameStateTol) return false;
  return true;
}

void add_branch(std::vector<Branch>& out, double probability, StateVector state) {
  for (auto& b : out) {
    if (same_state(b.state, state)) {
      b.probability += probability;
      return;
    }
  }
  out.push_back({probability, std::move(state)});
}

}  // namespace

StateVector psi2_state(const GroupParams& P, u64 a, unsigned j, u64 m0, u64 n0) {
  const u64 pr = P.pr();
  const u64 D = ipow(P.q(), P.t() - j);
  const u64 qj = ipow(P.q(), j);
  const u64 twist = mulmod(a % pr, P.alpha_pow(n0), pr);
  const double amp = 1.0 / std::sqrt(static_cast<double>(D));

  StateVector psi({pr, D});
  for (u64 n = 0; n < D; ++n) {
    const u64 m = addmod(m0 % pr, mulmod(twist, S_of(P, n, j).value, pr), pr);
    const std::size_t c[] = {m, (n0 + n * qj) % D};
    psi.at(c) += amp;
  }
  return psi;
}

PreparedState prepare_psi2_sampled(const GroupParams& P, const SubgroupDescriptor& hidden,
                                   Rng& rng) {
  if (!is_recovery_target(P, hidden))
    throw InvalidHidden("state preparation needs a hidden subgroup <x^a y^(q^j)> with j < t, got " +
                        to_string(hidden));
  const u64 m0 = rng.uniform(P.pr());
  const u64 n0 = rng.uniform(ipow(P.q(), P.t() - hidden.j));
  return {psi2_state(P, hidden.a, hidden.j, m0, n0), m0, n0};
}

FullState prepare_psi1_full(Oracle& oracle, unsigned j) {
  const auto& P = oracle.params();
  if (j >= P.t()) throw InvalidHidden("the label register needs j < t");
  const u64 pr = P.pr();
  const u64 D = ipow(P.q(), P.t() - j);

  std::vector<GroupElement> grid;
  grid.reserve(pr * D);
  for (u64 m = 0; m < pr; ++m)
    for (u64 n = 0; n < D; ++n) grid.push_back({m, n});
  const auto values = oracle.evaluate_superposed(grid);

  std::vector<CosetLabel> labels(values);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  StateVector psi({pr, D, labels.size()});
  const double amp = 1.0 / std::sqrt(static_cast<double>(pr * D));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto l = std::lower_bound(labels.begin(), labels.end(), values[k]) - labels.begin();
    const std::size_t c[] = {grid[k].a, grid[k].b, static_cast<std::size_t>(l)};
    psi.at(c) = amp;
  }
  return {std::move(psi), std::move(labels)};
}

namespace {

StateVector label_slice(const StateVector& psi1, std::size_t label) {
  StateVector out({psi1.dims()[0], psi1.dims()[1]});
  for (std::size_t k = 0; k < psi1.size(); ++k) {
    if (psi1.coord(k, 2) != label) continue;
    const std::size_t c[] = {psi1.coord(k, 0), psi1.coord(k, 1)};
    out.at(c) = psi1[k];
  }
  return out;
}

}  // namespace

PreparedState collapse_psi1(const FullState& psi1, Rng& rng) {
  auto m = measure(psi1.state, 2, rng);
  StateVector psi2 = label_slice(m.collapsed, m.outcome);
  for (std::size_t k = 0; k < psi2.size(); ++k) {
    if (psi2[k] == Amplitude{}) continue;
    const u64 m0 = psi2.coord(k, 0);
    const u64 n0 = psi2.coord(k, 1);
    return {std::move(psi2), m0, n0};
  }
  throw std::logic_error("measured label has empty support");
}

std::vector<Branch> psi2_branches_sampled(const GroupParams& P, const SubgroupDescriptor& hidden) {
  if (!is_recovery_target(P, hidden))
    throw InvalidHidden("state preparation needs a hidden subgroup <x^a y^(q^j)> with j < t, got " +
                        to_string(hidden));
  const u64 D = ipow(P.q(), P.t() - hidden.j);
  const double weight = 1.0 / static_cast<double>(P.pr() * D);
  std::vector<Branch> out;
  for (u64 m0 = 0; m0 < P.pr(); ++m0)
    for (u64 n0 = 0; n0 < D; ++n0)
      add_branch(out, weight, psi2_state(P, hidden.a, hidden.j, m0, n0));
  return out;
}

std::vector<Branch> psi2_branches_full(Oracle& oracle, unsigned j) {
  const auto psi1 = prepare_psi1_full(oracle, j);
  std::vector<Branch> out;
  for (std::size_t l = 0; l < psi1.labels.size(); ++l) {
    StateVector slice = label_slice(psi1.state, l);
    const double norm = slice.norm();
    if (norm == 0) continue;
    slice.normalize();
    add_branch(out, norm * norm, std::move(slice));
  }
  return out;
}

std::optional<CollisionWitness> u_injectivity_witness(const GroupParams& P, unsigned j) {
  if (j >= P.t()) throw NonUnitDenominator("U needs j < t");
  const u64 D = ipow(P.q(), P.t() - j);
  const u64 qj = ipow(P.q(), j);
  std::vector<u64> first(D, D);
  for (u64 n = 0; n < D; ++n) {
    const u64 w = n * qj % D;
    if (first[w] != D)
      return CollisionWitness{first[w], n, w, S_of(P, w, j).value};
    first[w] = n;
  }
  return std::nullopt;
}

UOperator UOperator::build(const GroupParams& P, u64 k0, unsigned j, UCompletion completion) {
  if (auto w = u_injectivity_witness(P, j)) {
    throw NonInjectiveS("indices " + std::to_string(w->n1) + " and " + std::to_string(w->n2) +
                            " share second-register value " + std::to_string(w->register_value),
                        *w);
  }
  const u64 pr = P.pr();
  const u64 D = ipow(P.q(), P.t() - j);
  const u64 k0_inv = mod_inv(static_cast<i64>(k0 % pr), pr).value;

  std::vector<u64> S(D);
  std::vector<i64> S_inv(pr, -1);
  for (u64 n = 0; n < D; ++n) {
    S[n] = S_of(P, n, j).value;
    S_inv[S[n]] = static_cast<i64>(n);
  }

  UOperator U;
  U.rows_ = pr;
  U.cols_ = D;
  const std::size_t N = pr * D;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  U.perm_.assign(N, kUnset);
  std::vector<char> taken(N, 0);

  auto target = [&](u64 m, u64 n) -> std::optional<std::size_t> {
    const u64 image = mulmod(m, S[n], pr);
    const i64 back = S_inv[mulmod(image, k0_inv, pr)];
    if (back < 0) return std::nullopt;
    const u64 second = (n + D - static_cast<u64>(back)) % D;
    return image * D + second;
  };
  auto claim = [&](std::size_t in, std::size_t out) {
    U.perm_[in] = out;
    taken[out] = 1;
    ++U.defined_;
  };

  // the row reached by the algorithm has priority: (k0, n) -> (k0 S(n), 0)
  for (u64 n = 0; n < D; ++n) claim((k0 % pr) * D + n, *target(k0 % pr, n));

  const bool forward = completion == UCompletion::Lexicographic;
  auto nth = [&](std::size_t k) { return forward ? k : N - 1 - k; };
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t in = nth(k);
    if (U.perm_[in] != kUnset) continue;
    auto out = target(in / D, in % D);
    if (out && !taken[*out]) claim(in, *out);
  }

  std::size_t next_out = 0;
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t in = nth(k);
    if (U.perm_[in] != kUnset) continue;
    while (taken[nth(next_out)]) ++next_out;
    U.perm_[in] = nth(next_out);
    taken[nth(next_out)] = 1;
  }
  return U;
}

StateVector apply_U(const UOperator& U, const StateVector& state) {
  if (state.registers() != 2 || state.dims()[0] != U.rows() || state.dims()[1] != U.cols())
    throw std::invalid_argument("state does not match the dimensions of U");
  StateVector out(state.dims());
  for (std::size_t k = 0; k < state.size(); ++k) out[U.image(k)] = state[k];
  return out;
}

StateVector apply_U(const GroupParams& P, const StateVector& state, u64 k0,
                    UCompletion completion) {
  return apply_U(UOperator::build(P, k0, 0, completion), state);
}

StateVector perfect_state(std::size_t n, u64 a) {
  StateVector out({n});
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k)
    out[k] = amp * root_of_unity(n, static_cast<long long>(k * (a % n) % n));
  return out;
}

double fidelity_with_perfect(const StateVector& state, u64 a) {
  if (state.registers() != 2) throw std::invalid_argument("expected a two-register state");
  const std::size_t n = state.dims()[0];
  const std::size_t d = state.dims()[1];
  const auto perfect = perfect_state(n, a);
  Amplitude acc{};
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t c = 1; c < d; ++c)
      if (std::abs(state[m * d + c]) > kSameStateTol)
        throw std::invalid_argument("second register is not |0>");
    acc += std::conj(perfect[m]) * state[m * d];
  }
  return std::abs(acc);
}

RunTranscript recover_a_once(Oracle& oracle, Rng& rng, const EngineOptions& options) {
  const auto& P = oracle.params();
  if (P.t() != 1) throw InvalidHidden("recovering a needs t = 1, got t = " + std::to_string(P.t()));
  const auto planted = oracle.planted();
  if (planted && (!is_recovery_target(P, *planted) || planted->j != 0))
    throw InvalidHidden("recovering a needs a hidden subgroup <x^a y>, got " +
                        to_string(*planted));

  RunTranscript tr;
  tr.seed = rng.seed();

  PreparedState psi2 = [&] {
    if (options.prep == StatePrep::Sampled && planted) {
      oracle.record_superposed_query();
      return prepare_psi2_sampled(P, *planted, rng);
    }
    return collapse_psi1(prepare_psi1_full(oracle), rng);
  }();
  tr.m0 = psi2.m0;
  tr.n0 = psi2.n0;
  tr.per_step_norms.push_back(psi2.state.norm());

  const auto psi3 = qft(psi2.state, 0, Direction::Forward);
  tr.per_step_norms.push_back(psi3.norm());

  auto step4 = measure(psi3, 0, rng);
  tr.k0 = step4.outcome;
  tr.per_step_norms.push_back(step4.collapsed.norm());
  tr.k0_is_unit = tr.k0 % P.p() != 0;
  if (!tr.k0_is_unit) return tr;

  const auto U = UOperator::build(P, tr.k0, 0, options.completion);
  const auto psi5 = apply_U(U, step4.collapsed);
  tr.per_step_norms.push_back(psi5.norm());
  if (planted) tr.fidelity = fidelity_with_perfect(psi5, planted->a);

  const auto psi6 = qft(psi5, 0, Direction::Inverse);
  tr.per_step_norms.push_back(psi6.norm());
  const auto final_measurement = measure(psi6, 0, rng);

  tr.candidate_a = final_measurement.outcome;
  tr.verified = oracle.evaluate({*tr.candidate_a, 1}) == oracle.evaluate(identity());
  return tr;
}

u64 repetition_count(const GroupParams& P) {
  const u64 num = ipow(P.p(), P.r() + 1);
  const u64 den = 2 * (P.p() - 1) * P.q();
  return (num + den - 1) / den;
}

RecoverResult recover_a(Oracle& oracle, Rng& rng, const EngineOptions& options) {
  const u64 L = repetition_count(oracle.params());
  const u64 limit = options.retry_until_verified ? std::max(L, options.max_runs) : L;
  RecoverResult res;
  for (u64 k = 0; k < limit; ++k) {
    Rng run_rng = rng.split(k);
    res.transcripts.push_back(recover_a_once(oracle, run_rng, options));
    res.runs = k + 1;
    const auto& tr = res.transcripts.back();
    if (tr.verified) {
      res.a = *tr.candidate_a;
      return res;
    }
  }
  throw Exhausted("no verified candidate after " + std::to_string(limit) + " runs", limit);
}

u64 fourier_sample(const std::vector<CosetLabel>& labels, Rng& rng) {
  const std::size_t n = labels.size();
  // measuring the label register of sum_z |z>|f(z)> leaves the coset of a
  // uniformly random z0
  const CosetLabel seen = labels[rng.uniform(n)];
  StateVector coset({n});
  for (std::size_t z = 0; z < n; ++z)
    if (labels[z] == seen) coset[z] = 1.0;
  coset.normalize();
  return measure(qft(coset, 0, Direction::Forward), 0, rng).outcome;
}

unsigned abelian_find_divisor(const CyclicOracle& f, Rng& rng) {
  constexpr unsigned kMaxRounds = 64;
  const unsigned e = f.exponent();
  const CosetLabel at_zero = f(0);
  for (unsigned round = 0; round < kMaxRounds; ++round) {
    // samples are multiples of the hidden order; their gcd with N equals it
    // unless every sample shares an extra factor of the prime
    u64 g = f.modulus();
    for (unsigned k = 0; k < e + 4; ++k) g = gcd(g, fourier_sample(f.evaluate_all(), rng));
    const unsigned i = e - valuation(g, f.prime());
    if (i == e || f(ipow(f.prime(), i)) == at_zero) return i;
  }
  throw Exhausted("Fourier sampling never produced a verified divisor", kMaxRounds);
}

SolveResult solve_hsp(Oracle& oracle, Rng& rng, const EngineOptions& options) {
  const auto& P = oracle.params();
  const std::uint64_t before = oracle.query_count();
  Rng rng_x = rng.split(0);
  Rng rng_y = rng.split(1);
  Rng rng_a = rng.split(2);

  SolveResult res;
  res.i = abelian_find_divisor(restrict_x(oracle), rng_x);
  res.j_y = abelian_find_divisor(restrict_y(oracle), rng_y);
  const unsigned i = res.i;
  const unsigned t = P.t();

  std::optional<u64> h_order;
  if (res.j_y < t) {
    // y^(q^j) itself lies in H, so a = 0
    res.descriptor = SubgroupDescriptor::twogen(i, 0, res.j_y);
  } else if (res.j_y > t || i == 0) {
    res.descriptor = SubgroupDescriptor::cyclic(i, res.j_y);
  } else {
    // H meet <y> = <y^(q^t)> for both <x^(p^i) y^(q^t)> and every
    // <x^(p^i), x^a y^(q^j)> with a != 0; |H| separates them
    h_order = hidden_order_by_counting(oracle);
    const u64 q_part = *h_order / ipow(P.p(), P.r() - i);
    const unsigned j = P.s() - valuation(q_part, P.q());
    if (j >= t) {
      res.descriptor = SubgroupDescriptor::cyclic(i, t);
    } else if (t > 1) {
      const auto witness = u_injectivity_witness(P, j);
      throw UnsupportedT("no efficient quantum procedure for class-ii subgroups when t = " +
                             std::to_string(t) + " (j = " + std::to_string(j) + ")",
                         t, j, witness.has_value(), witness.value_or(CollisionWitness{}));
    } else {
      EngineOptions opts = options;
      opts.retry_until_verified = true;
      RecoverResult rec;
      if (i == P.r()) {
        rec = recover_a(oracle, rng_a, opts);
      } else {
        QuotientOracle quotient(oracle, i);
        rec = recover_a(quotient, rng_a, opts);
      }
      res.descriptor = SubgroupDescriptor::twogen(i, rec.a % ipow(P.p(), i), 0);
      res.recovery = std::move(rec);
    }
  }

  const CosetLabel at_identity = oracle.evaluate(identity());
  for (const auto& g : generators(P, res.descriptor))
    if (oracle.evaluate(g) != at_identity)
      throw Error("solver result " + to_string(res.descriptor) + " has a generator outside H");
  if (!h_order) h_order = hidden_order_by_counting(oracle);
  if (subgroup_order(P, res.descriptor) != *h_order)
    throw Error("solver result " + to_string(res.descriptor) + " has the wrong order");

  res.queries = oracle.query_count() - before;
  return res;
}

}  // namespace hsp
