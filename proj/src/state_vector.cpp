#include "hsp/state_vector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hsp {

StateVector::StateVector(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("state needs at least one register");
  strides_.assign(dims_.size(), 1);
  std::size_t total = 1;
  for (std::size_t r = dims_.size(); r-- > 0;) {
    if (dims_[r] == 0) throw std::invalid_argument("register dimension must be positive");
    strides_[r] = total;
    total *= dims_[r];
  }
  amps_.assign(total, Amplitude{});
}

StateVector StateVector::basis(std::vector<std::size_t> dims, std::span<const std::size_t> coords) {
  StateVector s(std::move(dims));
  s.at(coords) = 1.0;
  return s;
}

std::size_t StateVector::index(std::span<const std::size_t> coords) const {
  if (coords.size() != dims_.size()) throw std::invalid_argument("coordinate arity mismatch");
  std::size_t idx = 0;
  for (std::size_t r = 0; r < dims_.size(); ++r) {
    if (coords[r] >= dims_[r]) throw std::out_of_range("coordinate outside register");
    idx += coords[r] * strides_[r];
  }
  return idx;
}

std::vector<std::size_t> StateVector::coords(std::size_t index) const {
  std::vector<std::size_t> out(dims_.size());
  for (std::size_t r = 0; r < dims_.size(); ++r) out[r] = coord(index, r);
  return out;
}

std::size_t StateVector::coord(std::size_t index, std::size_t reg) const {
  return index / strides_[reg] % dims_[reg];
}

double StateVector::norm() const {
  double sum = 0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0) throw std::domain_error("cannot normalize the zero vector");
  for (auto& a : amps_) a /= n;
}

Amplitude root_of_unity(std::size_t n, long long k) {
  const long long m = static_cast<long long>(n);
  const long long r = ((k % m) + m) % m;
  const double theta = 2 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
  return {std::cos(theta), std::sin(theta)};
}

StateVector qft(const StateVector& state, std::size_t reg, Direction direction) {
  const std::size_t n = state.dims().at(reg);
  std::vector<Amplitude> roots(n);
  for (std::size_t k = 0; k < n; ++k)
    roots[k] = root_of_unity(n, direction == Direction::Forward ? static_cast<long long>(k)
                                                                : -static_cast<long long>(k));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));

  StateVector out(state.dims());
  // stride of `reg` is the product of the dimensions after it
  std::size_t stride = 1;
  for (std::size_t r = reg + 1; r < state.registers(); ++r) stride *= state.dims()[r];
  const std::size_t block = stride * n;

  // sparse fibers are common (coset states), so only nonzero inputs are summed
  std::vector<std::size_t> support;
  support.reserve(n);
  for (std::size_t base = 0; base < state.size(); base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      support.clear();
      for (std::size_t m = 0; m < n; ++m)
        if (state[base + off + m * stride] != Amplitude{}) support.push_back(m);
      if (support.empty()) continue;
      for (std::size_t k = 0; k < n; ++k) {
        Amplitude acc{};
        for (std::size_t m : support) acc += roots[k * m % n] * state[base + off + m * stride];
        out[base + off + k * stride] = acc * scale;
      }
    }
  }
  return out;
}

std::vector<double> marginal(const StateVector& state, std::size_t reg) {
  std::vector<double> probs(state.dims().at(reg), 0.0);
  for (std::size_t k = 0; k < state.size(); ++k) probs[state.coord(k, reg)] += std::norm(state[k]);
  return probs;
}

Measurement measure(const StateVector& state, std::size_t reg, Rng& rng) {
  const auto probs = marginal(state, reg);
  double total = 0;
  for (double p : probs) total += p;
  const double x = rng.uniform01() * total;

  std::size_t outcome = probs.size();
  double acc = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] == 0) continue;
    outcome = k;  // last nonzero outcome absorbs rounding at the top end
    acc += probs[k];
    if (x < acc) break;
  }

  StateVector collapsed(state.dims());
  for (std::size_t k = 0; k < state.size(); ++k)
    if (state.coord(k, reg) == outcome) collapsed[k] = state[k];
  collapsed.normalize();
  return {outcome, std::move(collapsed)};
}

Amplitude inner_product(const StateVector& a, const StateVector& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("inner product of mismatched states");
  Amplitude acc{};
  for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * b[k];
  return acc;
}

}  // namespace hsp
