#pragma once

// Dense pure states over a product of cyclic registers Z_{N_1} x ... x Z_{N_k}.
// Basis index is row-major: the last register varies fastest.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hsp/rng.hpp"

namespace hsp {

using Amplitude = std::complex<double>;

class StateVector {
 public:
  /// All-zero amplitudes; callers fill them and normalize.
  explicit StateVector(std::vector<std::size_t> dims);

  static StateVector basis(std::vector<std::size_t> dims, std::span<const std::size_t> coords);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t registers() const noexcept { return dims_.size(); }
  std::size_t size() const noexcept { return amps_.size(); }

  std::size_t index(std::span<const std::size_t> coords) const;
  std::vector<std::size_t> coords(std::size_t index) const;
  /// Coordinate of register `reg` in basis state `index`.
  std::size_t coord(std::size_t index, std::size_t reg) const;

  Amplitude& operator[](std::size_t index) { return amps_[index]; }
  const Amplitude& operator[](std::size_t index) const { return amps_[index]; }
  Amplitude& at(std::span<const std::size_t> coords) { return amps_[index(coords)]; }
  const Amplitude& at(std::span<const std::size_t> coords) const { return amps_[index(coords)]; }

  const std::vector<Amplitude>& amplitudes() const noexcept { return amps_; }

  double norm() const;
  void normalize();

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::vector<Amplitude> amps_;
};

/// exp(2 pi i k / n), with k reduced modulo n before the division.
Amplitude root_of_unity(std::size_t n, long long k);

enum class Direction { Forward, Inverse };

/// a'_k = N^(-1/2) sum_m w_N^(+-km) a_m on register `reg`.
StateVector qft(const StateVector& state, std::size_t reg, Direction direction);

struct Measurement {
  std::size_t outcome;
  StateVector collapsed;
};

/// Born-rule measurement of one register; the register is kept in the
/// collapsed state, fixed to the outcome.
Measurement measure(const StateVector& state, std::size_t reg, Rng& rng);

/// Marginal distribution of register `reg`.
std::vector<double> marginal(const StateVector& state, std::size_t reg);

/// <a|b> = sum conj(a_k) b_k; states must share dimensions.
Amplitude inner_product(const StateVector& a, const StateVector& b);

}  // namespace hsp
