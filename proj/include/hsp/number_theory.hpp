#pragma once

// Modular arithmetic on word-sized moduli. Products go through 128-bit
// intermediates, so every routine is exact for moduli below 2^63.

#include <compare>
#include <cstdint>
#include <vector>

namespace hsp {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

struct Residue {
  u64 value = 0;
  u64 modulus = 1;

  friend bool operator==(const Residue&, const Residue&) = default;
};

inline u64 mulmod(u64 a, u64 b, u64 m) {
  if (((a | b) >> 32) == 0) return a * b % m;  // common case, avoids 128-bit division
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

/// Canonical representative of x in [0, m).
u64 reduce(i64 x, u64 m);

u64 ipow(u64 base, unsigned exp);
u64 gcd(u64 a, u64 b);

/// Largest e with prime^e | n. n must be nonzero.
unsigned valuation(u64 n, u64 prime);

bool is_prime(u64 n);
std::vector<u64> prime_factors(u64 n);
u64 euler_phi(u64 n);

Residue mod_pow(i64 base, u64 exp, u64 modulus);

/// Inverse via extended gcd; throws NonUnit when gcd(x, modulus) != 1.
Residue mod_inv(i64 x, u64 modulus);

/// Smallest k >= 1 with x^k = 1 (mod modulus); throws NonUnit.
u64 multiplicative_order(i64 x, u64 modulus);

/// Smallest generator of the cyclic group Z_{p^r}^*, p an odd prime.
Residue find_primitive_root(u64 p, unsigned r);

}  // namespace hsp
