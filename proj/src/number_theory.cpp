#include "hsp/number_theory.hpp"

#include <stdexcept>
#include <string>

#include "hsp/errors.hpp"

namespace hsp {

NonUnit::NonUnit(std::int64_t value, std::uint64_t modulus)
    : Error(std::to_string(value) + " is not a unit modulo " + std::to_string(modulus)),
      value_(value),
      modulus_(modulus) {}

u64 reduce(i64 x, u64 m) {
  if (x >= 0) return static_cast<u64>(x) % m;
  // -(x+1) avoids overflow at INT64_MIN
  u64 neg = (static_cast<u64>(-(x + 1)) % m + 1) % m;
  return neg == 0 ? 0 : m - neg;
}

u64 ipow(u64 base, unsigned exp) {
  u64 out = 1;
  while (exp-- > 0) out *= base;
  return out;
}

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

unsigned valuation(u64 n, u64 prime) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  unsigned e = 0;
  while (n % prime == 0) {
    n /= prime;
    ++e;
  }
  return e;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

u64 euler_phi(u64 n) {
  u64 phi = n;
  for (u64 f : prime_factors(n)) phi = phi / f * (f - 1);
  return phi;
}

Residue mod_pow(i64 base, u64 exp, u64 modulus) {
  if (modulus == 0) throw std::invalid_argument("modulus must be positive");
  u64 b = reduce(base, modulus);
  u64 acc = 1 % modulus;
  while (exp > 0) {
    if (exp & 1) acc = mulmod(acc, b, modulus);
    b = mulmod(b, b, modulus);
    exp >>= 1;
  }
  return {acc, modulus};
}

Residue mod_inv(i64 x, u64 modulus) {
  if (modulus == 0) throw std::invalid_argument("modulus must be positive");
  if (modulus == 1) return {0, 1};
  // extended Euclid on signed 128-bit to keep Bezout coefficients exact
  i128 old_r = static_cast<i128>(reduce(x, modulus)), r = modulus;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    i128 q = old_r / r;
    i128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw NonUnit(x, modulus);
  i128 m = modulus;
  i128 v = ((old_s % m) + m) % m;
  return {static_cast<u64>(v), modulus};
}

u64 multiplicative_order(i64 x, u64 modulus) {
  if (modulus == 0) throw std::invalid_argument("modulus must be positive");
  u64 v = reduce(x, modulus);
  if (gcd(v, modulus) != 1) throw NonUnit(x, modulus);
  if (modulus == 1) return 1;
  // the order divides phi(m): strip prime factors while x^(k/f) stays 1
  u64 k = euler_phi(modulus);
  for (u64 f : prime_factors(k)) {
    while (k % f == 0 && mod_pow(static_cast<i64>(v), k / f, modulus).value == 1) k /= f;
  }
  return k;
}

Residue find_primitive_root(u64 p, unsigned r) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (r == 0) throw std::invalid_argument("r must be positive");
  u64 m = ipow(p, r);
  u64 target = ipow(p, r - 1) * (p - 1);
  for (u64 g = 2; g < m; ++g) {
    if (g % p == 0) continue;
    if (multiplicative_order(static_cast<i64>(g), m) == target) return {g, m};
  }
  throw std::logic_error("no primitive root found");  // unreachable for odd prime powers
}

}  // namespace hsp
