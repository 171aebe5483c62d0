#pragma once

// Arithmetic in the semidirect product Z_{p^r} x|_alpha Z_{q^s}, where the
// generator y of Z_{q^s} acts on Z_{p^r} by multiplication with alpha.
// Elements (a, b) stand for x^a y^b, and (a, b)(c, d) = (a + alpha^b c, b + d).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hsp/number_theory.hpp"

namespace hsp {

struct GroupElement {
  u64 a = 0;  // exponent of x, in [0, p^r)
  u64 b = 0;  // exponent of y, in [0, q^s)

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

std::string to_string(const GroupElement& g);

/// Validated parameters (p, q, r, s, t, l) with the derived primitive root u
/// and twisting unit alpha = u^(l p^(r-1) (p-1) / q^t) mod p^r.
/// Immutable once built; use make_params.
class GroupParams {
 public:
  u64 p() const noexcept { return p_; }
  u64 q() const noexcept { return q_; }
  unsigned r() const noexcept { return r_; }
  unsigned s() const noexcept { return s_; }
  unsigned t() const noexcept { return t_; }
  u64 l() const noexcept { return l_; }
  u64 u() const noexcept { return u_; }
  u64 alpha() const noexcept { return alpha_; }

  u64 pr() const noexcept { return pr_; }  // p^r
  u64 qs() const noexcept { return qs_; }  // q^s
  u64 qt() const noexcept { return qt_; }  // q^t, the order of alpha
  u64 order() const noexcept { return pr_ * qs_; }

  /// alpha^b mod p^r for any b (reduced modulo q^t).
  u64 alpha_pow(u64 b) const noexcept { return alpha_pows_[b % qt_]; }

  /// Dense index in [0, |G|), row-major in a.
  std::size_t index(const GroupElement& g) const noexcept {
    return static_cast<std::size_t>(g.a * qs_ + g.b);
  }
  GroupElement element(std::size_t index) const noexcept {
    return {static_cast<u64>(index) / qs_, static_cast<u64>(index) % qs_};
  }

  bool valid(const GroupElement& g) const noexcept { return g.a < pr_ && g.b < qs_; }

  friend bool operator==(const GroupParams& x, const GroupParams& y) {
    return x.p_ == y.p_ && x.q_ == y.q_ && x.r_ == y.r_ && x.s_ == y.s_ && x.t_ == y.t_ &&
           x.l_ == y.l_;
  }

  friend GroupParams make_params(u64 p, u64 q, unsigned r, unsigned s, unsigned t, u64 l);

 private:
  GroupParams() = default;

  u64 p_ = 0, q_ = 0;
  unsigned r_ = 0, s_ = 0, t_ = 0;
  u64 l_ = 0, u_ = 0, alpha_ = 0;
  u64 pr_ = 0, qs_ = 0, qt_ = 0;
  std::vector<u64> alpha_pows_;
};

/// Throws InvalidParams naming the violated condition.
GroupParams make_params(u64 p, u64 q, unsigned r, unsigned s, unsigned t, u64 l = 1);

std::string describe(const GroupParams& params);

/// Parameters of G / <x^(p^i)>, which is again of this family with r
/// replaced by i and alpha reduced modulo p^i. Requires 1 <= i <= r.
GroupParams quotient_params(const GroupParams& params, unsigned i);

/// Every valid (p, q, r, s, t) with l = 1 and |G| <= max_order.
std::vector<GroupParams> enumerate_valid_params(u64 max_order);

constexpr GroupElement identity() noexcept { return {0, 0}; }
constexpr GroupElement gen_x() noexcept { return {1, 0}; }
constexpr GroupElement gen_y() noexcept { return {0, 1}; }

inline GroupElement multiply(const GroupParams& P, const GroupElement& g,
                             const GroupElement& h) noexcept {
  return {addmod(g.a, mulmod(P.alpha_pow(g.b), h.a, P.pr()), P.pr()), addmod(g.b, h.b, P.qs())};
}

GroupElement inverse(const GroupParams& P, const GroupElement& g);

/// g^k via the closed form; negative k goes through the inverse.
GroupElement power(const GroupParams& P, const GroupElement& g, i64 k);

/// g h g^-1 h^-1.
GroupElement commutator(const GroupParams& P, const GroupElement& g, const GroupElement& h);

/// The x-exponent a_g + a_h alpha^(b_g) - a_g alpha^(b_h) - a_h of [g, h].
u64 commutator_exponent(const GroupParams& P, const GroupElement& g, const GroupElement& h);

/// g h g^-1.
GroupElement conjugate(const GroupParams& P, const GroupElement& g, const GroupElement& h);

/// Order of g by repeated multiplication.
u64 element_order(const GroupParams& P, const GroupElement& g);

/// S(n) = (alpha^(n q^j) - 1) / (alpha^(q^j) - 1) mod p^r.
/// Throws NonUnitDenominator unless j < t.
Residue S_of(const GroupParams& P, u64 n, unsigned j);

/// The isomorphism G_{t,1} -> G_{t,l}: x^a y^b -> x^a y^(l^-1 b), with l^-1
/// taken modulo q^s. `src` must have l = 1; the image lives in
/// make_params(p, q, r, s, t, l_target).
GroupElement iso_phi(const GroupParams& src, u64 l_target, const GroupElement& g);

}  // namespace hsp
