#include "hsp/group.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

#include "hsp/errors.hpp"

namespace hsp {

std::string to_string(const GroupElement& g) {
  return "(" + std::to_string(g.a) + "," + std::to_string(g.b) + ")";
}

namespace {

// p^e, or 0 if it exceeds `limit`
u64 bounded_pow(u64 base, unsigned e, u64 limit) {
  u64 out = 1;
  for (unsigned k = 0; k < e; ++k) {
    if (out > limit / base) return 0;
    out *= base;
  }
  return out;
}

constexpr u64 kMaxGroupOrder = u64{1} << 31;

}  // namespace

GroupParams make_params(u64 p, u64 q, unsigned r, unsigned s, unsigned t, u64 l) {
  if (p < 3 || !is_prime(p)) throw InvalidParams("p must be an odd prime");
  if (q < 3 || !is_prime(q)) throw InvalidParams("q must be an odd prime");
  if (p == q) throw InvalidParams("p and q must be distinct");
  if (r < 1) throw InvalidParams("r must be positive");
  if (s < 1) throw InvalidParams("s must be positive");
  if (t < 1 || t > s) throw InvalidParams("t must lie in [1, s]");

  const u64 pr = bounded_pow(p, r, kMaxGroupOrder);
  const u64 qs = bounded_pow(q, s, kMaxGroupOrder);
  if (pr == 0 || qs == 0 || pr > kMaxGroupOrder / qs)
    throw InvalidParams("group order p^r q^s exceeds 2^31");

  const u64 qt = ipow(q, t);
  if ((p - 1) % qt != 0) throw InvalidParams("q^t does not divide p-1");
  if (gcd(l % qt, q) != 1) throw InvalidParams("l is not a unit modulo q^t");

  GroupParams P;
  P.p_ = p;
  P.q_ = q;
  P.r_ = r;
  P.s_ = s;
  P.t_ = t;
  P.l_ = l % qt;
  P.pr_ = pr;
  P.qs_ = qs;
  P.qt_ = qt;
  P.u_ = find_primitive_root(p, r).value;

  const u64 k = ipow(p, r - 1) * ((p - 1) / qt);
  P.alpha_ = mod_pow(static_cast<i64>(P.u_), mulmod(P.l_, k, euler_phi(pr)), pr).value;

  if (multiplicative_order(static_cast<i64>(P.alpha_), pr) != qt)
    throw InvalidParams("alpha does not have order q^t");
  if (mod_pow(static_cast<i64>(P.alpha_), qs, pr).value != 1 % pr)
    throw InvalidParams("alpha^(q^s) is not 1");

  P.alpha_pows_.resize(qt);
  u64 acc = 1 % pr;
  for (u64 b = 0; b < qt; ++b) {
    P.alpha_pows_[b] = acc;
    acc = mulmod(acc, P.alpha_, pr);
  }
  return P;
}

std::string describe(const GroupParams& P) {
  std::ostringstream os;
  os << "G(p=" << P.p() << ",q=" << P.q() << ",r=" << P.r() << ",s=" << P.s() << ",t=" << P.t()
     << ",l=" << P.l() << ")";
  return os.str();
}

GroupParams quotient_params(const GroupParams& P, unsigned i) {
  if (i < 1 || i > P.r()) throw std::invalid_argument("quotient exponent must lie in [1, r]");
  if (i == P.r()) return P;
  const u64 pi = ipow(P.p(), i);
  const u64 target = P.alpha() % pi;
  for (u64 l = 1; l < P.qt(); ++l) {
    if (gcd(l, P.q()) != 1) continue;
    GroupParams Q = make_params(P.p(), P.q(), i, P.s(), P.t(), l);
    if (Q.alpha() == target) return Q;
  }
  throw std::logic_error("alpha mod p^i lies outside the order-q^t subgroup");
}

std::vector<GroupParams> enumerate_valid_params(u64 max_order) {
  std::vector<GroupParams> out;
  for (u64 q = 3; 7 * q <= max_order; q += 2) {
    if (!is_prime(q)) continue;
    for (u64 p = 2 * q + 1; p * q <= max_order; p += 2 * q) {  // p = 1 mod 2q
      if (!is_prime(p)) continue;
      for (unsigned r = 1; bounded_pow(p, r, max_order) != 0 &&
                           bounded_pow(p, r, max_order) * q <= max_order;
           ++r) {
        const u64 pr = ipow(p, r);
        for (unsigned s = 1; bounded_pow(q, s, max_order) != 0 &&
                             pr * bounded_pow(q, s, max_order) <= max_order;
             ++s) {
          for (unsigned t = 1; t <= s && (p - 1) % ipow(q, t) == 0; ++t)
            out.push_back(make_params(p, q, r, s, t, 1));
        }
      }
    }
  }
  return out;
}

GroupElement inverse(const GroupParams& P, const GroupElement& g) {
  // (a, b)^-1 = (-alpha^-b a, -b)
  const u64 nb = g.b == 0 ? 0 : P.qs() - g.b;
  const u64 a = mulmod(P.alpha_pow(nb), g.a, P.pr());
  return {a == 0 ? 0 : P.pr() - a, nb};
}

GroupElement power(const GroupParams& P, const GroupElement& g, i64 k) {
  if (k < 0) {
    // -(k+1) stays representable at INT64_MIN
    GroupElement h = power(P, inverse(P, g), -(k + 1));
    return multiply(P, h, inverse(P, g));
  }
  const u64 uk = static_cast<u64>(k);
  const u64 bk = mulmod(g.b, uk % P.qs(), P.qs());
  if (g.b % P.qt() == 0) return {mulmod(g.a, uk % P.pr(), P.pr()), bk};
  const u64 pr = P.pr();
  const u64 ab = P.alpha_pow(g.b);
  const u64 num = submod(mod_pow(static_cast<i64>(ab), uk, pr).value, 1 % pr, pr);
  const u64 den = mod_inv(static_cast<i64>(submod(ab, 1, pr)), pr).value;
  return {mulmod(g.a, mulmod(num, den, pr), pr), bk};
}

GroupElement commutator(const GroupParams& P, const GroupElement& g, const GroupElement& h) {
  return multiply(P, multiply(P, multiply(P, g, h), inverse(P, g)), inverse(P, h));
}

u64 commutator_exponent(const GroupParams& P, const GroupElement& g, const GroupElement& h) {
  const u64 m = P.pr();
  u64 e = addmod(g.a, mulmod(h.a, P.alpha_pow(g.b), m), m);
  e = submod(e, mulmod(g.a, P.alpha_pow(h.b), m), m);
  return submod(e, h.a, m);
}

GroupElement conjugate(const GroupParams& P, const GroupElement& g, const GroupElement& h) {
  // (a,b)(c,d)(a,b)^-1 = (a + alpha^b c - alpha^d a, d)
  const u64 m = P.pr();
  u64 a = addmod(g.a, mulmod(P.alpha_pow(g.b), h.a, m), m);
  return {submod(a, mulmod(P.alpha_pow(h.b), g.a, m), m), h.b};
}

u64 element_order(const GroupParams& P, const GroupElement& g) {
  u64 k = 1;
  for (GroupElement h = g; h != identity(); h = multiply(P, h, g)) ++k;
  return k;
}

Residue S_of(const GroupParams& P, u64 n, unsigned j) {
  if (j >= P.t())
    throw NonUnitDenominator("S(n) needs j < t so that alpha^(q^j) - 1 is a unit");
  const u64 pr = P.pr();
  const u64 qj = ipow(P.q(), j);
  const u64 num = submod(P.alpha_pow(mulmod(n % P.qt(), qj, P.qt())), 1 % pr, pr);
  const u64 den = mod_inv(static_cast<i64>(submod(P.alpha_pow(qj), 1, pr)), pr).value;
  return {mulmod(num, den, pr), pr};
}

GroupElement iso_phi(const GroupParams& src, u64 l_target, const GroupElement& g) {
  if (src.l() != 1) throw std::invalid_argument("iso_phi source must have l = 1");
  const u64 l_inv = mod_inv(static_cast<i64>(l_target), src.qs()).value;
  return {g.a, mulmod(l_inv, g.b, src.qs())};
}

}  // namespace hsp
