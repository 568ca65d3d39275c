#pragma once

// 2-adic numbers u 2^v with u odd and known modulo 2^M, the embedding of K
// and T into Q_2 at the prime above 2 fixed by sqrt(-q) = s with s = 1 mod 4,
// and the valuations built on it.

#include <gmpxx.h>

#include <string>
#include <utility>

#include "cmtwist/errors.hpp"
#include "cmtwist/hecke.hpp"
#include "cmtwist/telement.hpp"

namespace cmtwist {

inline constexpr long kDyadicBits = 128;

namespace detail {

inline mpz_class pow2z(long e) {
  mpz_class r = 1;
  r <<= static_cast<mp_bitcnt_t>(e);
  return r;
}

inline long ord2(const mpz_class& x) { return static_cast<long>(mpz_scan1(x.get_mpz_t(), 0)); }

inline mpz_class mod2k(const mpz_class& x, long k) {
  mpz_class r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  return r;
}

inline mpz_class inverse_mod2k(const mpz_class& u, long k) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), u.get_mpz_t(), pow2z(k).get_mpz_t()) == 0) {
    throw InvalidInput("inverse_mod2k: even argument");
  }
  return r;
}

}  // namespace detail

/// u 2^v with u odd modulo 2^M. A zero carries the bound "divisible by 2^v".
class DyadicNumber {
 public:
  DyadicNumber() : zero_(true), v_(kDyadicBits), m_(0), u_(0) {}

  static DyadicNumber zero(long absolute_precision) {
    DyadicNumber z;
    z.v_ = absolute_precision;
    return z;
  }

  static DyadicNumber from_mpz(const mpz_class& x, long bits = kDyadicBits) {
    if (x == 0) return zero(bits);
    const long v = detail::ord2(abs(mpz_class(x)));
    mpz_class odd = x;
    mpz_fdiv_q_2exp(odd.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(v));
    return DyadicNumber(v, detail::mod2k(odd, bits), bits);
  }

  static DyadicNumber from_int(long x, long bits = kDyadicBits) { return from_mpz(mpz_class(x), bits); }

  static DyadicNumber from_mpq(const mpq_class& x, long bits = kDyadicBits) {
    if (x == 0) return zero(bits);
    const DyadicNumber n = from_mpz(x.get_num(), bits);
    const DyadicNumber d = from_mpz(x.get_den(), bits);
    return n / d;
  }

  /// Unit with residue u modulo 2^bits (u odd) times 2^v.
  static DyadicNumber from_unit(const mpz_class& u, long v, long bits) {
    if (u % 2 == 0) throw InvalidInput("from_unit: residue must be odd");
    return DyadicNumber(v, detail::mod2k(u, bits), bits);
  }

  bool is_zero() const { return zero_; }

  long valuation() const {
    if (zero_) throw PrecisionExhausted("value is zero to 2-adic precision " + std::to_string(v_));
    return v_;
  }

  /// Number of known bits of the unit part.
  long relative_precision() const { return zero_ ? 0 : m_; }

  /// The value is known modulo 2^absolute_precision().
  long absolute_precision() const { return zero_ ? v_ : v_ + m_; }

  const mpz_class& unit() const { return u_; }

  /// Residue modulo 2^k for an integral value; k may not exceed the absolute precision.
  mpz_class residue(long k) const {
    if (k > absolute_precision()) throw PrecisionExhausted("residue beyond known precision");
    if (zero_) return 0;
    if (v_ < 0) throw InvalidInput("residue of a non-integral 2-adic number");
    return detail::mod2k(u_ * detail::pow2z(v_), k);
  }

  DyadicNumber operator-() const {
    if (zero_) return *this;
    return DyadicNumber(v_, detail::mod2k(-u_, m_), m_);
  }

  friend DyadicNumber operator+(const DyadicNumber& x, const DyadicNumber& y) {
    const long A = std::min(x.absolute_precision(), y.absolute_precision());
    if (x.zero_ && y.zero_) return zero(A);
    if (x.zero_) return y.truncated(A);
    if (y.zero_) return x.truncated(A);
    const long m = std::min(x.v_, y.v_);
    if (A <= m) return zero(A);
    const mpz_class s = x.u_ * detail::pow2z(x.v_ - m) + y.u_ * detail::pow2z(y.v_ - m);
    const mpz_class r = detail::mod2k(s, A - m);
    if (r == 0) return zero(A);
    const long extra = detail::ord2(r);
    mpz_class odd;
    mpz_fdiv_q_2exp(odd.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(extra));
    const long v = m + extra;
    return DyadicNumber(v, detail::mod2k(odd, A - v), A - v);
  }

  friend DyadicNumber operator-(const DyadicNumber& x, const DyadicNumber& y) { return x + (-y); }

  friend DyadicNumber operator*(const DyadicNumber& x, const DyadicNumber& y) {
    if (x.zero_ && y.zero_) return zero(x.v_ + y.v_);
    if (x.zero_) return zero(x.v_ + y.v_);
    if (y.zero_) return zero(x.v_ + y.v_);
    const long m = std::min(x.m_, y.m_);
    return DyadicNumber(x.v_ + y.v_, detail::mod2k(x.u_ * y.u_, m), m);
  }

  friend DyadicNumber operator/(const DyadicNumber& x, const DyadicNumber& y) {
    if (y.zero_) throw PrecisionExhausted("division by a 2-adic zero");
    if (x.zero_) return zero(x.v_ - y.v_);
    const long m = std::min(x.m_, y.m_);
    return DyadicNumber(x.v_ - y.v_, detail::mod2k(x.u_ * detail::inverse_mod2k(y.u_, m), m), m);
  }

  DyadicNumber pow(long n) const {
    if (n < 0) return DyadicNumber::from_int(1, m_) / pow(-n);
    DyadicNumber r = DyadicNumber::from_int(1, zero_ ? kDyadicBits : m_);
    for (long i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  /// Equal to the common known precision.
  friend bool operator==(const DyadicNumber& x, const DyadicNumber& y) { return (x - y).is_zero(); }

  std::string to_string() const {
    if (zero_) return "O(2^" + std::to_string(v_) + ")";
    return "2^" + std::to_string(v_) + " * " + u_.get_str() + " + O(2^" + std::to_string(v_ + m_) + ")";
  }

 private:
  DyadicNumber(long v, mpz_class u, long m) : zero_(false), v_(v), m_(m), u_(std::move(u)) {
    if (m_ <= 0) {
      zero_ = true;
      v_ = v + std::max(m_, 0L);
      u_ = 0;
      m_ = 0;
    }
  }

  DyadicNumber truncated(long A) const {
    if (zero_) return zero(std::min(v_, A));
    if (A <= v_) return zero(A);
    const long m = std::min(m_, A - v_);
    return DyadicNumber(v_, detail::mod2k(u_, m), m);
  }

  bool zero_;
  long v_;
  long m_;
  mpz_class u_;
};

/// Square root of a = 1 mod 8 in Z_2, the branch with root = 1 mod 4.
inline DyadicNumber dyadic_sqrt(const mpz_class& a, long bits = kDyadicBits) {
  if (detail::mod2k(a, 3) != 1) throw NotASquare("dyadic_sqrt: need a = 1 mod 8");
  mpz_class s = 1;
  // s^2 = a mod 2^(k+1) after step k; the root is then determined mod 2^k
  for (long k = 3; k <= bits + 1; ++k) {
    if (detail::mod2k(s * s - a, k + 1) != 0) s += detail::pow2z(k - 1);
  }
  s = detail::mod2k(s, bits);
  if (detail::mod2k(s, 2) != 1) s = detail::mod2k(-s, bits);
  return DyadicNumber::from_unit(s, 0, bits);
}

/// The unique x in Z_2^x with x^n = c, n odd.
inline DyadicNumber dyadic_nth_root(const DyadicNumber& c, long n) {
  if (n < 1 || n % 2 == 0) throw InvalidInput("dyadic_nth_root: n must be odd and positive");
  if (c.is_zero() || c.valuation() != 0) throw InvalidInput("dyadic_nth_root: c must be a unit");
  const long bits = c.relative_precision();
  const mpz_class cu = c.unit();
  const mpz_class mod = detail::pow2z(bits);
  // x -> x^n is the identity on (Z/8)^x for odd n
  mpz_class x = detail::mod2k(cu, 3);
  for (int it = 0; it < 64; ++it) {
    mpz_class xn1;
    mpz_powm_ui(xn1.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(n - 1), mod.get_mpz_t());
    const mpz_class f = detail::mod2k(xn1 * x - cu, bits);
    if (f == 0) break;
    x = detail::mod2k(x - f * detail::inverse_mod2k(xn1 * n, bits), bits);
  }
  return DyadicNumber::from_unit(x, 0, bits);
}

/// K -> Q_2 with sqrt(-q) -> s, s = 1 mod 4 (or its negative when swapped),
/// and T -> Q_2 with t -> t_P, the root of x^h = c in Q_2.
struct PadicEmbedding {
  std::int64_t q = 0;
  long bits = kDyadicBits;
  bool swapped = false;
  DyadicNumber s;
  DyadicNumber omega;
  DyadicNumber t;
  int h = 1;
};

inline DyadicNumber embed_k_element(const KElement& x, const PadicEmbedding& e) {
  return DyadicNumber::from_mpq(x.a(), e.bits + 8) + DyadicNumber::from_mpq(x.b(), e.bits + 8) * e.omega;
}

inline PadicEmbedding padic_embedding(const GrossCharacter& chi, long bits = kDyadicBits, bool swap_sign = false) {
  PadicEmbedding e;
  e.q = chi.q();
  e.bits = bits;
  e.swapped = swap_sign;
  e.h = chi.h();
  // two spare bits so that omega = (1 + s)/2 keeps `bits` bits
  DyadicNumber s = dyadic_sqrt(mpz_class(-chi.q()), bits + 2);
  if (swap_sign) s = -s;
  e.s = s;
  e.omega = (DyadicNumber::from_int(1, bits + 2) + s) / DyadicNumber::from_int(2, bits + 2);
  const DyadicNumber c = embed_k_element(chi.c(), e);
  const long v = c.valuation();
  if (v % e.h != 0) throw InvalidInput("c has no h-th root in Q_2");
  const DyadicNumber unit = c / DyadicNumber::from_mpz(detail::pow2z(v), bits + 8);
  e.t = dyadic_nth_root(unit, e.h) * DyadicNumber::from_mpz(detail::pow2z(v / e.h), bits + 8);
  return e;
}

inline DyadicNumber embed_T_element(const TElement& x, const PadicEmbedding& e) {
  DyadicNumber acc = DyadicNumber::zero(e.bits + 8);
  DyadicNumber tj = DyadicNumber::from_int(1, e.bits + 8);
  for (int j = 0; j < x.h(); ++j) {
    if (!(x[j].a() == 0 && x[j].b() == 0)) acc = acc + embed_k_element(x[j], e) * tj;
    tj = tj * e.t;
  }
  return acc;
}

/// ord_P of x; throws PrecisionExhausted when x is zero to the working precision.
inline long ord_P(const TElement& x, const PadicEmbedding& e) { return embed_T_element(x, e).valuation(); }

struct DyadicPrimes {
  /// the prime above 2 with positive valuation under the embedding
  KIdeal p;
  /// its conjugate
  KIdeal p_star;
};

inline DyadicPrimes dyadic_primes(const ImagQuadField& f, const PadicEmbedding& e) {
  const std::vector<PrimeIdeal> ps = primes_above(f, 2);
  if (ps.size() != 2) throw InvalidInput("2 must split in K");
  for (std::size_t i = 0; i < 2; ++i) {
    // (2, m + omega) lies under the embedding prime iff m + omega maps into 2 Z_2
    const KElement g = KElement(f, mpq_class(ps[i].ideal.m()), 1);
    if (embed_k_element(g, e).valuation() > 0) return {ps[i].ideal, ps[1 - i].ideal};
  }
  throw NumericFailure("no prime above 2 matches the embedding");
}

enum class Inertia { inert, split };

inline std::string to_string(Inertia i) { return i == Inertia::inert ? "inert" : "split"; }

/// Splitting of p* in the extension generated by a root of X^2 + X + (alpha + 1)/4.
/// Modulo p* the polynomial has a root in F_2 exactly when (alpha + 1)/4 lies in p*,
/// where alpha = sqrt(-q) is read in the completion at p*.
inline Inertia inertia_check(std::int64_t q) {
  const ImagQuadField f(q);
  const DyadicNumber s = dyadic_sqrt(mpz_class(-q), 16);
  // at p* the square root is -s
  const DyadicNumber c = (DyadicNumber::from_int(1, 16) - s) / DyadicNumber::from_int(4, 16);
  if (c.valuation() < 0) throw NumericFailure("(alpha + 1)/4 is not integral at p*");
  return c.valuation() == 0 ? Inertia::inert : Inertia::split;
}

/// ord_P(phi(p*) - 1).
inline long char_unit_ord(const GrossCharacter& chi, const PadicEmbedding& e) {
  const DyadicPrimes pr = dyadic_primes(chi.field(), e);
  const TElement v = chi.to_telement(chi.value(pr.p_star));
  return (embed_T_element(v, e) - DyadicNumber::from_int(1, e.bits + 8)).valuation();
}

}  // namespace cmtwist
