#pragma once

// Multiprecision real and complex arithmetic on top of MPFR.
//
// Every value carries its own precision in bits. Binary operations produce a
// result at the smaller of the two operand precisions, so a computation that
// mixes precisions degrades to the weakest input instead of silently
// pretending to be more accurate than it is.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>
#include <utility>

#include "cmtwist/errors.hpp"

namespace cmtwist {

inline constexpr long kDefaultPrecision = 192;

class BigReal {
 public:
  BigReal() : BigReal(0, kDefaultPrecision) {}

  BigReal(long value, long prec) {
    mpfr_init2(v_, checked(prec));
    mpfr_set_si(v_, value, MPFR_RNDN);
  }

  static BigReal zero(long prec) { return BigReal(0, prec); }

  static BigReal from_double(double value, long prec) {
    BigReal r(0, prec);
    mpfr_set_d(r.v_, value, MPFR_RNDN);
    return r;
  }

  static BigReal from_mpz(const mpz_class& value, long prec) {
    BigReal r(0, prec);
    mpfr_set_z(r.v_, value.get_mpz_t(), MPFR_RNDN);
    return r;
  }

  static BigReal from_mpq(const mpq_class& value, long prec) {
    BigReal r(0, prec);
    mpfr_set_q(r.v_, value.get_mpq_t(), MPFR_RNDN);
    return r;
  }

  /// Parses a decimal (or MPFR-format) string; throws InvalidInput on garbage.
  static BigReal from_string(const std::string& text, long prec) {
    BigReal r(0, prec);
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
      throw InvalidInput("not a number: '" + text + "'");
    }
    return r;
  }

  static BigReal pi(long prec) {
    BigReal r(0, prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  static BigReal ln2(long prec) {
    BigReal r(0, prec);
    mpfr_const_log2(r.v_, MPFR_RNDN);
    return r;
  }

  /// 2^e exactly.
  static BigReal pow2(long e, long prec) {
    BigReal r(1, prec);
    mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
  }

  BigReal(const BigReal& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  BigReal(BigReal&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }

  BigReal& operator=(const BigReal& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }

  BigReal& operator=(BigReal&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }

  ~BigReal() { mpfr_clear(v_); }

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }

  BigReal with_precision(long prec) const {
    BigReal r(0, prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Scientific notation with `digits` significant digits after the point.
  std::string to_string(int digits = 30) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  mpz_class round_to_mpz() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
  }

  mpz_class floor_to_mpz() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
  }

  /// Exact conversion; the value is a dyadic rational.
  mpq_class to_mpq() const {
    mpq_class out;
    if (mpfr_zero_p(v_)) return out;
    mpz_class m;
    const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    out = m;
    if (e >= 0) {
      mpz_class s = 1;
      s <<= static_cast<mp_bitcnt_t>(e);
      out *= s;
    } else {
      mpz_class s = 1;
      s <<= static_cast<mp_bitcnt_t>(-e);
      out /= s;
    }
    out.canonicalize();
    return out;
  }

  /// Binary exponent: |x| lies in [2^(e-1), 2^e). Zero maps to LONG_MIN.
  long exponent2() const {
    if (mpfr_zero_p(v_)) return LONG_MIN;
    return static_cast<long>(mpfr_get_exp(v_));
  }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  BigReal operator-() const {
    BigReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  BigReal& operator+=(const BigReal& b) {
    shrink_to(b);
    mpfr_add(v_, v_, b.v_, MPFR_RNDN);
    return *this;
  }
  BigReal& operator-=(const BigReal& b) {
    shrink_to(b);
    mpfr_sub(v_, v_, b.v_, MPFR_RNDN);
    return *this;
  }
  BigReal& operator*=(const BigReal& b) {
    shrink_to(b);
    mpfr_mul(v_, v_, b.v_, MPFR_RNDN);
    return *this;
  }
  BigReal& operator/=(const BigReal& b) {
    shrink_to(b);
    mpfr_div(v_, v_, b.v_, MPFR_RNDN);
    return *this;
  }
  BigReal& operator+=(long b) {
    mpfr_add_si(v_, v_, b, MPFR_RNDN);
    return *this;
  }
  BigReal& operator-=(long b) {
    mpfr_sub_si(v_, v_, b, MPFR_RNDN);
    return *this;
  }
  BigReal& operator*=(long b) {
    mpfr_mul_si(v_, v_, b, MPFR_RNDN);
    return *this;
  }
  BigReal& operator/=(long b) {
    mpfr_div_si(v_, v_, b, MPFR_RNDN);
    return *this;
  }

  friend BigReal operator+(BigReal a, const BigReal& b) { return a += b; }
  friend BigReal operator-(BigReal a, const BigReal& b) { return a -= b; }
  friend BigReal operator*(BigReal a, const BigReal& b) { return a *= b; }
  friend BigReal operator/(BigReal a, const BigReal& b) { return a /= b; }
  friend BigReal operator+(BigReal a, long b) { return a += b; }
  friend BigReal operator-(BigReal a, long b) { return a -= b; }
  friend BigReal operator*(BigReal a, long b) { return a *= b; }
  friend BigReal operator/(BigReal a, long b) { return a /= b; }
  friend BigReal operator*(long a, BigReal b) { return b *= a; }
  friend BigReal operator+(long a, BigReal b) { return b += a; }
  friend BigReal operator-(long a, const BigReal& b) {
    BigReal r(0, b.precision());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator<(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }

  friend std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.to_string(20); }

 private:
  static mpfr_prec_t checked(long prec) {
    if (prec < MPFR_PREC_MIN || prec > (1L << 24)) throw InvalidInput("precision out of range");
    return static_cast<mpfr_prec_t>(prec);
  }

  void shrink_to(const BigReal& b) {
    if (mpfr_get_prec(b.v_) < mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(b.v_), MPFR_RNDN);
  }

  mpfr_t v_;
};

namespace detail {
template <class Fn>
BigReal unary(const BigReal& x, Fn fn) {
  BigReal r(0, x.precision());
  fn(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline BigReal abs(const BigReal& x) { return detail::unary(x, mpfr_abs); }
inline BigReal sqrt(const BigReal& x) { return detail::unary(x, mpfr_sqrt); }
inline BigReal cbrt(const BigReal& x) { return detail::unary(x, mpfr_cbrt); }
inline BigReal exp(const BigReal& x) { return detail::unary(x, mpfr_exp); }
inline BigReal log(const BigReal& x) { return detail::unary(x, mpfr_log); }
inline BigReal sin(const BigReal& x) { return detail::unary(x, mpfr_sin); }
inline BigReal cos(const BigReal& x) { return detail::unary(x, mpfr_cos); }
inline BigReal sinh(const BigReal& x) { return detail::unary(x, mpfr_sinh); }
inline BigReal cosh(const BigReal& x) { return detail::unary(x, mpfr_cosh); }

inline BigReal atan2(const BigReal& y, const BigReal& x) {
  BigReal r(0, std::min(y.precision(), x.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

inline BigReal hypot(const BigReal& x, const BigReal& y) {
  BigReal r(0, std::min(y.precision(), x.precision()));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

/// x * 2^e.
inline BigReal ldexp(const BigReal& x, long e) {
  BigReal r(x);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

inline BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }
inline BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }

class BigComplex {
 public:
  BigComplex() : re_(0, kDefaultPrecision), im_(0, kDefaultPrecision) {}
  BigComplex(long re, long im, long prec) : re_(re, prec), im_(im, prec) {}
  explicit BigComplex(BigReal re) : re_(std::move(re)), im_(0, re_.precision()) {}
  BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {
    const long p = std::min(re_.precision(), im_.precision());
    if (re_.precision() != p) re_ = re_.with_precision(p);
    if (im_.precision() != p) im_ = im_.with_precision(p);
  }

  static BigComplex zero(long prec) { return BigComplex(0, 0, prec); }
  static BigComplex one(long prec) { return BigComplex(1, 0, prec); }
  static BigComplex i(long prec) { return BigComplex(0, 1, prec); }

  static BigComplex from_double(double re, double im, long prec) {
    return BigComplex(BigReal::from_double(re, prec), BigReal::from_double(im, prec));
  }

  const BigReal& re() const { return re_; }
  const BigReal& im() const { return im_; }
  BigReal& re() { return re_; }
  BigReal& im() { return im_; }

  long precision() const { return re_.precision(); }

  BigComplex with_precision(long prec) const {
    return BigComplex(re_.with_precision(prec), im_.with_precision(prec));
  }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  BigComplex conj() const { return BigComplex(re_, -im_); }

  /// |z|^2.
  BigReal norm() const {
    BigReal r(0, precision());
    mpfr_fmma(r.get(), re_.get(), re_.get(), im_.get(), im_.get(), MPFR_RNDN);
    return r;
  }

  BigReal abs() const { return hypot(re_, im_); }
  BigReal arg() const { return atan2(im_, re_); }

  BigComplex operator-() const { return BigComplex(-re_, -im_); }

  BigComplex& operator+=(const BigComplex& b) {
    re_ += b.re_;
    im_ += b.im_;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& b) {
    re_ -= b.re_;
    im_ -= b.im_;
    return *this;
  }
  BigComplex& operator*=(const BigComplex& b) {
    const long p = std::min(precision(), b.precision());
    BigReal r(0, p);
    BigReal s(0, p);
    mpfr_fmms(r.get(), re_.get(), b.re_.get(), im_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_fmma(s.get(), re_.get(), b.im_.get(), im_.get(), b.re_.get(), MPFR_RNDN);
    re_ = std::move(r);
    im_ = std::move(s);
    return *this;
  }
  BigComplex& operator/=(const BigComplex& b) {
    if (b.is_zero()) throw NumericFailure("complex division by zero");
    const BigReal n = b.norm();
    *this *= b.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }
  BigComplex& operator*=(const BigReal& b) {
    re_ *= b;
    im_ *= b;
    return *this;
  }
  BigComplex& operator/=(const BigReal& b) {
    re_ /= b;
    im_ /= b;
    return *this;
  }
  BigComplex& operator*=(long b) {
    re_ *= b;
    im_ *= b;
    return *this;
  }
  BigComplex& operator/=(long b) {
    re_ /= b;
    im_ /= b;
    return *this;
  }

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }
  friend BigComplex operator*(const BigReal& b, BigComplex a) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigReal& b) { return a /= b; }
  friend BigComplex operator*(BigComplex a, long b) { return a *= b; }
  friend BigComplex operator*(long b, BigComplex a) { return a *= b; }
  friend BigComplex operator/(BigComplex a, long b) { return a /= b; }

  BigComplex inverse() const { return BigComplex::one(precision()) / *this; }

  /// z * i.
  BigComplex times_i() const { return BigComplex(-im_, re_); }

  std::string to_string(int digits = 30) const {
    return "(" + re_.to_string(digits) + ", " + im_.to_string(digits) + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const BigComplex& z) { return os << z.to_string(20); }

 private:
  BigReal re_;
  BigReal im_;
};

/// |a - b|.
inline BigReal distance(const BigComplex& a, const BigComplex& b) { return (a - b).abs(); }

/// exp(z). Refuses |Re z| > 2^40, which only arises from a misuse of the
/// analytic routines (the exponent would overflow any sensible range).
inline BigComplex complex_exp(const BigComplex& z) {
  const BigReal bound = BigReal::pow2(40, 64);
  if (abs(z.re()) > bound) throw NumericFailure("complex_exp: |Re z| exceeds 2^40");
  const BigReal m = exp(z.re());
  return BigComplex(m * cos(z.im()), m * sin(z.im()));
}

/// Principal square root (branch cut on the negative real axis, Re >= 0).
inline BigComplex complex_sqrt(const BigComplex& z) {
  if (z.is_zero()) return z;
  const BigReal r = z.abs();
  const BigReal t = sqrt((r + abs(z.re())) / 2);
  if (z.re().sign() >= 0) return BigComplex(t, z.im() / (2 * t));
  BigReal im = z.im().sign() >= 0 ? t : -t;
  return BigComplex(abs(z.im()) / (2 * t), std::move(im));
}

inline BigComplex complex_log(const BigComplex& z) {
  if (z.is_zero()) throw NumericFailure("log of zero");
  return BigComplex(log(z.abs()), z.arg());
}

/// z^n for integer n (n may be negative).
inline BigComplex pow(const BigComplex& z, long n) {
  if (n < 0) return pow(z.inverse(), -n);
  BigComplex result = BigComplex::one(z.precision());
  BigComplex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

/// Arithmetic-geometric mean with the "right" square-root branch at every step
/// (|a_n - b_n| <= |a_n + b_n|), so the iteration converges to the optimal
/// value used in period computations.
inline BigComplex complex_agm(BigComplex a, BigComplex b) {
  const long prec = std::min(a.precision(), b.precision());
  if (a.is_zero() || b.is_zero()) throw InvalidInput("agm: zero argument");
  if ((a + b).abs() <= ldexp(a.abs(), -(prec - 8))) throw InvalidInput("agm: antipodal arguments");
  const long max_iter = 8 * static_cast<long>(std::ceil(std::log2(static_cast<double>(prec))));
  const BigReal tol = BigReal::pow2(-(prec - 4), prec);
  for (long it = 0; it < max_iter; ++it) {
    if ((a - b).abs() <= tol * a.abs()) return a;
    BigComplex an = (a + b) / 2;
    BigComplex bn = complex_sqrt(a * b);
    if ((an - bn).abs() > (an + bn).abs()) bn = -bn;
    a = std::move(an);
    b = std::move(bn);
  }
  throw AgmBranchFailure("agm did not converge");
}

struct PrecisionPolicy {
  long work_bits = kDefaultPrecision;
  long guard_bits = 32;
  long verify_delta = 64;

  void validate() const {
    if (work_bits < 64) throw InvalidInput("precision must be at least 64 bits");
    if (guard_bits >= work_bits) throw InvalidInput("guard bits must be below working precision");
    if (verify_delta <= 0) throw InvalidInput("verification delta must be positive");
  }
};

/// Runs `f(bits)` at the working precision and again at work + verify_delta
/// bits. Returns the working-precision result when the two agree to
/// 2^-(work - guard) relative to their size, else throws PrecisionLoss.
template <class Fn>
BigComplex precision_guard(Fn&& f, const PrecisionPolicy& policy = {}) {
  policy.validate();
  const BigComplex lo = BigComplex(f(policy.work_bits));
  const BigComplex hi = BigComplex(f(policy.work_bits + policy.verify_delta));
  const BigReal scale = max(lo.abs(), hi.abs().with_precision(lo.precision()));
  const BigReal diff = (hi.with_precision(lo.precision()) - lo).abs();
  const BigReal bound = ldexp(scale, -(policy.work_bits - policy.guard_bits));
  if (diff > bound) {
    throw PrecisionLoss("results at " + std::to_string(policy.work_bits) + " and " +
                        std::to_string(policy.work_bits + policy.verify_delta) +
                        " bits disagree by " + diff.to_string(5));
  }
  return lo;
}

}  // namespace cmtwist
