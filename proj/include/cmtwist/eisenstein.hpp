#pragma once

// Weierstrass zeta and the weight-one Eisenstein series
//   E1*(z, L) = zeta(z) - s2 z - A conj(z)
// on complex lattices, where (s2, A) are fixed by the quasi-periods:
// eta_i = s2 w_i + A conj(w_i). The function is L-periodic, odd and
// homogeneous of degree -1.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "cmtwist/errors.hpp"
#include "cmtwist/numerics.hpp"

namespace cmtwist {

/// Lattice Z w1 + Z w2, stored with Im(w2/w1) > 0.
class Lattice {
 public:
  Lattice(BigComplex w1, BigComplex w2) : w1_(std::move(w1)), w2_(std::move(w2)) {
    const BigReal orient = (w1_.conj() * w2_).im();
    const BigReal scale = w1_.abs() * w2_.abs();
    if (abs(orient) <= ldexp(scale, -(precision() / 2))) throw SingularSolve("lattice basis is degenerate");
    if (orient.sign() < 0) w2_ = -w2_;
  }

  const BigComplex& w1() const { return w1_; }
  const BigComplex& w2() const { return w2_; }
  long precision() const { return std::min(w1_.precision(), w2_.precision()); }

  BigReal area() const { return (w1_.conj() * w2_).im(); }
  BigComplex tau() const { return w2_ / w1_; }

  Lattice scaled(const BigComplex& lambda) const { return Lattice(lambda * w1_, lambda * w2_); }

  Lattice with_precision(long prec) const { return Lattice(w1_.with_precision(prec), w2_.with_precision(prec)); }

  /// Real coordinates (x, y) with z = x w1 + y w2.
  std::pair<BigReal, BigReal> coordinates(const BigComplex& z) const {
    const BigReal det = area();
    const BigReal y = (w1_.conj() * z).im() / det;
    const BigReal x = (z * w2_.conj()).im() / (-det);
    return {x, y};
  }

  bool contains_point(const BigComplex& z, long bits) const {
    const auto [x, y] = coordinates(z);
    const BigReal eps = BigReal::pow2(-bits, precision());
    return abs(x - BigReal::from_mpz(x.round_to_mpz(), precision())) < eps &&
           abs(y - BigReal::from_mpz(y.round_to_mpz(), precision())) < eps;
  }

 private:
  BigComplex w1_;
  BigComplex w2_;
};

/// Lagrange-reduced basis (|w1| <= |w2|, |Re(w2/w1)| <= 1/2, Im(w2/w1) > 0)
/// together with the integer matrix expressing it in the input basis.
struct ReducedBasis {
  Lattice lattice;
  // (w1r, w2r) = (a w1 + b w2, c w1 + d w2)
  long a, b, c, d;
};

inline ReducedBasis reduce_basis(const Lattice& L) {
  BigComplex u = L.w1();
  BigComplex v = L.w2();
  long a = 1, b = 0, c = 0, d = 1;
  for (int iter = 0; iter < 10000; ++iter) {
    const BigReal nu = u.norm();
    const BigReal t = (v * u.conj()).re() / nu;
    const long k = t.round_to_mpz().get_si();
    if (k != 0) {
      v -= u * k;
      c -= k * a;
      d -= k * b;
    }
    if (v.norm() < nu) {
      // (u, v) <- (v, -u) keeps the orientation
      BigComplex nv = -u;
      u = std::move(v);
      v = std::move(nv);
      const long na = c, nb = d, nc = -a, nd = -b;
      a = na;
      b = nb;
      c = nc;
      d = nd;
      continue;
    }
    return {Lattice(u, v), a, b, c, d};
  }
  throw NumericFailure("lattice reduction did not terminate");
}

struct ZetaBruteForce {
  BigComplex value;
  BigReal tail_bound;
  BigReal rounding_bound;
  std::int64_t terms = 0;
};

class EisensteinCtx {
 public:
  explicit EisensteinCtx(const Lattice& L) : input_(L), reduced_(reduce_basis(L)) {
    prec_ = L.precision();
    const BigComplex& w1 = reduced_.lattice.w1();
    const BigComplex& w2 = reduced_.lattice.w2();
    const BigComplex tau = w2 / w1;
    pi_ = BigReal::pi(prec_);
    const BigComplex two_pi_i(BigReal::zero(prec_), 2 * pi_);
    Qn_base_ = complex_exp(two_pi_i * tau);
    // |Q|^(n/2) < 2^-(prec+16) covers reduced arguments with |Im u| <= Im(tau)/2
    const double im_tau = tau.im().to_double();
    terms_ = static_cast<long>(std::ceil(2.0 * (static_cast<double>(prec_) + 16.0) * std::log(2.0) /
                                         (2.0 * M_PI * im_tau))) + 2;
    g_.reserve(static_cast<std::size_t>(terms_));
    BigComplex Qn = BigComplex::one(prec_);
    BigComplex E2_sum = BigComplex::zero(prec_);
    for (long n = 1; n <= terms_; ++n) {
      Qn *= Qn_base_;
      const BigComplex gn = Qn / (BigComplex::one(prec_) - Qn);
      g_.push_back(gn);
      E2_sum += gn * n;
    }
    const BigComplex E2 = BigComplex::one(prec_) - E2_sum * 24;
    eta1r_ = E2 * (pi_ * pi_) / (w1 * 3);
    eta2r_ = series_zeta(w2 / 2) * 2;

    // quasi-periods of the input basis
    // (w1, w2) = inverse of [[a b][c d]] applied to (w1r, w2r); the matrix has determinant 1
    const long a = reduced_.a, b = reduced_.b, c = reduced_.c, d = reduced_.d;
    eta1_ = eta1r_ * d - eta2r_ * b;
    eta2_ = eta2r_ * a - eta1r_ * c;

    // eta_i = s2 w_i + A conj(w_i)
    const BigComplex det = w1 * w2.conj() - w2 * w1.conj();
    if (det.abs() <= ldexp(w1.norm(), -(prec_ / 2))) throw SingularSolve("quasi-period system is singular");
    s2_ = (eta1r_ * w2.conj() - eta2r_ * w1.conj()) / det;
    area_inv_ = (w1 * eta2r_ - w2 * eta1r_) / det;
  }

  const Lattice& lattice() const { return input_; }
  const Lattice& reduced_lattice() const { return reduced_.lattice; }
  const BigComplex& eta1() const { return eta1_; }
  const BigComplex& eta2() const { return eta2_; }
  const BigComplex& s2() const { return s2_; }
  const BigComplex& area_inv() const { return area_inv_; }
  long precision() const { return prec_; }

  /// |eta1 w2 - eta2 w1 - 2 pi i| for the input basis.
  BigReal legendre_residual() const {
    const BigComplex two_pi_i(BigReal::zero(prec_), 2 * pi_);
    return (eta1_ * input_.w2() - eta2_ * input_.w1() - two_pi_i).abs();
  }

  BigComplex zeta(const BigComplex& z) const {
    long m = 0, n = 0;
    const BigComplex zr = reduce(z, m, n);
    BigComplex out = series_zeta(zr);
    if (m != 0) out += eta1r_ * m;
    if (n != 0) out += eta2r_ * n;
    return out;
  }

  BigComplex e1star(const BigComplex& z) const {
    long m = 0, n = 0;
    const BigComplex zr = reduce(z, m, n);
    return series_zeta(zr) - s2_ * zr - area_inv_ * zr.conj();
  }

 private:
  /// z - m w1r - n w2r with (m, n) the nearest integer coordinates.
  BigComplex reduce(const BigComplex& z, long& m, long& n) const {
    const auto [x, y] = reduced_.lattice.coordinates(z.with_precision(prec_));
    m = x.round_to_mpz().get_si();
    n = y.round_to_mpz().get_si();
    BigComplex zr = z.with_precision(prec_);
    if (m != 0) zr -= reduced_.lattice.w1() * m;
    if (n != 0) zr -= reduced_.lattice.w2() * n;
    if (zr.abs() <= ldexp(reduced_.lattice.w1().abs(), -(prec_ / 2))) {
      throw PoleAtLatticePoint("argument is a lattice point");
    }
    return zr;
  }

  /// q-expansion of zeta in the reduced basis; valid for |Im(z/w1r)| < Im(tau).
  BigComplex series_zeta(const BigComplex& z) const {
    const BigComplex& w1 = reduced_.lattice.w1();
    const BigComplex u = z / w1;
    const BigComplex two_pi_i(BigReal::zero(prec_), 2 * pi_);
    const BigComplex E = complex_exp(two_pi_i * u);
    const BigComplex Einv = E.inverse();
    const BigComplex one = BigComplex::one(prec_);
    // pi cot(pi u) = pi i (E + 1)/(E - 1)
    BigComplex out = ((E + one) / (E - one)).times_i() * pi_;
    // 4 pi sum g_n sin(2 pi n u) = -2 pi i sum g_n (E^n - E^-n)
    BigComplex acc = BigComplex::zero(prec_);
    BigComplex En = one;
    BigComplex Enin = one;
    for (const BigComplex& gn : g_) {
      En *= E;
      Enin *= Einv;
      acc += gn * (En - Enin);
    }
    out -= acc.times_i() * (2 * pi_);
    out /= w1;
    out += eta1r_ * u;
    return out;
  }

  Lattice input_;
  ReducedBasis reduced_;
  long prec_;
  BigReal pi_;
  BigComplex Qn_base_;
  long terms_ = 0;
  std::vector<BigComplex> g_;
  BigComplex eta1r_, eta2r_, eta1_, eta2_, s2_, area_inv_;
};

inline EisensteinCtx quasi_periods(const Lattice& L) { return EisensteinCtx(L); }

inline BigComplex weierstrass_zeta(const BigComplex& z, const Lattice& L) { return EisensteinCtx(L).zeta(z); }

inline BigComplex e1star(const BigComplex& z, const EisensteinCtx& ctx) { return ctx.e1star(z); }

/// zeta(z) = 1/z + sum over 0 < |w| <= X of z^2 / (w^2 (z - w)), summed over
/// the full disc so that odd terms cancel. The returned tail bound is rigorous:
///   (1 + delta/X)^4 pi / (area (X - delta)^2) * |z|^3 / (1 - |z|^2/X^2),
/// delta = (|w1| + |w2|)/2 for the reduced basis.
inline ZetaBruteForce zeta_bruteforce(const BigComplex& z, const Lattice& L, double X) {
  const ReducedBasis rb = reduce_basis(L);
  const Lattice& R = rb.lattice;
  const long prec = std::min(z.precision(), L.precision());
  if (L.contains_point(z, prec / 2)) throw PoleAtLatticePoint("argument is a lattice point");
  const double w1a = R.w1().abs().to_double();
  const double w2a = R.w2().abs().to_double();
  const double delta = (w1a + w2a) / 2;
  const double zabs = z.abs().to_double();
  if (X <= delta + zabs) throw InvalidInput("zeta_bruteforce: cutoff too small");
  const double near_radius = std::min(X, 16.0 * std::max(w1a, w2a) + zabs);

  BigComplex near = z.inverse();
  long double far_re = 0.0L;
  long double far_im = 0.0L;
  long double far_max = 0.0L;
  std::int64_t far_count = 0;
  std::int64_t count = 0;

  using cld = std::complex<long double>;
  const cld w1l(static_cast<long double>(R.w1().re().to_double()), static_cast<long double>(R.w1().im().to_double()));
  const cld w2l(static_cast<long double>(R.w2().re().to_double()), static_cast<long double>(R.w2().im().to_double()));
  // long double copies of the basis lose precision; the far sum is then a sum over a
  // slightly perturbed lattice, which the rounding bound accounts for below
  const cld zl(static_cast<long double>(z.re().to_double()), static_cast<long double>(z.im().to_double()));
  const BigComplex z2 = z * z;

  const double area = R.area().to_double();
  const double height = area / w1a;  // distance between rows n w2 + Z w1
  const long nmax = static_cast<long>(std::floor(X / height)) + 1;
  for (long n = -nmax; n <= nmax; ++n) {
    const double dist = std::abs(static_cast<double>(n)) * height;
    if (dist > X) continue;
    // points m w1 + n w2 lie on a line; center m0 minimizes |m w1 + n w2|
    const double m0 = -(static_cast<double>(n) * (R.w2() * R.w1().conj()).re().to_double()) / (w1a * w1a);
    const double half = std::sqrt(std::max(0.0, X * X - dist * dist)) / w1a;
    const long mlo = static_cast<long>(std::floor(m0 - half)) - 1;
    const long mhi = static_cast<long>(std::ceil(m0 + half)) + 1;
    long double row_re = 0.0L;
    long double row_im = 0.0L;
    for (long m = mlo; m <= mhi; ++m) {
      if (m == 0 && n == 0) continue;
      const cld wl = static_cast<long double>(m) * w1l + static_cast<long double>(n) * w2l;
      const long double r = std::abs(wl);
      if (r > X) continue;
      ++count;
      if (r <= near_radius) {
        const BigComplex w = R.w1() * m + R.w2() * n;
        near += z2 / (w * w * (z - w));
      } else {
        const cld term = (zl * zl) / (wl * wl * (zl - wl));
        row_re += term.real();
        row_im += term.imag();
        far_max = std::max(far_max, std::abs(term));
        ++far_count;
      }
    }
    far_re += row_re;
    far_im += row_im;
  }
  ZetaBruteForce out;
  out.value = near + BigComplex(BigReal::from_double(static_cast<double>(far_re), prec),
                                BigReal::from_double(static_cast<double>(far_im), prec));
  // the far sum is added through a double; account for that, the long double
  // arithmetic, and the double-precision basis (relative 2^-52 per term)
  const double far_abs = std::hypot(static_cast<double>(far_re), static_cast<double>(far_im));
  const double rounding = far_abs * std::ldexp(1.0, -52) +
                          static_cast<double>(far_count) * static_cast<double>(far_max) * std::ldexp(1.0, -48);
  const double tail = std::pow(1.0 + delta / X, 4) * M_PI / (area * (X - delta) * (X - delta)) *
                      zabs * zabs * zabs / (1.0 - zabs * zabs / (X * X));
  out.tail_bound = BigReal::from_double(tail, 64);
  out.rounding_bound = BigReal::from_double(rounding, 64);
  out.terms = count;
  return out;
}

}  // namespace cmtwist
