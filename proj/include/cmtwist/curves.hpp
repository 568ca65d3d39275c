#pragma once

// Gross curves over the Hilbert class field in one complex embedding:
// Hilbert class polynomials from q-expansions of j, the models
//   y^2 = x^3 + m q x / 48 - r q^2 / 864   (m^3 = j, r^2 = (1728 - j)/q)
// and builtin minimal models, period lattices by the complex AGM and the
// period Omega with lattice = Omega O_K.

#include <gmpxx.h>

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "cmtwist/eisenstein.hpp"
#include "cmtwist/numerics.hpp"
#include "cmtwist/quadfield.hpp"

namespace cmtwist {

/// (E4(tau), E6(tau)) for Im(tau) > 0, evaluated after reducing tau.
/// The lattice Z + Z tau_reduced is a homothetic image, so the returned pair
/// belongs to the reduced point; callers needing weights use lattice_invariants.
inline std::pair<BigComplex, BigComplex> eisenstein_e4_e6(const BigComplex& tau) {
  const long prec = tau.precision();
  const BigComplex two_pi_i(BigReal::zero(prec), 2 * BigReal::pi(prec));
  const BigComplex Q = complex_exp(two_pi_i * tau);
  const BigReal eps = BigReal::pow2(-(prec + 16), prec);
  BigComplex s3 = BigComplex::zero(prec);
  BigComplex s5 = BigComplex::zero(prec);
  BigComplex Qn = BigComplex::one(prec);
  for (long n = 1; n < 100000; ++n) {
    Qn *= Q;
    const BigComplex g = Qn / (BigComplex::one(prec) - Qn);
    const BigComplex t3 = g * (n * n * n);
    s3 += t3;
    s5 += t3 * (n * n);
    if ((Qn.abs() * n * n * n * n * n) < eps) break;
  }
  return {BigComplex::one(prec) + s3 * 240, BigComplex::one(prec) - s5 * 504};
}

/// g2 and g3 of a lattice: g2 = 60 G4, g3 = 140 G6.
inline std::pair<BigComplex, BigComplex> lattice_invariants(const Lattice& L) {
  const Lattice R = reduce_basis(L).lattice;
  const long prec = R.precision();
  const auto [e4, e6] = eisenstein_e4_e6(R.tau());
  const BigReal pi = BigReal::pi(prec);
  const BigComplex w2 = R.w1() * R.w1();
  const BigComplex w4 = w2 * w2;
  const BigReal pi2 = pi * pi;
  const BigComplex g2 = e4 * (pi2 * pi2 * 4) / (w4 * 3);
  const BigComplex g3 = e6 * (pi2 * pi2 * pi2 * 8) / (w4 * w2 * 27);
  return {g2, g3};
}

inline BigComplex j_invariant(const BigComplex& tau) {
  const long prec = tau.precision();
  const Lattice R = reduce_basis(Lattice(BigComplex::one(prec), tau)).lattice;
  const auto [e4, e6] = eisenstein_e4_e6(R.tau());
  const BigComplex e43 = e4 * e4 * e4;
  return e43 * 1728 / (e43 - e6 * e6);
}

inline BigComplex j_invariant(const Lattice& L) { return j_invariant(L.tau()); }

/// CM point (-B + sqrt(-q)) / (2A) of a reduced form.
inline BigComplex cm_point(const QuadForm& f, std::int64_t q, long prec) {
  const BigReal two_a = BigReal::from_mpz(f.A, prec) * 2;
  return BigComplex(BigReal::from_mpz(-f.B, prec) / two_a, sqrt(BigReal(q, prec)) / two_a);
}

/// Roots of sum c_k x^k (c given low to high, leading coefficient nonzero) by
/// Durand-Kerner iteration followed by Newton polishing.
inline std::vector<BigComplex> polynomial_roots(const std::vector<BigComplex>& c) {
  const std::size_t n = c.size() - 1;
  if (n < 1) throw InvalidInput("polynomial_roots: degree must be positive");
  const long prec = c.back().precision();
  std::vector<BigComplex> monic;
  for (const BigComplex& x : c) monic.push_back(x / c.back());
  auto eval = [&](const BigComplex& x) {
    BigComplex v = monic[n];
    for (std::size_t k = n; k-- > 0;) v = v * x + monic[k];
    return v;
  };
  auto deriv = [&](const BigComplex& x) {
    BigComplex v = monic[n] * static_cast<long>(n);
    for (std::size_t k = n - 1; k >= 1; --k) v = v * x + monic[k] * static_cast<long>(k);
    return v;
  };
  BigReal bound(1, prec);
  for (std::size_t k = 0; k < n; ++k) bound = max(bound, monic[k].abs() + 1);
  std::vector<BigComplex> z;
  const BigComplex seed = BigComplex::from_double(0.4, 0.9, prec);
  BigComplex p = BigComplex::one(prec);
  for (std::size_t k = 0; k < n; ++k) {
    z.push_back(p * bound);
    p *= seed;
  }
  const BigReal tol = BigReal::pow2(-(prec - 8), prec);
  for (int it = 0; it < 2000; ++it) {
    BigReal change = BigReal::zero(prec);
    for (std::size_t i = 0; i < n; ++i) {
      BigComplex den = BigComplex::one(prec);
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i) den *= z[i] - z[k];
      }
      const BigComplex step = eval(z[i]) / den;
      z[i] -= step;
      change = max(change, step.abs() / max(z[i].abs(), BigReal(1, prec)));
    }
    if (change < tol) break;
  }
  for (BigComplex& x : z) {
    for (int it = 0; it < 8; ++it) {
      const BigComplex d = deriv(x);
      if (d.is_zero()) break;
      x -= eval(x) / d;
    }
  }
  return z;
}

struct ClassPolynomial {
  std::int64_t q = 0;
  /// integer coefficients, low to high, monic
  std::vector<mpz_class> coeffs;
  /// j(tau_f) for each reduced form, in form order
  std::vector<BigComplex> roots;
  /// largest distance of a symmetric-function coefficient from its rounding
  BigReal margin;
};

/// H_D(x) = prod over reduced forms of (x - j(tau_f)).
inline ClassPolynomial hilbert_class_polynomial(std::int64_t q, long prec = kDefaultPrecision) {
  const ImagQuadField f(q);
  const std::vector<QuadForm> forms = reduced_forms(f);
  // coefficient size: log2 prod (1 + |j|) is about sum pi sqrt(q) / (A ln 2)
  double size_bits = 0;
  for (const QuadForm& form : forms) size_bits += M_PI * std::sqrt(static_cast<double>(q)) / (form.A.get_d() * M_LN2) + 2;
  const long work = prec + static_cast<long>(size_bits) + 32;
  ClassPolynomial out;
  out.q = q;
  std::vector<BigComplex> poly{BigComplex::one(work)};
  for (const QuadForm& form : forms) {
    const BigComplex j = j_invariant(cm_point(form, q, work));
    out.roots.push_back(j.with_precision(prec));
    std::vector<BigComplex> next(poly.size() + 1, BigComplex::zero(work));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * j;
    }
    poly = std::move(next);
  }
  out.margin = BigReal::zero(work);
  for (const BigComplex& c : poly) {
    const mpz_class r = c.re().round_to_mpz();
    const BigReal err = max(abs(c.re() - BigReal::from_mpz(r, work)), abs(c.im()));
    out.margin = max(out.margin, err);
    out.coeffs.push_back(r);
  }
  if (out.margin > BigReal::pow2(-16, work)) {
    throw RoundingMarginExceeded("class polynomial coefficients are not near integers; margin " +
                                 out.margin.to_string(5));
  }
  out.margin = out.margin.with_precision(prec);
  return out;
}

/// Cached per (q, prec); the computation is deterministic.
inline const ClassPolynomial& cached_class_polynomial(std::int64_t q, long prec = kDefaultPrecision) {
  static std::mutex lock;
  static std::map<std::pair<std::int64_t, long>, ClassPolynomial> cache;
  const std::lock_guard<std::mutex> g(lock);
  const auto key = std::make_pair(q, prec);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, hilbert_class_polynomial(q, prec)).first;
  return it->second;
}

inline std::string format_polynomial(const std::vector<mpz_class>& c) {
  std::string out;
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] == 0) continue;
    const bool neg = c[k] < 0;
    const mpz_class a = abs(c[k]);
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (k == 0 || a != 1) out += a.get_str();
    if (k >= 1) out += "x";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

enum class ModelProvenance { mg, builtin_minimal, user_supplied };

inline std::string to_string(ModelProvenance p) {
  switch (p) {
    case ModelProvenance::mg:
      return "mg";
    case ModelProvenance::builtin_minimal:
      return "builtin-minimal";
    case ModelProvenance::user_supplied:
      return "user-supplied";
  }
  return "unknown";
}

struct CurveModel {
  BigComplex a1, a2, a3, a4, a6;
  ModelProvenance provenance = ModelProvenance::user_supplied;

  long precision() const { return a1.precision(); }
  BigComplex b2() const { return a1 * a1 + a2 * 4; }
  BigComplex b4() const { return a4 * 2 + a1 * a3; }
  BigComplex b6() const { return a3 * a3 + a6 * 4; }
  BigComplex b8() const { return a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
  BigComplex c4() const { return b2() * b2() - b4() * 24; }
  BigComplex c6() const { return -(b2() * b2() * b2()) + b2() * b4() * 36 - b6() * 216; }
  BigComplex discriminant() const {
    const BigComplex B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -(B2 * B2 * B8) - B4 * B4 * B4 * 8 - B6 * B6 * 27 + B2 * B4 * B6 * 9;
  }
  BigComplex j() const {
    const BigComplex d = discriminant();
    if (d.abs() <= BigReal::pow2(-(precision() / 2), precision())) throw SingularSolve("singular model");
    const BigComplex C4 = c4();
    return C4 * C4 * C4 / d;
  }

  /// The model after (x, y) -> (u^2 x, u^3 y): a_i -> u^i a_i.
  CurveModel scaled(const BigComplex& u) const {
    const BigComplex u2 = u * u;
    const BigComplex u3 = u2 * u;
    return {a1 * u, a2 * u2, a3 * u3, a4 * u2 * u2, a6 * u3 * u3, ModelProvenance::user_supplied};
  }
};

/// Real embedding of the model with m^3 = j(O_K), r^2 = (1728 - j)/q, r > 0.
inline CurveModel gross_model_real(std::int64_t q, long prec = kDefaultPrecision) {
  const ImagQuadField f(q);
  const long work = prec + 32;
  const BigComplex tau(BigReal(1, work) / 2, sqrt(BigReal(q, work)) / 2);
  const BigReal j = j_invariant(tau).re();
  const BigReal m = cbrt(j);
  const BigReal r = sqrt((BigReal(1728, work) - j) / q);
  const BigReal zero = BigReal::zero(prec);
  CurveModel out{BigComplex(zero), BigComplex(zero), BigComplex(zero),
                 BigComplex((m * q / 48).with_precision(prec)),
                 BigComplex((-(r * q * q) / 864).with_precision(prec)), ModelProvenance::mg};
  return out;
}

/// Real root of x^3 - x - 1.
inline BigReal plastic_number(long prec) {
  BigReal x = BigReal::from_double(1.3247179572447460, prec);
  for (int it = 0; it < 12; ++it) x -= (x * x * x - x - 1) / (3 * x * x - 1);
  return x;
}

/// q = 7: the conductor 49 model [1, -1, 0, -2, -1]. q = 23: the model over
/// Q(alpha), alpha^3 = alpha + 1,
///   y^2 + alpha^3 xy + (alpha + 2) y = x^3 + 2 x^2 - (12 alpha^2 + 27 alpha + 16) x - (73 alpha^2 + 99 alpha + 62)
/// at the real root alpha.
inline CurveModel builtin_minimal_model(std::int64_t q, long prec = kDefaultPrecision) {
  if (q == 7) {
    return {BigComplex(1, 0, prec), BigComplex(-1, 0, prec), BigComplex(0, 0, prec), BigComplex(-2, 0, prec),
            BigComplex(-1, 0, prec), ModelProvenance::builtin_minimal};
  }
  if (q == 23) {
    const BigReal a = plastic_number(prec + 16);
    const BigReal a2 = a * a;
    auto c = [prec](const BigReal& x) { return BigComplex(x.with_precision(prec)); };
    return {c(a2 * a), BigComplex(2, 0, prec), c(a + 2), c(-(a2 * 12 + a * 27 + 16)), c(-(a2 * 73 + a * 99 + 62)),
            ModelProvenance::builtin_minimal};
  }
  throw UnsupportedQ("no builtin minimal model for q = " + std::to_string(q));
}

struct PeriodLatticeResult {
  Lattice lattice;
  BigComplex Omega;
  BigReal homothety_residual;
};

/// Period lattice of the invariant differential dx/(2y + a1 x + a3) by the
/// complex AGM on the roots of 4x^3 + b2 x^2 + 2 b4 x + b6, then the fit
/// lattice = Omega O_K (Omega normalized to Re > 0, or Im > 0 when real part vanishes).
inline PeriodLatticeResult period_lattice(const CurveModel& model, std::int64_t q) {
  const long prec = model.precision();
  const long work = prec + 32;
  std::vector<BigComplex> cubic{model.b6().with_precision(work), (model.b4() * 2).with_precision(work),
                                model.b2().with_precision(work), BigComplex(4, 0, work)};
  const std::vector<BigComplex> e = polynomial_roots(cubic);
  BigComplex a = complex_sqrt(e[0] - e[2]);
  BigComplex b = complex_sqrt(e[0] - e[1]);
  BigComplex c = complex_sqrt(e[1] - e[2]);
  if ((a + b).abs() < (a - b).abs()) b = -b;
  if ((a + c).abs() < (a - c).abs()) c = -c;
  const BigReal pi = BigReal::pi(work);
  const BigComplex w1 = BigComplex(pi) / complex_agm(a, b);
  const BigComplex w2 = BigComplex(pi).times_i() / complex_agm(a, c);
  const Lattice L(w1, w2);

  // reduced basis of Omega O_K is (Omega, Omega tau) with tau = omega or omega - 1, up to sign
  const ReducedBasis rb = reduce_basis(L);
  const BigComplex tau = rb.lattice.tau();
  const BigComplex omega(BigReal(1, work) / 2, sqrt(BigReal(q, work)) / 2);
  const BigReal r1 = distance(tau, omega);
  const BigReal r2 = distance(tau, omega - BigComplex::one(work));
  const BigReal residual = min(r1, r2);
  if (residual > BigReal::pow2(-(prec / 2), work)) {
    throw NotHomotheticToOK("period lattice is not homothetic to O_K; residual " + residual.to_string(5));
  }
  BigComplex Omega = rb.lattice.w1();
  const BigReal tiny = BigReal::pow2(-(prec / 2), work) * Omega.abs();
  if (Omega.re() < -tiny || (abs(Omega.re()) <= tiny && Omega.im().sign() < 0)) Omega = -Omega;
  return {L.with_precision(prec), Omega.with_precision(prec), residual.with_precision(prec)};
}

}  // namespace cmtwist
