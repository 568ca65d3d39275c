#pragma once

// Exact recognition of numerically computed elements of K and T = K(t), and
// small integer relations by LLL.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cmtwist/errors.hpp"
#include "cmtwist/hecke.hpp"
#include "cmtwist/numerics.hpp"
#include "cmtwist/telement.hpp"

namespace cmtwist {

inline const mpz_class kDefaultDenomBound = mpz_class(1) << 24;
inline const mpz_class kMaxDenomBound = mpz_class(1) << 48;

struct RationalFit {
  mpq_class value;
  BigReal error;
};

/// The first continued-fraction convergent p/q of x with q <= bound and
/// |x - p/q| < 2^-(prec/3) max(1, |x|) / q^2.
inline RationalFit round_to_Q(const BigReal& x, const mpz_class& bound) {
  const long prec = x.precision();
  const BigReal scale = max(abs(x), BigReal(1, prec));
  const BigReal thresh = BigReal::pow2(-(prec / 3), prec) * scale;
  mpz_class p0 = 1, q0 = 0, p1 = x.floor_to_mpz(), q1 = 1;
  BigReal frac = x - BigReal::from_mpz(p1, prec);
  for (int it = 0; it < 400; ++it) {
    if (q1 > bound) break;
    const mpq_class cand(p1, q1);
    const BigReal err = abs(x - BigReal::from_mpq(cand, prec));
    const BigReal qq = BigReal::from_mpz(q1, prec);
    if (err * qq * qq < thresh) return {cand, err};
    if (frac.is_zero()) break;
    const BigReal inv = BigReal(1, prec) / frac;
    const mpz_class a = inv.floor_to_mpz();
    frac = inv - BigReal::from_mpz(a, prec);
    const mpz_class p2 = a * p1 + p0;
    const mpz_class q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  throw RecognitionFailed("no rational with denominator <= " + bound.get_str() + " near " + x.to_string(20));
}

struct KFit {
  KElement value;
  BigReal residual;
};

/// x = a + b omega with a, b rational of common denominator <= bound. The bound is
/// doubled from its starting value up to 2^48 before failing.
inline KFit round_to_K(const BigComplex& x, std::int64_t q, const mpz_class& bound = kDefaultDenomBound) {
  const long prec = x.precision();
  if (x.abs() > BigReal::pow2(60, prec)) throw RecognitionFailed("round_to_K: |x| exceeds 2^60");
  const BigReal half_sqrt = sqrt(BigReal(q, prec)) / 2;
  const BigReal b = x.im() / half_sqrt;
  const BigReal a = x.re() - b / 2;
  for (mpz_class B = bound;; B *= 2) {
    if (B > kMaxDenomBound) B = kMaxDenomBound;
    try {
      const RationalFit fa = round_to_Q(a, B);
      const RationalFit fb = round_to_Q(b, B);
      mpz_class den;
      mpz_lcm(den.get_mpz_t(), fa.value.get_den_mpz_t(), fb.value.get_den_mpz_t());
      if (den <= B) {
        const KElement k(ImagQuadField(q), fa.value, fb.value);
        return {k, distance(k.to_complex(prec), x)};
      }
    } catch (const RecognitionFailed&) {
    }
    if (B == kMaxDenomBound) break;
  }
  throw RecognitionFailed("no element of K with denominator <= 2^48 near " + x.to_string(20));
}

struct TFit {
  TElement value;
  BigReal residual;
};

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<BigComplex> complex_solve(std::vector<std::vector<BigComplex>> A, std::vector<BigComplex> b) {
  const std::size_t n = b.size();
  const long prec = b.at(0).precision();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (A[r][col].abs() > A[piv][col].abs()) piv = r;
    }
    if (A[piv][col].abs() <= BigReal::pow2(-(prec / 2), prec)) throw SingularSolve("singular linear system");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const BigComplex f = A[r][col] / A[col][col];
      for (std::size_t k = col; k < n; ++k) A[r][k] -= f * A[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<BigComplex> x(n, BigComplex::zero(prec));
  for (std::size_t i = n; i-- > 0;) {
    BigComplex s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= A[i][k] * x[k];
    x[i] = s / A[i][i];
  }
  return x;
}

/// The element of T with embedding values `values[iota]` at t = embs[iota].t.
inline TFit reconstruct_T_element(const std::vector<BigComplex>& values, const std::vector<CharacterEmbedding>& embs,
                                  const KElement& c, const mpz_class& bound = kDefaultDenomBound) {
  const std::size_t h = values.size();
  if (h == 0 || embs.size() != h) throw InvalidInput("reconstruct_T_element: one value per embedding");
  const long prec = values[0].precision();
  std::vector<std::vector<BigComplex>> V(h);
  for (std::size_t i = 0; i < h; ++i) {
    BigComplex p = BigComplex::one(prec);
    for (std::size_t j = 0; j < h; ++j) {
      V[i].push_back(p);
      p *= embs[i].t.with_precision(prec);
    }
  }
  const std::vector<BigComplex> kappa = complex_solve(V, values);
  std::vector<KElement> coeffs;
  for (const BigComplex& k : kappa) coeffs.push_back(round_to_K(k, c.q(), bound).value);
  const TElement x(c, coeffs);
  BigReal residual = BigReal::zero(prec);
  for (std::size_t i = 0; i < h; ++i) {
    const BigReal r = distance(x.embed(embs[i].t.with_precision(prec)), values[i]) / max(values[i].abs(), BigReal(1, prec));
    residual = max(residual, r);
  }
  if (residual > BigReal::pow2(-(prec / 3), prec)) {
    throw RecognitionFailed("reconstructed element misses the values by " + residual.to_string(5));
  }
  return {x, residual};
}

/// LLL reduction (delta = 3/4) of integer row vectors with exact Gram-Schmidt data.
inline void lll_reduce(std::vector<std::vector<mpz_class>>& b) {
  const std::size_t n = b.size();
  if (n == 0) return;
  const std::size_t m = b[0].size();
  std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
  std::vector<mpq_class> B(n);
  auto gram_schmidt = [&]() {
    std::vector<std::vector<mpq_class>> bs(n, std::vector<mpq_class>(m));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < m; ++k) bs[i][k] = b[i][k];
      for (std::size_t j = 0; j < i; ++j) {
        mpq_class num = 0;
        for (std::size_t k = 0; k < m; ++k) num += mpq_class(b[i][k]) * bs[j][k];
        mu[i][j] = B[j] == 0 ? mpq_class(0) : mpq_class(num / B[j]);
        for (std::size_t k = 0; k < m; ++k) bs[i][k] -= mu[i][j] * bs[j][k];
      }
      B[i] = 0;
      for (std::size_t k = 0; k < m; ++k) B[i] += bs[i][k] * bs[i][k];
    }
  };
  gram_schmidt();
  std::size_t k = 1;
  int guard = 0;
  while (k < n) {
    if (++guard > 100000) throw NumericFailure("LLL did not terminate");
    for (std::size_t j = k; j-- > 0;) {
      if (abs(mu[k][j]) > mpq_class(1, 2)) {
        mpz_class r;
        const mpq_class t = mu[k][j] + mpq_class(1, 2);
        mpz_fdiv_q(r.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
        for (std::size_t c = 0; c < m; ++c) b[k][c] -= r * b[j][c];
        for (std::size_t l = 0; l < j; ++l) mu[k][l] -= mpq_class(r) * mu[j][l];
        mu[k][j] -= r;
      }
    }
    if (B[k] >= (mpq_class(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

/// Integer polynomial (low to high) of degree <= n with height <= H vanishing at x
/// to within the certification bound 2^-(P/2) times the height.
inline std::vector<mpz_class> algdep(const BigComplex& x, int n, const mpz_class& H) {
  const long prec = x.precision();
  if (n < 1) throw InvalidInput("algdep: degree must be positive");
  const long scale_bits = prec - 16;
  const bool complex_input = !(abs(x.im()) <= BigReal::pow2(-(prec - 8), prec) * max(x.abs(), BigReal(1, prec)));
  std::vector<std::vector<mpz_class>> rows;
  BigComplex p = BigComplex::one(prec);
  std::vector<BigComplex> powers;
  for (int i = 0; i <= n; ++i) {
    powers.push_back(p);
    std::vector<mpz_class> row(static_cast<std::size_t>(n + 1), 0);
    row[static_cast<std::size_t>(i)] = 1;
    row.push_back(ldexp(p.re(), scale_bits).round_to_mpz());
    if (complex_input) row.push_back(ldexp(p.im(), scale_bits).round_to_mpz());
    rows.push_back(row);
    p *= x;
  }
  lll_reduce(rows);
  std::vector<mpz_class> best;
  for (const auto& row : rows) {
    std::vector<mpz_class> c(row.begin(), row.begin() + n + 1);
    mpz_class g = 0;
    for (const mpz_class& a : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    if (g == 0) continue;
    for (mpz_class& a : c) a /= g;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() < 2) continue;
    if (c.back() < 0) {
      for (mpz_class& a : c) a = -a;
    }
    mpz_class height = 0;
    for (const mpz_class& a : c) height = std::max(height, mpz_class(abs(a)));
    if (height > H) continue;
    BigComplex v = BigComplex::zero(prec);
    for (std::size_t i = 0; i < c.size(); ++i) v += powers[i] * BigReal::from_mpz(c[i], prec);
    if (v.abs() < BigReal::pow2(-(prec / 2), prec) * BigReal::from_mpz(height, prec)) {
      if (best.empty() || c.size() < best.size()) best = c;
    }
  }
  if (best.empty()) throw NoRelationFound("no relation of degree <= " + std::to_string(n) + " and height <= " + H.get_str());
  return best;
}

inline std::vector<mpz_class> algdep(const BigReal& x, int n, const mpz_class& H) {
  return algdep(BigComplex(x), n, H);
}

}  // namespace cmtwist
