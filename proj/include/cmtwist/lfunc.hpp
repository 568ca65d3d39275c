#pragma once

// Central values L(conj(phi_d^iota), 1) by the smoothed approximate
// functional equation, with the root number solved for numerically.
//
// With Lambda(s) = C^s Gamma(s) L(s), C = d q / (2 pi), and
// Lambda(s) = w conj(Lambda)(2 - s), every delta > 0 gives
//   L(1) = sum a_n/n e^{-n delta/C} + w sum conj(a_n)/n e^{-n/(delta C)}.
// Two values of delta determine (L(1), w); a third one validates them.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cmtwist/arith.hpp"
#include "cmtwist/hecke.hpp"
#include "cmtwist/numerics.hpp"

namespace cmtwist {

inline constexpr long kAfeGuardBits = 32;

struct LValueResult {
  BigComplex value;
  BigReal error_bound;
  BigComplex root_number;
  std::string method;
  BigReal C;
  std::int64_t length = 0;
  std::vector<mpq_class> deltas;
};

/// Series length so that both smoothed sums are truncated below 2^-(P+8)
/// for every delta in [4/5, 5/4].
inline std::int64_t afe_series_length(std::int64_t d, std::int64_t q, long prec) {
  const double C = static_cast<double>(d) * static_cast<double>(q) / (2 * M_PI);
  const double n = 1.25 * 1.25 * C * (static_cast<double>(prec) * std::log(2.0) + 8.0);
  return static_cast<std::int64_t>(std::ceil(n)) + 16;
}

/// Evaluates L(1) for a primitive series of conductor d sqrt(-q).
inline LValueResult l_value_afe(const CoefficientSeries& s, std::int64_t q, long prec) {
  if (s.imprimitive && s.R != s.d) throw InvalidInput("l_value_afe needs the primitive series");
  const long work = prec + kAfeGuardBits;
  const BigReal C = BigReal(s.d * q, work) / (2 * BigReal::pi(work));
  const std::vector<mpq_class> deltas{mpq_class(1), mpq_class(11, 10), mpq_class(5, 4)};
  const std::int64_t N = s.length;

  // b_n = a_n / n
  std::vector<BigComplex> b(static_cast<std::size_t>(N) + 1);
  for (std::int64_t n = 1; n <= N; ++n) {
    if (!s.a[n].is_zero()) b[n] = s.a[n].with_precision(work) / n;
  }

  auto smoothed = [&](const BigReal& scale, bool dual) {
    // sum over n of (a_n or conj a_n)/n * x^n with x = exp(-1/scale)
    const BigReal x = exp(-(BigReal(1, work) / scale));
    BigReal xn(1, work);
    BigComplex acc = BigComplex::zero(work);
    for (std::int64_t n = 1; n <= N; ++n) {
      xn *= x;
      if (s.a[n].is_zero()) continue;
      if (dual) {
        acc += b[n].conj() * xn;
      } else {
        acc += b[n] * xn;
      }
    }
    return acc;
  };

  std::vector<BigComplex> S1;
  std::vector<BigComplex> S2;
  for (const mpq_class& delta : deltas) {
    const BigReal dl = BigReal::from_mpq(delta, work);
    S1.push_back(smoothed(C / dl, false));
    S2.push_back(smoothed(C * dl, true));
  }
  const BigComplex denom = S2[0] - S2[1];
  if (denom.abs() < BigReal::pow2(-(prec / 2), work)) throw SingularSolve("AFE system is singular");
  const BigComplex w = (S1[1] - S1[0]) / denom;
  const BigComplex L = S1[0] + w * S2[0];
  const BigReal residual = (S1[2] + w * S2[2] - L).abs();
  if (residual > BigReal::pow2(-(prec / 2), work)) {
    throw InconsistentFunctionalEquation("delta = 5/4 residual " + residual.to_string(5) +
                                         " exceeds 2^-" + std::to_string(prec / 2));
  }

  // Tail of the slowest sum: |a_n|/n <= d(n)/sqrt(n) <= 2, so the tail is below
  // 2 sum_{n>N} e^{-n/(5C/4)} <= 2 (5C/4 + 1) e^{-N/(5C/4)}.
  const BigReal slow = C * 5 / 4;
  const BigReal tail = 2 * (slow + 1) * exp(-(BigReal(N, work) / slow));
  const BigReal rounding = ldexp(max(L.abs(), BigReal(1, work)), -(prec - 8));
  LValueResult out;
  out.value = L.with_precision(prec);
  out.root_number = w.with_precision(prec);
  out.error_bound = (residual + tail * (1 + w.abs()) + rounding).with_precision(prec);
  out.method = "afe";
  out.C = C.with_precision(prec);
  out.length = N;
  out.deltas = deltas;
  return out;
}

/// L(conj(phi_d^iota), 1) for the primitive twist by d.
inline LValueResult twisted_l_value(const GrossCharacter& chi, const CharacterEmbedding& emb, std::int64_t d,
                                    long prec) {
  const std::int64_t N = afe_series_length(d, chi.q(), prec);
  const CharacterEmbedding work{emb.iota, emb.t.with_precision(std::max(emb.t.precision(), prec + kAfeGuardBits))};
  const CoefficientSeries s = twisted_coefficients(chi, work, d, d, N);
  return l_value_afe(s, chi.q(), prec);
}

/// prod over primes r | R/d of (1 + 1/r): the Euler factors removed at R.
inline mpq_class imprimitivity_factor(std::int64_t d, std::int64_t R) {
  if (d < 1 || R % d != 0) throw InvalidInput("imprimitivity_factor: need d | R");
  mpq_class f(1);
  for (const auto& [r, e] : factorize(R / d)) {
    (void)e;
    f *= mpq_class(r + 1, r);
  }
  f.canonicalize();
  return f;
}

/// Class j partial value from the h full values L(conj(phi^iota)), using that
/// the embeddings differ by the class characters: L^iota = sum_j zeta^{-iota j} L_j^0.
inline BigComplex partial_from_full(const std::vector<BigComplex>& full, int j, int iota) {
  const int h = static_cast<int>(full.size());
  const long prec = full.at(0).precision();
  const BigReal two_pi = 2 * BigReal::pi(prec);
  BigComplex acc = BigComplex::zero(prec);
  for (int k = 0; k < h; ++k) {
    const BigReal angle = two_pi * mod(static_cast<std::int64_t>(k) * j, h) / h;
    acc += full[k] * BigComplex(cos(angle), sin(angle));
  }
  acc /= h;
  const BigReal back = -(two_pi * mod(static_cast<std::int64_t>(iota) * j, h) / h);
  return acc * BigComplex(cos(back), sin(back));
}

/// Imprimitive partial value L_R(conj(phi_d^iota), class j, 1) from AFE values
/// of the primitive L-series of every embedding.
inline BigComplex partial_l_afe(const std::vector<LValueResult>& primitive, std::int64_t d, std::int64_t R, int j,
                                int iota) {
  const mpq_class factor = imprimitivity_factor(d, R);
  std::vector<BigComplex> full;
  for (const LValueResult& r : primitive) full.push_back(r.value * BigReal::from_mpq(factor, r.value.precision()));
  return partial_from_full(full, j, iota);
}

}  // namespace cmtwist
