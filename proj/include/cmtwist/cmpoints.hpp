#pragma once

// Partial L-values from Eisenstein values at CM division points.
//
// With g = R sqrt(-q) and a class representative a, the partial value over
// ideals in the class of a is
//   L_R(conj(phi_d), [a], 1) = 1/(phi_d(a) g) * sum_beta eps(beta) chi_d(beta) E1*(beta/g, a^-1),
// beta running over (O_K/g)^x modulo +-1. The lattice a^-1 = conj(a)/N(a) is
// embedded with sqrt(-q) -> i sqrt(q). Class representatives are the ideals of
// the reduced forms, so inverse classes get complex-conjugate lattices.

#include <cstdint>
#include <numeric>
#include <vector>

#include "cmtwist/eisenstein.hpp"
#include "cmtwist/hecke.hpp"
#include "cmtwist/parallel.hpp"

namespace cmtwist {

enum class RayConstraint { none, fix_HR };

/// One element of each class of (O_K / R sqrt(-q))^x / {+-1}, as x + y omega with
/// 0 <= y < R and 0 <= x < R q.
struct RayReps {
  std::int64_t q = 0;
  std::int64_t R = 1;
  RayConstraint constraint = RayConstraint::none;
  std::vector<std::pair<std::int64_t, std::int64_t>> reps;

  std::size_t size() const { return reps.size(); }
};

namespace detail {

// x + y omega reduced modulo R sqrt(-q) into the box 0 <= y < R, 0 <= x < R q,
// using R omega = (R + R q)/2 modulo R sqrt(-q).
inline std::pair<std::int64_t, std::int64_t> reduce_mod_g(std::int64_t x, std::int64_t y, std::int64_t q,
                                                          std::int64_t R) {
  const std::int64_t k = (y >= 0) ? y / R : -((-y + R - 1) / R);
  y -= k * R;
  x += k * ((R + R * q) / 2);
  return {mod(x, R * q), y};
}

inline std::int64_t element_norm(std::int64_t x, std::int64_t y, std::int64_t q4) {
  return x * x + x * y + q4 * y * y;
}

}  // namespace detail

inline RayReps ray_representatives(const ImagQuadField& field, std::int64_t R,
                                   RayConstraint constraint = RayConstraint::none) {
  const std::vector<std::int64_t> primes = family_primes(field, R);
  const std::int64_t q = field.q();
  const std::int64_t q4 = field.q4();
  RayReps out;
  out.q = q;
  out.R = R;
  out.constraint = constraint;
  for (std::int64_t y = 0; y < R; ++y) {
    for (std::int64_t x = 0; x < R * q; ++x) {
      const std::int64_t n = detail::element_norm(x, y, q4);
      if (std::gcd(n, R * q) != 1) continue;
      // keep the smaller of beta and -beta in (y, x) order
      const auto [nx, ny] = detail::reduce_mod_g(-x, -y, q, R);
      if (std::make_pair(ny, nx) < std::make_pair(y, x)) continue;
      if (constraint == RayConstraint::fix_HR) {
        bool keep = true;
        for (std::int64_t r : primes) keep = keep && jacobi(mod(n, r), r) == 1;
        if (!keep) continue;
      }
      out.reps.emplace_back(x, y);
    }
  }
  return out;
}

/// Expected number of unfiltered representatives: (q - 1) prod (r^2 - 1) / 2.
inline std::int64_t ray_count(const ImagQuadField& field, std::int64_t R) {
  std::int64_t n = field.q() - 1;
  for (std::int64_t r : family_primes(field, R)) n *= r * r - 1;
  return n / 2;
}

/// Class representative used for class j: the ideal of the reduced form in the class of p0^j.
inline KIdeal class_representative(const ClassGroup& group, int j) {
  return KIdeal::from_form(group.field(), reduce_form(group.generator_power(j).to_form()));
}

/// The lattice a^-1 = conj(a)/N(a) in C.
inline Lattice inverse_ideal_lattice(const KIdeal& a, long prec) {
  const auto [u, v] = a.conj().basis();
  const BigReal n = BigReal::from_mpz(a.norm(), prec);
  return Lattice(u.to_complex(prec) / n, v.to_complex(prec) / n);
}

/// E1*(beta/g, a_j^-1) for every representative, computed once per (R, class) and shared by all twists.
class ClassEisensteinTable {
 public:
  ClassEisensteinTable(const GrossCharacter& chi, std::int64_t R, int j, long prec,
                       RayConstraint constraint = RayConstraint::none)
      : R_(R), j_(j), prec_(prec), work_(prec + 32) {
    if (j < 0 || j >= chi.h()) throw InvalidInput("class index out of range");
    rays_ = ray_representatives(chi.field(), R, constraint);
    a_ = class_representative(chi.group(), j);
    const EisensteinCtx ctx(inverse_ideal_lattice(a_, work_));
    const BigReal sq = sqrt(BigReal(chi.q(), work_));
    g_ = BigComplex(BigReal::zero(work_), sq * R);
    const BigComplex omega(BigReal(1, work_) / 2, sq / 2);
    const BigComplex ginv = g_.inverse();
    values_.assign(rays_.size(), BigComplex::zero(work_));
    eps_.assign(rays_.size(), 0);
    norms_.assign(rays_.size(), 0);
    parallel_for(rays_.size(), [&](std::size_t i) {
      const auto [x, y] = rays_.reps[i];
      const BigComplex beta = BigComplex(BigReal(x, work_), BigReal::zero(work_)) + omega * y;
      values_[i] = ctx.e1star(beta * ginv);
      eps_[i] = chi.epsilon(KElement(chi.field(), x, y));
      norms_[i] = detail::element_norm(x, y, chi.field().q4());
    });
  }

  std::int64_t R() const { return R_; }
  int j() const { return j_; }
  const RayReps& rays() const { return rays_; }
  const KIdeal& representative() const { return a_; }

  /// sum over representatives of eps(beta) chi_d(beta) E1*(beta/g, a^-1), summed in index order.
  BigComplex character_sum(std::int64_t d) const {
    if (d < 1 || R_ % d != 0) throw InvalidInput("character_sum: need d | R");
    BigComplex acc = BigComplex::zero(work_);
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const int sign = eps_[i] * (d == 1 ? 1 : jacobi(norms_[i] % d, d));
      if (sign > 0) {
        acc += values_[i];
      } else {
        acc -= values_[i];
      }
    }
    return acc;
  }

  BigComplex partial(const GrossCharacter& chi, const CharacterEmbedding& emb, std::int64_t d) const {
    if (rays_.constraint != RayConstraint::none) throw InvalidInput("partial values need the full ray set");
    const CharacterEmbedding e{emb.iota, emb.t.with_precision(std::max(emb.t.precision(), work_))};
    const BigComplex phi_a = chi.embed(twisted_value(chi, a_, d), e);
    return (character_sum(d) / (phi_a * g_)).with_precision(prec_);
  }

  BigComplex psi() const {
    if (rays_.constraint != RayConstraint::fix_HR) throw InvalidInput("psi needs the fix_HR ray set");
    return (character_sum(1) / g_).with_precision(prec_);
  }

 private:
  std::int64_t R_;
  int j_;
  long prec_;
  long work_;
  RayReps rays_;
  KIdeal a_;
  BigComplex g_;
  std::vector<BigComplex> values_;
  std::vector<int> eps_;
  std::vector<std::int64_t> norms_;
};

/// L_R(conj(phi_d^iota), class j, 1) by the Eisenstein formula.
inline BigComplex partial_l_eisenstein(const GrossCharacter& chi, const CharacterEmbedding& emb, std::int64_t d,
                                       std::int64_t R, int j, long prec) {
  return ClassEisensteinTable(chi, R, j, prec).partial(chi, emb, d);
}

/// Psi for class j: (1/g) sum over fix_HR representatives of eps(beta) E1*(beta/g, a_j^-1).
inline BigComplex psi_sum(const GrossCharacter& chi, std::int64_t R, int j, long prec) {
  if (R == 1) throw NotInFamily("psi_sum needs R > 1");
  return ClassEisensteinTable(chi, R, j, prec, RayConstraint::fix_HR).psi();
}

}  // namespace cmtwist
