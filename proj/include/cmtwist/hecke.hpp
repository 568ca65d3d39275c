#pragma once

// The Grossencharacter phi of K = Q(sqrt(-q)) with values in T, its complex
// embeddings, the quadratic twist characters chi_d and the Dirichlet
// coefficients of the twisted L-series.
//
// On principal ideals phi((a)) = eps(a) a, where eps is the quadratic residue
// symbol modulo sqrt(-q). A prime p0 generating the class group is fixed and
// phi(p0) = t with t^h = c = eps(pi0) pi0, (pi0) = p0^h.

#include <cstdint>
#include <vector>

#include "cmtwist/arith.hpp"
#include "cmtwist/numerics.hpp"
#include "cmtwist/quadfield.hpp"
#include "cmtwist/telement.hpp"

namespace cmtwist {

/// The exact value u * t^j, 0 <= j < h.
struct CharValue {
  int j = 0;
  KElement u;

  friend bool operator==(const CharValue& a, const CharValue& b) { return a.j == b.j && a.u == b.u; }
};

struct CharacterEmbedding {
  int iota = 0;
  BigComplex t;
};

class GrossCharacter {
 public:
  explicit GrossCharacter(ClassGroup group) : group_(std::move(group)) {
    const ImagQuadField& f = group_.field();
    const int h = group_.h();
    if (h == 1) {
      pi0_ = KElement::from_int(f, 1);
    } else {
      pi0_ = principal_generator(group_.generator_power(h));
    }
    c_ = pi0_ * mpq_class(epsilon(pi0_));
  }

  const ImagQuadField& field() const { return group_.field(); }
  const ClassGroup& group() const { return group_; }
  int h() const { return group_.h(); }
  std::int64_t q() const { return field().q(); }
  const KIdeal& p0() const { return group_.generator(); }
  const KElement& pi0() const { return pi0_; }
  const KElement& c() const { return c_; }

  /// Reduction O_K -> O_K/sqrt(-q) = Z/q, extended to elements with denominators prime to q.
  std::int64_t residue(const KElement& x) const {
    const std::int64_t q = this->q();
    auto reduce = [q](const mpq_class& x) -> std::int64_t {
      mpz_class num = x.get_num() % q;
      mpz_class den = x.get_den() % q;
      if (den == 0) throw RamifiedAtConductor("denominator divisible by q");
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(q).get_mpz_t());
      const mpz_class r = num * inv % q;
      return mod(r.get_si(), q);
    };
    return mod(reduce(x.a()) + reduce(x.b()) * ((q + 1) / 2), q);
  }

  /// Legendre symbol of the residue; throws when x lies in sqrt(-q).
  int epsilon(const KElement& x) const {
    const std::int64_t r = residue(x);
    if (r == 0) throw RamifiedAtConductor("element is not prime to sqrt(-q)");
    return jacobi(r, q());
  }

  /// phi((alpha)) = eps(alpha) alpha.
  KElement principal_value(const KElement& alpha) const { return alpha * mpq_class(epsilon(alpha)); }

  CharValue value(const KIdeal& b) const {
    if (b.norm() % q() == 0) throw RamifiedAtConductor("ideal " + b.to_string() + " meets sqrt(-q)");
    const int h = this->h();
    const int j = group_.reduce_to_class(b);
    if (j == 0) return {0, principal_value(principal_generator(b))};
    const KElement beta = principal_generator(b * group_.generator_power(h - j));
    return {j, principal_value(beta) / c_};
  }

  CharValue multiply(const CharValue& x, const CharValue& y) const {
    int j = x.j + y.j;
    KElement u = x.u * y.u;
    if (j >= h()) {
      j -= h();
      u = u * c_;
    }
    return {j, u};
  }

  TElement to_telement(const CharValue& v) const { return TElement::monomial(c_, h(), v.u, v.j); }

  TElement one() const { return TElement::from_k(c_, h(), KElement::from_int(field(), 1)); }

  /// The h complex roots of x^h = c under sqrt(-q) -> i sqrt(q), t_iota = t_0 exp(2 pi i iota / h).
  std::vector<CharacterEmbedding> embeddings(long prec) const {
    const BigComplex cc = c_.to_complex(prec);
    const BigReal r = exp(log(cc.abs()) / h());
    const BigReal arg = cc.arg();
    std::vector<CharacterEmbedding> out;
    for (int iota = 0; iota < h(); ++iota) {
      const BigReal theta = (arg + 2 * BigReal::pi(prec) * iota) / h();
      out.push_back({iota, BigComplex(r * cos(theta), r * sin(theta))});
    }
    return out;
  }

  BigComplex embed(const CharValue& v, const CharacterEmbedding& e) const {
    const long prec = e.t.precision();
    BigComplex z = v.u.to_complex(prec);
    for (int k = 0; k < v.j; ++k) z *= e.t;
    return z;
  }

 private:
  ClassGroup group_;
  KElement pi0_;
  KElement c_;
};

inline GrossCharacter build_character(const ImagQuadField& field) { return GrossCharacter(ClassGroup(field)); }

/// chi_d(b) = (N b | d) for squarefree d composed of primes 1 mod 4 inert in K.
inline int chi_quadratic(const mpz_class& norm, std::int64_t d) {
  if (d < 1) throw InvalidInput("chi_quadratic: d must be positive");
  if (d == 1) return 1;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), norm.get_mpz_t(), mpz_class(d).get_mpz_t());
  if (g != 1) throw NotCoprime("ideal norm shares a factor with d");
  mpz_class r = norm % d;
  return jacobi(r.get_si(), d);
}

inline int chi_quadratic(const KIdeal& b, std::int64_t d) { return chi_quadratic(b.norm(), d); }

/// Prime factors of R after checking that R is in the twist family: squarefree,
/// every prime factor 1 mod 4 and inert in K. R = 1 gives the empty list.
inline std::vector<std::int64_t> family_primes(const ImagQuadField& f, std::int64_t R) {
  if (R < 1) throw NotInFamily("R must be positive");
  if (!is_squarefree(R)) throw NotInFamily(std::to_string(R) + " is not squarefree");
  std::vector<std::int64_t> out;
  for (const auto& [r, e] : factorize(R)) {
    (void)e;
    if (r % 4 != 1) throw NotInFamily(std::to_string(r) + " is not 1 mod 4");
    if (r == f.q() || kronecker_prime(-f.q(), r) != -1) throw NotInFamily(std::to_string(r) + " is not inert in K");
    out.push_back(r);
  }
  return out;
}

/// phi_d = phi * chi_d.
inline CharValue twisted_value(const GrossCharacter& chi, const KIdeal& b, std::int64_t d) {
  CharValue v = chi.value(b);
  if (chi_quadratic(b, d) < 0) v.u = -v.u;
  return v;
}

struct CoefficientSeries {
  int iota = 0;
  std::int64_t d = 1;
  std::int64_t R = 1;
  bool imprimitive = false;
  std::int64_t length = 0;
  /// a[n] for 0 <= n <= length; a[0] is unused and zero.
  std::vector<BigComplex> a;
};

/// a_n = sum over ideals b of norm n prime to d sqrt(-q) of conj(phi_d^iota(b)).
/// With imprimitive = true ideals meeting R are dropped as well.
inline CoefficientSeries twisted_coefficients(const GrossCharacter& chi, const CharacterEmbedding& emb,
                                              std::int64_t R, std::int64_t d, std::int64_t N,
                                              bool imprimitive = false) {
  if (d < 1 || R < 1 || R % d != 0) throw InvalidInput("twisted_coefficients: need d | R");
  if (N < 1) throw InvalidInput("twisted_coefficients: length must be positive");
  const long prec = emb.t.precision();
  const ImagQuadField& f = chi.field();
  CoefficientSeries s;
  s.iota = emb.iota;
  s.d = d;
  s.R = R;
  s.imprimitive = imprimitive;
  s.length = N;
  s.a.assign(static_cast<std::size_t>(N) + 1, BigComplex::zero(prec));
  s.a[1] = BigComplex::one(prec);

  // local factors a_{p^e} stored per prime power
  std::vector<BigComplex> local(static_cast<std::size_t>(N) + 1, BigComplex::zero(prec));
  for (std::int64_t p : primes_up_to(N)) {
    const bool killed = p == chi.q() || d % p == 0 || (imprimitive && R % p == 0);
    std::vector<BigComplex> powers{BigComplex::one(prec)};
    if (!killed) {
      const auto ps = primes_above(f, p);
      if (ps.size() == 2) {
        const BigComplex x = chi.embed(twisted_value(chi, ps[0].ideal, d), emb).conj();
        const BigComplex y = chi.embed(twisted_value(chi, ps[1].ideal, d), emb).conj();
        const BigComplex sum = x + y;
        const BigComplex prod = x * y;
        BigComplex prev2 = BigComplex::one(prec);
        BigComplex prev = sum;
        for (std::int64_t pe = p; pe <= N; pe *= p) {
          powers.push_back(prev);
          BigComplex next = sum * prev - prod * prev2;
          prev2 = std::move(prev);
          prev = std::move(next);
          if (pe > N / p) break;
        }
      } else {
        const BigComplex z = chi.embed(twisted_value(chi, ps[0].ideal, d), emb).conj();
        BigComplex zk = BigComplex::one(prec);
        int e = 0;
        for (std::int64_t pe = p; pe <= N; pe *= p) {
          ++e;
          if (e % 2 == 0) {
            zk *= z;
            powers.push_back(zk);
          } else {
            powers.push_back(BigComplex::zero(prec));
          }
          if (pe > N / p) break;
        }
      }
    }
    std::int64_t pe = p;
    for (std::size_t e = 1;; ++e) {
      local[pe] = killed ? BigComplex::zero(prec) : powers.at(e);
      if (pe > N / p) break;
      pe *= p;
    }
  }
  const std::vector<std::int64_t> spf = smallest_prime_factors(N);
  for (std::int64_t n = 2; n <= N; ++n) {
    const std::int64_t p = spf[n];
    std::int64_t m = n;
    std::int64_t pe = 1;
    while (m % p == 0) {
      m /= p;
      pe *= p;
    }
    if (m == 1) {
      s.a[n] = local[pe];
    } else if (!s.a[m].is_zero() && !local[pe].is_zero()) {
      s.a[n] = local[pe] * s.a[m];
    }
  }
  return s;
}

}  // namespace cmtwist
