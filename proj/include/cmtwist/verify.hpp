#pragma once

// End-to-end verification for a twist R: L-values of every divisor by both
// methods, the ratios Phi(d) = msl(d)/msl recognized in T, and their 2-adic
// valuations, with a pass/fail ledger carrying the numeric evidence.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmtwist/arith.hpp"
#include "cmtwist/cmpoints.hpp"
#include "cmtwist/curves.hpp"
#include "cmtwist/dyadic.hpp"
#include "cmtwist/errors.hpp"
#include "cmtwist/hecke.hpp"
#include "cmtwist/lfunc.hpp"
#include "cmtwist/numerics.hpp"
#include "cmtwist/parallel.hpp"
#include "cmtwist/recognition.hpp"

namespace cmtwist {

struct TwistFamilyElement {
  std::int64_t R = 1;
  std::vector<std::int64_t> factors;
  int k = 0;
};

/// R squarefree with every prime factor 1 mod 4 and inert in K.
inline TwistFamilyElement validate_twist(const ImagQuadField& field, std::int64_t R) {
  TwistFamilyElement t;
  t.R = R;
  t.factors = family_primes(field, R);
  t.k = static_cast<int>(t.factors.size());
  return t;
}

/// Members R > 1 of the family with R <= max_R and at most max_k prime factors, ascending.
inline std::vector<TwistFamilyElement> family_members(const ImagQuadField& field, std::int64_t max_R, int max_k) {
  std::vector<TwistFamilyElement> out;
  for (std::int64_t R = 2; R <= max_R; ++R) {
    try {
      TwistFamilyElement t = validate_twist(field, R);
      if (t.k <= max_k) out.push_back(std::move(t));
    } catch (const NotInFamily&) {
    }
  }
  return out;
}

enum class Method { afe, eisenstein, both };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::afe:
      return "afe";
    case Method::eisenstein:
      return "eisenstein";
    case Method::both:
      return "both";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  if (s == "afe") return Method::afe;
  if (s == "eisenstein") return Method::eisenstein;
  if (s == "both") return Method::both;
  throw InvalidInput("unknown method '" + s + "'");
}

inline bool uses_afe(Method m) { return m != Method::eisenstein; }
inline bool uses_eisenstein(Method m) { return m != Method::afe; }

struct VerifyConfig {
  long prec = kDefaultPrecision;
  long dyadic_bits = kDyadicBits;
  mpz_class denom_bound = kDefaultDenomBound;
  Method method = Method::both;
  unsigned threads = default_threads();
  /// extra factor applied to Omega; every ratio must be independent of it
  std::optional<BigComplex> omega_scale;
};

/// Omega for the normalization of msl. Absolute only for q = 7, where the
/// minimal model is defined over Q.
struct ReferencePeriod {
  BigComplex Omega;
  bool absolute = false;
  std::string source;
};

inline ReferencePeriod reference_period(std::int64_t q, long prec) {
  if (q == 7 || q == 23) {
    const PeriodLatticeResult per = period_lattice(builtin_minimal_model(q, prec), q);
    return {per.Omega, q == 7, "builtin minimal model, real embedding"};
  }
  return {BigComplex::one(prec), false, "ratio only"};
}

/// Bound used for Eisenstein values, which carry no a priori truncation error:
/// the pinned agreement level of the Eisenstein suite.
inline BigReal eisenstein_error_bound(const BigComplex& v, long prec) {
  return ldexp(max(v.abs(), BigReal(1, prec)), -(prec - 24));
}

struct MslValues {
  std::int64_t d = 1;
  std::string method;
  /// L(conj(phi_d^iota), 1) and its bound, per embedding
  std::vector<BigComplex> l_values;
  std::vector<BigReal> l_errors;
  /// sqrt(d) L / Omega and its bound
  std::vector<BigComplex> msl;
  std::vector<BigReal> msl_errors;
  /// empty for the Eisenstein method
  std::vector<BigComplex> root_numbers;
};

inline MslValues msl_from_l_values(std::int64_t d, const std::string& method, std::vector<BigComplex> l,
                                   std::vector<BigReal> err, std::vector<BigComplex> w, const BigComplex& Omega) {
  MslValues out;
  out.d = d;
  out.method = method;
  const long prec = l.at(0).precision();
  const BigReal sd = sqrt(BigReal(d, prec));
  const BigReal om = Omega.abs();
  for (std::size_t i = 0; i < l.size(); ++i) {
    out.msl.push_back(l[i] * sd / Omega);
    out.msl_errors.push_back(err[i] * sd / om);
  }
  out.l_values = std::move(l);
  out.l_errors = std::move(err);
  out.root_numbers = std::move(w);
  return out;
}

/// sqrt(d) L(conj(phi_d^iota), 1) / Omega for every embedding. The Eisenstein
/// method sums the partial values over classes at level R = d.
inline MslValues compute_msl(const GrossCharacter& chi, std::int64_t d, Method method, const BigComplex& Omega,
                             long prec) {
  if (method == Method::both) throw InvalidInput("compute_msl takes a single method");
  validate_twist(chi.field(), d);
  const auto embs = chi.embeddings(prec + kAfeGuardBits);
  std::vector<BigComplex> l;
  std::vector<BigReal> err;
  std::vector<BigComplex> w;
  if (method == Method::afe) {
    for (const auto& e : embs) {
      const LValueResult r = twisted_l_value(chi, e, d, prec);
      l.push_back(r.value);
      err.push_back(r.error_bound);
      w.push_back(r.root_number);
    }
  } else {
    std::vector<BigComplex> sums(embs.size(), BigComplex::zero(prec));
    for (int j = 0; j < chi.h(); ++j) {
      const ClassEisensteinTable table(chi, d, j, prec);
      for (std::size_t i = 0; i < embs.size(); ++i) sums[i] += table.partial(chi, embs[i], d);
    }
    for (const BigComplex& s : sums) {
      l.push_back(s);
      err.push_back(eisenstein_error_bound(s, prec));
    }
  }
  return msl_from_l_values(d, to_string(method), std::move(l), std::move(err), std::move(w), Omega);
}

struct Check {
  std::string name;
  bool passed = false;
  std::string evidence;
};

struct DivisorRow {
  std::int64_t d = 1;
  int k_d = 0;
  MslValues msl;
  /// msl(d) times the removed Euler factors at R / d, per embedding
  std::vector<BigComplex> lambda;
  TElement phi;
  BigReal phi_residual;
  long ord_P = 0;
  /// ord of msl(d) itself, only when Omega is absolute
  std::optional<long> msl_ord;
};

struct VerificationReport {
  std::int64_t q = 0;
  std::int64_t R = 1;
  int k = 0;
  int h = 1;
  VerifyConfig config;
  ReferencePeriod period;
  std::vector<DivisorRow> rows;
  /// max |AFE - Eisenstein| over divisors, classes and embeddings
  std::optional<BigReal> cross_path_dev;
  BigReal nonvanishing_product;
  BigReal nonvanishing_bound;
  std::int64_t d_r_sum = 0;
  std::vector<Check> checks;
  double runtime_seconds = 0;

  bool passed() const {
    for (const Check& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  const Check* first_failure() const {
    for (const Check& c : checks) {
      if (!c.passed) return &c;
    }
    return nullptr;
  }

  void record(std::string name, bool ok, std::string evidence) {
    checks.push_back({std::move(name), ok, std::move(evidence)});
  }
};

inline std::string exponent_string(const BigReal& x) {
  if (x.is_zero()) return "0";
  return x.to_string(6) + " (2^" + std::to_string(x.exponent2()) + ")";
}

/// Runs every check and returns the report; failed checks are recorded, not thrown.
/// Recognition and precision failures propagate as exceptions.
inline VerificationReport run_verification(std::int64_t q, std::int64_t R, const VerifyConfig& config = {}) {
  const long P = config.prec;
  const ImagQuadField field(q);
  const TwistFamilyElement fam = validate_twist(field, R);
  if (R == 1) throw NotInFamily("verification needs R > 1");
  const GrossCharacter chi = build_character(field);
  const auto embs = chi.embeddings(P + kAfeGuardBits);
  const std::vector<std::int64_t> divs = divisors(R);
  const std::size_t nd = divs.size();
  const std::size_t h = embs.size();

  VerificationReport rep;
  rep.q = q;
  rep.R = R;
  rep.k = fam.k;
  rep.h = chi.h();
  rep.config = config;
  rep.period = reference_period(q, P);
  BigComplex Omega = rep.period.Omega;
  if (config.omega_scale) {
    Omega *= *config.omega_scale;
    rep.period.absolute = false;
    rep.period.source += ", rescaled";
  }

  // primitive AFE values, one task per (d, iota), stored by index
  std::vector<LValueResult> afe(nd * h);
  if (uses_afe(config.method)) {
    parallel_for(
        nd * h, [&](std::size_t t) { afe[t] = twisted_l_value(chi, embs[t % h], divs[t / h], P); },
        config.threads);
  }

  // Eisenstein partial values at level R, and primitive values recovered from them
  std::vector<std::vector<std::vector<BigComplex>>> eis;  // [d][j][iota]
  if (uses_eisenstein(config.method)) {
    eis.assign(nd, std::vector<std::vector<BigComplex>>(chi.h()));
    for (int j = 0; j < chi.h(); ++j) {
      const ClassEisensteinTable table(chi, R, j, P);
      for (std::size_t a = 0; a < nd; ++a) {
        for (std::size_t i = 0; i < h; ++i) eis[a][j].push_back(table.partial(chi, embs[i], divs[a]));
      }
    }
  }

  if (config.method == Method::both) {
    BigReal dev = BigReal::zero(P);
    for (std::size_t a = 0; a < nd; ++a) {
      std::vector<LValueResult> prim(afe.begin() + a * h, afe.begin() + (a + 1) * h);
      for (int j = 0; j < chi.h(); ++j) {
        for (std::size_t i = 0; i < h; ++i) {
          const BigComplex v = partial_l_afe(prim, divs[a], R, j, static_cast<int>(i));
          dev = max(dev, distance(v, eis[a][j][i]));
        }
      }
    }
    rep.cross_path_dev = dev;
    rep.record("two-path agreement", dev < BigReal::pow2(-(P / 3), P),
               "max |afe - eisenstein| = " + exponent_string(dev) + " < 2^-" + std::to_string(P / 3));
  }

  for (std::size_t a = 0; a < nd; ++a) {
    const std::int64_t d = divs[a];
    std::vector<BigComplex> l;
    std::vector<BigReal> err;
    std::vector<BigComplex> w;
    std::string method;
    if (uses_afe(config.method)) {
      method = "afe";
      for (std::size_t i = 0; i < h; ++i) {
        const LValueResult& r = afe[a * h + i];
        l.push_back(r.value);
        err.push_back(r.error_bound);
        w.push_back(r.root_number);
      }
    } else {
      method = "eisenstein";
      const BigReal inv = BigReal::from_mpq(mpq_class(1 / imprimitivity_factor(d, R)), P);
      for (std::size_t i = 0; i < h; ++i) {
        BigComplex s = BigComplex::zero(P);
        for (int j = 0; j < chi.h(); ++j) s += eis[a][j][i];
        l.push_back(s * inv);
        err.push_back(eisenstein_error_bound(s, P));
      }
    }
    DivisorRow row;
    row.d = d;
    row.k_d = static_cast<int>(factorize(d).size());
    row.msl = msl_from_l_values(d, method, std::move(l), std::move(err), std::move(w), Omega);
    const BigReal imp = BigReal::from_mpq(imprimitivity_factor(d, R), P);
    for (const BigComplex& m : row.msl.msl) row.lambda.push_back(m * imp);
    rep.rows.push_back(std::move(row));
  }

  const PadicEmbedding pe = padic_embedding(chi, config.dyadic_bits);
  const DivisorRow& base = rep.rows.front();
  for (DivisorRow& row : rep.rows) {
    std::vector<BigComplex> ratio;
    for (std::size_t i = 0; i < h; ++i) ratio.push_back(row.msl.msl[i] / base.msl.msl[i]);
    const TFit fit = reconstruct_T_element(ratio, embs, chi.c(), config.denom_bound);
    row.phi = fit.value;
    row.phi_residual = fit.residual;
    row.ord_P = ord_P(row.phi, pe);
    const std::string tag = "d=" + std::to_string(row.d);
    rep.record("phi recognition " + tag, fit.residual < BigReal::pow2(-(P / 3), P),
               "phi = " + row.phi.to_string() + ", residual " + exponent_string(fit.residual));
    rep.record("ord_P(phi) = k_d " + tag, row.ord_P == row.k_d,
               "ord_P = " + std::to_string(row.ord_P) + ", k_d = " + std::to_string(row.k_d));
    if (rep.period.absolute) {
      const TFit m = reconstruct_T_element(row.msl.msl, embs, chi.c(), config.denom_bound);
      row.msl_ord = ord_P(m.value, pe);
      rep.record("ord(msl) = k_d - 1 " + tag, *row.msl_ord == row.k_d - 1,
                 "msl = " + m.value.to_string() + ", ord = " + std::to_string(*row.msl_ord));
    }
  }
  rep.record("phi(1) = 1", rep.rows.front().phi == chi.one(), "phi(1) = " + rep.rows.front().phi.to_string());

  // |prod_iota L(conj(phi_R^iota), 1)| against the propagated bound
  const DivisorRow& top = rep.rows.back();
  BigReal prod(1, P);
  BigReal upper(1, P);
  for (std::size_t i = 0; i < h; ++i) {
    prod *= top.msl.l_values[i].abs();
    upper *= top.msl.l_values[i].abs() + top.msl.l_errors[i];
  }
  rep.nonvanishing_product = prod;
  rep.nonvanishing_bound = upper - prod;
  rep.record("nonvanishing margin", prod > rep.nonvanishing_bound * 10,
             "|prod L| = " + exponent_string(prod) + ", bound = " + exponent_string(rep.nonvanishing_bound));

  if (uses_afe(config.method)) {
    BigReal worst = BigReal::zero(P);
    BigReal worst_abs = BigReal::zero(P);
    for (const DivisorRow& row : rep.rows) {
      for (const BigComplex& w : row.msl.root_numbers) {
        worst = max(worst, distance(w, BigComplex::one(P)));
        worst_abs = max(worst_abs, abs(w.abs() - 1));
      }
    }
    const BigReal t = BigReal::pow2(-48, P);
    rep.record("root numbers", worst < t && worst_abs < t,
               "max |w - 1| = " + exponent_string(worst) + ", max ||w| - 1| = " + exponent_string(worst_abs));
  }

  std::int64_t s = 0;
  for (std::int64_t d : divs) {
    if (d != 1 && d != R) s += d;
  }
  rep.d_r_sum = s;
  rep.record("D_R parity", s % 2 == 0, "sum of proper divisors other than 1 = " + std::to_string(s));
  return rep;
}

/// run_verification, throwing CheckFailed on the first failed check.
inline VerificationReport verify_theorem(std::int64_t q, std::int64_t R, const VerifyConfig& config = {}) {
  VerificationReport rep = run_verification(q, R, config);
  if (const Check* c = rep.first_failure()) throw CheckFailed(c->name + ": " + c->evidence);
  return rep;
}

/// Sum over subsets of {1..k} of the product of the chosen signs, by enumeration.
inline std::int64_t galois_sqrt_sum(int k, const std::vector<int>& signs) {
  if (k < 0 || static_cast<int>(signs.size()) != k) throw InvalidInput("galois_sqrt_sum: need k signs");
  if (k > 40) throw InvalidInput("galois_sqrt_sum: k too large to enumerate");
  std::int64_t total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::int64_t p = 1;
    for (int i = 0; i < k; ++i) {
      if (mask >> i & 1) p *= signs[static_cast<std::size_t>(i)];
    }
    total += p;
  }
  return total;
}

struct FiniteLevelResult {
  BigComplex lhs;
  BigComplex rhs;
  BigReal residual;
};

/// sum_{d | R} L_R(conj(phi_d), 1)/Omega against 2^k Psi/Omega for h = 1.
inline FiniteLevelResult finite_level_identity(std::int64_t q, std::int64_t R, long prec = kDefaultPrecision) {
  const ImagQuadField field(q);
  const TwistFamilyElement fam = validate_twist(field, R);
  if (R == 1) throw NotInFamily("the identity needs R > 1");
  const GrossCharacter chi = build_character(field);
  if (chi.h() != 1) throw InvalidInput("the exact finite-level identity needs class number 1");
  const BigComplex Omega = reference_period(q, prec).Omega;
  const auto embs = chi.embeddings(prec + kAfeGuardBits);
  BigComplex lhs = BigComplex::zero(prec);
  for (std::int64_t d : divisors(R)) {
    const LValueResult r = twisted_l_value(chi, embs[0], d, prec);
    lhs += partial_l_afe({r}, d, R, 0, 0);
  }
  lhs /= Omega;
  const BigComplex rhs = psi_sum(chi, R, 0, prec) * BigReal::pow2(fam.k, prec) / Omega;
  FiniteLevelResult out{lhs, rhs, distance(lhs, rhs)};
  if (out.residual > BigReal::pow2(-(prec / 2), prec)) {
    throw CheckFailed("finite-level identity residual " + out.residual.to_string(5));
  }
  return out;
}

/// 2-adic valuations of the roots of an integer polynomial (low to high), from
/// its Newton polygon. Roots at zero are omitted.
inline std::vector<mpq_class> newton_polygon_valuations(std::vector<mpz_class> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  std::size_t lo = 0;
  while (lo < c.size() && c[lo] == 0) ++lo;
  std::vector<std::pair<long, long>> pts;
  for (std::size_t i = lo; i < c.size(); ++i) {
    if (c[i] != 0) pts.push_back({static_cast<long>(i), detail::ord2(abs(c[i]))});
  }
  std::vector<mpq_class> out;
  std::size_t i = 0;
  while (i + 1 < pts.size()) {
    // steepest-descending next vertex of the lower hull
    std::size_t best = i + 1;
    for (std::size_t j = i + 2; j < pts.size(); ++j) {
      const mpq_class sj(pts[j].second - pts[i].second, pts[j].first - pts[i].first);
      const mpq_class sb(pts[best].second - pts[i].second, pts[best].first - pts[i].first);
      if (sj <= sb) best = j;
    }
    mpq_class slope(pts[best].second - pts[i].second, pts[best].first - pts[i].first);
    slope.canonicalize();
    for (long n = 0; n < pts[best].first - pts[i].first; ++n) out.push_back(-slope);
    i = best;
  }
  return out;
}

struct PsiIntegrality {
  bool recognized = false;
  std::vector<mpz_class> polynomial;
  std::vector<mpq_class> root_valuations;
  bool integral = false;
  BigComplex value;
  std::string note;
};

/// algdep of degree <= 4 on x, then the 2-adic valuations of all its conjugates.
inline PsiIntegrality integrality_of_value(const BigComplex& x, int degree = 4,
                                           const mpz_class& height = mpz_class(1) << 32) {
  PsiIntegrality out;
  out.value = x;
  try {
    out.polynomial = algdep(x, degree, height);
  } catch (const NoRelationFound& e) {
    out.note = e.what();
    return out;
  }
  out.recognized = true;
  out.root_valuations = newton_polygon_valuations(out.polynomial);
  out.integral = true;
  for (const mpq_class& v : out.root_valuations) {
    if (v < 0) out.integral = false;
  }
  out.note = "minimal polynomial " + format_polynomial(out.polynomial);
  return out;
}

/// Psi_{(1),R}/Omega for class number 1, scaled by `scale`.
inline PsiIntegrality psi_integrality_spotcheck(std::int64_t q, std::int64_t R, long prec = kDefaultPrecision,
                                                const mpq_class& scale = 1) {
  const ImagQuadField field(q);
  const TwistFamilyElement fam = validate_twist(field, R);
  const GrossCharacter chi = build_character(field);
  if (chi.h() != 1) throw InvalidInput("the spot check needs class number 1");
  if (fam.k != 1) throw InvalidInput("the spot check needs a single prime R");
  const BigComplex Omega = reference_period(q, prec).Omega;
  const BigComplex psi = psi_sum(chi, R, 0, prec) / Omega * BigReal::from_mpq(scale, prec);
  return integrality_of_value(psi);
}

}  // namespace cmtwist
