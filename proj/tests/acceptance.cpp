// Acceptance run: one PASS/FAIL line per criterion with its evidence.
// Exit status is 0 iff every blocking criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cmtwist/verify.hpp"

using namespace cmtwist;

namespace {

// pinned tolerances
constexpr long P = 192;
constexpr long kTwoPathBits = 64;            // |AFE - Eisenstein| < 2^-64
constexpr long kRecognitionBits = 64;        // recognition residual < 2^-64
constexpr long kRootNumberBits = 48;         // |w - 1|, ||w| - 1| < 2^-48
constexpr long kEisensteinSlack = 24;        // suite residuals < 2^-(P - 24)
constexpr long kIdentityBits = 64;           // finite-level identity < 2^-64
constexpr long kCharNormSlack = 16;          // ||phi|^2 - N| < 2^-(P - 16) N
constexpr long kClassPolySlack = 32;         // class polynomial roots to 2^-(P - 32)
constexpr double kNonvanishingFactor = 10;   // |prod L| > 10 x bound
constexpr double kFastSeconds = 1.0;         // class data, inertia
constexpr double kTwoPathSeconds = 600.0;    // per (q, R)
constexpr int kRandomIdeals = 100;
constexpr int kEisensteinCases = 25;

BigReal tol(long bits) { return BigReal::pow2(-bits, P); }

struct Outcome {
  bool pass = false;
  std::string evidence;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string bits(const BigReal& x) {
  if (x.is_zero()) return "0";
  return "2^" + std::to_string(x.exponent2());
}

// verification reports shared by criteria 5 to 8
std::map<std::pair<std::int64_t, std::int64_t>, VerificationReport>& reports() {
  static std::map<std::pair<std::int64_t, std::int64_t>, VerificationReport> r;
  return r;
}

const std::vector<std::pair<std::int64_t, std::int64_t>> kVerified{{7, 5}, {7, 13}, {7, 65}, {7, 85}, {23, 5}};

const VerificationReport& report(std::int64_t q, std::int64_t R) {
  auto& all = reports();
  const auto key = std::make_pair(q, R);
  auto it = all.find(key);
  if (it == all.end()) it = all.emplace(key, run_verification(q, R)).first;
  return it->second;
}

KIdeal random_ideal(const ImagQuadField& f, std::mt19937_64& rng, int factors) {
  static const std::vector<std::int64_t> small = primes_up_to(80);
  KIdeal I = KIdeal::unit(f);
  std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
  for (int added = 0; added < factors;) {
    const std::int64_t ell = small[pick(rng)];
    if (ell == f.q()) continue;
    const auto ps = primes_above(f, ell);
    std::uniform_int_distribution<std::size_t> which(0, ps.size() - 1);
    I = I * ps[which(rng)].ideal;
    ++added;
  }
  return I;
}

Outcome class_data() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string ev;
  bool ok = true;
  for (const auto& [q, h] : std::vector<std::pair<std::int64_t, int>>{{23, 3}, {7, 1}, {31, 3}}) {
    const int got = ClassGroup(ImagQuadField(q)).h();
    ok = ok && got == h;
    ev += "h(" + std::to_string(q) + ")=" + std::to_string(got) + " ";
  }
  const double s = seconds_since(t0);
  ok = ok && s < kFastSeconds;
  return {ok, ev + "in " + std::to_string(s) + " s"};
}

Outcome character_laws() {
  std::mt19937_64 rng(4242);
  int checked = 0;
  bool ok = true;
  BigReal worst = BigReal::zero(P);
  for (std::int64_t q : {7, 23, 31}) {
    const ImagQuadField f(q);
    const GrossCharacter chi = build_character(f);
    const auto embs = chi.embeddings(P);
    for (int i = 0; i < kRandomIdeals; ++i) {
      const KIdeal a = random_ideal(f, rng, 2);
      const KIdeal b = random_ideal(f, rng, 2);
      const CharValue va = chi.value(a);
      const CharValue vb = chi.value(b);
      ok = ok && chi.value(a * b) == chi.multiply(va, vb);
      ok = ok && chi.to_telement(chi.value(a * b)) == chi.to_telement(va) * chi.to_telement(vb);
      const BigReal n = BigReal::from_mpz(a.norm(), P);
      for (const auto& e : embs) {
        const BigReal r = abs(chi.embed(va, e).norm() - n) / n;
        worst = max(worst, r);
      }
      ++checked;
    }
  }
  ok = ok && worst < tol(P - kCharNormSlack);
  std::string minus;
  for (const auto& [q, r] : std::vector<std::pair<std::int64_t, std::int64_t>>{{7, 5}, {7, 13}, {23, 5}}) {
    const GrossCharacter chi = build_character(ImagQuadField(q));
    const KIdeal rO = KIdeal::principal(chi.field(), r);
    for (std::int64_t d : {1L, 13L, 17L}) {
      if (d == r) continue;
      const CharValue v = twisted_value(chi, rO, d);
      ok = ok && v.j == 0 && v.u == KElement::from_int(chi.field(), -r);
    }
    minus += "(" + std::to_string(q) + "," + std::to_string(r) + ") ";
  }
  return {ok, std::to_string(checked) + " random pairs, max rel norm residual " + bits(worst) +
                  "; phi_d((r)) = -r for " + minus};
}

Outcome dyadic_units() {
  std::string ev;
  bool ok = true;
  const std::map<std::int64_t, Inertia> expect{{7, Inertia::inert}, {23, Inertia::inert}, {31, Inertia::split}};
  for (std::int64_t q : {7, 23, 31}) {
    const auto t0 = std::chrono::steady_clock::now();
    const GrossCharacter chi = build_character(ImagQuadField(q));
    const long ord = char_unit_ord(chi, padic_embedding(chi));
    const Inertia in = inertia_check(q);
    const double s = seconds_since(t0);
    ok = ok && (q == 31 ? ord >= 2 : ord == 1) && in == expect.at(q) && s < kFastSeconds;
    ev += "q=" + std::to_string(q) + ": ord " + std::to_string(ord) + ", " + to_string(in) + "; ";
  }
  return {ok, ev};
}

Outcome two_path() {
  BigReal worst = BigReal::zero(P);
  int compared = 0;
  double slowest = 0;
  const std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> cases{{7, {1, 5, 13, 65}}, {23, {1, 5}}};
  for (const auto& [q, levels] : cases) {
    const GrossCharacter chi = build_character(ImagQuadField(q));
    const auto embs = chi.embeddings(P + kAfeGuardBits);
    for (std::int64_t R : levels) {
      const auto t0 = std::chrono::steady_clock::now();
      for (std::int64_t d : divisors(R)) {
        std::vector<LValueResult> prim;
        for (const auto& e : embs) prim.push_back(twisted_l_value(chi, e, d, P));
        for (int j = 0; j < chi.h(); ++j) {
          const ClassEisensteinTable table(chi, R, j, P);
          for (const auto& e : embs) {
            worst = max(worst, distance(partial_l_afe(prim, d, R, j, e.iota), table.partial(chi, e, d)));
            ++compared;
          }
        }
      }
      slowest = std::max(slowest, seconds_since(t0));
    }
  }
  const bool ok = worst < tol(kTwoPathBits) && slowest < kTwoPathSeconds;
  return {ok, std::to_string(compared) + " partial values, max deviation " + bits(worst) + ", slowest level " +
                  std::to_string(slowest) + " s"};
}

Outcome valuation_theorem() {
  bool ok = true;
  std::string ev;
  BigReal worst = BigReal::zero(P);
  for (const auto& [q, R] : kVerified) {
    const VerificationReport& rep = report(q, R);
    for (const DivisorRow& row : rep.rows) {
      ok = ok && row.ord_P == row.k_d;
      worst = max(worst, row.phi_residual);
    }
    ev += "(" + std::to_string(q) + "," + std::to_string(R) + "): ord " + std::to_string(rep.rows.back().ord_P) +
          " = k " + std::to_string(rep.k) + "; ";
  }
  ok = ok && worst < tol(kRecognitionBits);
  return {ok, ev + "max residual " + bits(worst)};
}

Outcome absolute_normalization() {
  bool ok = true;
  std::string ev;
  for (const auto& [q, R] : kVerified) {
    if (q != 7) continue;
    const VerificationReport& rep = report(q, R);
    ok = ok && rep.period.absolute;
    const DivisorRow& base = rep.rows.front();
    const DivisorRow& top = rep.rows.back();
    ok = ok && base.msl_ord == -1 && top.msl_ord == rep.k - 1;
    ev += "R=" + std::to_string(R) + ": ord(msl) " + (base.msl_ord ? std::to_string(*base.msl_ord) : "?") +
          ", ord(msl(R)) " + (top.msl_ord ? std::to_string(*top.msl_ord) : "?") + "; ";
  }
  return {ok, ev};
}

Outcome nonvanishing() {
  bool ok = true;
  BigReal least = BigReal::zero(P);
  BigReal largest_bound = BigReal::zero(P);
  bool first = true;
  for (const auto& [q, R] : kVerified) {
    const VerificationReport& rep = report(q, R);
    const BigReal bound = rep.nonvanishing_bound * BigReal::from_double(kNonvanishingFactor, P);
    ok = ok && rep.nonvanishing_product > bound;
    if (first || rep.nonvanishing_product < least) least = rep.nonvanishing_product;
    largest_bound = max(largest_bound, rep.nonvanishing_bound);
    first = false;
  }
  return {ok, "smallest |prod L| " + least.to_string(6) + ", largest error bound " + bits(largest_bound)};
}

Outcome root_numbers() {
  BigReal worst = BigReal::zero(P);
  int count = 0;
  for (const auto& [q, R] : kVerified) {
    for (const DivisorRow& row : report(q, R).rows) {
      for (const BigComplex& w : row.msl.root_numbers) {
        worst = max(worst, max(distance(w, BigComplex::one(P)), abs(w.abs() - 1)));
        ++count;
      }
    }
  }
  return {count > 0 && worst < tol(kRootNumberBits), std::to_string(count) + " root numbers, max |w - 1| " + bits(worst)};
}

Lattice random_lattice(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mod(0.5, 2.0);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  std::uniform_real_distribution<double> re_tau(-2.0, 2.0);
  std::uniform_real_distribution<double> im_tau(0.4, 2.5);
  const double r = mod(rng);
  const double a = ang(rng);
  const BigComplex w1 = BigComplex::from_double(r * std::cos(a), r * std::sin(a), P);
  return Lattice(w1, w1 * BigComplex::from_double(re_tau(rng), im_tau(rng), P));
}

BigComplex random_point(const Lattice& L, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(0.05, 0.95);
  return L.w1() * BigReal::from_double(coord(rng), P) + L.w2() * BigReal::from_double(coord(rng), P);
}

Outcome eisenstein_suite() {
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<long> shift(-5, 5);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  BigReal per = BigReal::zero(P), odd = BigReal::zero(P), hom = BigReal::zero(P), leg = BigReal::zero(P);
  int zeta_ok = 0;
  for (int i = 0; i < kEisensteinCases; ++i) {
    const Lattice L = random_lattice(rng);
    const EisensteinCtx ctx(L);
    const BigComplex z = random_point(L, rng);
    const BigComplex e = ctx.e1star(z);
    const BigReal scale = max(e.abs(), BigReal(1, P));
    const BigComplex w = L.w1() * shift(rng) + L.w2() * shift(rng);
    per = max(per, distance(ctx.e1star(z + w), e) / scale);
    odd = max(odd, (ctx.e1star(-z) + e).abs() / scale);
    BigComplex lambda = BigComplex::from_double(coord(rng), coord(rng), P);
    if (lambda.abs() < BigReal(1, P) / 4) lambda = BigComplex(0, 2, P);
    const EisensteinCtx scaled(L.scaled(lambda));
    hom = max(hom, distance(scaled.e1star(lambda * z) * lambda, e) / scale);
    leg = max(leg, ctx.legendre_residual());

    // brute-force zeta on a covolume-one copy, held to its stated tail bound
    const Lattice U = L.scaled(BigComplex(sqrt(BigReal(1, P) / L.area())));
    const EisensteinCtx uc(U);
    std::uniform_real_distribution<double> small(-0.45, 0.45);
    BigComplex zu = uc.reduced_lattice().w1() * BigReal::from_double(small(rng), P) +
                    uc.reduced_lattice().w2() * BigReal::from_double(small(rng), P);
    if (zu.abs() < BigReal(1, P) / 20) zu = uc.reduced_lattice().w1() / 3;
    const ZetaBruteForce bf = zeta_bruteforce(zu, U, 150.0);
    if (distance(bf.value, uc.zeta(zu)) < bf.tail_bound + bf.rounding_bound) ++zeta_ok;
  }
  const BigReal t = tol(P - kEisensteinSlack);
  const bool ok = per < t && odd < t && hom < t && leg < t && zeta_ok == kEisensteinCases;
  return {ok, "periodicity " + bits(per) + ", oddness " + bits(odd) + ", homogeneity " + bits(hom) + ", Legendre " +
                  bits(leg) + ", brute force " + std::to_string(zeta_ok) + "/" + std::to_string(kEisensteinCases)};
}

Outcome finite_level() {
  std::string ev;
  bool ok = true;
  for (std::int64_t R : {5, 65}) {
    const FiniteLevelResult r = finite_level_identity(7, R, P);
    ok = ok && r.residual < tol(kIdentityBits);
    ev += "R=" + std::to_string(R) + ": " + bits(r.residual) + "; ";
  }
  return {ok, ev};
}

Outcome combinatorial_lemma() {
  int vectors = 0;
  bool ok = true;
  for (int k = 0; k <= 6; ++k) {
    for (int mask = 0; mask < (1 << k); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < k; ++i) s.push_back(mask >> i & 1 ? -1 : 1);
      ok = ok && galois_sqrt_sum(k, s) == (mask == 0 ? (std::int64_t{1} << k) : 0);
      ++vectors;
    }
  }
  return {ok, std::to_string(vectors) + " sign vectors for k <= 6"};
}

Outcome class_polynomials() {
  const ClassPolynomial h7 = hilbert_class_polynomial(7, P);
  const ClassPolynomial h23 = hilbert_class_polynomial(23, P);
  bool ok = format_polynomial(h7.coeffs) == "x + 3375";
  ok = ok && h23.coeffs.size() == 4 && h23.coeffs[3] == 1;
  std::vector<BigComplex> c;
  for (const mpz_class& a : h23.coeffs) c.push_back(BigComplex(BigReal::from_mpz(a, P + 64)));
  const std::vector<BigComplex> roots = polynomial_roots(c);
  BigReal worst = BigReal::zero(P);
  for (const BigComplex& j : h23.roots) {
    BigReal best = distance(roots[0].with_precision(P), j) / j.abs();
    for (const BigComplex& r : roots) best = min(best, distance(r.with_precision(P), j) / j.abs());
    worst = max(worst, best);
  }
  ok = ok && worst < tol(P - kClassPolySlack);
  const PeriodLatticeResult per = period_lattice(builtin_minimal_model(23, P), 23);
  ok = ok && per.homothety_residual < tol(P - kClassPolySlack);
  return {ok, format_polynomial(h7.coeffs) + "; " + format_polynomial(h23.coeffs) + "; roots " + bits(worst) +
                  "; homothety " + bits(per.homothety_residual)};
}

Outcome psi_integrality() {
  const PsiIntegrality r = psi_integrality_spotcheck(7, 5, P);
  std::string vals;
  for (const mpq_class& v : r.root_valuations) vals += v.get_str() + " ";
  return {r.recognized && r.integral && r.polynomial.size() <= 5, r.note + "; 2-adic ords " + vals};
}

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> run;
  bool blocking = true;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "class data", class_data},
      {2, "character laws", character_laws},
      {3, "unit order and inertia", dyadic_units},
      {4, "two-path L-values", two_path},
      {5, "valuation theorem", valuation_theorem},
      {6, "absolute normalization", absolute_normalization},
      {7, "nonvanishing margin", nonvanishing},
      {8, "root numbers", root_numbers},
      {9, "Eisenstein suite", eisenstein_suite},
      {10, "finite-level identity", finite_level},
      {11, "combinatorial lemma", combinatorial_lemma},
      {12, "Hilbert class polynomials", class_polynomials},
      {13, "Psi integrality (stretch)", psi_integrality, false},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = seconds_since(t0);
    const char* tag = o.pass ? "PASS" : (c.blocking ? "FAIL" : "FAIL (non-blocking)");
    std::printf("[%s] %2d %s: %s (%.2f s)\n", tag, c.id, c.name.c_str(), o.evidence.c_str(), s);
    std::fflush(stdout);
    if (!o.pass && c.blocking) ++failed;
  }
  std::printf("%d blocking criteria failed, total %.1f s\n", failed, seconds_since(start));
  return failed == 0 ? 0 : 1;
}
