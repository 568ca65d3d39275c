#include <gtest/gtest.h>

#include "cmtwist/curves.hpp"

using namespace cmtwist;

namespace {

constexpr long P = 192;

BigReal tol(long bits) { return BigReal::pow2(-bits, P); }

BigReal rel(const BigComplex& a, const BigComplex& b) { return distance(a, b) / max(b.abs(), BigReal(1, P)); }

BigComplex omega_k(std::int64_t q) { return BigComplex(BigReal(1, P) / 2, sqrt(BigReal(q, P)) / 2); }

}  // namespace

TEST(Curves, JOfKnownCMPoints) {
  // j(i) = 1728, j(rho) = 0, j((1 + sqrt(-7))/2) = -3375
  EXPECT_LT(distance(j_invariant(BigComplex::i(P)), BigComplex(1728, 0, P)), tol(P - 40));
  const BigComplex rho(BigReal(-1, P) / 2, sqrt(BigReal(3, P)) / 2);
  EXPECT_LT(j_invariant(rho).abs(), tol(P - 40));
  EXPECT_LT(distance(j_invariant(omega_k(7)), BigComplex(-3375, 0, P)), tol(P - 40));
  // SL2(Z) invariance
  const BigComplex tau = BigComplex::from_double(0.31, 0.77, P);
  const BigComplex moved = (tau * 2 + BigComplex::one(P)) / (tau * 5 + BigComplex(3, 0, P));
  EXPECT_LT(rel(j_invariant(moved), j_invariant(tau)), tol(P - 48));
}

TEST(Curves, ClassPolynomialSeven) {
  const ClassPolynomial H = hilbert_class_polynomial(7, P);
  ASSERT_EQ(H.coeffs.size(), 2u);
  EXPECT_EQ(H.coeffs[0], 3375);
  EXPECT_EQ(H.coeffs[1], 1);
  EXPECT_EQ(format_polynomial(H.coeffs), "x + 3375");
}

TEST(Curves, ClassPolynomialTwentyThree) {
  const ClassPolynomial H = hilbert_class_polynomial(23, P);
  ASSERT_EQ(H.coeffs.size(), 4u);
  EXPECT_EQ(H.coeffs[3], 1);
  EXPECT_EQ(format_polynomial(H.coeffs), "x^3 + 3491750x^2 - 5151296875x + 12771880859375");
  std::vector<BigComplex> c;
  for (const mpz_class& a : H.coeffs) c.push_back(BigComplex(BigReal::from_mpz(a, P + 64)));
  const std::vector<BigComplex> roots = polynomial_roots(c);
  for (const BigComplex& j : H.roots) {
    BigReal best = rel(roots[0].with_precision(P), j);
    for (const BigComplex& r : roots) best = min(best, rel(r.with_precision(P), j));
    EXPECT_LT(best, tol(P - 32));
  }
}

TEST(Curves, ClassPolynomialDegreeIsClassNumber) {
  for (const auto& [q, h] : std::vector<std::pair<std::int64_t, std::size_t>>{{7, 1}, {23, 3}, {31, 3}, {47, 5}}) {
    EXPECT_EQ(hilbert_class_polynomial(q, P).coeffs.size(), h + 1) << q;
  }
}

TEST(Curves, GrossModelSeven) {
  const CurveModel E = gross_model_real(7, P);
  // m = -15, r = 27
  EXPECT_LT(distance(E.a4, BigComplex(BigReal(-105, P) / 48)), tol(P - 8));
  EXPECT_LT(distance(E.a6, BigComplex(BigReal(-27 * 49, P) / 864)), tol(P - 8));
  EXPECT_LT(distance(E.j(), BigComplex(-3375, 0, P)), tol(P - 40));
}

TEST(Curves, GrossModelJMatchesCMPoint) {
  for (std::int64_t q : {23, 31}) {
    const CurveModel E = gross_model_real(q, P);
    EXPECT_LT(rel(E.j(), j_invariant(omega_k(q))), tol(P - 48));
    const PeriodLatticeResult per = period_lattice(E, q);
    EXPECT_LT(per.homothety_residual, tol(P - 32));
  }
}

TEST(Curves, BuiltinModelsHaveCMj) {
  EXPECT_LT(distance(builtin_minimal_model(7, P).j(), BigComplex(-3375, 0, P)), tol(P - 40));
  const CurveModel E = builtin_minimal_model(23, P);
  EXPECT_LT(rel(E.j(), j_invariant(omega_k(23))), tol(P - 48));
  EXPECT_THROW(builtin_minimal_model(31, P), UnsupportedQ);
}

TEST(Curves, BuiltinDiscriminants) {
  // minimal discriminant -q^3: 49a1 has -343 and the q = 23 model has -12167 in every embedding
  EXPECT_LT(distance(builtin_minimal_model(7, P).discriminant(), BigComplex(-343, 0, P)), tol(P - 16));
  EXPECT_LT(distance(builtin_minimal_model(23, P).discriminant(), BigComplex(-12167, 0, P)), tol(P - 32));
}

TEST(Curves, PeriodsOfConductor49) {
  const PeriodLatticeResult per = period_lattice(builtin_minimal_model(7, P), 7);
  EXPECT_LT(per.homothety_residual, tol(P - 32));
  EXPECT_LT(abs(per.Omega.im()), tol(P - 32));
  EXPECT_LT(abs(per.Omega.re() - BigReal::from_string("1.9333117056168115", P)), BigReal::from_string("1e-15", P));
  EXPECT_LT(rel(j_invariant(per.lattice), BigComplex(-3375, 0, P)), tol(P - 48));
}

TEST(Curves, PeriodsOfTwentyThreeModel) {
  const CurveModel E = builtin_minimal_model(23, P);
  const PeriodLatticeResult per = period_lattice(E, 23);
  EXPECT_LT(per.homothety_residual, tol(P - 32));
  EXPECT_LT(rel(j_invariant(per.lattice), E.j()), tol(P - 48));
}

TEST(Curves, LatticeInvariantsMatchModel) {
  // g2 = c4/12 and g3 = c6/216 for the period lattice of dx/(2y + a1 x + a3)
  const std::vector<std::pair<CurveModel, std::int64_t>> models{
      {builtin_minimal_model(7, P), 7},
      {builtin_minimal_model(23, P), 23},
      {builtin_minimal_model(7, P).scaled(BigComplex::from_double(0.6, 1.3, P)), 7}};
  for (const auto& [E, q] : models) {
    const PeriodLatticeResult per = period_lattice(E, q);
    const auto [g2, g3] = lattice_invariants(per.lattice);
    EXPECT_LT(rel(g2, E.c4() / 12), tol(P - 48));
    EXPECT_LT(rel(g3, E.c6() / 216), tol(P - 48));
  }
}

TEST(Curves, ScalingModelScalesOmega) {
  const CurveModel E = builtin_minimal_model(7, P);
  const BigComplex Omega = period_lattice(E, 7).Omega;
  for (const BigComplex& u : {BigComplex(2, 0, P), BigComplex::from_double(0.6, 1.3, P), BigComplex(0, -3, P)}) {
    const BigComplex scaled = period_lattice(E.scaled(u), 7).Omega;
    const BigComplex expected = Omega / u;
    EXPECT_LT(min(distance(scaled, expected), distance(scaled, -expected)), tol(P - 40));
  }
}

TEST(Curves, NonCMModelIsRejected) {
  const CurveModel E{BigComplex(0, 0, P), BigComplex(0, 0, P), BigComplex(1, 0, P), BigComplex(-1, 0, P),
                     BigComplex(0, 0, P), ModelProvenance::user_supplied};
  EXPECT_THROW(period_lattice(E, 7), NotHomotheticToOK);
}
