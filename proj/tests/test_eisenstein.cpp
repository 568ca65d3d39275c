#include <gtest/gtest.h>

#include <random>

#include "cmtwist/eisenstein.hpp"

using namespace cmtwist;

namespace {

constexpr long P = 192;
constexpr int kCases = 25;

BigReal tol(long bits) { return BigReal::pow2(-bits, P); }

BigComplex cplx(double re, double im) { return BigComplex::from_double(re, im, P); }

// Random lattice with w1 of modulus in [1/2, 2] and tau in a box of the upper
// half-plane that is deliberately not reduced.
Lattice random_lattice(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mod(0.5, 2.0);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  std::uniform_real_distribution<double> re_tau(-2.0, 2.0);
  std::uniform_real_distribution<double> im_tau(0.4, 2.5);
  const double r = mod(rng);
  const double a = ang(rng);
  const BigComplex w1 = cplx(r * std::cos(a), r * std::sin(a));
  return Lattice(w1, w1 * cplx(re_tau(rng), im_tau(rng)));
}

// Random point x w1 + y w2 with (x, y) away from the lattice.
BigComplex random_point(const Lattice& L, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(0.05, 0.95);
  return L.w1() * BigReal::from_double(coord(rng), P) + L.w2() * BigReal::from_double(coord(rng), P);
}

Lattice cm_lattice(long q) {
  // O_K = Z + Z (1 + sqrt(-q))/2
  const BigReal s = sqrt(BigReal(q, P)) / 2;
  return Lattice(BigComplex::one(P), BigComplex(BigReal(1, P) / 2, s));
}

}  // namespace

TEST(Eisenstein, ReductionKeepsLatticeAndOrientation) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < kCases; ++i) {
    const Lattice L = random_lattice(rng);
    const ReducedBasis rb = reduce_basis(L);
    EXPECT_EQ(rb.a * rb.d - rb.b * rb.c, 1);
    EXPECT_LT(abs(rb.lattice.area() - L.area()), tol(P - 16) * L.area());
    EXPECT_LE(rb.lattice.w1().abs(), rb.lattice.w2().abs() + tol(P - 16));
    const BigComplex tau = rb.lattice.tau();
    EXPECT_LE(abs(tau.re()), BigReal(1, P) / 2 + tol(P - 16));
    EXPECT_GT(tau.im(), BigReal(0, P));
  }
}

TEST(Eisenstein, LegendreRelation) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < kCases; ++i) {
    const EisensteinCtx ctx(random_lattice(rng));
    EXPECT_LT(ctx.legendre_residual(), tol(P - 24));
  }
}

TEST(Eisenstein, GaussianLatticeConstants) {
  const EisensteinCtx ctx(Lattice(BigComplex::one(P), BigComplex::i(P)));
  // A = pi / area
  EXPECT_LT(distance(ctx.area_inv(), BigComplex(BigReal::pi(P))), tol(P - 24));
  // square symmetry forces s2 = 0 (G2 vanishes on Z[i])
  EXPECT_LT(ctx.s2().abs(), tol(P - 24));
  // eta1 = pi for Z + Z i
  EXPECT_LT(distance(ctx.eta1(), BigComplex(BigReal::pi(P))), tol(P - 24));
}

TEST(Eisenstein, AreaConstantOnRandomLattices) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < kCases; ++i) {
    const Lattice L = random_lattice(rng);
    const EisensteinCtx ctx(L);
    const BigComplex expected(BigReal::pi(P) / L.area());
    EXPECT_LT(distance(ctx.area_inv(), expected), tol(P - 24) * expected.abs());
  }
}

TEST(Eisenstein, Periodicity) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> shift(-5, 5);
  for (int i = 0; i < kCases; ++i) {
    const Lattice L = random_lattice(rng);
    const EisensteinCtx ctx(L);
    const BigComplex z = random_point(L, rng);
    const BigComplex w = L.w1() * shift(rng) + L.w2() * shift(rng);
    const BigComplex e = ctx.e1star(z);
    EXPECT_LT(distance(ctx.e1star(z + w), e), tol(P - 24) * max(e.abs(), BigReal(1, P)));
  }
}

TEST(Eisenstein, Oddness) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < kCases; ++i) {
    const Lattice L = random_lattice(rng);
    const EisensteinCtx ctx(L);
    const BigComplex z = random_point(L, rng);
    const BigComplex e = ctx.e1star(z);
    EXPECT_LT((ctx.e1star(-z) + e).abs(), tol(P - 24) * max(e.abs(), BigReal(1, P)));
  }
}

TEST(Eisenstein, Homogeneity) {
  // E1*(lambda z, lambda L) = E1*(z, L) / lambda
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  for (int i = 0; i < kCases; ++i) {
    const Lattice L = random_lattice(rng);
    BigComplex lambda = cplx(coord(rng), coord(rng));
    if (i == 0) lambda = cplx(0, 2);
    if (lambda.abs() < BigReal(1, P) / 4) lambda = cplx(0, 2);
    const EisensteinCtx base(L);
    const EisensteinCtx scaled(L.scaled(lambda));
    const BigComplex z = random_point(L, rng);
    const BigComplex lhs = scaled.e1star(lambda * z) * lambda;
    const BigComplex rhs = base.e1star(z);
    EXPECT_LT(distance(lhs, rhs), tol(P - 24) * max(rhs.abs(), BigReal(1, P)));
  }
}

TEST(Eisenstein, BasisChangeInvariance) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> entry(-4, 4);
  for (int i = 0; i < kCases; ++i) {
    const Lattice L = random_lattice(rng);
    long a, b, c, d;
    do {
      a = entry(rng);
      b = entry(rng);
      c = entry(rng);
      d = entry(rng);
    } while (a * d - b * c != 1);
    const Lattice M(L.w1() * a + L.w2() * b, L.w1() * c + L.w2() * d);
    const EisensteinCtx x(L);
    const EisensteinCtx y(M);
    EXPECT_LT(distance(x.s2(), y.s2()), tol(P - 24) * max(x.s2().abs(), BigReal(1, P)));
    EXPECT_LT(distance(x.area_inv(), y.area_inv()), tol(P - 24) * x.area_inv().abs());
    const BigComplex z = random_point(L, rng);
    EXPECT_LT(distance(x.e1star(z), y.e1star(z)), tol(P - 24) * max(x.e1star(z).abs(), BigReal(1, P)));
    EXPECT_LT(y.legendre_residual(), tol(P - 24));
  }
}

TEST(Eisenstein, PoleAtLatticePoint) {
  const EisensteinCtx ctx(cm_lattice(7));
  EXPECT_THROW(ctx.e1star(BigComplex::zero(P)), PoleAtLatticePoint);
  EXPECT_THROW(ctx.e1star(ctx.lattice().w1() * 3 - ctx.lattice().w2() * 2), PoleAtLatticePoint);
  EXPECT_THROW(Lattice(BigComplex::one(P), BigComplex(2, 0, P)), SingularSolve);
}

TEST(Eisenstein, ZetaMatchesLatticeSum) {
  // 25 random cases, three of them on CM lattices, each held to the rigorous tail bound
  std::mt19937_64 rng(8);
  for (int i = 0; i < kCases; ++i) {
    Lattice L = i < 3 ? cm_lattice(i == 0 ? 7 : (i == 1 ? 23 : 31)) : random_lattice(rng);
    // normalize the covolume so that the disc radius has the same meaning everywhere
    L = L.scaled(BigComplex(sqrt(BigReal(1, P) / L.area())));
    const EisensteinCtx ctx(L);
    std::uniform_real_distribution<double> coord(-0.45, 0.45);
    const BigComplex z = ctx.reduced_lattice().w1() * BigReal::from_double(coord(rng), P) +
                         ctx.reduced_lattice().w2() * BigReal::from_double(coord(rng), P);
    if (z.abs() < BigReal(1, P) / 20) continue;
    const ZetaBruteForce bf = zeta_bruteforce(z, L, 150.0);
    const BigReal diff = distance(bf.value, ctx.zeta(z));
    EXPECT_LT(diff, bf.tail_bound + bf.rounding_bound) << "case " << i;
    EXPECT_LT(bf.tail_bound, BigReal(1, P) / 10000);
  }
}

TEST(Eisenstein, GaussianZetaToFortyBits) {
  // The disc sum converges much faster than the rigorous bound suggests; at
  // X = 1600 the observed error on Z + Z i is below 2^-40.
  const Lattice L(BigComplex::one(P), BigComplex::i(P));
  const BigComplex z = cplx(0.3, 0.2);
  const ZetaBruteForce bf = zeta_bruteforce(z, L, 1600.0);
  const BigReal diff = distance(bf.value, weierstrass_zeta(z, L));
  EXPECT_LT(diff, bf.tail_bound + bf.rounding_bound);
  EXPECT_LT(diff, tol(40));
}

TEST(Eisenstein, ZetaLaurentStart) {
  // zeta(z) = 1/z + O(z^3) since G2 vanishes on Z[i]
  const Lattice L(BigComplex::one(P), BigComplex::i(P));
  const BigComplex z = cplx(1e-6, 2e-6);
  EXPECT_LT(distance(weierstrass_zeta(z, L), z.inverse()), tol(50));
}
