#pragma once

// Exact arithmetic in K = Q(sqrt(-q)) for primes q = 7 mod 8: elements,
// integral ideals in Hermite normal form, binary quadratic forms and the
// (cyclic) ideal class group.
//
// Elements are written a + b*w with w = (1 + sqrt(-q))/2, so w^2 = w - (1+q)/4.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cmtwist/arith.hpp"
#include "cmtwist/errors.hpp"
#include "cmtwist/numerics.hpp"

namespace cmtwist {

class ImagQuadField {
 public:
  explicit ImagQuadField(std::int64_t q) : q_(q) {
    if (!is_prime(q)) throw UnsupportedQ("q must be prime, got " + std::to_string(q));
    if (q % 8 != 7) throw UnsupportedQ("q must be 7 mod 8, got " + std::to_string(q));
  }

  std::int64_t q() const { return q_; }
  std::int64_t discriminant() const { return -q_; }
  /// (1 + q)/4, the constant with w^2 = w - q4.
  std::int64_t q4() const { return (1 + q_) / 4; }

  friend bool operator==(const ImagQuadField& a, const ImagQuadField& b) { return a.q_ == b.q_; }

 private:
  std::int64_t q_;
};

class KElement {
 public:
  KElement() : q_(0) {}
  KElement(std::int64_t q, mpq_class a, mpq_class b) : q_(q), a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }
  KElement(const ImagQuadField& f, mpq_class a, mpq_class b) : KElement(f.q(), std::move(a), std::move(b)) {}

  static KElement from_int(const ImagQuadField& f, long a) { return KElement(f, a, 0); }
  static KElement omega(const ImagQuadField& f) { return KElement(f, 0, 1); }

  std::int64_t q() const { return q_; }
  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }

  mpq_class q4() const { return mpq_class((1 + q_) / 4); }

  mpq_class norm() const { return a_ * a_ + a_ * b_ + q4() * b_ * b_; }
  mpq_class trace() const { return 2 * a_ + b_; }

  KElement conj() const { return KElement(q_, a_ + b_, -b_); }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_integral() const { return a_.get_den() == 1 && b_.get_den() == 1; }
  bool is_rational() const { return b_ == 0; }

  KElement inverse() const {
    if (is_zero()) throw InvalidInput("inverse of zero in K");
    const mpq_class n = norm();
    const KElement c = conj();
    return KElement(q_, c.a_ / n, c.b_ / n);
  }

  KElement operator-() const { return KElement(q_, -a_, -b_); }

  friend KElement operator+(const KElement& x, const KElement& y) {
    return KElement(merge(x, y), x.a_ + y.a_, x.b_ + y.b_);
  }
  friend KElement operator-(const KElement& x, const KElement& y) {
    return KElement(merge(x, y), x.a_ - y.a_, x.b_ - y.b_);
  }
  friend KElement operator*(const KElement& x, const KElement& y) {
    const std::int64_t q = merge(x, y);
    const mpq_class bb = x.b_ * y.b_;
    return KElement(q, x.a_ * y.a_ - mpq_class((1 + q) / 4) * bb, x.a_ * y.b_ + x.b_ * y.a_ + bb);
  }
  friend KElement operator/(const KElement& x, const KElement& y) { return x * y.inverse(); }
  friend KElement operator*(const KElement& x, const mpq_class& s) { return KElement(x.q_, x.a_ * s, x.b_ * s); }
  friend KElement operator*(const mpq_class& s, const KElement& x) { return x * s; }

  KElement pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    KElement result(q_, 1, 0);
    KElement base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const KElement& x, const KElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.q_ == y.q_ || x.is_zero());
  }
  friend bool operator!=(const KElement& x, const KElement& y) { return !(x == y); }

  /// Complex image under sqrt(-q) -> +i sqrt(q).
  BigComplex to_complex(long prec) const {
    const BigReal a = BigReal::from_mpq(a_, prec);
    const BigReal b = BigReal::from_mpq(b_, prec);
    const BigReal s = sqrt(BigReal(q_, prec));
    return BigComplex(a + b / 2, b * s / 2);
  }

  /// Least common denominator of both coordinates.
  mpz_class denominator() const {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a_.get_den_mpz_t(), b_.get_den_mpz_t());
    return l;
  }

  std::string to_string() const {
    std::string out = a_.get_str();
    if (b_ != 0) {
      out += (b_ > 0 ? "+" : "-");
      mpq_class ab = b_ > 0 ? b_ : mpq_class(-b_);
      if (ab != 1) out += ab.get_str() + "*";
      out += "w";
    }
    return out;
  }

 private:
  static std::int64_t merge(const KElement& x, const KElement& y) {
    if (x.q_ == 0) return y.q_;
    if (y.q_ != 0 && y.q_ != x.q_) throw InvalidInput("mixing elements of different fields");
    return x.q_;
  }

  std::int64_t q_;
  mpq_class a_;
  mpq_class b_;
};

/// Integral vector (x, y) standing for x + y*w.
struct ZVec {
  mpz_class x;
  mpz_class y;
};

/// Binary quadratic form A x^2 + B xy + C y^2.
struct QuadForm {
  mpz_class A;
  mpz_class B;
  mpz_class C;

  mpz_class discriminant() const { return B * B - 4 * A * C; }

  bool is_reduced() const {
    const mpz_class absB = abs(B);
    if (!(absB <= A && A <= C)) return false;
    if ((absB == A || A == C) && B < 0) return false;
    return true;
  }

  friend bool operator==(const QuadForm& f, const QuadForm& g) { return f.A == g.A && f.B == g.B && f.C == g.C; }
  friend bool operator<(const QuadForm& f, const QuadForm& g) {
    return std::tie(f.A, f.B, f.C) < std::tie(g.A, g.B, g.C);
  }

  std::string to_string() const {
    return "(" + A.get_str() + "," + B.get_str() + "," + C.get_str() + ")";
  }
};

/// Reduces a positive definite form to the unique reduced form in its
/// proper equivalence class.
inline QuadForm reduce_form(QuadForm f) {
  if (f.A <= 0) throw InvalidInput("reduce_form: form is not positive definite");
  for (;;) {
    // bring B into (-A, A]
    if (f.B > f.A || f.B <= -f.A) {
      const mpz_class twoA = 2 * f.A;
      mpz_class k;
      mpz_class shifted = f.A - f.B;
      mpz_fdiv_q(k.get_mpz_t(), shifted.get_mpz_t(), twoA.get_mpz_t());
      // B' = B + 2kA lies in (-A, A]
      const mpz_class Bn = f.B + twoA * k;
      f.C = f.A * k * k + f.B * k + f.C;
      f.B = Bn;
    }
    if (f.A > f.C) {
      std::swap(f.A, f.C);
      f.B = -f.B;
      continue;
    }
    if (f.A == f.C && f.B < 0) f.B = -f.B;
    return f;
  }
}

/// All reduced forms of discriminant -q, sorted.
inline std::vector<QuadForm> reduced_forms(const ImagQuadField& field) {
  std::vector<QuadForm> out;
  const std::int64_t q = field.q();
  for (std::int64_t A = 1; 3 * A * A <= q; ++A) {
    for (std::int64_t B = -A + 1; B <= A; ++B) {
      if ((B & 1) == 0) continue;
      const std::int64_t num = B * B + q;
      if (num % (4 * A) != 0) continue;
      QuadForm f{A, B, num / (4 * A)};
      if (f.is_reduced()) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Integral ideal c * (Z n + Z (m + w)) with n > 0, 0 <= m < n, n | N(m + w).
class KIdeal {
 public:
  KIdeal() : q_(0), c_(1), n_(1), m_(0) {}

  static KIdeal unit(const ImagQuadField& f) { return KIdeal(f.q(), 1, 1, 0); }

  /// Builds the ideal from its HNF data, validating the ideal condition.
  static KIdeal from_hnf(const ImagQuadField& f, mpz_class c, mpz_class n, mpz_class m) {
    if (c <= 0 || n <= 0) throw InvalidInput("ideal HNF requires positive c and n");
    mpz_class mm;
    mpz_fdiv_r(mm.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
    const mpz_class nm = mm * mm + mm + f.q4();
    if (nm % n != 0) throw InvalidInput("HNF data is not an ideal");
    return KIdeal(f.q(), std::move(c), std::move(n), std::move(mm));
  }

  /// The ideal generated over O_K by the given integral elements.
  static KIdeal from_generators(const ImagQuadField& f, const std::vector<KElement>& gens) {
    std::vector<ZVec> vecs;
    const KElement w = KElement::omega(f);
    for (const KElement& g : gens) {
      if (!g.is_integral()) throw InvalidInput("ideal generator is not integral");
      if (g.is_zero()) continue;
      const KElement gw = g * w;
      vecs.push_back({g.a().get_num(), g.b().get_num()});
      vecs.push_back({gw.a().get_num(), gw.b().get_num()});
    }
    if (vecs.empty()) throw InvalidInput("zero ideal");
    return from_zmodule(f.q(), std::move(vecs));
  }

  static KIdeal principal(const KElement& alpha) {
    const ImagQuadField f(alpha.q());
    return from_generators(f, {alpha});
  }

  static KIdeal principal(const ImagQuadField& f, const mpz_class& r) {
    return KIdeal(f.q(), abs(r), 1, 0);
  }

  std::int64_t q() const { return q_; }
  const mpz_class& content() const { return c_; }
  const mpz_class& n() const { return n_; }
  const mpz_class& m() const { return m_; }

  mpz_class norm() const { return c_ * c_ * n_; }

  bool is_unit() const { return c_ == 1 && n_ == 1; }

  /// Z-basis (c n, c (m + w)).
  std::pair<KElement, KElement> basis() const {
    return {KElement(q_, mpq_class(c_ * n_), 0), KElement(q_, mpq_class(c_ * m_), mpq_class(c_))};
  }

  bool contains(const KElement& x) const {
    if (!x.is_integral()) return false;
    // x = u (c n) + v c (m + w): v = b / c, u = (a - v c m) / (c n)
    const mpz_class a = x.a().get_num();
    const mpz_class b = x.b().get_num();
    if (b % c_ != 0) return false;
    const mpz_class v = b / c_;
    const mpz_class rest = a - v * c_ * m_;
    return rest % (c_ * n_) == 0;
  }

  KIdeal conj() const {
    // conj(m + w) = (m + 1) - w
    std::vector<ZVec> vecs{{c_ * n_, 0}, {c_ * (m_ + 1), -c_}};
    return from_zmodule(q_, std::move(vecs));
  }

  friend KIdeal operator*(const KIdeal& I, const KIdeal& J) {
    if (I.q_ != J.q_) throw InvalidInput("mixing ideals of different fields");
    if (I.is_unit()) return J;
    if (J.is_unit()) return I;
    const auto [i1, i2] = I.basis();
    const auto [j1, j2] = J.basis();
    std::vector<ZVec> vecs;
    for (const KElement* u : {&i1, &i2}) {
      for (const KElement* v : {&j1, &j2}) {
        const KElement p = *u * *v;
        vecs.push_back({p.a().get_num(), p.b().get_num()});
      }
    }
    return from_zmodule(I.q_, std::move(vecs));
  }

  KIdeal pow(long e) const {
    if (e < 0) throw InvalidInput("negative ideal power");
    KIdeal result = KIdeal(q_, 1, 1, 0);
    KIdeal base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// Form (n, -(2m+1), N(m+w)/n) of the primitive part.
  QuadForm to_form() const {
    const mpz_class nm = m_ * m_ + m_ + mpz_class((1 + q_) / 4);
    return QuadForm{n_, -(2 * m_ + 1), nm / n_};
  }

  static KIdeal from_form(const ImagQuadField& f, const QuadForm& form) {
    if (form.discriminant() != f.discriminant()) throw InvalidInput("form discriminant mismatch");
    return from_hnf(f, 1, form.A, (-form.B - 1) / 2);
  }

  friend bool operator==(const KIdeal& I, const KIdeal& J) {
    return I.q_ == J.q_ && I.c_ == J.c_ && I.n_ == J.n_ && I.m_ == J.m_;
  }
  friend bool operator!=(const KIdeal& I, const KIdeal& J) { return !(I == J); }
  friend bool operator<(const KIdeal& I, const KIdeal& J) {
    const mpz_class ni = I.norm();
    const mpz_class nj = J.norm();
    return std::tie(ni, I.c_, I.n_, I.m_) < std::tie(nj, J.c_, J.n_, J.m_);
  }

  std::string to_string() const {
    std::string out = "[";
    if (c_ != 1) out += c_.get_str() + "*";
    return out + "(" + n_.get_str() + ", " + m_.get_str() + "+w)]";
  }

 private:
  KIdeal(std::int64_t q, mpz_class c, mpz_class n, mpz_class m)
      : q_(q), c_(std::move(c)), n_(std::move(n)), m_(std::move(m)) {}

  static KIdeal from_zmodule(std::int64_t q, std::vector<ZVec> vecs) {
    // Euclid on the w-coordinates until one vector carries all of them.
    for (;;) {
      std::size_t pivot = vecs.size();
      std::size_t nonzero = 0;
      for (std::size_t i = 0; i < vecs.size(); ++i) {
        if (vecs[i].y == 0) continue;
        ++nonzero;
        if (pivot == vecs.size() || abs(vecs[i].y) < abs(vecs[pivot].y)) pivot = i;
      }
      if (nonzero <= 1) break;
      for (std::size_t i = 0; i < vecs.size(); ++i) {
        if (i == pivot || vecs[i].y == 0) continue;
        mpz_class k;
        mpz_fdiv_q(k.get_mpz_t(), vecs[i].y.get_mpz_t(), vecs[pivot].y.get_mpz_t());
        vecs[i].x -= k * vecs[pivot].x;
        vecs[i].y -= k * vecs[pivot].y;
      }
    }
    mpz_class A = 0;
    ZVec top{0, 0};
    for (const ZVec& v : vecs) {
      if (v.y == 0) {
        mpz_gcd(A.get_mpz_t(), A.get_mpz_t(), v.x.get_mpz_t());
      } else {
        top = v;
      }
    }
    if (A == 0 || top.y == 0) throw InvalidInput("generators do not span a full-rank lattice");
    if (top.y < 0) {
      top.x = -top.x;
      top.y = -top.y;
    }
    const mpz_class E = top.y;
    mpz_class B;
    mpz_fdiv_r(B.get_mpz_t(), top.x.get_mpz_t(), A.get_mpz_t());
    if (A % E != 0 || B % E != 0) throw InvalidInput("Z-module is not an O_K-ideal");
    const ImagQuadField f(q);
    return from_hnf(f, E, A / E, B / E);
  }

  std::int64_t q_;
  mpz_class c_;
  mpz_class n_;
  mpz_class m_;
};

/// Chooses the sign of x + y*w so that the first nonzero coordinate is positive.
inline KElement canonical_sign(const KElement& x) {
  if (x.a() < 0 || (x.a() == 0 && x.b() < 0)) return -x;
  return x;
}

/// Shortest nonzero element of the ideal lattice (Lagrange-Gauss reduction).
inline KElement shortest_element(const KIdeal& I) {
  const mpz_class q4 = (1 + I.q()) / 4;
  auto norm = [&](const ZVec& u) -> mpz_class { return u.x * u.x + u.x * u.y + q4 * u.y * u.y; };
  auto twice_bilinear = [&](const ZVec& u, const ZVec& v) -> mpz_class {
    return 2 * u.x * v.x + u.x * v.y + u.y * v.x + 2 * q4 * u.y * v.y;
  };
  ZVec u{I.content() * I.n(), 0};
  ZVec v{I.content() * I.m(), I.content()};
  if (norm(v) < norm(u)) std::swap(u, v);
  for (;;) {
    const mpz_class nu = norm(u);
    // k = round(B(u,v)/N(u)) = floor((2B + N(u)) / (2 N(u)))
    const mpz_class num = twice_bilinear(u, v) + nu;
    const mpz_class den = 2 * nu;
    mpz_class k;
    mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    v.x -= k * u.x;
    v.y -= k * u.y;
    if (norm(v) >= nu) break;
    std::swap(u, v);
  }
  return KElement(I.q(), mpq_class(u.x), mpq_class(u.y));
}

inline bool is_principal(const KIdeal& I) {
  return shortest_element(I).norm() == mpq_class(I.norm());
}

/// Generator of a principal ideal, unique up to sign; returned with canonical sign.
inline KElement principal_generator(const KIdeal& I) {
  const KElement s = shortest_element(I);
  if (s.norm() != mpq_class(I.norm())) throw NotPrincipal("ideal " + I.to_string() + " is not principal");
  return canonical_sign(s);
}

struct PrimeIdeal {
  KIdeal ideal;
  int residue_degree;  // 1 or 2
  int ramification;    // 1 or 2
};

/// Prime ideals above the rational prime ell, sorted by HNF offset.
inline std::vector<PrimeIdeal> primes_above(const ImagQuadField& field, std::int64_t ell) {
  if (!is_prime(ell)) throw InvalidInput("primes_above: " + std::to_string(ell) + " is not prime");
  const std::int64_t q = field.q();
  const std::int64_t q4 = field.q4();
  if (ell == q) {
    return {{KIdeal::from_hnf(field, 1, q, (q - 1) / 2), 1, 2}};
  }
  const int kr = kronecker_prime(-q, ell);
  if (kr == -1) return {{KIdeal::principal(field, ell), 2, 1}};
  std::vector<std::int64_t> roots;
  if (ell == 2) {
    for (std::int64_t m = 0; m < 2; ++m) {
      if ((m * m + m + q4) % 2 == 0) roots.push_back(m);
    }
  } else {
    // m = (s - 1)/2 mod ell where s^2 = -q
    const std::int64_t s = sqrt_mod_prime(-q, ell);
    const std::int64_t inv2 = (ell + 1) / 2;
    roots.push_back(mod((s - 1) * inv2, ell));
    roots.push_back(mod((-s - 1) * inv2, ell));
    std::sort(roots.begin(), roots.end());
  }
  std::vector<PrimeIdeal> out;
  for (std::int64_t m : roots) out.push_back({KIdeal::from_hnf(field, 1, ell, m), 1, 1});
  return out;
}

/// Cyclic ideal class group with a fixed generating prime ideal p0.
class ClassGroup {
 public:
  explicit ClassGroup(const ImagQuadField& field) : field_(field) {
    forms_ = reduced_forms(field);
    h_ = static_cast<int>(forms_.size());
    if (h_ % 2 == 0) throw NonCyclicClassGroup("class number must be odd");
    find_generator();
    powers_.push_back(KIdeal::unit(field_));
    for (int j = 1; j <= h_; ++j) powers_.push_back(powers_.back() * generator_);
    for (const QuadForm& f : forms_) {
      dlog_[f] = class_by_principality(KIdeal::from_form(field_, f));
    }
  }

  const ImagQuadField& field() const { return field_; }
  int h() const { return h_; }
  const std::vector<QuadForm>& forms() const { return forms_; }

  /// The generating prime ideal p0 (the unit ideal when h = 1).
  const KIdeal& generator() const { return generator_; }

  /// p0^j for 0 <= j <= h.
  const KIdeal& generator_power(int j) const { return powers_.at(static_cast<std::size_t>(j)); }

  /// Exponent j with [I] = [p0]^j, via form reduction.
  int reduce_to_class(const KIdeal& I) const {
    const QuadForm f = reduce_form(I.to_form());
    const auto it = dlog_.find(f);
    if (it == dlog_.end()) throw Error("reduced form missing from class table");
    return it->second;
  }

  /// Same exponent computed by principality tests against powers of p0.
  int class_by_principality(const KIdeal& I) const {
    for (int j = 0; j < h_; ++j) {
      const KIdeal test = j == 0 ? I : I * powers_.at(static_cast<std::size_t>(h_ - j));
      if (is_principal(test)) return j;
    }
    throw NonCyclicClassGroup("ideal class is not a power of the generator");
  }

 private:
  int order_of(const KIdeal& I) const {
    KIdeal acc = I;
    for (int j = 1; j <= h_; ++j) {
      if (is_principal(acc)) return j;
      acc = acc * I;
    }
    return 0;
  }

  void find_generator() {
    if (h_ == 1) {
      generator_ = KIdeal::unit(field_);
      return;
    }
    for (std::int64_t ell : primes_up_to(100000)) {
      for (const PrimeIdeal& p : primes_above(field_, ell)) {
        if (p.residue_degree != 1 || p.ramification != 1) continue;
        if (order_of(p.ideal) == h_) {
          generator_ = p.ideal;
          return;
        }
      }
    }
    throw NonCyclicClassGroup("no prime ideal generates the class group");
  }

  ImagQuadField field_;
  int h_ = 0;
  std::vector<QuadForm> forms_;
  KIdeal generator_;
  std::vector<KIdeal> powers_;
  std::map<QuadForm, int> dlog_;
};

inline ClassGroup class_group(const ImagQuadField& field) { return ClassGroup(field); }

/// Every integral ideal of norm <= X, sorted by (norm, HNF data).
inline std::vector<KIdeal> ideals_of_norm_up_to(const ImagQuadField& field, std::int64_t X) {
  if (X < 1) throw InvalidInput("ideals_of_norm_up_to: X must be >= 1");
  // per rational prime: list of (norm, ideal) for all nontrivial prime-power combinations
  std::vector<std::vector<std::pair<std::int64_t, KIdeal>>> local;
  std::vector<std::int64_t> local_prime;
  for (std::int64_t ell : primes_up_to(X)) {
    const std::vector<PrimeIdeal> ps = primes_above(field, ell);
    std::vector<std::pair<std::int64_t, KIdeal>> opts;
    if (ps.size() == 2) {
      std::vector<std::pair<std::int64_t, KIdeal>> pa{{1, KIdeal::unit(field)}};
      while (pa.back().first <= X / ell) pa.emplace_back(pa.back().first * ell, pa.back().second * ps[0].ideal);
      std::vector<std::pair<std::int64_t, KIdeal>> pb{{1, KIdeal::unit(field)}};
      while (pb.back().first <= X / ell) pb.emplace_back(pb.back().first * ell, pb.back().second * ps[1].ideal);
      for (const auto& [na, ia] : pa) {
        for (const auto& [nb, ib] : pb) {
          if (na * nb == 1 || na > X / nb) continue;
          opts.emplace_back(na * nb, ia * ib);
        }
      }
    } else {
      const std::int64_t np = ps[0].residue_degree == 2 ? ell * ell : ell;
      if (np > X) continue;
      std::int64_t n = np;
      KIdeal I = ps[0].ideal;
      for (;;) {
        opts.emplace_back(n, I);
        if (n > X / np) break;
        n *= np;
        I = I * ps[0].ideal;
      }
    }
    if (!opts.empty()) {
      local.push_back(std::move(opts));
      local_prime.push_back(ell);
    }
  }
  std::vector<std::pair<std::int64_t, KIdeal>> out{{1, KIdeal::unit(field)}};
  struct Frame {
    std::size_t next_prime;
    std::int64_t norm;
    KIdeal ideal;
  };
  std::vector<Frame> stack{{0, 1, KIdeal::unit(field)}};
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    for (std::size_t i = fr.next_prime; i < local.size(); ++i) {
      if (local_prime[i] > X / fr.norm) break;
      for (const auto& [n, I] : local[i]) {
        if (n > X / fr.norm) continue;
        const std::int64_t nn = fr.norm * n;
        KIdeal prod = fr.ideal * I;
        out.emplace_back(nn, prod);
        stack.push_back({i + 1, nn, std::move(prod)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
  std::vector<KIdeal> ideals;
  ideals.reserve(out.size());
  for (auto& e : out) ideals.push_back(std::move(e.second));
  return ideals;
}

}  // namespace cmtwist
