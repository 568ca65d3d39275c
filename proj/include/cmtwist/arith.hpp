#pragma once

// Small elementary number theory helpers on 64-bit integers.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "cmtwist/errors.hpp"

namespace cmtwist {

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  const auto un = static_cast<std::uint64_t>(n);
  std::uint64_t d = un - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, un);
    if (x == 1 || x == un - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, un);
      if (x == un - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Jacobi symbol (a|n) for odd positive n.
inline int jacobi(std::int64_t a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0) throw InvalidInput("jacobi: modulus must be odd and positive");
  std::int64_t x = mod(a, n);
  std::int64_t y = n;
  int result = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const std::int64_t r = y % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

/// Kronecker symbol (D|p) for a prime p (p = 2 allowed, D odd discriminant).
inline int kronecker_prime(std::int64_t D, std::int64_t p) {
  if (p == 2) {
    const std::int64_t r = mod(D, 8);
    if (r % 2 == 0) return 0;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  return jacobi(D, p);
}

/// Prime factorization by trial division, ascending, with multiplicities.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw InvalidInput("factorize: n must be positive");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t size = out.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < size; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 2) return out;
  std::vector<bool> sieve(static_cast<std::size_t>(n) + 1, true);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (std::int64_t k = i * i; k <= n; k += i) sieve[k] = false;
  }
  return out;
}

/// Smallest prime factor table for 0..n.
inline std::vector<std::int64_t> smallest_prime_factors(std::int64_t n) {
  std::vector<std::int64_t> spf(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (std::int64_t k = i; k <= n; k += i) {
      if (spf[k] == 0) spf[k] = i;
    }
  }
  return spf;
}

/// Square root of a modulo an odd prime p (Tonelli-Shanks). Returns the
/// smaller of the two roots; throws NotASquare for non-residues.
inline std::int64_t sqrt_mod_prime(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  if (jacobi(a, p) != 1) throw NotASquare("not a square modulo p");
  const auto up = static_cast<std::uint64_t>(p);
  std::uint64_t Q = up - 1;
  int S = 0;
  while ((Q & 1) == 0) {
    Q >>= 1;
    ++S;
  }
  std::uint64_t z = 2;
  while (jacobi(static_cast<std::int64_t>(z), p) != -1) ++z;
  std::uint64_t M = S;
  std::uint64_t c = powmod(z, Q, up);
  std::uint64_t t = powmod(a, Q, up);
  std::uint64_t R = powmod(a, (Q + 1) / 2, up);
  while (t != 1) {
    std::uint64_t i = 0;
    std::uint64_t tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, up);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t k = 0; k + 1 < M - i; ++k) b = mulmod(b, b, up);
    M = i;
    c = mulmod(b, b, up);
    t = mulmod(t, c, up);
    R = mulmod(R, b, up);
  }
  const auto r = static_cast<std::int64_t>(R);
  return std::min(r, p - r);
}

inline bool is_squarefree(std::int64_t n) {
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return false;
  }
  return true;
}

}  // namespace cmtwist
