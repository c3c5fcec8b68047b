#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

namespace twoprime {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t n) {
  if (n == 1) return 0;
  std::uint64_t r = 1;
  base %= n;
  while (exp != 0) {
    if (exp & 1) r = mulmod(r, base, n);
    base = mulmod(base, base, n);
    exp >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin. The first twelve prime bases are a proven
// witness set for every n < 3.3 * 10^24, so this is exact on all of uint64.
inline bool is_prime_u64(std::uint64_t n) {
  constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (std::uint64_t b : bases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t b : bases) {
    std::uint64_t x = powmod(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Distinct prime factors by trial division; n is small (at most pq).
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Multiplicative order of a modulo n; requires gcd(a, n) = 1 and a known
// multiple `group_order` of the order (e.g. phi(n)).
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n,
                                          std::uint64_t group_order) {
  std::uint64_t ord = group_order;
  for (std::uint64_t f : prime_factors(group_order)) {
    while (ord % f == 0 && powmod(a, ord / f, n) == 1) ord /= f;
  }
  return ord;
}

inline bool is_primitive_root(std::uint64_t g, std::uint64_t prime) {
  if (g % prime == 0) return false;
  return multiplicative_order(g, prime, prime - 1) == prime - 1;
}

// Solves x ≡ r1 (mod m1), x ≡ r2 (mod m2) for coprime moduli; x in [0, m1*m2).
inline std::uint64_t crt_pair(std::uint64_t r1, std::uint64_t m1, std::uint64_t r2,
                              std::uint64_t m2) {
  const std::uint64_t n = m1 * m2;
  // m1^{-1} mod m2 by extended Euclid
  std::int64_t old_r = static_cast<std::int64_t>(m1 % m2), r = static_cast<std::int64_t>(m2);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    std::int64_t t = old_r - quot * r;
    old_r = r;
    r = t;
    t = old_s - quot * s;
    old_s = s;
    s = t;
  }
  const std::uint64_t inv =
      static_cast<std::uint64_t>(((old_s % static_cast<std::int64_t>(m2)) + static_cast<std::int64_t>(m2)) %
                                 static_cast<std::int64_t>(m2));
  const std::uint64_t diff = (r2 % m2 + m2 - r1 % m2) % m2;
  const std::uint64_t k = mulmod(diff, inv, m2);
  return (r1 % m1 + mulmod(k, m1, n)) % n;
}

}  // namespace twoprime
