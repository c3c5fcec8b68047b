#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twoprime/bignat.hpp"
#include "twoprime/modarith.hpp"

namespace twoprime {

using Int = std::int64_t;

// Residues of (p, q) mod 8. gcd(p-1, q-1) = 4 leaves only these two.
enum class ResidueCase {
  mixed,  // p ≡ q + 4 (mod 8)
  both5,  // p ≡ q ≡ 5 (mod 8)
};

inline std::string_view to_string(ResidueCase c) {
  return c == ResidueCase::mixed ? "mixed" : "both5";
}

inline bool is_prime(Int n) { return n >= 2 && is_prime_u64(static_cast<std::uint64_t>(n)); }

inline void require_distinct_odd_primes(Int p, Int q) {
  if (p == q) throw ParamError("p and q must be distinct");
  if (p < 3 || q < 3 || !is_prime(p) || !is_prime(q)) {
    throw ParamError("p and q must be odd primes");
  }
}

/// Smallest g in [1, pq) that is a primitive root modulo both p and q.
inline Int find_common_primitive_root(Int p, Int q) {
  require_distinct_odd_primes(p, q);
  const auto up = static_cast<std::uint64_t>(p);
  const auto uq = static_cast<std::uint64_t>(q);
  for (Int g = 2; g < p * q; ++g) {
    const auto ug = static_cast<std::uint64_t>(g);
    if (is_primitive_root(ug % up, up) && is_primitive_root(ug % uq, uq)) return g;
  }
  throw ConsistencyError("no common primitive root found");
}

/// The CRT element h ≡ g (mod p), h ≡ 1 (mod q), reduced into [0, pq).
inline Int derive_h(Int p, Int q, Int g) {
  return static_cast<Int>(crt_pair(static_cast<std::uint64_t>(g % p), static_cast<std::uint64_t>(p), 1,
                                   static_cast<std::uint64_t>(q)));
}

inline bool is_valid_pair(Int p, Int q) {
  return p != q && p >= 3 && q >= 3 && is_prime(p) && is_prime(q) && std::gcd(p - 1, q - 1) == 4;
}

// The arithmetic frame (p, q, g, h, e). Construction validates everything,
// so downstream code can assume gcd(p-1, q-1) = 4.
class TwoPrimeParams {
 public:
  static TwoPrimeParams make(Int p, Int q) {
    require_distinct_odd_primes(p, q);
    if (std::gcd(p - 1, q - 1) != 4) {
      throw ParamError("gcd(p-1, q-1) must equal 4 (got " + std::to_string(std::gcd(p - 1, q - 1)) + ")");
    }
    const Int g = find_common_primitive_root(p, q);
    const Int h = derive_h(p, q, g);
    const Int e = (p - 1) * (q - 1) / 4;
    const auto n = static_cast<std::uint64_t>(p * q);
    if (multiplicative_order(static_cast<std::uint64_t>(g), n, static_cast<std::uint64_t>(e)) !=
        static_cast<std::uint64_t>(e)) {
      throw ConsistencyError("order of g modulo pq differs from e");
    }
    return TwoPrimeParams(p, q, g, h, e);
  }

  Int p() const { return p_; }
  Int q() const { return q_; }
  Int g() const { return g_; }
  Int h() const { return h_; }
  Int e() const { return e_; }
  Int pq() const { return p_ * q_; }

  // (p-1)(q-1)/16 even. Picks the closed-form layout of the cyclotomic
  // numbers and puts -1 in D2 (D0 when odd).
  bool parity_even() const { return ((p_ - 1) * (q_ - 1) / 16) % 2 == 0; }

  ResidueCase residue_case() const {
    return (p_ % 8 == 5 && q_ % 8 == 5) ? ResidueCase::both5 : ResidueCase::mixed;
  }

  // Shift k for which D_l + D_{l+k} hits 0 mod pq: 0 when the parity is odd,
  // 2 when even.
  int paired_shift() const { return parity_even() ? 2 : 0; }

  friend bool operator==(const TwoPrimeParams&, const TwoPrimeParams&) = default;

 private:
  TwoPrimeParams(Int p, Int q, Int g, Int h, Int e) : p_(p), q_(q), g_(g), h_(h), e_(e) {}

  Int p_, q_, g_, h_, e_;
};

/// All ordered valid pairs with pq_min <= pq <= pq_max, sorted by (pq, p).
inline std::vector<std::pair<Int, Int>> valid_pairs(Int pq_min, Int pq_max) {
  std::vector<Int> primes;
  for (Int n = 5; n <= pq_max / 5; ++n) {
    if (is_prime(n)) primes.push_back(n);
  }
  std::vector<std::pair<Int, Int>> out;
  for (Int p : primes) {
    for (Int q : primes) {
      if (p * q > pq_max) break;
      if (p * q >= pq_min && is_valid_pair(p, q)) out.emplace_back(p, q);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::pair(x.first * x.second, x.first) < std::pair(y.first * y.second, y.first);
  });
  return out;
}

enum class ClassLabel : std::uint8_t { D0 = 0, D1 = 1, D2 = 2, D3 = 3, P, Q, R };

inline constexpr bool is_unit_class(ClassLabel c) { return static_cast<int>(c) < 4; }

inline constexpr ClassLabel unit_class(int j) { return static_cast<ClassLabel>(((j % 4) + 4) % 4); }

inline std::string_view to_string(ClassLabel c) {
  constexpr std::array<std::string_view, 7> names{"D0", "D1", "D2", "D3", "P", "Q", "R"};
  return names[static_cast<std::size_t>(c)];
}

// Total map from residues mod pq to their class label.
class ClassTable {
 public:
  explicit ClassTable(TwoPrimeParams params) : params_(params) {
    const Int n = params_.pq();
    labels_.resize(static_cast<std::size_t>(n));
    for (Int u = 0; u < n; ++u) {
      ClassLabel c = ClassLabel::D0;
      if (u == 0)
        c = ClassLabel::R;
      else if (u % params_.p() == 0)
        c = ClassLabel::P;
      else if (u % params_.q() == 0)
        c = ClassLabel::Q;
      else
        continue;
      labels_[static_cast<std::size_t>(u)] = c;
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    Int hi = 1;
    for (int i = 0; i < 4; ++i) {
      auto& members = classes_[static_cast<std::size_t>(i)];
      members.reserve(static_cast<std::size_t>(params_.e()));
      Int x = hi;
      for (Int s = 0; s < params_.e(); ++s) {
        if (seen[static_cast<std::size_t>(x)]) throw ConsistencyError("generalized cyclotomic classes overlap");
        seen[static_cast<std::size_t>(x)] = true;
        labels_[static_cast<std::size_t>(x)] = unit_class(i);
        members.push_back(x);
        x = x * params_.g() % n;
      }
      std::sort(members.begin(), members.end());
      hi = hi * params_.h() % n;
    }
  }

  const TwoPrimeParams& params() const { return params_; }
  Int modulus() const { return params_.pq(); }

  ClassLabel label(Int u) const {
    const Int n = params_.pq();
    return labels_[static_cast<std::size_t>(((u % n) + n) % n)];
  }

  // D_j, ascending.
  std::span<const Int> members(int j) const { return classes_[static_cast<std::size_t>(((j % 4) + 4) % 4)]; }

  std::span<const ClassLabel> labels() const { return labels_; }

 private:
  TwoPrimeParams params_;
  std::vector<ClassLabel> labels_;
  std::array<std::vector<Int>, 4> classes_;
};

inline ClassTable build_class_table(const TwoPrimeParams& params) { return ClassTable(params); }

using CycMatrix = std::array<std::array<Int, 4>, 4>;

// Cyclotomic numbers (i,j)_4 together with the parameters of their closed form.
struct CyclotomicTable {
  CycMatrix counts{};
  Int a = 0;
  Int b = 0;
  Int M = 0;
  bool parity_even = false;
};

/// (i,j)_4 = #{x in D_i : x+1 in D_j}, by direct enumeration.
inline CycMatrix cyclotomic_numbers_bruteforce(const ClassTable& table) {
  CycMatrix counts{};
  const Int n = table.modulus();
  for (int i = 0; i < 4; ++i) {
    for (Int x : table.members(i)) {
      const ClassLabel next = table.label((x + 1) % n);
      if (is_unit_class(next)) ++counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(next)];
    }
  }
  return counts;
}

inline Int whiteman_M(const TwoPrimeParams& params) {
  return ((params.p() - 2) * (params.q() - 2) - 1) / 4;
}

// Additive perturbations of the closed-form constants. Zero everywhere for
// normal use; the mutation self-tests set exactly one entry.
struct FormulaOffsets {
  std::array<Int, 10> constants{};  // A, B, C, D, E, F, G, H, I, J
  Int delta_paired = 0;             // Δ = ((p+1)(q+1)-4)/8 branch
  Int delta_other = 0;              // Δ = -(p-1)(q-1)/8 branch

  static FormulaOffsets constant(char name, Int by = 1) {
    FormulaOffsets o;
    o.constants.at(static_cast<std::size_t>(name - 'A')) += by;
    return o;
  }

  bool is_zero() const {
    return delta_paired == 0 && delta_other == 0 &&
           std::all_of(constants.begin(), constants.end(), [](Int v) { return v == 0; });
  }
};

/// Evaluates Whiteman's closed form. Empty if any constant is non-integral.
inline std::optional<CycMatrix> try_cyclotomic_numbers_formula(const TwoPrimeParams& params, Int a, Int b,
                                                               const FormulaOffsets& offsets = {}) {
  const Int M = whiteman_M(params);
  const std::array<Int, 10> numerators{
      -a + 2 * M + 3,          // A
      -a - 4 * b + 2 * M - 1,  // B
      3 * a + 2 * M - 1,       // C
      -a + 4 * b + 2 * M - 1,  // D
      a + 2 * M + 1,           // E
      3 * a + 2 * M + 5,       // F
      -a + 4 * b + 2 * M + 1,  // G
      -a + 2 * M + 1,          // H
      -a - 4 * b + 2 * M + 1,  // I
      a + 2 * M - 1,           // J
  };
  const std::size_t first = params.parity_even() ? 0 : 5;
  std::array<Int, 5> c{};
  for (std::size_t i = 0; i < 5; ++i) {
    const Int num = numerators[first + i];
    if (num % 8 != 0) return std::nullopt;
    c[i] = num / 8 + offsets.constants[first + i];
  }
  if (params.parity_even()) {
    const auto [A, B, C, D, E] = c;
    return CycMatrix{{{A, B, C, D}, {E, E, D, B}, {A, E, A, E}, {E, D, B, E}}};
  }
  const auto [F, G, H, I, J] = c;
  return CycMatrix{{{F, G, H, I}, {G, I, J, J}, {H, J, H, J}, {I, J, J, G}}};
}

inline CycMatrix cyclotomic_numbers_formula(const TwoPrimeParams& params, Int a, Int b,
                                            const FormulaOffsets& offsets = {}) {
  if (params.pq() != a * a + 4 * b * b || ((a % 4) + 4) % 4 != 1) {
    throw ParamError("(a, b) must satisfy pq = a^2 + 4b^2 with a ≡ 1 (mod 4)");
  }
  auto m = try_cyclotomic_numbers_formula(params, a, b, offsets);
  if (!m) throw ParamError("cyclotomic constants are not integral for this (a, b)");
  return *m;
}

struct QuadraticPartition {
  Int a = 0;
  Int b = 0;
  friend bool operator==(const QuadraticPartition&, const QuadraticPartition&) = default;
};

/// Every (a, b) with n = a^2 + 4b^2 and a ≡ 1 (mod 4).
inline std::vector<QuadraticPartition> quadratic_representations(Int n) {
  std::vector<QuadraticPartition> out;
  for (Int b = 0; 4 * b * b <= n; ++b) {
    const Int rest = n - 4 * b * b;
    Int s = static_cast<Int>(std::sqrt(static_cast<double>(rest)));
    while (s * s > rest) --s;
    while ((s + 1) * (s + 1) <= rest) ++s;
    if (s * s != rest) continue;
    for (Int a : {s, -s}) {
      if (((a % 4) + 4) % 4 != 1) continue;
      out.push_back({a, b});
      if (b != 0) out.push_back({a, -b});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// The unique representation whose closed-form table reproduces `brute`.
inline QuadraticPartition quadratic_partition(const TwoPrimeParams& params, const CycMatrix& brute,
                                              const FormulaOffsets& offsets = {}) {
  const auto candidates = quadratic_representations(params.pq());
  if (candidates.empty()) throw ConsistencyError("pq has no representation a^2 + 4b^2");
  std::vector<QuadraticPartition> matches;
  for (const auto& c : candidates) {
    const auto m = try_cyclotomic_numbers_formula(params, c.a, c.b, offsets);
    if (m && *m == brute) matches.push_back(c);
  }
  if (matches.size() != 1) {
    throw ConsistencyError("calibration of (a, b) matched " + std::to_string(matches.size()) +
                           " candidates for pq = " + std::to_string(params.pq()));
  }
  return matches.front();
}

/// Brute-force matrix, calibrated (a, b), and the closed-form table built from them.
inline CyclotomicTable calibrated_cyclotomic_table(const ClassTable& table) {
  const auto& params = table.params();
  const CycMatrix brute = cyclotomic_numbers_bruteforce(table);
  const QuadraticPartition ab = quadratic_partition(params, brute);
  return CyclotomicTable{cyclotomic_numbers_formula(params, ab.a, ab.b), ab.a, ab.b, whiteman_M(params),
                         params.parity_even()};
}

enum class SumKind { zero, multiple_of_p, multiple_of_q };

/// Number of (x, y) with x in D_l, y in D_{l+k}, x + y ≡ target (mod pq),
/// plus x + y ≢ 0 mod q (multiple_of_p) or mod p (multiple_of_q).
inline Int count_pair_solutions(const ClassTable& table, int l, int k, SumKind kind, Int target) {
  const auto& prm = table.params();
  const Int n = prm.pq();
  switch (kind) {
    case SumKind::zero:
      if (target != 0) throw ParamError("target must be 0 for kind zero");
      break;
    case SumKind::multiple_of_p:
      if (target % prm.p() != 0 || target / prm.p() < 1 || target / prm.p() > prm.q() - 1) {
        throw ParamError("target must be u*p with 1 <= u <= q-1");
      }
      break;
    case SumKind::multiple_of_q:
      if (target % prm.q() != 0 || target / prm.q() < 1 || target / prm.q() > prm.p() - 1) {
        throw ParamError("target must be v*q with 1 <= v <= p-1");
      }
      break;
  }
  const ClassLabel want = unit_class(l + k);
  Int count = 0;
  for (Int x : table.members(l)) {
    const Int y = ((target - x) % n + n) % n;
    if (table.label(y) != want) continue;
    const Int sum = (x + y) % n;
    if (kind == SumKind::multiple_of_p && sum % prm.q() == 0) continue;
    if (kind == SumKind::multiple_of_q && sum % prm.p() == 0) continue;
    ++count;
  }
  return count;
}

}  // namespace twoprime
