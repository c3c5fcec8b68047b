#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twoprime/bignat.hpp"
#include "twoprime/cyclotomy.hpp"
#include "twoprime/modarith.hpp"
#include "twoprime/sequence.hpp"

namespace twoprime {

/// S(m) = sum digits[i] * m^i, exactly, by Horner from the top coefficient.
inline BigNat evaluate_poly_big(const QuaternarySequence& seq, std::uint64_t m) {
  if (m < 2) throw ParamError("base m must be at least 2");
  BigNat acc = 0;
  const auto digits = seq.digits();
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    acc *= static_cast<unsigned long>(m);
    acc += static_cast<unsigned long>(*it);
  }
  return acc;
}

/// S(m) mod N in O(T) multiply-adds; word arithmetic when N fits 64 bits.
inline BigNat evaluate_poly_mod(const QuaternarySequence& seq, std::uint64_t m, const BigNat& modulus) {
  if (m < 2) throw ParamError("base m must be at least 2");
  if (modulus < 2) throw ParamError("modulus must be at least 2");
  const auto digits = seq.digits();
  if (fits_u64(modulus)) {
    const std::uint64_t n = to_u64(modulus);
    const std::uint64_t base = m % n;
    std::uint64_t acc = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
      acc = static_cast<std::uint64_t>((static_cast<unsigned __int128>(acc) * base + *it) % n);
    }
    return big(acc);
  }
  BigNat acc = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    acc *= static_cast<unsigned long>(m);
    acc += static_cast<unsigned long>(*it);
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), modulus.get_mpz_t());
  }
  return acc;
}

/// Smallest k >= 0 with m^k >= x. Brackets k from bit lengths, then
/// binary-searches with exact powers.
inline Int ceil_log(std::uint64_t m, const BigNat& x) {
  if (m < 2) throw ParamError("base m must be at least 2");
  if (x < 1) throw ParamError("ceil_log needs x >= 1");
  if (x == 1) return 0;
  // 2^(bm-1) <= m < 2^bm and 2^(bx-1) <= x < 2^bx.
  const auto bm = static_cast<Int>(bit_length(big(m)));
  const auto bx = static_cast<Int>(bit_length(x));
  Int lo = (bx - 1) / bm;                   // m^lo < 2^(lo*bm) <= 2^(bx-1) <= x
  Int hi = (bx + bm - 2) / (bm - 1);        // m^hi >= 2^(hi*(bm-1)) >= 2^bx > x
  // Invariant: m^lo < x <= m^hi.
  while (hi - lo > 1) {
    const Int mid = lo + (hi - lo) / 2;
    if (pow(m, static_cast<std::uint64_t>(mid)) >= x)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

/// Smallest k with m^k >= num/den for a positive rational.
inline Int ceil_log_ratio(std::uint64_t m, const BigNat& num, const BigNat& den) {
  return ceil_log(m, ceil_div(num, den));
}

/// ceil(log_m((m^T - 1) / gcd(S(m), m^T - 1))).
inline Int madic_complexity(const QuaternarySequence& seq, std::uint64_t m) {
  const BigNat full = pow_minus_one(m, static_cast<std::uint64_t>(seq.period()));
  const BigNat g = gcd(evaluate_poly_big(seq, m), full);
  return ceil_log(m, exact_div(full, g));
}

/// sum over u in D_j of 4^((u*w) mod pq), reduced mod N.
inline BigNat hall_eval_mod(const ClassTable& table, int j, Int w, const BigNat& modulus) {
  if (modulus < 2) throw ParamError("modulus must be at least 2");
  const Int n = table.modulus();
  const Int wr = ((w % n) + n) % n;
  if (std::gcd(wr, n) != 1) throw ParamError("exponent base must be coprime to pq");
  // Exponents u*w mod pq are distinct, so the exact sum is a 0/1 pattern in
  // base 4: set bit 2k for every exponent k.
  BigNat exact = 0;
  for (Int u : table.members(j)) {
    mpz_setbit(exact.get_mpz_t(), static_cast<mp_bitcnt_t>(2 * (u * wr % n)));
  }
  return mod(exact, modulus);
}

inline std::array<BigNat, 4> hall_values(const ClassTable& table, const BigNat& modulus, Int w = 1) {
  return {hall_eval_mod(table, 0, w, modulus), hall_eval_mod(table, 1, w, modulus),
          hall_eval_mod(table, 2, w, modulus), hall_eval_mod(table, 3, w, modulus)};
}

// The three pairwise coprime factors of 4^pq - 1.
struct FactorSplit {
  BigNat p_factor;  // 4^p - 1
  BigNat q_factor;  // (4^q - 1) / 3
  BigNat cofactor;  // 3 (4^pq - 1) / ((4^p - 1)(4^q - 1))
  BigNat full;      // 4^pq - 1
};

inline FactorSplit factor_split(Int p, Int q) {
  FactorSplit s;
  s.p_factor = pow_minus_one(4, static_cast<std::uint64_t>(p));
  const BigNat q_full = pow_minus_one(4, static_cast<std::uint64_t>(q));
  s.q_factor = exact_div(q_full, 3);
  s.full = pow_minus_one(4, static_cast<std::uint64_t>(p * q));
  s.cofactor = exact_div(3 * s.full, s.p_factor * q_full);
  return s;
}

struct ComplexityReport {
  Int p = 0;
  Int q = 0;
  BigNat r1;
  BigNat r2;
  ResidueCase case_tag = ResidueCase::mixed;
  BigNat candidate_d;
  bool candidate_prime = false;
  // Conjecture check; d_evaluated is false when the composite short-circuit applied.
  bool d_divides = false;
  bool d_evaluated = false;
  bool d_squared_divides = false;
  // Exact gcd split, filled by analyze() with exact = true.
  std::optional<BigNat> gcd_p;
  std::optional<BigNat> gcd_q;
  std::optional<BigNat> gcd_cofactor;
  std::optional<BigNat> gcd_total;
  std::optional<Int> phi_exact;
  std::vector<Int> phi_predicted;  // ascending, distinct
  bool consistent = true;
};

/// max(r1, r2) computed as r1 * r2; throws if neither is 1.
inline BigNat predictor_max(const BigNat& r1, const BigNat& r2) {
  if (r1 != 1 && r2 != 1) {
    throw ConsistencyError("r1 and r2 both exceed 1 (r1=" + to_string(r1) + ", r2=" + to_string(r2) + ")");
  }
  return r1 * r2;
}

inline BigNat candidate_divisor(Int p, Int q) {
  const Int k = (p % 8 == 5 && q % 8 == 5) ? 6 : 2;
  return big(static_cast<std::uint64_t>(k * p * q + 1));
}

/// Prediction fields of the report: r1, r2, case, candidate d, predicted Φ set.
inline ComplexityReport theorem_prediction(Int p, Int q) {
  if (!is_valid_pair(p, q)) {
    throw ParamError("(" + std::to_string(p) + ", " + std::to_string(q) +
                     ") is not a pair of distinct odd primes with gcd(p-1, q-1) = 4");
  }
  ComplexityReport rep;
  rep.p = p;
  rep.q = q;
  rep.r1 = gcd(big(static_cast<std::uint64_t>(p + 3)), pow_minus_one(4, static_cast<std::uint64_t>(q)));
  rep.r2 = gcd(big(static_cast<std::uint64_t>(q - 1)), pow_minus_one(4, static_cast<std::uint64_t>(p)));
  if (q % 3 == 1) rep.r2 = exact_div(rep.r2, 3);
  rep.case_tag = (p % 8 == 5 && q % 8 == 5) ? ResidueCase::both5 : ResidueCase::mixed;
  rep.candidate_d = candidate_divisor(p, q);
  rep.candidate_prime = is_prime_u64(to_u64(rep.candidate_d));

  const BigNat full = pow_minus_one(4, static_cast<std::uint64_t>(p * q));
  const BigNat rmax = predictor_max(rep.r1, rep.r2);
  rep.phi_predicted.push_back(ceil_log_ratio(4, full, rmax));
  if (rep.candidate_prime) rep.phi_predicted.push_back(ceil_log_ratio(4, full, rep.candidate_d * rmax));
  std::sort(rep.phi_predicted.begin(), rep.phi_predicted.end());
  rep.phi_predicted.erase(std::unique(rep.phi_predicted.begin(), rep.phi_predicted.end()), rep.phi_predicted.end());
  return rep;
}

struct GcdDecomposition {
  BigNat gcd_p;         // gcd(E(4), 4^p - 1)
  BigNat gcd_q;         // gcd(E(4), (4^q - 1)/3)
  BigNat gcd_cofactor;  // gcd(E(4), cofactor)
  BigNat gcd_total;     // gcd(E(4), 4^pq - 1)
};

inline GcdDecomposition gcd_decomposition(const TwoPrimeParams& params, const QuaternarySequence& seq) {
  if (seq.period() != params.pq()) throw ParamError("sequence period does not match pq");
  const FactorSplit split = factor_split(params.p(), params.q());
  const BigNat e4 = evaluate_poly_big(seq, 4);
  GcdDecomposition d{gcd(e4, split.p_factor), gcd(e4, split.q_factor), gcd(e4, split.cofactor),
                     gcd(e4, split.full)};
  if (gcd(d.gcd_p, d.gcd_q) != 1 || gcd(d.gcd_p, d.gcd_cofactor) != 1 || gcd(d.gcd_q, d.gcd_cofactor) != 1) {
    throw ConsistencyError("gcd factors are not pairwise coprime");
  }
  if (d.gcd_total != d.gcd_p * d.gcd_q * d.gcd_cofactor) {
    throw ConsistencyError("gcd(E(4), 4^pq-1) differs from the product of its three factors");
  }
  return d;
}

struct ConjectureCheck {
  BigNat candidate_d;
  bool candidate_prime = false;
  bool d_divides = false;
  bool evaluated = false;
  bool d_squared_divides = false;
};

/// Does the special prime 2pq+1 / 6pq+1 divide E(4)? A composite candidate
/// cannot be the cofactor gcd, so it is skipped unless force_eval is set.
inline ConjectureCheck conjecture_check(const TwoPrimeParams& params, bool force_eval = false,
                                        const QuaternarySequence* seq = nullptr) {
  ConjectureCheck c;
  c.candidate_d = candidate_divisor(params.p(), params.q());
  c.candidate_prime = is_prime_u64(to_u64(c.candidate_d));
  if (!c.candidate_prime && !force_eval) return c;
  std::optional<QuaternarySequence> owned;
  if (seq == nullptr) {
    owned.emplace(generate(params));
    seq = &*owned;
  }
  c.evaluated = true;
  c.d_divides = evaluate_poly_mod(*seq, 4, c.candidate_d) == 0;
  if (c.d_divides) {
    c.d_squared_divides = evaluate_poly_mod(*seq, 4, c.candidate_d * c.candidate_d) == 0;
  }
  return c;
}

inline ConjectureCheck conjecture_check(Int p, Int q, bool force_eval = false) {
  return conjecture_check(TwoPrimeParams::make(p, q), force_eval);
}

/// 4^(phi+1) * p * q^2 > 4^pq, i.e. phi > pq - log4(p q^2) - 1.
inline bool phi_exceeds_lower_bound(Int p, Int q, Int phi) {
  const BigNat lhs = pow(4, static_cast<std::uint64_t>(phi + 1)) * big(static_cast<std::uint64_t>(p)) *
                     big(static_cast<std::uint64_t>(q)) * big(static_cast<std::uint64_t>(q));
  return lhs > pow(4, static_cast<std::uint64_t>(p * q));
}

/// (4^pq - 1)/gcd_total > 4^pq / (4 p q^2), compared after cross-multiplying.
inline bool quotient_exceeds_lower_bound(Int p, Int q, const BigNat& gcd_total) {
  const BigNat quotient = exact_div(pow_minus_one(4, static_cast<std::uint64_t>(p * q)), gcd_total);
  const BigNat lhs = quotient * 4 * big(static_cast<std::uint64_t>(p)) * big(static_cast<std::uint64_t>(q)) *
                     big(static_cast<std::uint64_t>(q));
  return lhs > pow(4, static_cast<std::uint64_t>(p * q));
}

struct AnalyzeOptions {
  bool exact = true;
  bool force_eval = false;
};

/// Prediction, conjecture check and (optionally) the exact complexity.
inline ComplexityReport analyze(const TwoPrimeParams& params, const AnalyzeOptions& opts = {}) {
  ComplexityReport rep = theorem_prediction(params.p(), params.q());
  std::optional<QuaternarySequence> seq;
  if (opts.exact || rep.candidate_prime || opts.force_eval) seq.emplace(generate(params));

  const ConjectureCheck cc = conjecture_check(params, opts.force_eval, seq ? &*seq : nullptr);
  rep.d_divides = cc.d_divides;
  rep.d_evaluated = cc.evaluated;
  rep.d_squared_divides = cc.d_squared_divides;

  if (opts.exact) {
    const GcdDecomposition d = gcd_decomposition(params, *seq);
    rep.gcd_p = d.gcd_p;
    rep.gcd_q = d.gcd_q;
    rep.gcd_cofactor = d.gcd_cofactor;
    rep.gcd_total = d.gcd_total;
    const BigNat full = pow_minus_one(4, static_cast<std::uint64_t>(params.pq()));
    rep.phi_exact = ceil_log(4, exact_div(full, d.gcd_total));

    const bool in_set =
        std::find(rep.phi_predicted.begin(), rep.phi_predicted.end(), *rep.phi_exact) != rep.phi_predicted.end();
    const bool gcd_parts_match = d.gcd_q == rep.r1 && d.gcd_p == rep.r2;
    const bool cofactor_ok =
        d.gcd_cofactor == 1 || (rep.candidate_prime && d.gcd_cofactor == rep.candidate_d);
    rep.consistent = in_set && gcd_parts_match && cofactor_ok;
  }
  if (rep.d_squared_divides) rep.consistent = false;
  return rep;
}

}  // namespace twoprime
