#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace twoprime {

// Exact nonnegative big integers. All complexity arithmetic goes through
// this type; there is no floating point on any Φ path.
using BigNat = mpz_class;

// Thrown when parameters violate a construction precondition.
class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a computed identity the theory guarantees does not hold.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline BigNat big(std::uint64_t v) {
  BigNat r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return r;
}

inline BigNat big_signed(std::int64_t v) {
  BigNat r = big(v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1
                       : static_cast<std::uint64_t>(v));
  if (v < 0) r = -r;
  return r;
}

inline BigNat pow(std::uint64_t base, std::uint64_t exp) {
  BigNat r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

// m^k - 1
inline BigNat pow_minus_one(std::uint64_t base, std::uint64_t exp) {
  return pow(base, exp) - 1;
}

inline BigNat gcd(const BigNat& a, const BigNat& b) {
  BigNat r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Least nonnegative residue of a mod n (n > 0).
inline BigNat mod(const BigNat& a, const BigNat& n) {
  BigNat r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Exact quotient; throws if b does not divide a.
inline BigNat exact_div(const BigNat& a, const BigNat& b) {
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) {
    throw ConsistencyError("exact_div: divisor does not divide dividend");
  }
  BigNat r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigNat ceil_div(const BigNat& a, const BigNat& b) {
  BigNat r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool divides(const BigNat& d, const BigNat& n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline std::size_t bit_length(const BigNat& x) {
  return sgn(x) == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline bool fits_u64(const BigNat& x) {
  return sgn(x) >= 0 && bit_length(x) <= 64;
}

inline std::uint64_t to_u64(const BigNat& x) {
  if (!fits_u64(x)) throw std::out_of_range("to_u64: value does not fit");
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, -1, sizeof v, 0, 0, x.get_mpz_t());
  return v;
}

inline std::string to_string(const BigNat& x) { return x.get_str(10); }

}  // namespace twoprime
