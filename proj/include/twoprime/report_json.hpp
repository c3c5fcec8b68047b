#pragma once

#include <string>

#include <json.hpp>

#include "twoprime/adic.hpp"
#include "twoprime/cyclotomy.hpp"
#include "twoprime/scan.hpp"
#include "twoprime/verify.hpp"

// Structured interchange records. Big integers are emitted as decimal
// strings so no consumer loses precision.
namespace twoprime {

inline nlohmann::json to_json(const TwoPrimeParams& prm) {
  return {{"p", prm.p()},   {"q", prm.q()},
          {"g", prm.g()},   {"h", prm.h()},
          {"e", prm.e()},   {"parity_even", prm.parity_even()},
          {"case", std::string(to_string(prm.residue_case()))}};
}

inline nlohmann::json matrix_json(const CycMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : m) rows.push_back(row);
  return rows;
}

inline nlohmann::json to_json(const CyclotomicTable& t) {
  return {{"counts", matrix_json(t.counts)}, {"a", t.a}, {"b", t.b}, {"M", t.M}, {"parity_even", t.parity_even}};
}

inline nlohmann::json to_json(const ComplexityReport& r) {
  nlohmann::json j{{"p", r.p},
                   {"q", r.q},
                   {"r1", to_string(r.r1)},
                   {"r2", to_string(r.r2)},
                   {"case", std::string(to_string(r.case_tag))},
                   {"candidate_d", to_string(r.candidate_d)},
                   {"candidate_prime", r.candidate_prime},
                   {"d_divides", r.d_divides},
                   {"d_evaluated", r.d_evaluated},
                   {"phi_predicted", r.phi_predicted},
                   {"consistent", r.consistent}};
  if (r.d_divides) j["d_squared_divides"] = r.d_squared_divides;
  if (r.gcd_total) {
    j["gcd_p"] = to_string(*r.gcd_p);
    j["gcd_q"] = to_string(*r.gcd_q);
    j["gcd_cofactor"] = to_string(*r.gcd_cofactor);
    j["gcd_total"] = to_string(*r.gcd_total);
  }
  if (r.phi_exact) {
    j["phi_exact"] = *r.phi_exact;
    j["pq_minus_phi"] = r.p * r.q - *r.phi_exact;
  }
  return j;
}

// Values wider than 128 bits (residues mod 4^pq - 1) are shown by bit length.
inline std::string short_big(const BigNat& x) {
  if (bit_length(x) <= 128) return to_string(x);
  return "<" + std::to_string(bit_length(x)) + "-bit>";
}

inline nlohmann::json to_json(const LemmaReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"label", c.label},
                      {"modulus", short_big(c.modulus)},
                      {"lhs", short_big(c.lhs)},
                      {"rhs", short_big(c.rhs)},
                      {"ok", c.ok}});
  }
  nlohmann::json moduli = nlohmann::json::array();
  for (const auto& m : r.moduli) moduli.push_back(short_big(m));
  return {{"lemma", std::string(to_string(r.id))},
          {"p", r.p},
          {"q", r.q},
          {"moduli", moduli},
          {"passed", r.passed},
          {"vacuous", r.vacuous},
          {"checks", checks}};
}

inline nlohmann::json to_json(const ScanRow& r) {
  nlohmann::json j{{"p", r.p},
                   {"q", r.q},
                   {"pq", r.p * r.q},
                   {"case", std::string(to_string(r.case_tag))},
                   {"candidate_d", to_string(r.candidate_d)},
                   {"candidate_prime", r.candidate_prime},
                   {"d_divides", r.d_divides},
                   {"r1", to_string(r.r1)},
                   {"r2", to_string(r.r2)},
                   {"consistent", r.consistent}};
  if (r.phi_exact) j["phi_exact"] = *r.phi_exact;
  return j;
}

}  // namespace twoprime
