#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twoprime/cyclotomy.hpp"

namespace twoprime {

struct Provenance {
  Int p = 0;
  Int q = 0;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// One period of a sequence over Z_4.
class QuaternarySequence {
 public:
  explicit QuaternarySequence(std::vector<std::uint8_t> digits, std::optional<Provenance> provenance = std::nullopt)
      : digits_(std::move(digits)), provenance_(provenance) {
    if (digits_.empty()) throw ParamError("sequence period must be positive");
    if (std::any_of(digits_.begin(), digits_.end(), [](std::uint8_t d) { return d > 3; })) {
      throw ParamError("sequence digits must lie in {0,1,2,3}");
    }
    if (provenance_ && provenance_->p * provenance_->q != period()) {
      throw ParamError("period does not equal p*q of the provenance tag");
    }
  }

  Int period() const { return static_cast<Int>(digits_.size()); }
  std::span<const std::uint8_t> digits() const { return digits_; }
  std::uint8_t operator[](std::size_t i) const { return digits_[i]; }
  const std::optional<Provenance>& provenance() const { return provenance_; }

  friend bool operator==(const QuaternarySequence&, const QuaternarySequence&) = default;

 private:
  std::vector<std::uint8_t> digits_;
  std::optional<Provenance> provenance_;
};

inline std::uint8_t digit_for(ClassLabel c) {
  switch (c) {
    case ClassLabel::P:
      return 0;
    case ClassLabel::Q:
    case ClassLabel::R:
      return 2;
    default:
      return static_cast<std::uint8_t>(c);
  }
}

/// e_u = 2 on Q ∪ R, 0 on P, i on D_i.
inline QuaternarySequence generate(const ClassTable& table) {
  std::vector<std::uint8_t> digits;
  digits.reserve(table.labels().size());
  for (ClassLabel c : table.labels()) digits.push_back(digit_for(c));
  const auto& prm = table.params();
  return QuaternarySequence(std::move(digits), Provenance{prm.p(), prm.q()});
}

inline QuaternarySequence generate(const TwoPrimeParams& params) { return generate(ClassTable(params)); }

// The provenance tag is dropped: the reversal is a different sequence.
inline QuaternarySequence reverse(const QuaternarySequence& seq) {
  std::vector<std::uint8_t> digits(seq.digits().rbegin(), seq.digits().rend());
  return QuaternarySequence(std::move(digits));
}

enum class SequenceFormat { digits, structured };

inline std::string digits_string(const QuaternarySequence& seq) {
  std::string out;
  out.reserve(seq.digits().size());
  for (std::uint8_t d : seq.digits()) out.push_back(static_cast<char>('0' + d));
  return out;
}

inline nlohmann::json to_json(const QuaternarySequence& seq) {
  nlohmann::json j;
  j["T"] = seq.period();
  if (seq.provenance()) {
    j["p"] = seq.provenance()->p;
    j["q"] = seq.provenance()->q;
  }
  j["digits"] = digits_string(seq);
  return j;
}

inline std::string serialize(const QuaternarySequence& seq, SequenceFormat format) {
  if (format == SequenceFormat::digits) return digits_string(seq) + "\n";
  return to_json(seq).dump() + "\n";
}

inline std::vector<std::uint8_t> parse_digit_chars(std::string_view text) {
  std::vector<std::uint8_t> digits;
  digits.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '3') {
      throw ParamError(std::string("invalid sequence character '") + c + "'");
    }
    digits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return digits;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline QuaternarySequence parse_structured(std::string_view text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object() || !j.contains("digits") || !j["digits"].is_string()) {
      throw ParamError("structured sequence needs a string field \"digits\"");
    }
    auto digits = parse_digit_chars(j["digits"].get<std::string>());
    if (j.contains("T") && j["T"].get<Int>() != static_cast<Int>(digits.size())) {
      throw ParamError("declared period T does not match the number of digits");
    }
    std::optional<Provenance> prov;
    if (j.contains("p") || j.contains("q")) {
      if (!j.contains("p") || !j.contains("q")) throw ParamError("provenance needs both p and q");
      prov = Provenance{j["p"].get<Int>(), j["q"].get<Int>()};
    }
    return QuaternarySequence(std::move(digits), prov);
  } catch (const nlohmann::json::exception& e) {
    throw ParamError(std::string("malformed structured sequence: ") + e.what());
  }
}

/// Accepts either format: a JSON object, or a single line of '0'..'3'.
inline QuaternarySequence parse(std::string_view text) {
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') return parse_structured(body);
  return QuaternarySequence(parse_digit_chars(body));
}

}  // namespace twoprime
