#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "twoprime/adic.hpp"
#include "twoprime/cyclotomy.hpp"

namespace twoprime {

struct ScanRow {
  Int p = 0;
  Int q = 0;
  ResidueCase case_tag = ResidueCase::mixed;
  BigNat candidate_d;
  bool candidate_prime = false;
  bool d_divides = false;
  BigNat r1;
  BigNat r2;
  std::optional<Int> phi_exact;
  bool consistent = true;
};

struct ScanOptions {
  bool exact = false;
  bool force_eval = false;
  unsigned jobs = 1;
};

inline ScanRow scan_pair(Int p, Int q, const ScanOptions& opts) {
  const ComplexityReport rep = analyze(TwoPrimeParams::make(p, q), {opts.exact, opts.force_eval});
  return ScanRow{rep.p,  rep.q,  rep.case_tag, rep.candidate_d, rep.candidate_prime, rep.d_divides,
                 rep.r1, rep.r2, rep.phi_exact, rep.consistent};
}

/// Runs every pair on `jobs` workers. Rows come back in the order of `pairs`
/// regardless of scheduling.
inline std::vector<ScanRow> run_scan(const std::vector<std::pair<Int, Int>>& pairs, const ScanOptions& opts) {
  std::vector<ScanRow> rows(pairs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      try {
        rows[i] = scan_pair(pairs[i].first, pairs[i].second, opts);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, opts.jobs);
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

// Column order is part of the output format; bump the version when it changes.
inline constexpr int kScanCsvVersion = 1;

inline std::string scan_csv_header() {
  return "p,q,pq,case,candidate_d,candidate_prime,d_divides,r1,r2,phi_exact,consistent";
}

inline std::string scan_csv_line(const ScanRow& r) {
  std::string s;
  s += std::to_string(r.p) + ',' + std::to_string(r.q) + ',' + std::to_string(r.p * r.q) + ',';
  s += std::string(to_string(r.case_tag)) + ',' + to_string(r.candidate_d) + ',';
  s += std::string(r.candidate_prime ? "1" : "0") + ',' + (r.d_divides ? "1" : "0") + ',';
  s += to_string(r.r1) + ',' + to_string(r.r2) + ',';
  s += (r.phi_exact ? std::to_string(*r.phi_exact) : std::string()) + ',';
  s += r.consistent ? "1" : "0";
  return s;
}

}  // namespace twoprime
