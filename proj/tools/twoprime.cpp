// Command-line front end for the two-prime quaternary sequence toolkit.
//
// Exit codes: 0 success, 1 invalid parameters, 2 verification or consistency
// failure (including a conjecture counterexample), 3 I/O failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "twoprime/twoprime.hpp"

namespace {

using namespace twoprime;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitFailure = 2;
constexpr int kExitIo = 3;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

std::string join(const std::vector<Int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

// --- params ---------------------------------------------------------------

struct ParamsArgs {
  Int p = 0, q = 0;
  Common common;
};

int cmd_params(const ParamsArgs& a) {
  const auto prm = TwoPrimeParams::make(a.p, a.q);
  if (a.common.json()) {
    std::cout << to_json(prm).dump(2) << "\n";
  } else {
    std::cout << "p: " << prm.p() << "\nq: " << prm.q() << "\ng: " << prm.g() << "\nh: " << prm.h()
              << "\ne: " << prm.e() << "\nparity: " << (prm.parity_even() ? "even" : "odd")
              << "\ncase: " << to_string(prm.residue_case()) << "\n";
  }
  return kExitOk;
}

// --- generate ---------------------------------------------------------------

struct GenerateArgs {
  Int p = 0, q = 0;
  bool reversed = false;
  std::string out;
  std::string seq_format = "digits";
};

int cmd_generate(const GenerateArgs& a) {
  auto seq = generate(TwoPrimeParams::make(a.p, a.q));
  if (a.reversed) seq = reverse(seq);
  const auto fmt = a.seq_format == "structured" ? SequenceFormat::structured : SequenceFormat::digits;
  write_output(a.out, serialize(seq, fmt));
  return kExitOk;
}

// --- complexity ---------------------------------------------------------------

struct ComplexityArgs {
  Int p = 0, q = 0;
  std::string in;
  std::uint64_t m = 4;
  bool predict_only = false;
  bool force_eval = false;
  Common common;
};

int cmd_complexity(const ComplexityArgs& a) {
  if (!a.in.empty()) {
    const QuaternarySequence seq = parse(read_file(a.in));
    const Int phi = madic_complexity(seq, a.m);
    if (a.common.json()) {
      json j{{"T", seq.period()}, {"m", a.m}, {"phi_exact", phi}};
      if (seq.provenance()) {
        j["p"] = seq.provenance()->p;
        j["q"] = seq.provenance()->q;
      }
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "T: " << seq.period() << "\nm: " << a.m << "\nphi_exact: " << phi << "\n";
    }
    return kExitOk;
  }
  if (a.m != 4) throw ParamError("the predictor is defined for m = 4 only; use --in for other bases");
  const auto prm = TwoPrimeParams::make(a.p, a.q);
  const ComplexityReport rep = analyze(prm, {!a.predict_only, a.force_eval});
  if (a.common.json()) {
    std::cout << to_json(rep).dump(2) << "\n";
  } else {
    std::cout << "p: " << rep.p << "\nq: " << rep.q << "\ncase: " << to_string(rep.case_tag)
              << "\nr1: " << rep.r1 << "\nr2: " << rep.r2 << "\ncandidate_d: " << rep.candidate_d
              << (rep.candidate_prime ? " (prime)" : " (composite)") << "\nd_divides: "
              << (rep.d_divides ? "yes" : "no") << (rep.d_evaluated ? "" : " (not evaluated)")
              << "\nphi_predicted: {" << join(rep.phi_predicted) << "}\n";
    if (rep.phi_exact) {
      std::cout << "gcd_p: " << *rep.gcd_p << "\ngcd_q: " << *rep.gcd_q << "\ngcd_cofactor: " << *rep.gcd_cofactor
                << "\nphi_exact: " << *rep.phi_exact << " (pq - " << rep.p * rep.q - *rep.phi_exact << ")\n";
    }
    std::cout << "consistent: " << (rep.consistent ? "yes" : "no") << "\n";
  }
  return rep.consistent && !rep.d_divides ? kExitOk : kExitFailure;
}

// --- scan ---------------------------------------------------------------

struct ScanArgs {
  Int pq_min = 0;
  Int pq_max = 0;
  unsigned jobs = 0;
  std::string out;
  bool exact = false;
  bool force_eval = false;
  Common common;
};

int cmd_scan(const ScanArgs& a) {
  if (a.pq_max < 25) throw ParamError("--pq-max must be at least 25");
  const unsigned jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  const auto pairs = valid_pairs(a.pq_min, a.pq_max);
  const auto rows = run_scan(pairs, {a.exact, a.force_eval, jobs});

  std::string text;
  if (a.common.json()) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    text = json{{"version", kScanCsvVersion}, {"rows", arr}}.dump(2) + "\n";
  } else {
    text = scan_csv_header() + "\n";
    for (const auto& r : rows) text += scan_csv_line(r) + "\n";
  }
  write_output(a.out, text);

  std::size_t divides = 0, inconsistent = 0, prime = 0;
  for (const auto& r : rows) {
    divides += r.d_divides;
    inconsistent += !r.consistent;
    prime += r.candidate_prime;
  }
  std::cerr << "scanned " << rows.size() << " pairs, " << prime << " prime candidates, " << divides
            << " counterexamples, " << inconsistent << " inconsistent\n";
  return divides == 0 && inconsistent == 0 ? kExitOk : kExitFailure;
}

// --- verify ---------------------------------------------------------------

struct VerifyArgs {
  Int p = 0, q = 0;
  Int lambda_max = 10000;
  Common common;
};

int cmd_verify(const VerifyArgs& a) {
  const auto prm = TwoPrimeParams::make(a.p, a.q);
  const auto reports = run_lemma_suite(prm, a.lambda_max);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed;
  if (a.common.json()) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    std::cout << json{{"p", a.p}, {"q", a.q}, {"lambda_max", a.lambda_max}, {"passed", ok}, {"reports", arr}}.dump(2)
              << "\n";
  } else {
    for (const auto& r : reports) {
      std::size_t good = 0;
      for (const auto& c : r.checks) good += c.ok;
      std::cout << to_string(r.id) << ": " << (r.passed ? "pass" : "FAIL")
                << (r.vacuous ? " (vacuous: no modulus found)" : "") << "  [" << good << "/" << r.checks.size()
                << " checks";
      if (!r.moduli.empty() && fits_u64(r.moduli.front())) {
        std::cout << ", moduli:";
        for (const auto& m : r.moduli) std::cout << " " << short_big(m);
      }
      std::cout << "]\n";
      for (const auto& c : r.checks) {
        if (!c.ok) std::cout << "  failed: " << c.label << " lhs=" << short_big(c.lhs) << " rhs=" << short_big(c.rhs) << "\n";
      }
    }
  }
  return ok ? kExitOk : kExitFailure;
}

// --- cyclotomic ---------------------------------------------------------------

struct CyclotomicArgs {
  Int p = 0, q = 0;
  std::string mode = "both";
  Common common;
};

void print_matrix(const char* title, const CycMatrix& m) {
  std::cout << title << ":\n";
  for (const auto& row : m) {
    std::cout << " ";
    for (Int v : row) std::cout << " " << v;
    std::cout << "\n";
  }
}

// Formula mode needs the calibrated (a, b), which comes from the brute-force
// matrix, so the enumeration always runs.
int cmd_cyclotomic(const CyclotomicArgs& a) {
  const auto prm = TwoPrimeParams::make(a.p, a.q);
  const ClassTable table(prm);
  const CycMatrix brute = cyclotomic_numbers_bruteforce(table);
  std::optional<QuadraticPartition> ab;
  std::optional<CycMatrix> formula;
  if (a.mode != "brute") {
    try {
      ab = quadratic_partition(prm, brute);
      formula = cyclotomic_numbers_formula(prm, ab->a, ab->b);
    } catch (const ConsistencyError& e) {
      std::cerr << "calibration failed: " << e.what() << "\n";
    }
  }
  const bool match = a.mode == "brute" || (formula && *formula == brute);
  if (a.common.json()) {
    json j{{"p", prm.p()}, {"q", prm.q()}, {"M", whiteman_M(prm)}, {"parity_even", prm.parity_even()}};
    if (a.mode != "formula") j["brute"] = matrix_json(brute);
    if (formula && a.mode != "brute") j["formula"] = matrix_json(*formula);
    if (ab) {
      j["a"] = ab->a;
      j["b"] = ab->b;
    }
    if (a.mode == "both") j["match"] = match;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "M: " << whiteman_M(prm) << "\nparity: " << (prm.parity_even() ? "even" : "odd") << "\n";
    if (a.mode != "formula") print_matrix("brute force", brute);
    if (formula) print_matrix("closed form", *formula);
    if (ab) std::cout << "calibrated a: " << ab->a << "\ncalibrated b: " << ab->b << "\n";
    if (a.mode == "both") std::cout << "match: " << (match ? "yes" : "no") << "\n";
  }
  return match ? kExitOk : kExitFailure;
}

void add_pair(CLI::App* cmd, Int& p, Int& q, bool required = true) {
  auto* po = cmd->add_option("--p", p, "First prime p");
  auto* qo = cmd->add_option("--q", q, "Second prime q");
  if (required) {
    po->required();
    qo->required();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twoprime: 4-adic complexity of two-prime quaternary sequences"};
  app.require_subcommand(1);

  ParamsArgs params_args;
  auto* params = app.add_subcommand("params", "Derive g, h, e for a pair");
  add_pair(params, params_args.p, params_args.q);
  add_format(params, params_args.common);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "Write one period of the sequence");
  add_pair(gen, gen_args.p, gen_args.q);
  gen->add_option("--out", gen_args.out, "Output file (default stdout)");
  gen->add_option("--seq-format", gen_args.seq_format, "digits or structured")
      ->check(CLI::IsMember({"digits", "structured"}));
  gen->add_flag("--reversed", gen_args.reversed, "Emit the reversed sequence");

  ComplexityArgs cx_args;
  auto* cx = app.add_subcommand("complexity", "Exact and predicted 4-adic complexity");
  auto* cx_p = cx->add_option("--p", cx_args.p, "First prime p");
  auto* cx_q = cx->add_option("--q", cx_args.q, "Second prime q");
  auto* cx_in = cx->add_option("--in", cx_args.in, "Sequence file (digits or structured)");
  cx_p->needs(cx_q);
  cx_q->needs(cx_p);
  cx_in->excludes(cx_p)->excludes(cx_q);
  cx->add_option("--m", cx_args.m, "Base m (>= 2)")->check(CLI::Range(2, 1 << 30));
  auto* cx_predict = cx->add_flag("--predict", cx_args.predict_only, "Prediction only, skip the exact gcd");
  cx->add_flag("--exact", "Compute the exact complexity (default)")->excludes(cx_predict);
  cx->add_flag("--force-eval", cx_args.force_eval, "Evaluate E(4) mod d even when d is composite");
  add_format(cx, cx_args.common);

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Conjecture scan over all ordered valid pairs");
  scan->add_option("--pq-max", scan_args.pq_max, "Largest pq")->required();
  scan->add_option("--pq-min", scan_args.pq_min, "Smallest pq (resume a partial range)");
  scan->add_option("--jobs", scan_args.jobs, "Worker threads (0 = all cores)")->envname("TWOPRIME_JOBS");
  scan->add_option("--out", scan_args.out, "Output file (default stdout)");
  scan->add_flag("--exact", scan_args.exact, "Also compute the exact complexity per pair");
  scan->add_flag("--force-eval", scan_args.force_eval, "Evaluate E(4) mod d even when d is composite");
  add_format(scan, scan_args.common);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run the lemma verification suite");
  add_pair(verify, verify_args.p, verify_args.q);
  verify->add_option("--lambda-max", verify_args.lambda_max, "Search bound for d0 = 1 + 2*lambda*pq")
      ->envname("TWOPRIME_LAMBDA_MAX")
      ->check(CLI::PositiveNumber);
  add_format(verify, verify_args.common);

  CyclotomicArgs cyc_args;
  auto* cyc = app.add_subcommand("cyclotomic", "Cyclotomic numbers of order 4 modulo pq");
  add_pair(cyc, cyc_args.p, cyc_args.q);
  cyc->add_option("--mode", cyc_args.mode, "brute, formula or both")
      ->check(CLI::IsMember({"brute", "formula", "both"}));
  add_format(cyc, cyc_args.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*params) return cmd_params(params_args);
    if (*gen) return cmd_generate(gen_args);
    if (*cx) {
      if (cx_args.in.empty() && (cx_args.p == 0 || cx_args.q == 0)) {
        throw ParamError("complexity needs either --p/--q or --in");
      }
      return cmd_complexity(cx_args);
    }
    if (*scan) return cmd_scan(scan_args);
    if (*verify) return cmd_verify(verify_args);
    if (*cyc) return cmd_cyclotomic(cyc_args);
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInvalid;
}
