#include <random>

#include <gtest/gtest.h>

#include "twoprime/adic.hpp"

namespace twoprime {
namespace {

// Test-side oracles, independent of the Horner / bracketing paths.
BigNat naive_poly(const QuaternarySequence& s, std::uint64_t m) {
  BigNat acc = 0, power = 1;
  for (auto d : s.digits()) {
    acc += power * static_cast<unsigned long>(d);
    power *= static_cast<unsigned long>(m);
  }
  return acc;
}

Int naive_ceil_log(std::uint64_t m, const BigNat& x) {
  Int k = 0;
  BigNat v = 1;
  while (v < x) {
    v *= static_cast<unsigned long>(m);
    ++k;
  }
  return k;
}

Int naive_complexity(const QuaternarySequence& s, std::uint64_t m) {
  const BigNat full = pow(m, static_cast<std::uint64_t>(s.period())) - 1;
  BigNat a = naive_poly(s, m), b = full;
  while (b != 0) {  // Euclid
    BigNat t = a % b;
    a = b;
    b = t;
  }
  return naive_ceil_log(m, full / a);
}

QuaternarySequence random_sequence(std::mt19937& rng, std::size_t len) {
  std::vector<std::uint8_t> d(len);
  for (auto& x : d) x = static_cast<std::uint8_t>(rng() % 4);
  return QuaternarySequence(std::move(d));
}

TEST(EvaluatePolyBig, Examples) {
  EXPECT_EQ(evaluate_poly_big(QuaternarySequence({1, 0, 1}), 4), 17);
  EXPECT_EQ(evaluate_poly_big(QuaternarySequence({0, 0, 0, 0}), 4), 0);
  EXPECT_EQ(mod(evaluate_poly_big(generate(TwoPrimeParams::make(5, 13)), 4), 3), 1);
  EXPECT_THROW(evaluate_poly_big(QuaternarySequence({1}), 1), ParamError);
}

TEST(EvaluatePolyBig, MatchesNaiveSum) {
  std::mt19937 rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto s = random_sequence(rng, 1 + rng() % 60);
    const std::uint64_t m = 2 + rng() % 9;
    EXPECT_EQ(evaluate_poly_big(s, m), naive_poly(s, m));
  }
}

TEST(EvaluatePolyMod, AgreesWithBigEvaluation) {
  std::mt19937 rng(17);
  for (int t = 0; t < 100; ++t) {
    const auto s = random_sequence(rng, 1 + rng() % 50);
    const std::uint64_t m = 2 + rng() % 7;
    BigNat n = 2 + rng() % 100000;
    if (t % 3 == 0) n = pow(3, 60 + rng() % 40) + 7;  // multi-limb modulus
    EXPECT_EQ(evaluate_poly_mod(s, m, n), mod(evaluate_poly_big(s, m), n));
  }
}

TEST(EvaluatePolyMod, Residues5x13) {
  const auto seq = generate(TwoPrimeParams::make(5, 13));
  EXPECT_EQ(evaluate_poly_mod(seq, 4, pow_minus_one(4, 13)), 4);
  // -3(q-1)/2 plus the q-multiples term 2(4^p-1)/3, which does not vanish mod 4^p-1.
  EXPECT_EQ(evaluate_poly_mod(seq, 4, pow_minus_one(4, 5)), 664);
  EXPECT_EQ(evaluate_poly_mod(seq, 4, 341), 323);
  EXPECT_THROW(evaluate_poly_mod(seq, 4, 1), ParamError);
}

TEST(CeilLog, Boundaries) {
  EXPECT_EQ(ceil_log(4, 1), 0);
  EXPECT_EQ(ceil_log(4, 16), 2);
  EXPECT_EQ(ceil_log(4, 17), 3);
  EXPECT_THROW(ceil_log(4, 0), ParamError);
  EXPECT_EQ(ceil_log(4, pow(4, 5000)), 5000);
  EXPECT_EQ(ceil_log(4, pow(4, 5000) + 1), 5001);
  EXPECT_EQ(ceil_log(4, pow(4, 5000) - 1), 5000);
}

TEST(CeilLog, MatchesNaiveAcrossBases) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    const std::uint64_t m = 2 + rng() % 30;
    BigNat x = pow(m, rng() % 50);
    const int tweak = static_cast<int>(rng() % 3) - 1;
    if (x + tweak >= 1) x += tweak;
    EXPECT_EQ(ceil_log(m, x), naive_ceil_log(m, x)) << "m=" << m << " x=" << x;
  }
}

TEST(MadicComplexity, Examples) {
  EXPECT_EQ(madic_complexity(QuaternarySequence(std::vector<std::uint8_t>(17, 0)), 4), 0);
  std::vector<std::uint8_t> impulse(23, 0);
  impulse[0] = 1;
  EXPECT_EQ(madic_complexity(QuaternarySequence(impulse), 4), 23);
  EXPECT_EQ(madic_complexity(generate(TwoPrimeParams::make(41, 5)), 4), 204);
}

TEST(MadicComplexity, MatchesNaiveOracle) {
  std::mt19937 rng(31);
  for (int t = 0; t < 80; ++t) {
    const auto s = random_sequence(rng, 1 + rng() % 40);
    const std::uint64_t m = t % 2 == 0 ? 4 : 2 + rng() % 6;
    EXPECT_EQ(madic_complexity(s, m), naive_complexity(s, m));
  }
}

TEST(MadicComplexity, BracketsQuotient) {
  std::mt19937 rng(37);
  for (int t = 0; t < 40; ++t) {
    const auto s = random_sequence(rng, 1 + rng() % 80);
    const BigNat full = pow_minus_one(4, static_cast<std::uint64_t>(s.period()));
    const BigNat quotient = full / gcd(evaluate_poly_big(s, 4), full);
    const Int phi = madic_complexity(s, 4);
    EXPECT_GE(pow(4, static_cast<std::uint64_t>(phi)), quotient);
    if (phi >= 1) {
      EXPECT_LT(pow(4, static_cast<std::uint64_t>(phi - 1)), quotient);
    }
  }
}

TEST(HallEval, PartitionOfGeometricSum) {
  const auto prm = TwoPrimeParams::make(5, 13);
  const ClassTable table(prm);
  for (BigNat n : {BigNat(131), BigNat(1000003), pow_minus_one(4, 65), pow(7, 50)}) {
    BigNat total = 1;  // R = {0}
    for (int j = 0; j < 4; ++j) total += hall_eval_mod(table, j, 1, n);
    for (Int u = 1; u < 65; ++u)
      if (u % 5 == 0 || u % 13 == 0) total += pow(4, static_cast<std::uint64_t>(u));
    EXPECT_EQ(mod(total, n), mod(exact_div(pow_minus_one(4, 65), 3), n));
  }
}

TEST(HallEval, ModFourToTheQMinusOne) {
  const ClassTable table(TwoPrimeParams::make(5, 13));
  for (int j = 0; j < 4; ++j) EXPECT_EQ(hall_eval_mod(table, j, 1, pow_minus_one(4, 13)), 22369620);
}

TEST(HallEval, ShiftByHSquared) {
  const auto prm = TwoPrimeParams::make(5, 13);
  const ClassTable table(prm);
  const BigNat full = pow_minus_one(4, 65);
  const Int h2 = prm.h() * prm.h() % 65;
  for (int j = 0; j < 4; ++j) {
    EXPECT_EQ(hall_eval_mod(table, j, h2, full), hall_eval_mod(table, (j + 2) % 4, 1, full));
  }
  EXPECT_THROW(hall_eval_mod(table, 0, 5, full), ParamError);
}

TEST(HallEval, AssemblesE4) {
  for (auto [p, q] : valid_pairs(25, 3000)) {
    const auto prm = TwoPrimeParams::make(p, q);
    const ClassTable table(prm);
    const BigNat full = pow_minus_one(4, static_cast<std::uint64_t>(p * q));
    const auto H = hall_values(table, full);
    const BigNat u4 = H[1] + 2 * H[2] + 3 * H[3];
    const BigNat e4 = u4 + 2 * exact_div(full, pow_minus_one(4, static_cast<std::uint64_t>(q)));
    EXPECT_EQ(evaluate_poly_big(generate(table), 4), e4) << p << "," << q;
  }
}

TEST(TheoremPrediction, KnownRows) {
  const auto a = theorem_prediction(41, 5);
  EXPECT_EQ(a.r1, 11);
  EXPECT_EQ(a.r2, 1);
  EXPECT_EQ(a.case_tag, ResidueCase::mixed);
  EXPECT_EQ(a.candidate_d, 411);
  EXPECT_FALSE(a.candidate_prime);
  EXPECT_EQ(a.phi_predicted, std::vector<Int>{204});

  const auto b = theorem_prediction(5, 1117);
  EXPECT_EQ(b.r1, 1);
  EXPECT_EQ(b.r2, 31);
  EXPECT_EQ(b.phi_predicted.back(), 5 * 1117 - 2);

  const auto c = theorem_prediction(5, 13);
  EXPECT_EQ(c.r1, 1);
  EXPECT_EQ(c.r2, 1);
  EXPECT_EQ(c.case_tag, ResidueCase::both5);
  EXPECT_EQ(c.candidate_d, 391);
  EXPECT_EQ(c.phi_predicted, std::vector<Int>{65});

  const auto d = theorem_prediction(5, 89);
  EXPECT_EQ(d.case_tag, ResidueCase::mixed);
  EXPECT_EQ(d.candidate_d, 891);
  EXPECT_FALSE(d.candidate_prime);
  EXPECT_EQ(d.phi_predicted, std::vector<Int>{444});

  const auto e = theorem_prediction(13, 17);
  EXPECT_TRUE(e.candidate_prime);
  EXPECT_EQ(e.candidate_d, 443);
  EXPECT_EQ(e.phi_predicted.size(), 2u);
  EXPECT_EQ(e.phi_predicted.back(), 221);
  EXPECT_THROW(theorem_prediction(7, 11), ParamError);
}

TEST(TheoremPrediction, MinOfR1R2IsOne) {
  for (auto [p, q] : valid_pairs(25, 20000)) {
    const auto r = theorem_prediction(p, q);
    EXPECT_TRUE(r.r1 == 1 || r.r2 == 1) << p << "," << q;
    EXPECT_EQ(predictor_max(r.r1, r.r2), r.r1 > r.r2 ? r.r1 : r.r2);
  }
  EXPECT_THROW(predictor_max(3, 5), ConsistencyError);
}

TEST(GcdDecomposition, Examples5x13) {
  const auto prm = TwoPrimeParams::make(5, 13);
  const auto d = gcd_decomposition(prm, generate(prm));
  EXPECT_EQ(d.gcd_q, gcd(pow_minus_one(4, 13), 8));
  EXPECT_EQ(d.gcd_q, 1);
  EXPECT_EQ(d.gcd_p, 1);
  EXPECT_EQ(d.gcd_cofactor, 1);
  EXPECT_EQ(d.gcd_total, 1);
}

TEST(GcdDecomposition, ProductIdentityAndFactorGcd) {
  for (auto [p, q] : valid_pairs(25, 3000)) {
    const auto prm = TwoPrimeParams::make(p, q);
    const auto d = gcd_decomposition(prm, generate(prm));
    EXPECT_EQ(d.gcd_total, d.gcd_p * d.gcd_q * d.gcd_cofactor);
    EXPECT_EQ(gcd(pow_minus_one(4, static_cast<std::uint64_t>(p)), pow_minus_one(4, static_cast<std::uint64_t>(q))), 3);
    EXPECT_FALSE(divides(3, evaluate_poly_big(generate(prm), 4)));
  }
}

TEST(GcdDecomposition, RejectsWrongPeriod) {
  EXPECT_THROW(gcd_decomposition(TwoPrimeParams::make(5, 13), QuaternarySequence({1, 2})), ParamError);
}

TEST(ConjectureCheck, Examples) {
  const auto a = conjecture_check(41, 5);
  EXPECT_EQ(a.candidate_d, 411);
  EXPECT_FALSE(a.candidate_prime);
  EXPECT_FALSE(a.evaluated);
  EXPECT_FALSE(a.d_divides);

  const auto b = conjecture_check(5, 13);
  EXPECT_EQ(b.candidate_d, 391);
  EXPECT_FALSE(b.d_divides);
  const auto forced = conjecture_check(5, 13, true);
  EXPECT_TRUE(forced.evaluated);
  EXPECT_FALSE(forced.d_divides);

  const auto c = conjecture_check(5, 89);
  EXPECT_EQ(c.candidate_d, 891);
  EXPECT_FALSE(c.candidate_prime);
  EXPECT_FALSE(conjecture_check(5, 89, true).d_divides);
  EXPECT_EQ(evaluate_poly_mod(generate(TwoPrimeParams::make(5, 89)), 4, 2671), 1669);

  for (auto [p, q, d] : {std::array<Int, 3>{13, 17, 443}, {5, 61, 1831}}) {
    const auto e = conjecture_check(p, q);
    EXPECT_EQ(e.candidate_d, d);
    EXPECT_TRUE(e.candidate_prime);
    EXPECT_TRUE(e.evaluated);
    EXPECT_FALSE(e.d_divides);
  }
  EXPECT_EQ(evaluate_poly_mod(generate(TwoPrimeParams::make(13, 17)), 4, 443), 41);
  EXPECT_EQ(evaluate_poly_mod(generate(TwoPrimeParams::make(5, 61)), 4, 1831), 477);
}

TEST(Analyze, ConsistentWithPrediction) {
  const auto rep = analyze(TwoPrimeParams::make(41, 5));
  ASSERT_TRUE(rep.phi_exact);
  EXPECT_EQ(*rep.phi_exact, 204);
  EXPECT_TRUE(rep.consistent);
  const auto pred = analyze(TwoPrimeParams::make(41, 5), {false, false});
  EXPECT_FALSE(pred.phi_exact);
  EXPECT_FALSE(pred.gcd_total);
}

TEST(LowerBound, ExactComparisons) {
  // phi = pq - 1 clears the bound; phi = pq - log4(p q^2) - 1 sits below it.
  EXPECT_TRUE(phi_exceeds_lower_bound(5, 13, 64));
  EXPECT_FALSE(phi_exceeds_lower_bound(5, 13, 65 - 5 - 1));
  EXPECT_TRUE(quotient_exceeds_lower_bound(5, 13, 1));
  EXPECT_FALSE(quotient_exceeds_lower_bound(5, 13, pow_minus_one(4, 65)));
}

}  // namespace
}  // namespace twoprime
