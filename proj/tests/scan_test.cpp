#include <gtest/gtest.h>

#include "twoprime/scan.hpp"

namespace twoprime {
namespace {

std::vector<std::string> csv(const std::vector<ScanRow>& rows) {
  std::vector<std::string> out;
  for (const auto& r : rows) out.push_back(scan_csv_line(r));
  return out;
}

TEST(Scan, OrderIndependentOfJobs) {
  const auto pairs = valid_pairs(25, 3000);
  const auto one = csv(run_scan(pairs, {false, false, 1}));
  EXPECT_EQ(csv(run_scan(pairs, {false, false, 4})), one);
  EXPECT_EQ(csv(run_scan(pairs, {false, false, 13})), one);
}

TEST(Scan, ExactRowsAreConsistent) {
  for (const auto& r : run_scan(valid_pairs(25, 1500), {true, false, 3})) {
    ASSERT_TRUE(r.phi_exact);
    EXPECT_TRUE(r.consistent) << r.p << "," << r.q;
    EXPECT_FALSE(r.d_divides);
  }
}

TEST(Scan, CsvFormat) {
  EXPECT_EQ(scan_csv_header(), "p,q,pq,case,candidate_d,candidate_prime,d_divides,r1,r2,phi_exact,consistent");
  EXPECT_EQ(scan_csv_line(scan_pair(41, 5, {true, false, 1})), "41,5,205,mixed,411,0,0,11,1,204,1");
  EXPECT_EQ(scan_csv_line(scan_pair(5, 13, {false, false, 1})), "5,13,65,both5,391,0,0,1,1,,1");
}

TEST(Scan, ErrorsPropagate) {
  EXPECT_THROW(run_scan({{5, 13}, {7, 11}}, {false, false, 2}), ParamError);
}

}  // namespace
}  // namespace twoprime
