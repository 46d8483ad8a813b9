#include <gtest/gtest.h>

#include <cmath>

#include "hvci/report.hpp"

using namespace hvci;

TEST(Report, SlopeOfExactPowerLaw) {
  const std::vector<double> x{2, 4, 8, 16};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -0.75));
  EXPECT_NEAR(loglog_slope(x, y), -0.75, 1e-14);
  const ScalingFit f = make_fit("pow", "x", x, y, -0.7, 0.1);
  EXPECT_TRUE(f.pass);
}

TEST(Report, HardAndSoftCertificates) {
  NormReport r;
  r.add_certificate("soft", 2.0, 1.0, false);
  EXPECT_TRUE(r.hard_certificates_pass());
  r.add_certificate("hard", 2.0, 1.0);
  EXPECT_FALSE(r.hard_certificates_pass());
  EXPECT_FALSE(r.certificate("hard").pass);
}

TEST(Report, MergePrefixesAndSerializes) {
  NormReport a, b;
  b.add_norm("x", 1.5);
  a.merge(b, "sub.");
  EXPECT_EQ(a.norm("sub.x"), 1.5);
  EXPECT_NE(a.to_json().find("sub.x"), std::string::npos);
  EXPECT_NE(a.to_csv().find("sub.x"), std::string::npos);
  EXPECT_THROW((void)a.norm("x"), std::out_of_range);
}
