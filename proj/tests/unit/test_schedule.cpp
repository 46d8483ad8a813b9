#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "hvci/schedule.hpp"
#include "hvci/suites.hpp"

using namespace hvci;
using Q = boost::multiprecision::cpp_rational;

namespace {

/// The four strict inequalities, evaluated in rational arithmetic straight from their displayed form.
std::array<Q, 4> rational_slacks(const Q& a, const Q& theta, const Q& p) {
  const Q m = std::max(Q(0), Q(2 * theta - 1));
  return {-(a + 1) / 2 + (5 * a + 1) / 4 + (Q(5, 2) - 3 / p) * a, (Q(3, 2) - 3 / p) * a + m,
          -(5 * a + 1) / 4 + (Q(9, 2) - 3 / p) * a, -(1 - a) / 2 + (3 - 3 / p) * a};
}

}  // namespace

TEST(Schedule, AlphaMidpoints) {
  EXPECT_DOUBLE_EQ(choose_alpha(1.0), 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(choose_alpha(1.2), (14.0 / 15.0 + 1.0) / 2.0);
  EXPECT_EQ(choose_alpha(0.5), 0.5);
}

TEST(Schedule, ThresholdRejected) {
  EXPECT_THROW((void)choose_alpha(1.25), ParamRejected);
  EXPECT_THROW((void)choose_alpha(1.3), ParamRejected);
  EXPECT_THROW((void)make_schedule(1.25, 1.0, 0.1, 1.0, {25}), ParamRejected);
}

TEST(Schedule, SlacksAgreeWithRationalEvaluation) {
  const PInequalities in = check_p_inequalities(0.75, 1.0, 1.01);
  const auto exact = rational_slacks(Q(3, 4), Q(1), Q(101, 100));
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(in.slack[k], exact[k].convert_to<double>(), 1e-15);
  EXPECT_TRUE(in.pass);
}

TEST(Schedule, SlacksAtUnitExponentAreTheHandForms) {
  const double a = 0.75;
  const auto limit = rational_slacks(Q(3, 4), Q(1), Q(1));
  const std::array<double, 4> hand{(a - 1) / 4, 1 - 1.5 * a, (a - 1) / 4, (a - 1) / 2};
  for (int k = 0; k < 4; ++k) EXPECT_EQ(limit[k].convert_to<double>(), hand[k]);
  // At p = 1.01 every slack moves up by exactly the p-correction.
  const PInequalities in = check_p_inequalities(a, 1.0, 1.01);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(in.slack[k] - hand[k], p_correction(a, 1.01), 1e-15);
}

TEST(Schedule, DefaultExponentSatisfiesInequalities) {
  for (double theta : {0.5, 1.0, 1.2}) {
    const double a = choose_alpha(theta);
    const double p = default_p(a, theta);
    EXPECT_GT(p, 1.0);
    EXPECT_TRUE(check_p_inequalities(a, theta, p).pass);
    EXPECT_FALSE(check_p_inequalities(a, theta, p_upper_limit(a, theta) + 1e-9).pass);
  }
}

TEST(Schedule, DeltaSequenceIsExactlyGeometric) {
  EXPECT_EQ(delta_sequence(1, 0.1), 0.05);
  EXPECT_EQ(delta_sequence(3, 0.1), 0.1 / 8);
  const Schedule s = make_schedule(1.0, 1.0, 0.1, 7.5, {25, 50});
  EXPECT_EQ(s.delta(1), 7.5);
  EXPECT_EQ(s.delta(2), 0.05);
  EXPECT_EQ(s.delta(3), 0.025);
}

TEST(Schedule, WaveParamsDeterministicAndAdmissible) {
  const Schedule s = make_schedule(1.0, 1.0, 0.1, 1.0, {25, 50, 100});
  const std::array<std::array<int, 3>, 3> expected{{{25, 5, 2}, {50, 10, 5}, {100, 20, 10}}};
  for (const auto& [lambda, m, r] : expected) {
    const WaveChoice a = make_wave_params(lambda, s);
    const WaveChoice b = make_wave_params(lambda, s);
    EXPECT_EQ(a.params.sigma_inv, m);
    EXPECT_EQ(a.params.r, r);
    EXPECT_EQ(a.params.mu, b.params.mu);
    EXPECT_TRUE(a.flags.hard());
    EXPECT_LT(a.params.r, a.params.sigma_inv);
    EXPECT_EQ(a.params.lambda_sigma() % 5, 0);
    EXPECT_LE(std::pow(a.params.r, 1.5), a.params.mu);
  }
}

TEST(Schedule, FeasibilityOracleAgrees) {
  // Brute force over every admissible (sigma, r) for lambda = 50 at alpha = 5/6.
  const Schedule s = make_schedule(1.0, 1.0, 0.1, 1.0, {50});
  const double rt = std::pow(50.0, s.alpha), mt = std::pow(50.0, (s.alpha + 1) / 2);
  double best = INFINITY;
  int bm = 0, br = 0;
  for (int m : {5, 10})
    for (int r = 2; 2 * r <= m; ++r) {
      const double cost = std::abs(std::log(r / rt)) + std::abs(std::log(m / mt));
      if (cost < best) best = cost, bm = m, br = r;
    }
  const WaveChoice c = make_wave_params(50, s);
  EXPECT_EQ(c.params.sigma_inv, bm);
  EXPECT_EQ(c.params.r, br);
}

TEST(Schedule, SuitePasses) { EXPECT_TRUE(scheduler_suite().hard_certificates_pass()); }
