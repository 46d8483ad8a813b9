#include <gtest/gtest.h>

#include "hvci/cutoffs.hpp"
#include "hvci/intervals.hpp"
#include "hvci/suites.hpp"

using namespace hvci;

TEST(Intervals, NeighborhoodIsExact) {
  const IntervalSet s = IntervalSet::single(Rational(1, 4), Rational(3, 4));
  const IntervalSet n = s.neighborhood(Rational(1, 10));
  ASSERT_EQ(n.intervals().size(), 1u);
  EXPECT_EQ(n.intervals()[0].lo, Rational(3, 20));
  EXPECT_EQ(n.intervals()[0].hi, Rational(17, 20));
  EXPECT_TRUE(n.contains(Rational(3, 20)));
  EXPECT_FALSE(n.contains(Rational(3, 20) - Rational(1, 1000000000)));
}

TEST(Intervals, UnionMergesOverlapsOnly) {
  const IntervalSet a = IntervalSet::single(0, 1);
  const IntervalSet b = IntervalSet::single(2, 3);
  EXPECT_EQ(a.united(b).intervals().size(), 2u);
  EXPECT_EQ(a.united(b).neighborhood(Rational(1, 2)).intervals().size(), 1u);
  EXPECT_TRUE(a.united(b).contains(IntervalSet::single(Rational(5, 2), 3)));
  EXPECT_FALSE(a.united(b).contains(IntervalSet::single(Rational(1, 2), Rational(5, 2))));
}

TEST(Intervals, DoublesConvertExactly) {
  const IntervalSet s = IntervalSet::from_doubles(0.1, 0.3);
  EXPECT_EQ(s.lower(), Rational(0.1));
  EXPECT_NE(s.lower(), Rational(1, 10));
  EXPECT_EQ(IntervalSet{}.distance(0.0), INFINITY);
  EXPECT_EQ(s.distance(0.2), 0.0);
}

TEST(Cutoffs, SmoothStepEndpoints) {
  EXPECT_EQ(smooth_step(0.0, 0.6), 0.0);
  EXPECT_EQ(smooth_step(1.0, 0.6), 1.0);
  EXPECT_NEAR(smooth_step(0.5, 0.6), 0.5, 1e-15);
  EXPECT_EQ(smooth_step_derivative(-0.1, 0.6), 0.0);
}

TEST(Cutoffs, GaugeIsIdentityBeyondKappa) {
  EXPECT_EQ(gauge(0.3), 1.0);
  EXPECT_EQ(gauge(1.0), 1.0);
  EXPECT_EQ(gauge(2.0), 2.0);
  for (double s = 1.0; s < 1.06; s += 0.001) EXPECT_GE(gauge(s + 0.001), gauge(s));
}

TEST(Cutoffs, PsiCertificates) {
  const IntervalSet support = IntervalSet::from_doubles(0.25, 0.75).united(IntervalSet::from_doubles(1.5, 1.6));
  for (double delta : {0.05, 0.5, 3.0}) {
    const TimeCutoff psi(support, delta);
    const NormReport rep = cutoff_suite(psi);
    EXPECT_TRUE(rep.hard_certificates_pass()) << "delta " << delta;
    EXPECT_LE(psi.max_slope_times_delta(), 2.0);
  }
}

TEST(Cutoffs, EmptySupportGivesZero) {
  const TimeCutoff psi(IntervalSet{}, 0.0);
  EXPECT_EQ(psi(0.5), 0.0);
  EXPECT_EQ(psi.derivative(0.5), 0.0);
  EXPECT_TRUE(psi.psi_support().empty());
}
