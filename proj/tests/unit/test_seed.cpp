#include <gtest/gtest.h>

#include <cmath>

#include "hvci/seed.hpp"
#include "hvci/stress.hpp"

using namespace hvci;

TEST(Seed, BumpProfile) {
  const TimeBump b{0.25, 0.75};
  EXPECT_EQ(b(0.5), 1.0);
  EXPECT_EQ(b.derivative(0.5), 0.0);
  EXPECT_EQ(b(0.25), 0.0);
  EXPECT_EQ(b(0.9), 0.0);
  const double h = 1e-6;
  EXPECT_NEAR(b.derivative(0.4), (b(0.4 + h) - b(0.4 - h)) / (2 * h), 1e-6);
}

TEST(Seed, ResidualAndDeltaOne) {
  const int n = 16;
  const VectorField u0 = beltrami_profile(0, 5, 0.7, n);
  const double times[] = {0.3, 0.5, 0.6};
  const SeedResult seed = initialize_seed(u0, TimeBump{}, 1.0, 1.0, times);
  EXPECT_TRUE(seed.report.hard_certificates_pass());
  EXPECT_LT(seed.report.certificate("momentum_residual").value, 1e-12);

  // Independent sweep of ||R_0(t)||_{L^1} on a fine time grid.
  double dense = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double t = 0.25 + 0.5 * i / 400.0;
    dense = std::max(dense, lebesgue_norm(seed.state.flow->stress(t), 1.0, good_fft_size(65)));
  }
  EXPECT_GE(seed.state.delta_next, dense * (1 - 1e-9));
  EXPECT_LE(seed.state.delta_next, dense * (1 + 1e-4));
  EXPECT_TRUE(seed.state.flow->stress_support().contains(IntervalSet::from_doubles(0.25, 0.75)));
}

TEST(Seed, RejectsCompressibleProfile) {
  VectorField u(8);
  u[0].set_coeff({1, 0, 0}, 1.0);
  const double times[] = {0.5};
  EXPECT_THROW((void)initialize_seed(u, TimeBump{}, 1.0, 1.0, times), ParamRejected);
}

TEST(Seed, ZeroProfileHasEmptySupport) {
  const VectorField u(8);
  const double times[] = {0.5};
  const SeedResult seed = initialize_seed(u, TimeBump{}, 1.0, 1.0, times);
  EXPECT_EQ(seed.state.delta_next, 0.0);
  EXPECT_TRUE(seed.state.flow->stress_support().empty());
}
