#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hvci/anti_divergence.hpp"
#include "hvci/suites.hpp"

using namespace hvci;

namespace {

VectorField random_vector(std::mt19937_64& rng, int n, int band) {
  std::normal_distribution<double> g;
  VectorField u(n);
  for (int c = 0; c < 3; ++c) {
    u[c] = ScalarField(n, band);
    for (int kx = -band; kx <= band; ++kx)
      for (int ky = -band; ky <= band; ++ky)
        for (int kz = 1; kz <= band; ++kz) u[c].set_coeff({kx, ky, kz}, Complex(g(rng), g(rng)));
  }
  return u;
}

}  // namespace

TEST(AntiDivergence, ClosedFormForShearMode) {
  // u = cos(z) e_x has R(u) = sin(z) (e_x e_z + e_z e_x).
  VectorField u(8);
  u[0].set_coeff({0, 0, 1}, 0.5);
  const SymTensorField t = anti_div(u);
  EXPECT_NEAR(std::abs(t(0, 2).coeff({0, 0, 1}) - Complex(0.0, -0.5)), 0.0, 1e-15);
  for (int s = 0; s < 6; ++s)
    if (s != SymTensorField::slot(0, 2)) EXPECT_EQ(max_coeff(t.c[s]), 0.0);
}

TEST(AntiDivergence, ConstantFieldGivesZero) {
  VectorField u(8);
  u[1].set_coeff({0, 0, 0}, 2.5);
  const AntiDivResult r = anti_divergence(u);
  EXPECT_EQ(max_coeff(r.tensor), 0.0);
  EXPECT_EQ(r.mean_removed[1], 2.5);
}

TEST(AntiDivergence, InvertsDivergenceAndIsTraceFree) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const VectorField u = random_vector(rng, 12, 4);
    const SymTensorField t = anti_div(u);
    EXPECT_LT(l2_norm(divergence(t) - remove_mean(u)), 1e-13 * l2_norm(u));
    EXPECT_LT(l2_norm(t(0, 0) + t(1, 1) + t(2, 2)), 1e-14 * l2_norm(u));
  }
}

TEST(AntiDivergence, LinearAndHomogeneousOfOrderMinusOne) {
  std::mt19937_64 rng(22);
  const VectorField u = random_vector(rng, 12, 3);
  const VectorField w = random_vector(rng, 12, 3);
  const SymTensorField lhs = anti_div(2.0 * u - 0.5 * w);
  SymTensorField rhs = anti_div(u);
  rhs *= 2.0;
  rhs.axpy(-0.5, anti_div(w));
  EXPECT_LT(l2_norm(lhs - rhs), 1e-14 * l2_norm(lhs));

  const CVec3 c{1.0, Complex(0.0, 2.0), -0.5};
  const auto one = anti_divergence_mode({1, 2, -2}, c);
  const auto two = anti_divergence_mode({2, 4, -4}, c);
  for (int s = 0; s < 6; ++s) EXPECT_NEAR(std::abs(two[s] - 0.5 * one[s]), 0.0, 1e-15);
}

TEST(AntiDivergence, CommutatorTwoModeHandValue) {
  const int n = 24;
  ScalarField a(n), f(n);
  a.set_coeff({1, 0, 0}, 0.5);
  f.set_coeff({0, 0, 8}, 0.5);
  const double left = commutator_left_side(a, f, 4.0, 2.0);
  EXPECT_NEAR(left, 1.0 / (2.0 * std::sqrt(65.0)), 1e-14);
}

TEST(AntiDivergence, CommutatorWithConstantVanishes) {
  const int n = 24;
  ScalarField a(n), f(n);
  a.set_coeff({0, 0, 0}, 1.0);
  f.set_coeff({0, 3, 8}, Complex(0.3, 0.1));
  // a P f has no mean, so the left side equals || |grad|^{-1} f ||.
  EXPECT_NEAR(commutator_left_side(a, f, 4.0, 2.0), std::sqrt(2 * 0.1) / std::sqrt(73.0), 1e-14);
}

TEST(AntiDivergence, SuitePassesWithCommutatorSlope) {
  const NormReport rep = anti_divergence_suite(20, 11);
  EXPECT_TRUE(rep.hard_certificates_pass());
  ASSERT_EQ(rep.fits().size(), 1u);
  EXPECT_TRUE(rep.fits().front().pass) << "slope " << rep.fits().front().slope;
}
