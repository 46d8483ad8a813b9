#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hvci/suites.hpp"
#include "hvci/waves.hpp"

using namespace hvci;

namespace {

WaveParams desk_params() {
  WaveParams wp;
  wp.lambda = 25;
  wp.sigma_inv = 5;
  wp.r = 2;
  wp.mu = 4.0;
  return wp;
}

/// || d_r ||_{L^p(T)}^p for the 1D kernel (2r+1)^{-1/2} sum_{|k|<=r} e^{ikx}, by midpoint quadrature.
double dirichlet_1d_pth_power(int r, double p, int samples) {
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = 2 * std::numbers::pi * (i + 0.5) / samples;
    double s = 1.0;
    for (int k = 1; k <= r; ++k) s += 2 * std::cos(k * x);
    acc += std::pow(std::abs(s) / std::sqrt(2.0 * r + 1), p);
  }
  return acc / samples;
}

}  // namespace

TEST(Waves, BeltramiPairIsCurlEigenfunction) {
  const int lambdas[] = {5, 25};
  const NormReport rep = beltrami_suite(lambdas);
  EXPECT_TRUE(rep.hard_certificates_pass());
}

TEST(Waves, BeltramiRejectsLambdaOffLattice) {
  EXPECT_THROW((void)beltrami_mode(directions()[0], 7), ParamRejected);
}

TEST(Waves, DirichletPeakAndL2) {
  for (int r : {2, 5}) {
    const ScalarField d = dirichlet_kernel(r, fit_grid(r));
    EXPECT_NEAR(lebesgue_norm(d, INFINITY), std::pow(2.0 * r + 1, 1.5), 1e-10);
    EXPECT_NEAR(lebesgue_norm(d, 2.0), 1.0, 1e-13);
  }
}

TEST(Waves, DirichletLpFactorsIntoOneDimensionalKernels) {
  const int r = 3;
  const double p = 4.0;
  const double one_d = dirichlet_1d_pth_power(r, p, 200000);
  const double expected = std::pow(one_d * one_d * one_d, 1.0 / p);
  // D^4 is a trigonometric polynomial of band 12, so a 32-point grid integrates it exactly.
  const ScalarField d = dirichlet_kernel(r, fit_grid(r));
  EXPECT_NEAR(lebesgue_norm(d, p, 32), expected, 1e-9 * expected);
}

TEST(Waves, IntermittencyCertificates) {
  const double times[] = {0.0, 0.3, 1.7};
  const NormReport rep = intermittency_suite(desk_params(), times);
  EXPECT_TRUE(rep.hard_certificates_pass());
  EXPECT_EQ(rep.certificate("intermittency.band_support").value, 0.0);
}

TEST(Waves, SquaredPhaseClosedFormMatchesProduct) {
  const IntermittentPhase eta(directions()[2], desk_params());
  const int n = fit_grid(eta.squared_band());
  const ScalarField f = eta.field(0.37, n);
  const ScalarField prod = multiply_dealiased(f, f, n);
  EXPECT_LT(max_coeff(prod - eta.squared(0.37, n)), 1e-14);
}

TEST(Waves, FlagsOfDeskConfiguration) {
  const WaveFlags f = check_wave_params(desk_params());
  EXPECT_TRUE(f.hard());
  EXPECT_FALSE(f.chain);  // mu = 4 is below lambda
  EXPECT_TRUE(f.mu_above_r32);
}

TEST(Waves, RealValuedSuperposition) {
  const WaveParams wp = desk_params();
  const IntermittentPhase eta(directions()[1], wp);
  const int n = fit_grid(eta.band() + 20);
  const VectorField w = intermittent_beltrami(eta, 0.2, n);
  const VectorField shifted = modulate_beltrami(eta.field(0.2, n), directions()[1], wp.lambda, n);
  EXPECT_LT(l2_norm(w - shifted), 1e-13 * l2_norm(w));
}
