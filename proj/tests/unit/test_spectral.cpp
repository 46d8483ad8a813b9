#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "hvci/spectral.hpp"

using namespace hvci;

namespace {

ScalarField random_band_field(std::mt19937_64& rng, int n, int band) {
  std::normal_distribution<double> g;
  ScalarField f(n, band);
  for (int kx = -band; kx <= band; ++kx)
    for (int ky = -band; ky <= band; ++ky)
      for (int kz = 0; kz <= band; ++kz) {
        if (kz == 0 && (ky < 0 || (ky == 0 && kx < 0))) continue;
        const Complex c = (kx || ky || kz) ? Complex(g(rng), g(rng)) : Complex(g(rng), 0.0);
        f.set_coeff({kx, ky, kz}, c);
      }
  return f;
}

/// Full list of modes including the conjugate half.
std::map<Wavevector, Complex> all_modes(const ScalarField& f) {
  std::map<Wavevector, Complex> out;
  const int b = f.band();
  for (int kx = -b; kx <= b; ++kx)
    for (int ky = -b; ky <= b; ++ky)
      for (int kz = -b; kz <= b; ++kz) {
        const Complex c = f.coeff({kx, ky, kz});
        if (std::abs(c) > 0) out[{kx, ky, kz}] = c;
      }
  return out;
}

}  // namespace

TEST(Spectral, DealiasedProductMatchesDirectConvolution) {
  std::mt19937_64 rng(3);
  const ScalarField f = random_band_field(rng, 12, 3);
  const ScalarField g = random_band_field(rng, 12, 2);
  const ScalarField h = multiply_dealiased(f, g, 12);

  std::map<Wavevector, Complex> conv;
  for (const auto& [k1, c1] : all_modes(f))
    for (const auto& [k2, c2] : all_modes(g)) conv[{k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]}] += c1 * c2;

  double err = 0.0, scale = 0.0;
  for (const auto& [k, c] : conv) {
    err = std::max(err, std::abs(h.coeff(k) - c));
    scale = std::max(scale, std::abs(c));
  }
  EXPECT_LT(err / scale, 1e-13);
  EXPECT_EQ(h.band(), 5);
}

TEST(Spectral, ProductBeyondGridIsRejected) {
  std::mt19937_64 rng(4);
  const ScalarField f = random_band_field(rng, 8, 3);
  EXPECT_THROW((void)multiply_dealiased(f, f, 8), BandwidthOverflow);
}

TEST(Spectral, LerayProjectionOfSingleMode) {
  VectorField u(8);
  u[0].set_coeff({1, 1, 0}, 1.0);
  const VectorField p = leray_project(u);
  EXPECT_NEAR(std::abs(p[0].coeff({1, 1, 0}) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p[1].coeff({1, 1, 0}) + 0.5), 0.0, 1e-15);
  EXPECT_EQ(std::abs(p[2].coeff({1, 1, 0})), 0.0);
}

TEST(Spectral, LerayIsIdempotentAndDivergenceFree) {
  std::mt19937_64 rng(5);
  VectorField u{random_band_field(rng, 16, 4), random_band_field(rng, 16, 4), random_band_field(rng, 16, 4)};
  const VectorField p = leray_project(u);
  EXPECT_LT(l2_norm(divergence(p)), 1e-12 * l2_norm(u));
  EXPECT_LT(l2_norm(leray_project(p) - p), 1e-14 * l2_norm(p));
}

TEST(Spectral, FractionalLaplacianOnEigenmode) {
  ScalarField f(16);
  f.set_coeff({2, 1, 2}, Complex(0.0, 1.0));
  const ScalarField g = fractional_laplacian(f, 0.6);
  EXPECT_NEAR(std::abs(g.coeff({2, 1, 2})), std::pow(3.0, 1.2), 1e-12);
}

TEST(Spectral, LebesgueNormsOfCosine) {
  ScalarField f(32);
  f.set_coeff({1, 0, 0}, 0.5);  // cos(x)
  EXPECT_NEAR(lebesgue_norm(f, 2.0), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(lebesgue_norm(f, INFINITY), 1.0, 1e-14);
  // |cos| has kinks, so the quadrature converges only algebraically.
  EXPECT_NEAR(lebesgue_norm(f, 1.0, 256), 2.0 / std::numbers::pi, 1e-4);
}

TEST(Spectral, PhysicalRoundTrip) {
  std::mt19937_64 rng(6);
  const ScalarField f = random_band_field(rng, 16, 5);
  const auto phys = f.to_physical(16);
  const ScalarField back = ScalarField::from_physical(phys, 16, 16, 5);
  EXPECT_LT(max_coeff(back - f), 1e-13 * max_coeff(f));
}

TEST(Spectral, CurlOfGradientVanishes) {
  std::mt19937_64 rng(7);
  const ScalarField f = random_band_field(rng, 16, 5);
  EXPECT_LT(l2_norm(curl(gradient(f))), 1e-13 * l2_norm(gradient(f)));
}
