#include <gtest/gtest.h>

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "hvci/errors.hpp"
#include "hvci/geometry.hpp"

using namespace hvci;
using Q = boost::multiprecision::cpp_rational;

namespace {

/// Solves sum_k c_k (Id - xi_k xi_k) = R in exact rational arithmetic over the six positive directions.
std::array<Q, 6> rational_coefficients(const std::array<Q, 6>& rhs) {
  std::array<std::array<Q, 7>, 6> m;
  for (int k = 0; k < 6; ++k) {
    const auto& xi5 = directions()[k].xi5;
    for (int s = 0; s < 6; ++s) {
      const auto [i, j] = SymTensorField::pairs[s];
      m[s][k] = Q(i == j ? 1 : 0) - Q(xi5[i] * xi5[j], 25);
    }
  }
  for (int s = 0; s < 6; ++s) m[s][6] = rhs[s];
  for (int col = 0; col < 6; ++col) {
    int piv = col;
    while (m[piv][col] == 0) ++piv;
    std::swap(m[piv], m[col]);
    for (int row = 0; row < 6; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Q f = m[row][col] / m[col][col];
      for (int c = col; c < 7; ++c) m[row][c] -= f * m[col][c];
    }
  }
  std::array<Q, 6> out;
  for (int k = 0; k < 6; ++k) out[k] = m[k][6] / m[k][k];
  return out;
}

}  // namespace

TEST(Geometry, DirectionsAreUnitAndClosedUnderAntipode) {
  for (const Direction& d : directions()) {
    const auto& x = d.xi5;
    EXPECT_EQ(x[0] * x[0] + x[1] * x[1] + x[2] * x[2], 25);
    const Direction& a = antipode(d);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(a.xi5[i], -x[i]);
    EXPECT_EQ(x[0] * d.a5[0] + x[1] * d.a5[1] + x[2] * d.a5[2], 0);
  }
}

TEST(Geometry, IdentityGivesQuarterExactly) {
  const auto exact = rational_coefficients({1, 0, 0, 1, 0, 1});
  for (const auto& c : exact) EXPECT_EQ(c, Q(1, 4));
  const GammaSolution sol = gamma_coefficients(identity_sym3());
  for (int k = 0; k < 6; ++k) EXPECT_EQ(sol.c[k], 0.25);
}

TEST(Geometry, MatchesRationalSolveOnRationalMatrices) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> num(-40, 40);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<Q, 6> rhs{1, 0, 0, 1, 0, 1};
    Sym3 r = identity_sym3();
    for (int s = 0; s < 6; ++s) {
      const Q e(num(rng), 1000);
      rhs[s] += e;
      r[s] += e.convert_to<double>();
    }
    const auto exact = rational_coefficients(rhs);
    const auto c = gamma_map().coefficients(r);
    for (int k = 0; k < 6; ++k) EXPECT_NEAR(c[k], exact[k].convert_to<double>(), 1e-14);
  }
}

TEST(Geometry, AntipodalGammaAgrees) {
  Sym3 r = identity_sym3();
  r[1] = 0.05;
  r[5] = 1.03;
  const GammaSolution sol = gamma_coefficients(r);
  for (const Direction& d : directions()) EXPECT_EQ(sol.gamma_of(d), sol.gamma_of(antipode(d)));
}

TEST(Geometry, FarMatrixLeavesTheBall) {
  Sym3 r{};
  r[0] = 1.0;
  EXPECT_THROW((void)gamma_coefficients(r), OutsideBall);
}

TEST(Geometry, EpsilonGammaIsConservative) {
  const EpsilonGammaEstimate est = estimate_epsilon_gamma(2000, 5);
  EXPECT_GT(est.analytic_frobenius, 0.0);
  EXPECT_LE(est.analytic_frobenius, est.sampled_frobenius + 1e-12);
  EXPECT_LT(est.value, est.analytic_frobenius);
}
