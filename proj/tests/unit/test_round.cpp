#include <gtest/gtest.h>

#include <memory>

#include "hvci/cutoffs.hpp"
#include "hvci/geometry.hpp"
#include "hvci/perturbation.hpp"
#include "hvci/stress.hpp"

using namespace hvci;

namespace {

/// v = 0, p = 0 and a spatially constant stress phi(t) S: an exact solution of the approximate system.
class ConstantStress final : public FlowState {
 public:
  ConstantStress(Sym3 s, bool active) : s_(s), active_(active) {}
  int grid_size() const override { return 8; }
  FlowSample sample(double t) const override {
    FlowSample out;
    out.t = t;
    out.velocity = VectorField(ScalarField(8, 0), ScalarField(8, 0), ScalarField(8, 0));
    out.velocity_dt = out.velocity;
    out.pressure = ScalarField(8, 0);
    out.stress = stress(t);
    return out;
  }
  SymTensorField stress(double t) const override {
    SymTensorField r;
    const double phi = active_ && t > 0.25 && t < 0.75 ? 1.0 + 0.5 * t : 0.0;
    for (int k = 0; k < 6; ++k) {
      r.c[k] = ScalarField(8, 0);
      r.c[k].set_coeff({0, 0, 0}, phi * s_[k]);
    }
    return r;
  }
  IntervalSet velocity_support() const override { return {}; }
  IntervalSet stress_support() const override {
    return active_ ? IntervalSet::from_doubles(0.25, 0.75) : IntervalSet{};
  }

 private:
  Sym3 s_;
  bool active_;
};

WaveParams desk_params() {
  WaveParams wp;
  wp.lambda = 25;
  wp.sigma_inv = 5;
  wp.r = 2;
  wp.mu = 4.0;
  return wp;
}

struct Round {
  std::shared_ptr<const FlowState> prev;
  WaveBank bank;
  std::unique_ptr<StepState> step;
};

Round make_round(bool active, double delta = 0.5) {
  Round r;
  r.prev = std::make_shared<ConstantStress>(Sym3{0.3, 0.1, 0.0, -0.2, 0.05, 0.1}, active);
  r.bank = make_wave_bank(desk_params(), 0, 1);
  TimeCutoff psi(r.prev->stress_support(), delta);
  AmplitudeBuilder builder(r.prev, psi, delta, epsilon_gamma(), r.bank.amplitude_band);
  r.step = std::make_unique<StepState>(r.prev, r.bank, builder, 1.0, 1.0, 1.01);
  return r;
}

}  // namespace

TEST(Round, ConstantAmplitudesSilenceGradientFamilies) {
  const Round r = make_round(true);
  const AmplitudeSample amps = r.step->amplitudes().at(0.5);
  const PerturbationParts parts = build_perturbation(r.bank, amps);
  const OscillationError osc = oscillation_error(r.bank, amps, parts, amps.stress, true);
  ASSERT_EQ(osc.families.size(), 6u);
  const double scale = l2_norm(osc.families[1].second);
  EXPECT_GT(scale, 0.0);
  for (const char* name : {"amplitude_gradient", "amplitude_cross", "amplitude_concentration"}) {
    const auto it = std::find_if(osc.families.begin(), osc.families.end(), [&](const auto& f) { return f.first == name; });
    ASSERT_NE(it, osc.families.end());
    EXPECT_LT(l2_norm(it->second), 1e-13 * scale) << name;
  }
  EXPECT_LT(osc.family_mean_defect, 1e-12);
}

TEST(Round, StepSolvesTheApproximateSystem) {
  const Round r = make_round(true);
  for (double t : {0.5, 0.8}) {
    const auto e = r.step->evaluate(t);
    EXPECT_LT(momentum_residual(e.sample, 1.0, 1.0), 1e-10) << "t=" << t;
    EXPECT_LT(e.amplitudes.identity_residual, 1e-12);
    const VectorField w = e.parts.total();
    EXPECT_LT(l2_norm(divergence(w)), 1e-12 * 25 * l2_norm(w));
    const VectorField lifted = (1.0 / 25.0) * curl(e.parts.principal);
    EXPECT_LT(l2_norm(e.parts.principal + e.parts.corrector - lifted), 1e-12 * l2_norm(e.parts.principal));
  }
}

TEST(Round, PerturbationIsMeanFreeAndReal) {
  const Round r = make_round(true);
  const auto e = r.step->evaluate(0.4);
  const VectorField w = e.parts.total();
  const Vec3 m = w.mean();
  EXPECT_LT(std::abs(m[0]) + std::abs(m[1]) + std::abs(m[2]), 1e-14 * l2_norm(w));
}

TEST(Round, ZeroStateGivesZeroStep) {
  const Round r = make_round(false, 0.0);
  const auto e = r.step->evaluate(0.5);
  EXPECT_EQ(e.amplitudes.psi, 0.0);
  EXPECT_EQ(max_coeff(e.sample.velocity), 0.0);
  EXPECT_EQ(max_coeff(e.sample.stress), 0.0);
  EXPECT_TRUE(r.step->velocity_support().empty());
  EXPECT_TRUE(r.step->stress_support().empty());
}

TEST(Round, SupportsStayInsideNeighborhood) {
  const Round r = make_round(true, 0.5);
  const IntervalSet hood = r.prev->stress_support().neighborhood(Rational(0.5));
  EXPECT_TRUE(hood.contains(r.step->velocity_support()));
  EXPECT_TRUE(hood.contains(r.step->stress_support()));
}

TEST(Round, AmplitudeDerivativeMatchesDifferenceQuotient) {
  const Round r = make_round(true);
  const double t = 0.5, h = 1e-4;
  const AmplitudeSample mid = r.step->amplitudes().at(t);
  const AmplitudeSample lo = r.step->amplitudes().at(t - h);
  const AmplitudeSample hi = r.step->amplitudes().at(t + h);
  for (int k = 0; k < 6; ++k) {
    const double fd = (hi.a[k].mean() - lo.a[k].mean()) / (2 * h);
    EXPECT_NEAR(mid.a_dt[k].mean(), fd, 1e-6 * std::max(1.0, std::abs(fd)));
  }
}
