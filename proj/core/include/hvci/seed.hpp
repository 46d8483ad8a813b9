#pragma once

#include <memory>

#include "hvci/report.hpp"
#include "hvci/state.hpp"

namespace hvci {

/// C-infinity bump exp(1 - 1/(1 - s^2)) rescaled to [t0, t1], equal to 1 at the midpoint.
struct TimeBump {
  double t0 = 0.25;
  double t1 = 0.75;

  double operator()(double t) const;
  double derivative(double t) const;
};

/// Separable seed v(t, x) = phi(t) u0(x) with
/// R = phi' R(u0) + nu phi R(|grad|^{2 theta} u0) + phi^2 (u0 (x) u0 - |u0|^2 / 3 Id),  p = -phi^2 |u0|^2 / 3.
class SeedState final : public FlowState {
 public:
  SeedState(VectorField u0, TimeBump bump, double theta, double nu);

  int grid_size() const override { return grid_; }
  FlowSample sample(double t) const override;
  SymTensorField stress(double t) const override;
  IntervalSet velocity_support() const override { return support_; }
  IntervalSet stress_support() const override { return support_; }

  const VectorField& profile() const { return u0_; }
  const TimeBump& bump() const { return bump_; }
  /// sup_t ||R(t)||_{L^1}, located by dense sampling refined with Brent's method.
  double stress_l1_sup(int samples = 201) const;

 private:
  VectorField u0_;
  TimeBump bump_;
  double theta_, nu_;
  int grid_;
  IntervalSet support_;
  SymTensorField transport_;  ///< R(u0)
  SymTensorField viscous_;    ///< R(|grad|^{2 theta} u0)
  SymTensorField quadratic_;  ///< trace-free part of u0 (x) u0
  ScalarField energy_;        ///< |u0|^2
};

/// Real single-direction Beltrami profile Re(amplitude B e^{i k xi . x}) on an n-grid; k a multiple of 5.
VectorField beltrami_profile(int direction, int wavenumber, double amplitude, int n);

struct SeedResult {
  IterationState state;
  NormReport report;
};

/// Builds (v0, R0, p0) from v0 = phi(t) u0 and certifies the approximate system at `check_times`.
/// Rejects profiles with nonzero mean or divergence.
SeedResult initialize_seed(const VectorField& u0, const TimeBump& bump, double theta, double nu,
                           std::span<const double> check_times, double tolerance = 1e-8);

}  // namespace hvci
