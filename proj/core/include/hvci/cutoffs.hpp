#pragma once

#include "hvci/intervals.hpp"

namespace hvci {

/// C-infinity step: 0 for x <= 0, 1 for x >= 1, built from exp(-c/x).
double smooth_step(double x, double steepness);
double smooth_step_derivative(double x, double steepness);

/// Temporal cutoff: 1 on the support, 0 beyond distance width_fraction * delta, smooth in between.
class TimeCutoff {
 public:
  static constexpr double kWidthFraction = 0.9;
  static constexpr double kSteepness = 0.6;

  TimeCutoff() = default;
  TimeCutoff(IntervalSet support, double delta, double width_fraction = kWidthFraction,
             double steepness = kSteepness);

  double operator()(double t) const;
  double derivative(double t) const;

  const IntervalSet& support() const { return support_; }
  double delta() const { return delta_; }
  double ramp_width() const { return width_; }
  /// Closed support of psi, as an exact interval set.
  IntervalSet psi_support() const;
  /// sup |psi'| * delta from a dense search of the ramp profile.
  double max_slope_times_delta(int samples = 200001) const;
  /// Midpoint of the left (side < 0) or right ramp of the first/last support interval.
  double ramp_midpoint(int side) const;

 private:
  IntervalSet support_;
  double delta_ = 0.0;
  double width_ = 0.0;
  double steepness_ = kSteepness;
};

TimeCutoff time_cutoff(const IntervalSet& support, double delta);

/// Gauge chi: 1 on [0, 1], s on [1 + kappa, inf), increasing and smooth in between.
double gauge(double s, double kappa = 0.05);
double gauge_derivative(double s, double kappa = 0.05);

}  // namespace hvci
