#include "hvci/cutoffs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hvci {

double smooth_step(double x, double c) {
  if (x <= 0) return 0.0;
  if (x >= 1) return 1.0;
  const double e = c / x - c / (1.0 - x);
  if (e > 700) return 0.0;
  return 1.0 / (1.0 + std::exp(e));
}

double smooth_step_derivative(double x, double c) {
  if (x <= 0 || x >= 1) return 0.0;
  const double s = smooth_step(x, c);
  return c * (1.0 / (x * x) + 1.0 / ((1.0 - x) * (1.0 - x))) * s * (1.0 - s);
}

TimeCutoff::TimeCutoff(IntervalSet support, double delta, double width_fraction, double steepness)
    : support_(std::move(support)), delta_(delta), width_(width_fraction * delta), steepness_(steepness) {
  if (!(delta > 0) && !(support_.empty() && delta == 0))
    throw std::invalid_argument("cutoff width must be positive");
  if (!(width_fraction > 0 && width_fraction <= 1)) throw std::invalid_argument("ramp fraction must lie in (0, 1]");
}

double TimeCutoff::operator()(double t) const {
  if (support_.empty()) return 0.0;
  const double d = support_.distance(t);
  return 1.0 - smooth_step(d / width_, steepness_);
}

double TimeCutoff::derivative(double t) const {
  if (support_.empty()) return 0.0;
  double d = INFINITY, slope = 0.0;
  for (const auto& p : support_.intervals()) {
    const double lo = p.lo.convert_to<double>();
    const double hi = p.hi.convert_to<double>();
    if (t < lo && lo - t < d) {
      d = lo - t;
      slope = -1.0;
    } else if (t > hi && t - hi < d) {
      d = t - hi;
      slope = 1.0;
    } else if (t >= lo && t <= hi) {
      return 0.0;
    }
  }
  if (d >= width_) return 0.0;
  return -slope * smooth_step_derivative(d / width_, steepness_) / width_;
}

IntervalSet TimeCutoff::psi_support() const {
  if (support_.empty()) return {};
  return support_.neighborhood(Rational(width_));
}

double TimeCutoff::max_slope_times_delta(int samples) const {
  if (support_.empty()) return 0.0;
  double best = 0.0;
  for (int i = 1; i < samples - 1; ++i) {
    const double x = double(i) / (samples - 1);
    best = std::max(best, smooth_step_derivative(x, steepness_));
  }
  return best / width_ * delta_;
}

double TimeCutoff::ramp_midpoint(int side) const {
  if (support_.empty()) throw std::logic_error("empty cutoff has no ramp");
  return side < 0 ? support_.lower().convert_to<double>() - 0.5 * width_
                  : support_.upper().convert_to<double>() + 0.5 * width_;
}

TimeCutoff time_cutoff(const IntervalSet& support, double delta) { return TimeCutoff(support, delta); }

double gauge(double s, double kappa) {
  if (s <= 1) return 1.0;
  return 1.0 + (s - 1.0) * smooth_step((s - 1.0) / kappa, TimeCutoff::kSteepness);
}

double gauge_derivative(double s, double kappa) {
  if (s <= 1) return 0.0;
  const double x = (s - 1.0) / kappa;
  return smooth_step(x, TimeCutoff::kSteepness) + x * smooth_step_derivative(x, TimeCutoff::kSteepness);
}

}  // namespace hvci
