#pragma once

#include <array>
#include <string>
#include <vector>

#include "hvci/waves.hpp"

namespace hvci {

/// Hyperviscosity exponent at which no schedule exists.
inline constexpr double kThetaThreshold = 1.25;

/// Open interval of admissible alpha for a given theta.
struct AlphaInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Throws ParamRejected for theta >= 5/4.
AlphaInterval alpha_interval(double theta);
/// Midpoint of alpha_interval(theta).
double choose_alpha(double theta);

/// The four strict inequalities the Lebesgue exponent must satisfy, as slack values (< 0 means satisfied).
struct PInequalities {
  std::array<double, 4> slack{};
  bool pass = false;
};

PInequalities check_p_inequalities(double alpha, double theta, double p);
/// Amount each slack grows when p moves away from 1: 3 alpha (1 - 1/p).
double p_correction(double alpha, double p);
/// Supremum of exponents p > 1 for which all four inequalities hold (may be +inf).
double p_upper_limit(double alpha, double theta);
/// Halfway between 1 and p_upper_limit (capped at 2).
double default_p(double alpha, double theta);

struct Schedule {
  double theta = 1.0;
  double nu = 1.0;
  double alpha = 0.0;
  double p_exponent = 0.0;
  double epsilon0 = 0.0;
  std::vector<int> lambda_list;
  std::vector<double> delta_list;  ///< delta_1, delta_2, ...

  /// delta_{q+1}; q = 0 is the seed stress size.
  double delta(int q_plus_one) const;
};

/// Builds a schedule; alpha and p default to choose_alpha and default_p when NaN.
Schedule make_schedule(double theta, double nu, double epsilon0, double delta1, std::vector<int> lambda_list,
                       double alpha = std::numeric_limits<double>::quiet_NaN(),
                       double p = std::numeric_limits<double>::quiet_NaN());

/// delta_{q+1} = 2^{-q} epsilon0 for q >= 1.
double delta_sequence(int q, double epsilon0);

/// Rounded wave parameters with their ideal targets.
struct WaveChoice {
  WaveParams params;
  double r_target = 0.0;
  double sigma_inv_target = 0.0;
  double mu_target = 0.0;
  WaveFlags flags;
};

/// Feasibility search over admissible (sigma, r) minimizing log-distance to lambda^alpha and lambda^{(alpha+1)/2};
/// mu = max(ceil(r^{3/2}), round(lambda^{(5 alpha + 1)/4})) kept inside (lambda, lambda^2).
WaveChoice make_wave_params(int lambda, const Schedule& schedule);

}  // namespace hvci
