#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hvci/geometry.hpp"
#include "hvci/report.hpp"
#include "hvci/spectral.hpp"

namespace hvci {

/// Frequency parameters of one perturbation round; sigma is stored as its integer inverse.
struct WaveParams {
  int lambda = 0;
  int sigma_inv = 0;
  int r = 0;
  double mu = 0.0;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double theta = 1.0;
  double nu = 1.0;
  double p_exponent = std::numeric_limits<double>::quiet_NaN();

  double sigma() const { return 1.0 / sigma_inv; }
  /// lambda * sigma; exact when sigma_inv divides lambda.
  int lambda_sigma() const { return lambda / sigma_inv; }
};

struct WaveFlags {
  bool periodic = false;           ///< lambda in 5N, sigma_inv | lambda, lambda*sigma in 5N
  bool r_above_one = false;        ///< 1 < r
  bool sigma_r_below_one = false;  ///< sigma r < 1
  bool band_support = false;       ///< every intermittent wave mode lies in [lambda/2, 2 lambda)
  bool strengthened_band = false;  ///< 2 sqrt(3) lambda sigma r <= lambda / 2
  bool chain = false;              ///< r < lambda < mu < lambda^2
  bool mu_above_r32 = false;       ///< r^{3/2} <= mu

  /// Conditions the exact lattice construction depends on.
  bool hard() const { return periodic && r_above_one && sigma_r_below_one && band_support; }
  std::string failures() const;
};

WaveFlags check_wave_params(const WaveParams& wp);
/// Throws ParamRejected naming every failed hard flag.
void require_admissible(const WaveParams& wp);

/// e^{ik.x} with vector coefficient.
struct VectorMode {
  Wavevector k;
  CVec3 c;
};

/// Normalized Dirichlet kernel over the full cube |k_i| <= r, on an n-grid.
ScalarField dirichlet_kernel(int r, int n);

/// Directed, rescaled Dirichlet kernel travelling along its direction with speed mu.
///
/// Modes are lambda sigma (n1 xi + n2 A + n3 xi x A) for n in the cube of radius r, each with
/// amplitude (2r+1)^{-3/2} and time phase exp(i lambda sigma mu n1 t). Antipodal directions share
/// the kernel of their positive partner.
class IntermittentPhase {
 public:
  struct Mode {
    Wavevector k;
    int n1;
  };

  IntermittentPhase(const Direction& d, const WaveParams& wp);

  const Direction& direction() const { return direction_; }
  const WaveParams& params() const { return params_; }
  int band() const { return band_; }
  int squared_band() const { return squared_band_; }
  double amplitude() const { return amplitude_; }
  /// Angular frequency per unit n1: lambda sigma mu.
  double rate() const { return rate_; }
  const std::vector<Mode>& modes() const { return modes_; }

  ScalarField field(double t, int n) const;
  ScalarField time_derivative(double t, int n) const;
  /// eta^2 from its closed form (a Fejer-type cube with mean exactly 1).
  ScalarField squared(double t, int n) const;
  ScalarField squared_time_derivative(double t, int n) const;

 private:
  ScalarField build(double t, int n, bool derivative) const;
  ScalarField build_squared(double t, int n, bool derivative) const;

  Direction direction_;
  WaveParams params_;
  std::vector<Mode> modes_;
  Wavevector e1_{}, e2_{}, e3_{};
  int band_ = 0;
  int squared_band_ = 0;
  double amplitude_ = 0.0;
  double rate_ = 0.0;
};

/// Single complex Beltrami mode B e^{i lambda xi.x}; lambda must be a multiple of 5.
VectorMode beltrami_mode(const Direction& d, int lambda);

/// Real pair W_xi + W_{-xi} on an n-grid.
VectorField beltrami_wave(const Direction& d, int lambda, int n);

/// Real pair eta (W_xi + W_{-xi}) built with a dealiased product.
VectorField intermittent_beltrami(const IntermittentPhase& eta, double t, int n);

/// Same field built by exact index shifts of the phase modes.
VectorField modulate_beltrami(const ScalarField& f, const Direction& d, int lambda, int n);

/// Complex modes of the single intermittent wave eta_xi W_xi at time t.
std::vector<VectorMode> intermittent_beltrami_modes(const IntermittentPhase& eta, double t);

/// Sum of coefficient magnitudes of the intermittent wave outside lo <= |k| < hi.
double band_leak(const IntermittentPhase& eta, double t, double lo, double hi);

/// Sum of coefficient magnitudes of W_xi (x) W_xi' outside lo <= |k| < hi, after merging equal modes.
double tensor_band_leak(const IntermittentPhase& a, const IntermittentPhase& b, double t, double lo, double hi);

/// Smallest |k| among the nonzero modes of W_xi (x) W_xi'.
double tensor_min_frequency(const IntermittentPhase& a, const IntermittentPhase& b, double t);

/// A one-parameter family of norms with a predicted log-log exponent.
struct ScalingFamily {
  std::string name;
  std::string variable;
  /// Returns norms for every requested exponent at one parameter value.
  std::function<std::vector<double>(double parameter, std::span<const double> ps)> measure;
  std::function<double(double p)> predicted_exponent;
  double relative_tolerance = 0.1;
};

/// Absolute slope tolerance rel * |predicted|, floored for a zero prediction.
double slope_tolerance(double predicted, double relative);

NormReport measure_norm_scaling(const ScalingFamily& family, std::span<const double> ps,
                                std::span<const double> parameters);

}  // namespace hvci
