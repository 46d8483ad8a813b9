#pragma once

#include <array>
#include <memory>
#include <vector>

#include "hvci/cutoffs.hpp"
#include "hvci/report.hpp"
#include "hvci/state.hpp"
#include "hvci/waves.hpp"

namespace hvci {

/// The six travelling phases of one round plus the grids their products live on.
struct WaveBank {
  WaveParams params;
  std::vector<IntermittentPhase> phases;  ///< one per positive direction
  int amplitude_band = 0;
  int eta_band = 0;
  int eta_squared_band = 0;
  int shift_band = 0;       ///< sup-norm of lambda * xi over the directions
  int state_grid = 0;       ///< grid of v_{q+1}, R_{q+1}
  int perturbation_grid = 0;

  int principal_band() const { return amplitude_band + eta_band + shift_band; }
  int temporal_band() const { return 2 * amplitude_band + eta_squared_band; }
  int perturbation_band() const { return std::max(principal_band(), temporal_band()); }
};

/// Largest amplitude band for which every quadratic term of the round fits the state grid.
int max_amplitude_band(const WaveParams& wp, int state_grid, int velocity_band = 0);

/// Builds the phases; amplitude_band < 0 picks max_amplitude_band. state_grid <= 0 picks the smallest grid
/// holding the round for the given amplitude band.
WaveBank make_wave_bank(const WaveParams& wp, int state_grid, int amplitude_band = -1, int velocity_band = 0);

/// Energy density, amplitudes and their time derivatives at one time.
struct AmplitudeSample {
  double t = 0.0;
  double psi = 0.0;
  double psi_dt = 0.0;
  int node_grid = 0;             ///< odd collocation grid 2K+1 the amplitudes interpolate
  ScalarField rho;
  std::array<ScalarField, 6> a;  ///< indexed by positive direction; a_{-xi} = a_xi
  std::array<ScalarField, 6> a_dt;
  SymTensorField stress;         ///< R_q(t)
  double identity_residual = 0.0;  ///< max over nodes of |sum a^2 (Id - xi xi) - rho Id + R| / max rho
  double max_stress_ratio = 0.0;   ///< max over nodes of |R| / rho
  double min_coefficient = 0.0;    ///< min over nodes and directions of gamma^2
};

/// Evaluates rho = eps^{-1} delta chi(|R|/delta) psi^2 and a = rho^{1/2} gamma(Id - R/rho) on the
/// amplitude nodes, then interpolates. Time derivatives use fourth-order central differences.
class AmplitudeBuilder {
 public:
  AmplitudeBuilder(std::shared_ptr<const FlowState> state, TimeCutoff psi, double delta, double eps_gamma,
                   int amplitude_band);

  AmplitudeSample at(double t) const;
  double fd_step() const { return step_; }
  const TimeCutoff& cutoff() const { return psi_; }
  double delta() const { return delta_; }
  int node_grid() const { return 2 * band_ + 1; }

 private:
  struct Nodes {
    AlignedVector<double> rho;
    std::array<AlignedVector<double>, 6> a;
    double max_ratio = 0.0;
    double min_coefficient = 0.0;
  };
  Nodes nodes(double t, const SymTensorField* stress) const;

  std::shared_ptr<const FlowState> state_;
  TimeCutoff psi_;
  double delta_;
  double eps_gamma_;
  int band_;
  double step_;
};

/// Per-direction ingredients shared by the perturbation and the stress assembly.
struct FamilyFields {
  ScalarField a, a_dt;
  ScalarField eta, eta_dt;
  ScalarField eta2, eta2_dt;
  ScalarField g, g_dt;  ///< a * eta and its time derivative
};

/// w = w^(p) + w^(c) + w^(t) at one time, with exact time derivatives given a_dt.
struct PerturbationParts {
  double t = 0.0;
  VectorField principal, corrector, temporal;
  VectorField principal_dt, corrector_dt, temporal_dt;
  std::array<FamilyFields, 6> family;

  VectorField total() const;
  VectorField total_dt() const;
};

PerturbationParts build_perturbation(const WaveBank& bank, const AmplitudeSample& amps);

/// Individual parts; each is built through build_perturbation.
VectorField principal_perturbation(const WaveBank& bank, const AmplitudeSample& amps);
VectorField corrector_perturbation(const WaveBank& bank, const AmplitudeSample& amps);
VectorField temporal_perturbation(const WaveBank& bank, const AmplitudeSample& amps);

/// (grad f) x Q_xi, with Q_xi = B e^{i lambda xi.x} + c.c., by exact index shifts.
VectorField cross_with_wave(const VectorField& grad, const Direction& d, int lambda, int n);
/// Q_xi . v by exact index shifts.
ScalarField dot_with_wave(const VectorField& v, const Direction& d, int lambda, int n);

/// Grid-sup size of the amplitudes: max over directions of sum_{j<=order} sup|grad^j a|, plus sup|a_dt|
/// when order >= 1.
double amplitude_size(const AmplitudeSample& amps, int order);

/// Measures the perturbation bounds and their ratios to the predicted parameter combinations,
/// with the amplitude sizes standing in for the unspecified polynomials.
NormReport perturbation_norm_suite(const PerturbationParts& parts, const WaveParams& wp, const AmplitudeSample& amps,
                                   double p, double delta);

}  // namespace hvci
