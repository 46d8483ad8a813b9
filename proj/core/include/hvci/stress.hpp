#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hvci/perturbation.hpp"
#include "hvci/report.hpp"
#include "hvci/state.hpp"

namespace hvci {

/// Named scalar summaries of one tensor component.
struct ComponentNorms {
  std::string name;
  double l1 = 0.0;
  double l2 = 0.0;
  double lp = 0.0;
};

/// R_{q+1} = linear + corrector + oscillation and p_{q+1} - p_q at one time.
struct StressDecomposition {
  double t = 0.0;
  SymTensorField linear;
  SymTensorField corrector;
  SymTensorField oscillation;
  ScalarField pressure_increment;
  std::vector<ComponentNorms> components;
  double family_mean_defect = 0.0;  ///< see OscillationError

  SymTensorField total(int n) const;
};

/// R(nu |grad|^{2 theta} w + lambda^{-1} curl dt w^(p)) + v (x) w + w (x) v.
SymTensorField linear_error(const PerturbationParts& parts, const VectorField& velocity, const WaveParams& wp,
                            double theta, double nu);

/// (w^(c) + w^(t)) (x) w + w^(p) (x) (w^(c) + w^(t)).
SymTensorField corrector_error(const PerturbationParts& parts);

/// Oscillation stress and its pressure Pi, with div(w^(p) (x) w^(p) + R_q) + dt w^(t) = div T + grad Pi.
struct OscillationError {
  SymTensorField tensor;
  ScalarField pressure;
  std::vector<std::pair<std::string, VectorField>> families;  ///< the six forcing families before R
  SymTensorField interpolation;                              ///< sum a^2 (Id - xi xi) - rho Id + R_q
  std::vector<std::pair<std::string, ScalarField>> pressures;
  /// |sum of the family means - mu^{-1} mean(dt sum a^2 eta^2 xi)|; zero up to rounding.
  double family_mean_defect = 0.0;
};

/// `stress` is R_q at the sample time. Families are kept only when `keep_families`.
OscillationError oscillation_error(const WaveBank& bank, const AmplitudeSample& amps, const PerturbationParts& parts,
                                   const SymTensorField& stress, bool keep_families = false);

/// Full decomposition at one time. Norms use exponent p.
StressDecomposition assemble_new_stress(const WaveBank& bank, const AmplitudeSample& amps,
                                        const PerturbationParts& parts, const FlowSample& previous, double theta,
                                        double nu, double p);

/// L^p norms of R(nu |grad|^{2 theta} w) for the full perturbation w, assembled mode by mode without keeping the
/// separate parts; meant for large lambda where build_perturbation would not fit in memory.
std::vector<double> hyperviscous_stress_norms(const WaveBank& bank, const AmplitudeSample& amps, double theta,
                                              double nu, std::span<const double> ps);

/// Relative L^2 size of dt v + div(v (x) v) + grad p + nu |grad|^{2 theta} v - div R, normalized by the sum of the
/// L^2 norms of the five terms.
double momentum_residual(const FlowSample& s, double theta, double nu);

NormReport residual_check(const FlowState& state, double theta, double nu, std::span<const double> times,
                          double tolerance = 1e-6);

/// v_{q+1} = v_q + w with R_{q+1}, p_{q+1} assembled on demand at any time.
class StepState final : public FlowState {
 public:
  struct Evaluation {
    FlowSample sample;
    PerturbationParts parts;
    AmplitudeSample amplitudes;
    StressDecomposition decomposition;
  };

  StepState(std::shared_ptr<const FlowState> previous, WaveBank bank, AmplitudeBuilder amplitudes, double theta,
            double nu, double norm_exponent);

  int grid_size() const override { return bank_.state_grid; }
  FlowSample sample(double t) const override { return evaluate(t).sample; }
  IntervalSet velocity_support() const override;
  IntervalSet stress_support() const override;

  Evaluation evaluate(double t) const;
  const WaveBank& bank() const { return bank_; }
  const AmplitudeBuilder& amplitudes() const { return amplitudes_; }
  const FlowState& previous() const { return *previous_; }

 private:
  std::shared_ptr<const FlowState> previous_;
  WaveBank bank_;
  AmplitudeBuilder amplitudes_;
  double theta_, nu_, p_;
};

}  // namespace hvci
