#pragma once

#include <memory>

#include "hvci/intervals.hpp"
#include "hvci/spectral.hpp"

namespace hvci {

/// Velocity, its time derivative, pressure and stress at one time.
struct FlowSample {
  double t = 0.0;
  VectorField velocity;
  VectorField velocity_dt;
  ScalarField pressure;
  SymTensorField stress;
};

/// A smooth solution (v, p, R) of the approximate system, evaluable at any time.
class FlowState {
 public:
  virtual ~FlowState() = default;
  virtual int grid_size() const = 0;
  virtual FlowSample sample(double t) const = 0;
  /// Stress alone; implementations may make this cheaper than sample().
  virtual SymTensorField stress(double t) const { return sample(t).stress; }
  virtual IntervalSet velocity_support() const = 0;
  virtual IntervalSet stress_support() const = 0;
};

/// (v_q, R_q, p_q) with the size delta_{q+1} the next round must achieve.
struct IterationState {
  std::shared_ptr<const FlowState> flow;
  int q = 0;
  double theta = 1.0;
  double nu = 1.0;
  double delta_next = 0.0;
};

}  // namespace hvci
