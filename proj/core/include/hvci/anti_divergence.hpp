#pragma once

#include <span>

#include "hvci/report.hpp"
#include "hvci/spectral.hpp"

namespace hvci {

struct AntiDivResult {
  SymTensorField tensor;
  Vec3 mean_removed{};
};

/// The anti-divergence of the single mode u e^{ik.x} (components xx, xy, xz, yy, yz, zz); zero for k = 0.
std::array<Complex, 6> anti_divergence_mode(const Wavevector& k, const CVec3& u);

/// Symmetric, trace-free tensor T of order -1 with div T = u - mean(u), applied mode by mode.
AntiDivResult anti_divergence(const VectorField& u);

/// Shorthand for anti_divergence(u).tensor.
SymTensorField anti_div(const VectorField& u);

/// || |grad|^{-1} P_{!=0}(a P_{>=k} f) ||_{L^p}.
double commutator_left_side(const ScalarField& a, const ScalarField& f, double k, double p);

/// Sup over the grid of the pointwise Frobenius norm of the Hessian of a.
double hessian_sup(const ScalarField& a, int m = 0);

/// Sweeps k, recording the left side, the bound k^{-1} ||grad^2 a||_inf ||f||_p, their ratio,
/// and the log-log slope of the left side against k (expected near -1).
NormReport commutator_decay_probe(const ScalarField& a, const ScalarField& f, std::span<const double> ks, double p,
                                  double slope_tolerance = 0.2);

}  // namespace hvci
