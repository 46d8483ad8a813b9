#pragma once

#include <cstdint>
#include <span>

#include "hvci/cutoffs.hpp"
#include "hvci/report.hpp"
#include "hvci/waves.hpp"

namespace hvci {

/// Curl eigen-relation and divergence of the twelve real Beltrami pairs at each lambda.
NormReport beltrami_suite(std::span<const int> lambdas, double tolerance = 1e-12);

/// Reconstruction on random matrices within half the gamma radius, antipodal symmetry and the identity case.
NormReport geometry_suite(int samples = 1000, std::uint64_t seed = 7, double tolerance = 1e-12);

/// Mean of eta^2, the transport identity and exact band support of the twelve waves at the given times.
/// The tensor-band fact is recorded as a soft certificate.
NormReport intermittency_suite(const WaveParams& wp, std::span<const double> times, double mean_tolerance = 1e-12,
                               double transport_tolerance = 1e-13);

/// L^p norms of D_r against r, one fit per exponent.
NormReport dirichlet_suite(std::span<const int> rs, std::span<const double> ps, double relative_tolerance = 0.1);

/// Divergence inversion and trace on random band-limited fields, plus the commutator decay probe.
NormReport anti_divergence_suite(int samples = 100, std::uint64_t seed = 11, double tolerance = 1e-12,
                                 double slope_tolerance = 0.2);

/// Alpha intervals, threshold rejection, the p-inequality slacks and the delta sequence.
NormReport scheduler_suite();

/// psi = 1 on the support, vanishing outside the delta-neighborhood and sup |psi'| delta <= bound.
NormReport cutoff_suite(const TimeCutoff& psi, double slope_bound = 2.0);

}  // namespace hvci
