#pragma once

#include <array>
#include <cstdint>

#include "hvci/spectral.hpp"

namespace hvci {

/// Upper triangle of a symmetric 3x3 matrix: xx, xy, xz, yy, yz, zz.
using Sym3 = std::array<double, 6>;

Sym3 identity_sym3();
double frobenius_norm(const Sym3& m);
Sym3 outer_sym3(const Vec3& a, const Vec3& b);
inline double sym3_at(const Sym3& m, int i, int j) { return m[SymTensorField::slot(i, j)]; }

/// One of the twelve wave directions with its companion frame.
struct Direction {
  int index = 0;        ///< 0..5 for the positive family; index + 6 is the antipode.
  int sign = 1;         ///< +1 in the positive family, -1 otherwise.
  Wavevector xi5{};     ///< 5 * xi, an integer vector.
  Wavevector a5{};      ///< 5 * A.
  Vec3 xi{};
  Vec3 a{};
  Vec3 xi_cross_a{};
  CVec3 b{};            ///< (A + i xi x A) / sqrt(2).

  int family_index() const { return index % 6; }
  /// Integer wavevector lambda * xi; lambda must be a multiple of 5.
  Wavevector frequency(int lambda) const;
};

/// The twelve directions in a fixed order: the positive family first, then the antipodes.
std::array<Direction, 12> build_directions();
const std::array<Direction, 12>& directions();
const Direction& antipode(const Direction& d);

/// Coefficients c = gamma^2 of the decomposition R = sum over the positive family of c (Id - xi xi).
struct GammaSolution {
  std::array<double, 6> c{};
  std::array<double, 6> gamma{};
  double epsilon_gamma = 0.0;

  double gamma_of(const Direction& d) const { return gamma[d.family_index()]; }
};

/// Exact linear realization of the decomposition over the six positive directions.
class GammaMap {
 public:
  GammaMap();
  /// Raw linear solve; no positivity check.
  std::array<double, 6> coefficients(const Sym3& r) const;
  Sym3 reconstruct(const std::array<double, 6>& c) const;
  /// Frobenius representer of the linear functional R -> c_xi.
  Sym3 representer(int family_index) const;
  double condition_number() const { return condition_; }

 private:
  std::array<std::array<double, 6>, 6> inverse_{};
  std::array<Sym3, 6> columns_{};
  double condition_ = 0.0;
};

const GammaMap& gamma_map();

/// Solves for c and gamma; throws OutsideBall if any coefficient is not positive.
GammaSolution gamma_coefficients(const Sym3& r);

struct EpsilonGammaEstimate {
  double analytic_frobenius = 0.0;  ///< exact radius where the first coefficient reaches zero
  double sampled_frobenius = 0.0;   ///< minimum root over random unit perturbations
  double analytic_operator = 0.0;   ///< same radius measured in the operator norm
  double value = 0.0;               ///< 0.95 * analytic_frobenius
  int samples = 0;
};

EpsilonGammaEstimate estimate_epsilon_gamma(int samples = 10000, std::uint64_t seed = 20240917);

/// Cached conservative radius used by every downstream construction.
double epsilon_gamma();

}  // namespace hvci
