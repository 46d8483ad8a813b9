#include "hvci/geometry.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hvci {

Sym3 identity_sym3() { return {1, 0, 0, 1, 0, 1}; }

double frobenius_norm(const Sym3& m) {
  return std::sqrt(m[0] * m[0] + m[3] * m[3] + m[5] * m[5] + 2 * (m[1] * m[1] + m[2] * m[2] + m[4] * m[4]));
}

Sym3 outer_sym3(const Vec3& a, const Vec3& b) {
  Sym3 m{};
  for (int s = 0; s < 6; ++s) {
    const auto [i, j] = SymTensorField::pairs[s];
    m[s] = 0.5 * (a[i] * b[j] + a[j] * b[i]);
  }
  return m;
}

Wavevector Direction::frequency(int lambda) const {
  if (lambda % 5) throw std::invalid_argument("wave frequency must be a multiple of 5");
  const int s = lambda / 5;
  return {s * xi5[0], s * xi5[1], s * xi5[2]};
}

namespace {

Vec3 scaled(const Wavevector& v) { return {v[0] / 5.0, v[1] / 5.0, v[2] / 5.0}; }

Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

}  // namespace

std::array<Direction, 12> build_directions() {
  const std::array<std::pair<Wavevector, Wavevector>, 6> family{{
      {{3, 4, 0}, {-4, 3, 0}},
      {{3, -4, 0}, {4, 3, 0}},
      {{0, 3, 4}, {0, -4, 3}},
      {{0, 3, -4}, {0, 4, 3}},
      {{4, 0, 3}, {3, 0, -4}},
      {{-4, 0, 3}, {3, 0, 4}},
  }};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::array<Direction, 12> out;
  for (int i = 0; i < 12; ++i) {
    const auto& [xi5, a5] = family[i % 6];
    Direction& d = out[i];
    d.index = i;
    d.sign = i < 6 ? 1 : -1;
    d.xi5 = i < 6 ? xi5 : Wavevector{-xi5[0], -xi5[1], -xi5[2]};
    d.a5 = a5;
    d.xi = scaled(d.xi5);
    d.a = scaled(d.a5);
    d.xi_cross_a = cross(d.xi, d.a);
    for (int k = 0; k < 3; ++k) d.b[k] = inv_sqrt2 * Complex(d.a[k], d.xi_cross_a[k]);
  }
  return out;
}

const std::array<Direction, 12>& directions() {
  static const std::array<Direction, 12> all = build_directions();
  return all;
}

const Direction& antipode(const Direction& d) { return directions()[(d.index + 6) % 12]; }

GammaMap::GammaMap() {
  Eigen::Matrix<double, 6, 6> m;
  const auto& dirs = directions();
  for (int c = 0; c < 6; ++c) {
    Sym3 col = identity_sym3();
    const Sym3 xx = outer_sym3(dirs[c].xi, dirs[c].xi);
    for (int s = 0; s < 6; ++s) col[s] -= xx[s];
    columns_[c] = col;
    for (int s = 0; s < 6; ++s) m(s, c) = col[s];
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd(m);
  const auto sv = svd.singularValues();
  if (sv(5) <= 0) throw SingularSystem("direction matrix is singular");
  condition_ = sv(0) / sv(5);
  // The directions are rational, so the inverse is computed exactly and rounded once.
  using Q = boost::multiprecision::cpp_rational;
  std::array<std::array<Q, 12>, 6> aug;
  for (int s = 0; s < 6; ++s) {
    const auto [i, j] = SymTensorField::pairs[s];
    for (int c = 0; c < 6; ++c) {
      const auto& x = dirs[c].xi5;
      aug[s][c] = Q(i == j ? 1 : 0) - Q(x[i] * x[j], 25);
    }
    for (int c = 0; c < 6; ++c) aug[s][6 + c] = Q(s == c ? 1 : 0);
  }
  for (int col = 0; col < 6; ++col) {
    int piv = col;
    while (piv < 6 && aug[piv][col] == 0) ++piv;
    if (piv == 6) throw SingularSystem("direction matrix is singular");
    std::swap(aug[piv], aug[col]);
    const Q lead = aug[col][col];
    for (auto& v : aug[col]) v /= lead;
    for (int row = 0; row < 6; ++row) {
      if (row == col || aug[row][col] == 0) continue;
      const Q f = aug[row][col];
      for (int c = 0; c < 12; ++c) aug[row][c] -= f * aug[col][c];
    }
  }
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) inverse_[r][c] = aug[r][6 + c].convert_to<double>();
}

std::array<double, 6> GammaMap::coefficients(const Sym3& r) const {
  // Id maps to 1/4 on every direction; expanding around it keeps that case exact.
  Sym3 offset = r;
  offset[0] -= 1.0;
  offset[3] -= 1.0;
  offset[5] -= 1.0;
  std::array<double, 6> c;
  c.fill(0.25);
  for (int i = 0; i < 6; ++i)
    for (int s = 0; s < 6; ++s) c[i] += inverse_[i][s] * offset[s];
  return c;
}

Sym3 GammaMap::reconstruct(const std::array<double, 6>& c) const {
  Sym3 r{};
  for (int i = 0; i < 6; ++i)
    for (int s = 0; s < 6; ++s) r[s] += c[i] * columns_[i][s];
  return r;
}

Sym3 GammaMap::representer(int family_index) const {
  const auto& row = inverse_[family_index];
  Sym3 l = row;
  l[1] *= 0.5;
  l[2] *= 0.5;
  l[4] *= 0.5;
  return l;
}

const GammaMap& gamma_map() {
  static const GammaMap map;
  return map;
}

GammaSolution gamma_coefficients(const Sym3& r) {
  GammaSolution sol;
  sol.c = gamma_map().coefficients(r);
  sol.epsilon_gamma = epsilon_gamma();
  for (int i = 0; i < 6; ++i) {
    if (!(sol.c[i] > 0)) throw OutsideBall("geometric coefficient " + std::to_string(i) + " is not positive");
    sol.gamma[i] = std::sqrt(sol.c[i]);
  }
  return sol;
}

EpsilonGammaEstimate estimate_epsilon_gamma(int samples, std::uint64_t seed) {
  const GammaMap& map = gamma_map();
  EpsilonGammaEstimate est;
  est.samples = samples;
  double worst_frob = 0.0, worst_nuclear = 0.0;
  for (int i = 0; i < 6; ++i) {
    const Sym3 l = map.representer(i);
    worst_frob = std::max(worst_frob, frobenius_norm(l));
    Eigen::Matrix3d lm;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) lm(a, b) = sym3_at(l, a, b);
    const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(lm).eigenvalues();
    worst_nuclear = std::max(worst_nuclear, ev.cwiseAbs().sum());
  }
  // c(Id) = 1/4, so the first coefficient hits zero at distance (1/4) / |representer|.
  est.analytic_frobenius = 0.25 / worst_frob;
  est.analytic_operator = 0.25 / worst_nuclear;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Sym3 dir;
    for (auto& v : dir) v = gauss(rng);
    const double f = frobenius_norm(dir);
    for (auto& v : dir) v /= f;
    const auto slope = map.coefficients(dir);
    for (int i = 0; i < 6; ++i)
      if (slope[i] < 0) best = std::min(best, 0.25 / -slope[i]);
  }
  est.sampled_frobenius = best;
  est.value = 0.95 * est.analytic_frobenius;
  return est;
}

double epsilon_gamma() {
  static const double value = estimate_epsilon_gamma(0).value;
  return value;
}

}  // namespace hvci
