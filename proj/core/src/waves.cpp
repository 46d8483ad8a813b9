#include "hvci/waves.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace hvci {

std::string WaveFlags::failures() const {
  std::ostringstream os;
  if (!periodic) os << " periodicity(lambda in 5N, lambda*sigma in 5N)";
  if (!r_above_one) os << " r>1";
  if (!sigma_r_below_one) os << " sigma*r<1";
  if (!band_support) os << " band-support(sigma*r<=1/2)";
  if (!strengthened_band) os << " 2*sqrt(3)*lambda*sigma*r<=lambda/2";
  if (!chain) os << " r<lambda<mu<lambda^2";
  if (!mu_above_r32) os << " r^(3/2)<=mu";
  return os.str();
}

WaveFlags check_wave_params(const WaveParams& wp) {
  WaveFlags f;
  f.periodic = wp.lambda > 0 && wp.lambda % 5 == 0 && wp.sigma_inv > 1 && wp.lambda % wp.sigma_inv == 0 &&
               (wp.lambda / wp.sigma_inv) % 5 == 0;
  f.r_above_one = wp.r > 1;
  f.sigma_r_below_one = wp.sigma_inv > 0 && wp.r < wp.sigma_inv;
  // |lambda xi + lambda sigma Rot(n)|^2 = lambda^2 ((1 + sigma n1)^2 + sigma^2 (n2^2 + n3^2)).
  f.band_support = wp.sigma_inv > 0 && 2 * wp.r <= wp.sigma_inv;
  f.strengthened_band = 2.0 * std::sqrt(3.0) * wp.lambda * wp.r <= 0.5 * wp.lambda * wp.sigma_inv;
  f.chain = wp.r < wp.lambda && wp.lambda < wp.mu && wp.mu < double(wp.lambda) * wp.lambda;
  f.mu_above_r32 = std::pow(double(wp.r), 1.5) <= wp.mu;
  return f;
}

void require_admissible(const WaveParams& wp) {
  const WaveFlags f = check_wave_params(wp);
  if (!f.hard()) {
    WaveFlags hard_only = f;
    hard_only.strengthened_band = hard_only.chain = hard_only.mu_above_r32 = true;
    throw ParamRejected("wave parameters rejected:" + hard_only.failures());
  }
}

ScalarField dirichlet_kernel(int r, int n) {
  if (r < 1) throw std::invalid_argument("Dirichlet kernel needs r >= 1");
  if (r > max_band(n)) throw BandwidthOverflow("Dirichlet kernel does not fit the grid", grid_for_band(r));
  ScalarField d(n, r);
  const double amp = std::pow(2.0 * r + 1.0, -1.5);
  d.apply([amp](const Wavevector&, Complex) { return Complex(amp); });
  return d;
}

namespace {

Wavevector add(const Wavevector& a, const Wavevector& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

Wavevector combine(const Wavevector& e1, const Wavevector& e2, const Wavevector& e3, int n1, int n2, int n3) {
  return {n1 * e1[0] + n2 * e2[0] + n3 * e3[0], n1 * e1[1] + n2 * e2[1] + n3 * e3[1],
          n1 * e1[2] + n2 * e2[2] + n3 * e3[2]};
}

}  // namespace

IntermittentPhase::IntermittentPhase(const Direction& d, const WaveParams& wp) : direction_(d), params_(wp) {
  require_admissible(wp);
  const Direction& base = directions()[d.family_index()];
  const int ls = wp.lambda_sigma();
  if (ls % 5) throw ParamRejected("lambda*sigma must be a multiple of 5");
  const int s = ls / 5;
  // xi x A is a unit coordinate vector, so every rotated mode is an integer vector.
  const Wavevector cross5{base.xi5[1] * base.a5[2] - base.xi5[2] * base.a5[1],
                          base.xi5[2] * base.a5[0] - base.xi5[0] * base.a5[2],
                          base.xi5[0] * base.a5[1] - base.xi5[1] * base.a5[0]};
  for (int i = 0; i < 3; ++i) {
    if (cross5[i] % 25) throw ParamRejected("rotated kernel is not on the integer lattice");
    e1_[i] = s * base.xi5[i];
    e2_[i] = s * base.a5[i];
    e3_[i] = ls * (cross5[i] / 25);
  }
  const int r = wp.r;
  for (int n1 = -r; n1 <= r; ++n1)
    for (int n2 = -r; n2 <= r; ++n2)
      for (int n3 = -r; n3 <= r; ++n3) {
        const Wavevector k = combine(e1_, e2_, e3_, n1, n2, n3);
        band_ = std::max(band_, sup_norm(k));
        modes_.push_back({k, n1});
      }
  for (int n1 = -2 * r; n1 <= 2 * r; ++n1)
    for (int n2 = -2 * r; n2 <= 2 * r; ++n2)
      for (int n3 = -2 * r; n3 <= 2 * r; ++n3)
        squared_band_ = std::max(squared_band_, sup_norm(combine(e1_, e2_, e3_, n1, n2, n3)));
  amplitude_ = std::pow(2.0 * r + 1.0, -1.5);
  rate_ = double(ls) * wp.mu;
}

ScalarField IntermittentPhase::build(double t, int n, bool derivative) const {
  if (band_ > max_band(n)) throw BandwidthOverflow("intermittent phase does not fit the grid", grid_for_band(band_));
  ScalarField out(n, band_);
  for (const auto& m : modes_) {
    const double w = rate_ * m.n1;
    Complex c = amplitude_ * std::polar(1.0, w * t);
    if (derivative) c *= Complex(0.0, w);
    out.accumulate_symmetric(m.k, c);
  }
  out.enforce_hermitian();
  return out;
}

ScalarField IntermittentPhase::field(double t, int n) const { return build(t, n, false); }
ScalarField IntermittentPhase::time_derivative(double t, int n) const { return build(t, n, true); }

ScalarField IntermittentPhase::build_squared(double t, int n, bool derivative) const {
  if (squared_band_ > max_band(n))
    throw BandwidthOverflow("squared phase does not fit the grid", grid_for_band(squared_band_));
  ScalarField out(n, squared_band_);
  const int r2 = 2 * params_.r;
  const double side = 2.0 * params_.r + 1.0;
  const double norm = 1.0 / (side * side * side);
  for (int m1 = -r2; m1 <= r2; ++m1)
    for (int m2 = -r2; m2 <= r2; ++m2)
      for (int m3 = -r2; m3 <= r2; ++m3) {
        const Wavevector k = combine(e1_, e2_, e3_, m1, m2, m3);
        if (k[2] < 0) continue;
        const double weight = norm * (side - std::abs(m1)) * (side - std::abs(m2)) * (side - std::abs(m3));
        const double w = rate_ * m1;
        Complex c = weight * std::polar(1.0, w * t);
        if (derivative) c *= Complex(0.0, w);
        out.accumulate_symmetric(k, c);
      }
  out.enforce_hermitian();
  return out;
}

ScalarField IntermittentPhase::squared(double t, int n) const { return build_squared(t, n, false); }
ScalarField IntermittentPhase::squared_time_derivative(double t, int n) const { return build_squared(t, n, true); }

VectorMode beltrami_mode(const Direction& d, int lambda) {
  if (lambda <= 0 || lambda % 5) throw ParamRejected("Beltrami frequency must be a positive multiple of 5");
  return {d.frequency(lambda), d.b};
}

VectorField beltrami_wave(const Direction& d, int lambda, int n) {
  const VectorMode w = beltrami_mode(d, lambda);
  VectorField out;
  for (int i = 0; i < 3; ++i) {
    out[i] = ScalarField(n, sup_norm(w.k));
    out[i].set_coeff(w.k, w.c[i]);
  }
  return out;
}

VectorField intermittent_beltrami(const IntermittentPhase& eta, double t, int n) {
  const int lambda = eta.params().lambda;
  const int b = eta.band() + sup_norm(eta.direction().frequency(lambda));
  if (b > max_band(n)) throw BandwidthOverflow("intermittent wave does not fit the grid", grid_for_band(b));
  const ScalarField phase = eta.field(t, n);
  return multiply_dealiased(phase, beltrami_wave(eta.direction(), lambda, n), n);
}

VectorField modulate_beltrami(const ScalarField& f, const Direction& d, int lambda, int n) {
  const Wavevector k = d.frequency(lambda);
  return {modulate(f, k, d.b[0], n), modulate(f, k, d.b[1], n), modulate(f, k, d.b[2], n)};
}

std::vector<VectorMode> intermittent_beltrami_modes(const IntermittentPhase& eta, double t) {
  const VectorMode w = beltrami_mode(eta.direction(), eta.params().lambda);
  std::vector<VectorMode> out;
  out.reserve(eta.modes().size());
  for (const auto& m : eta.modes()) {
    const Complex c = eta.amplitude() * std::polar(1.0, eta.rate() * m.n1 * t);
    out.push_back({add(m.k, w.k), {c * w.c[0], c * w.c[1], c * w.c[2]}});
  }
  return out;
}

double band_leak(const IntermittentPhase& eta, double t, double lo, double hi) {
  double leak = 0.0;
  for (const auto& m : intermittent_beltrami_modes(eta, t)) {
    const double kk = norm(m.k);
    if (kk < lo || kk >= hi) leak += std::abs(m.c[0]) + std::abs(m.c[1]) + std::abs(m.c[2]);
  }
  return leak;
}

namespace {

std::map<Wavevector, std::array<Complex, 9>> tensor_modes(const IntermittentPhase& a, const IntermittentPhase& b,
                                                          double t) {
  const auto ma = intermittent_beltrami_modes(a, t);
  const auto mb = intermittent_beltrami_modes(b, t);
  std::map<Wavevector, std::array<Complex, 9>> acc;
  for (const auto& x : ma)
    for (const auto& y : mb) {
      auto& slot = acc[add(x.k, y.k)];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) slot[3 * i + j] += x.c[i] * y.c[j];
    }
  return acc;
}

double magnitude(const std::array<Complex, 9>& c) {
  double s = 0.0;
  for (const auto& v : c) s += std::abs(v);
  return s;
}

}  // namespace

double tensor_band_leak(const IntermittentPhase& a, const IntermittentPhase& b, double t, double lo, double hi) {
  double leak = 0.0;
  for (const auto& [k, c] : tensor_modes(a, b, t)) {
    const double kk = norm(k);
    if (kk < lo || kk >= hi) leak += magnitude(c);
  }
  return leak;
}

double tensor_min_frequency(const IntermittentPhase& a, const IntermittentPhase& b, double t) {
  const auto modes = tensor_modes(a, b, t);
  double total = 0.0;
  for (const auto& [k, c] : modes) total = std::max(total, magnitude(c));
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [k, c] : modes)
    if (magnitude(c) > 1e-14 * total) best = std::min(best, norm(k));
  return best;
}

double slope_tolerance(double predicted, double relative) {
  return std::max(relative * std::abs(predicted), 1e-9);
}

NormReport measure_norm_scaling(const ScalingFamily& family, std::span<const double> ps,
                                std::span<const double> parameters) {
  std::vector<std::vector<double>> table;
  for (double x : parameters) table.push_back(family.measure(x, ps));
  NormReport report;
  for (std::size_t j = 0; j < ps.size(); ++j) {
    std::vector<double> ys;
    for (std::size_t i = 0; i < parameters.size(); ++i) {
      ys.push_back(table[i][j]);
      std::ostringstream name;
      name << family.name << ".p=" << ps[j] << "." << family.variable << "=" << parameters[i];
      report.add_norm(name.str(), table[i][j]);
    }
    const double predicted = family.predicted_exponent(ps[j]);
    std::ostringstream name;
    name << family.name << ".p=" << ps[j];
    report.add_fit(make_fit(name.str(), family.variable, {parameters.begin(), parameters.end()}, std::move(ys),
                            predicted, slope_tolerance(predicted, family.relative_tolerance)));
  }
  return report;
}

}  // namespace hvci
