#include "hvci/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hvci/geometry.hpp"

namespace hvci {

namespace {

struct PhaseBands {
  int eta = 0;
  int eta_squared = 0;
  int shift = 0;
};

PhaseBands phase_bands(const std::vector<IntermittentPhase>& phases, int lambda) {
  PhaseBands b;
  for (const auto& ph : phases) {
    b.eta = std::max(b.eta, ph.band());
    b.eta_squared = std::max(b.eta_squared, ph.squared_band());
    b.shift = std::max(b.shift, sup_norm(ph.direction().frequency(lambda)));
  }
  return b;
}

std::vector<IntermittentPhase> positive_phases(const WaveParams& wp) {
  std::vector<IntermittentPhase> out;
  for (int i = 0; i < 6; ++i) out.emplace_back(directions()[i], wp);
  return out;
}

/// Largest band any quadratic expression of the round reaches for a given amplitude band.
int round_band(int k, const PhaseBands& b, int velocity_band) {
  return 2 * std::max({k + b.eta + b.shift, 2 * k + b.eta_squared, velocity_band});
}

}  // namespace

int max_amplitude_band(const WaveParams& wp, int state_grid, int velocity_band) {
  const PhaseBands b = phase_bands(positive_phases(wp), wp.lambda);
  const int limit = max_band(state_grid);
  for (int k = limit; k >= 0; --k)
    if (round_band(k, b, velocity_band) <= limit) return k;
  const int need = round_band(0, b, velocity_band);
  throw BandwidthOverflow("state grid " + std::to_string(state_grid) + " cannot hold the round's products (band " +
                              std::to_string(need) + ")",
                          grid_for_band(need));
}

WaveBank make_wave_bank(const WaveParams& wp, int state_grid, int amplitude_band, int velocity_band) {
  WaveBank bank;
  bank.params = wp;
  bank.phases = positive_phases(wp);
  const PhaseBands b = phase_bands(bank.phases, wp.lambda);
  bank.eta_band = b.eta;
  bank.eta_squared_band = b.eta_squared;
  bank.shift_band = b.shift;
  if (state_grid <= 0) {
    if (amplitude_band < 0) throw std::invalid_argument("an automatic state grid needs an explicit amplitude band");
    state_grid = fit_grid(round_band(amplitude_band, b, velocity_band));
  }
  bank.state_grid = state_grid;
  bank.amplitude_band =
      amplitude_band < 0 ? max_amplitude_band(wp, state_grid, velocity_band) : amplitude_band;
  const int need = round_band(bank.amplitude_band, b, velocity_band);
  if (need > max_band(state_grid))
    throw BandwidthOverflow("amplitude band " + std::to_string(bank.amplitude_band) + " overflows state grid " +
                                std::to_string(state_grid),
                            grid_for_band(need));
  bank.perturbation_grid = fit_grid(bank.perturbation_band());
  return bank;
}

// ---- amplitudes ----------------------------------------------------------------------

AmplitudeBuilder::AmplitudeBuilder(std::shared_ptr<const FlowState> state, TimeCutoff psi, double delta,
                                   double eps_gamma, int amplitude_band)
    : state_(std::move(state)), psi_(std::move(psi)), delta_(delta), eps_gamma_(eps_gamma), band_(amplitude_band) {
  if (!state_) throw std::invalid_argument("amplitude builder needs a state");
  if (!(eps_gamma > 0)) throw std::invalid_argument("eps_gamma must be positive");
  const double w = psi_.ramp_width();
  step_ = 1e-3 * (w > 0 ? w : 1.0);
}

AmplitudeBuilder::Nodes AmplitudeBuilder::nodes(double t, const SymTensorField* stress) const {
  const int m = node_grid();
  const std::size_t count = std::size_t(m) * m * m;
  Nodes out;
  out.rho.assign(count, 0.0);
  for (auto& a : out.a) a.assign(count, 0.0);
  out.min_coefficient = 0.0;
  const double psi = psi_(t);
  if (psi == 0.0) return out;

  SymTensorField local;
  if (!stress) {
    local = state_->stress(t);
    stress = &local;
  }
  if (stress->band() > band_)
    throw BandwidthOverflow("stress band " + std::to_string(stress->band()) + " exceeds amplitude band " +
                                std::to_string(band_),
                            grid_for_band(stress->band()));
  std::array<AlignedVector<double>, 6> r;
  for (int s = 0; s < 6; ++s) r[s] = stress->c[s].to_physical(m);

  const GammaMap& gm = gamma_map();
  const Sym3 id = identity_sym3();
  double min_c = INFINITY;
  for (std::size_t q = 0; q < count; ++q) {
    Sym3 rq;
    for (int s = 0; s < 6; ++s) rq[s] = r[s][q];
    const double size = frobenius_norm(rq);
    const double rho = delta_ / eps_gamma_ * gauge(size / delta_) * psi * psi;
    Sym3 target;
    for (int s = 0; s < 6; ++s) target[s] = id[s] - rq[s] / rho;
    const auto c = gm.coefficients(target);
    for (int i = 0; i < 6; ++i) {
      if (!(c[i] > 0)) {
        std::ostringstream os;
        os << "Id - R/rho leaves the geometric ball at t=" << t << ", node " << q << " of " << m << "^3, direction "
           << i << " (coefficient " << c[i] << ", |R|/rho=" << size / rho << ")";
        throw OutsideBall(os.str());
      }
      out.a[i][q] = std::sqrt(rho * c[i]);
      min_c = std::min(min_c, c[i]);
    }
    out.rho[q] = rho;
    out.max_ratio = std::max(out.max_ratio, size / rho);
  }
  out.min_coefficient = min_c;
  return out;
}

AmplitudeSample AmplitudeBuilder::at(double t) const {
  const int m = node_grid();
  const int n = fit_grid(band_);
  AmplitudeSample s;
  s.t = t;
  s.psi = psi_(t);
  s.psi_dt = psi_.derivative(t);
  s.node_grid = m;
  if (s.psi == 0.0) {
    for (auto& c : s.stress.c) c = ScalarField(n, 0);
  } else {
    s.stress = state_->stress(t);
  }
  for (auto& c : s.stress.c) {
    if (c.band() > band_)
      throw BandwidthOverflow("stress band " + std::to_string(c.band()) + " exceeds amplitude band " +
                                  std::to_string(band_),
                              grid_for_band(c.band()));
    c = c.resized(n);
  }

  const Nodes centre = nodes(t, &s.stress);
  s.rho = ScalarField::from_physical(centre.rho, m, n, band_);
  s.max_stress_ratio = centre.max_ratio;
  s.min_coefficient = centre.min_coefficient;
  for (int i = 0; i < 6; ++i) s.a[i] = ScalarField::from_physical(centre.a[i], m, n, band_);

  // Fourth-order central difference of the node amplitudes.
  const double h = step_;
  const std::array<double, 4> offsets{-2 * h, -h, h, 2 * h};
  const std::array<double, 4> weights{1.0, -8.0, 8.0, -1.0};
  std::array<AlignedVector<double>, 6> dot;
  for (auto& d : dot) d.assign(centre.rho.size(), 0.0);
  for (int j = 0; j < 4; ++j) {
    const Nodes side = nodes(t + offsets[j], nullptr);
    for (int i = 0; i < 6; ++i)
      for (std::size_t q = 0; q < dot[i].size(); ++q) dot[i][q] += weights[j] * side.a[i][q];
  }
  for (int i = 0; i < 6; ++i) {
    for (double& v : dot[i]) v /= 12.0 * h;
    s.a_dt[i] = ScalarField::from_physical(dot[i], m, n, band_);
  }

  // Identity check on the interpolants re-sampled at the nodes.
  const auto rho = s.rho.to_physical(m);
  std::array<AlignedVector<double>, 6> r, a;
  for (int k = 0; k < 6; ++k) r[k] = s.stress.c[k].to_physical(m);
  for (int i = 0; i < 6; ++i) a[i] = s.a[i].to_physical(m);
  std::array<Sym3, 6> frames;
  for (int i = 0; i < 6; ++i) {
    const Vec3& xi = directions()[i].xi;
    const Sym3 xx = outer_sym3(xi, xi);
    const Sym3 id = identity_sym3();
    for (int k = 0; k < 6; ++k) frames[i][k] = id[k] - xx[k];
  }
  double worst = 0.0, scale = 0.0;
  for (std::size_t q = 0; q < rho.size(); ++q) {
    scale = std::max(scale, std::abs(rho[q]));
    for (int k = 0; k < 6; ++k) {
      double lhs = 0.0;
      for (int i = 0; i < 6; ++i) lhs += a[i][q] * a[i][q] * frames[i][k];
      const double rhs = (k == 0 || k == 3 || k == 5 ? rho[q] : 0.0) - r[k][q];
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  s.identity_residual = scale > 0 ? worst / scale : worst;
  return s;
}

// ---- perturbation --------------------------------------------------------------------

VectorField cross_with_wave(const VectorField& grad, const Direction& d, int lambda, int n) {
  const Wavevector k = d.frequency(lambda);
  VectorField out;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, l = (i + 2) % 3;
    out[i] = modulate(grad[j], k, d.b[l], n) - modulate(grad[l], k, d.b[j], n);
  }
  return out;
}

ScalarField dot_with_wave(const VectorField& v, const Direction& d, int lambda, int n) {
  const Wavevector k = d.frequency(lambda);
  ScalarField out = modulate(v[0], k, d.b[0], n);
  out += modulate(v[1], k, d.b[1], n);
  out += modulate(v[2], k, d.b[2], n);
  return out;
}

VectorField PerturbationParts::total() const { return principal + corrector + temporal; }
VectorField PerturbationParts::total_dt() const { return principal_dt + corrector_dt + temporal_dt; }

PerturbationParts build_perturbation(const WaveBank& bank, const AmplitudeSample& amps) {
  const WaveParams& wp = bank.params;
  const int n = bank.perturbation_grid;
  const double inv_lambda = 1.0 / wp.lambda;
  PerturbationParts out;
  out.t = amps.t;
  const int n_sq = fit_grid(bank.temporal_band());
  VectorField source, source_dt;

  for (int i = 0; i < 6; ++i) {
    const IntermittentPhase& ph = bank.phases[i];
    const Direction& d = ph.direction();
    FamilyFields& f = out.family[i];
    f.a = amps.a[i];
    f.a_dt = amps.a_dt[i];
    const int n_eta = fit_grid(ph.band());
    const int n_eta2 = fit_grid(ph.squared_band());
    f.eta = ph.field(amps.t, n_eta);
    f.eta_dt = ph.time_derivative(amps.t, n_eta);
    f.eta2 = ph.squared(amps.t, n_eta2);
    f.eta2_dt = ph.squared_time_derivative(amps.t, n_eta2);
    const int n_g = fit_grid(f.a.band() + ph.band());
    f.g = multiply_dealiased(f.a, f.eta, n_g);
    f.g_dt = multiply_dealiased(f.a_dt, f.eta, n_g) + multiply_dealiased(f.a, f.eta_dt, n_g);

    out.principal += modulate_beltrami(f.g, d, wp.lambda, n);
    out.principal_dt += modulate_beltrami(f.g_dt, d, wp.lambda, n);
    out.corrector.axpy(inv_lambda, cross_with_wave(gradient(f.g), d, wp.lambda, n));
    out.corrector_dt.axpy(inv_lambda, cross_with_wave(gradient(f.g_dt), d, wp.lambda, n));

    const int n_a2 = fit_grid(2 * f.a.band());
    const ScalarField a2 = multiply_dealiased(f.a, f.a, n_a2);
    const ScalarField energy = multiply_dealiased(a2, f.eta2, n_sq);
    ScalarField energy_dt = 2.0 * multiply_dealiased(multiply_dealiased(f.a, f.a_dt, n_a2), f.eta2, n_sq);
    energy_dt += multiply_dealiased(a2, f.eta2_dt, n_sq);
    for (int k = 0; k < 3; ++k) {
      source[k].axpy(d.xi[k], energy);
      source_dt[k].axpy(d.xi[k], energy_dt);
    }
  }
  const double inv_mu = 1.0 / wp.mu;
  out.temporal = (inv_mu * leray_project(remove_mean(source))).resized(n);
  out.temporal_dt = (inv_mu * leray_project(remove_mean(source_dt))).resized(n);
  return out;
}

VectorField principal_perturbation(const WaveBank& bank, const AmplitudeSample& amps) {
  return build_perturbation(bank, amps).principal;
}

VectorField corrector_perturbation(const WaveBank& bank, const AmplitudeSample& amps) {
  return build_perturbation(bank, amps).corrector;
}

VectorField temporal_perturbation(const WaveBank& bank, const AmplitudeSample& amps) {
  return build_perturbation(bank, amps).temporal;
}

// ---- norms ---------------------------------------------------------------------------

namespace {

/// Grid sup of the pointwise Frobenius norm of all order-j partial derivatives.
double derivative_sup(const ScalarField& f, int order) {
  const int m = f.n();
  AlignedVector<double> acc(std::size_t(m) * m * m, 0.0);
  // Multi-indices with |beta| = order, counted with multinomial multiplicity.
  for (int bx = 0; bx <= order; ++bx)
    for (int by = 0; bx + by <= order; ++by) {
      const int bz = order - bx - by;
      ScalarField d = f;
      d.apply([&](const Wavevector& k, Complex c) {
        return c * std::pow(Complex(0, k[0]), bx) * std::pow(Complex(0, k[1]), by) * std::pow(Complex(0, k[2]), bz);
      });
      double mult = std::tgamma(order + 1) / (std::tgamma(bx + 1) * std::tgamma(by + 1) * std::tgamma(bz + 1));
      const auto v = d.to_physical();
      for (std::size_t q = 0; q < acc.size(); ++q) acc[q] += mult * v[q] * v[q];
    }
  double best = 0.0;
  for (double v : acc) best = std::max(best, v);
  return std::sqrt(best);
}

double grid_sup(const ScalarField& f) {
  double best = 0.0;
  for (double v : f.to_physical()) best = std::max(best, std::abs(v));
  return best;
}

}  // namespace

double amplitude_size(const AmplitudeSample& amps, int order) {
  double best = 0.0;
  for (int i = 0; i < 6; ++i) {
    if (amps.a[i].empty()) continue;
    double s = 0.0;
    for (int j = 0; j <= order; ++j) s += derivative_sup(amps.a[i], j);
    if (order >= 1) s += grid_sup(amps.a_dt[i]);
    best = std::max(best, s);
  }
  return best;
}

NormReport perturbation_norm_suite(const PerturbationParts& parts, const WaveParams& wp, const AmplitudeSample& amps,
                                   double p, double delta) {
  NormReport rep;
  const double lambda = wp.lambda, sigma = wp.sigma(), r = wp.r, mu = wp.mu;
  const double c1 = amplitude_size(amps, 1);
  const double c2 = amplitude_size(amps, 2);
  const double c3 = amplitude_size(amps, 3);
  rep.add_norm("amplitude.C1", c1);
  rep.add_norm("amplitude.C2", c2);
  rep.add_norm("amplitude.C3", c3);
  const double kernel = std::pow(r, 1.5 - 3.0 / p);

  auto record = [&](const std::string& name, double value, double predicted) {
    rep.add_norm(name, value);
    rep.add_norm(name + ".predicted", predicted);
    rep.add_norm(name + ".ratio", predicted > 0 ? value / predicted : 0.0);
  };

  const VectorField w = parts.total();
  record("w_principal.L2", l2_norm(parts.principal), std::sqrt(delta) + c1 / std::sqrt(lambda * sigma));
  record("w.Lp", lebesgue_norm(w, p), kernel * c1);
  record("w_corrector+temporal.Lp", lebesgue_norm(parts.corrector, p) + lebesgue_norm(parts.temporal, p),
         (sigma * r + std::pow(r, 1.5) / mu) * kernel * c1);
  record("dt_w_principal+corrector.Lp", lebesgue_norm(parts.principal_dt, p) + lebesgue_norm(parts.corrector_dt, p),
         lambda * sigma * mu * std::pow(r, 2.5 - 3.0 / p) * c2);
  record("grad1_w.Lp", lebesgue_norm(riesz_power(w, 1.0), p), kernel * lambda * c2);
  record("grad2_w.Lp", lebesgue_norm(riesz_power(w, 2.0), p), kernel * lambda * lambda * c3);
  rep.add_norm("w.L2", l2_norm(w));
  rep.add_norm("exponent.p", p);
  return rep;
}

}  // namespace hvci
