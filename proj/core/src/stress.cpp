#include "hvci/stress.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hvci/anti_divergence.hpp"
#include "hvci/geometry.hpp"

namespace hvci {

namespace {

SymTensorField zero_tensor(int n) {
  SymTensorField t;
  for (auto& c : t.c) c = ScalarField(n, 0);
  return t;
}

VectorField zero_vector(int n) { return {ScalarField(n, 0), ScalarField(n, 0), ScalarField(n, 0)}; }

/// (Id - xi xi) v.
VectorField transverse(const VectorField& v, const Vec3& xi) {
  ScalarField along = xi[0] * v[0];
  along.axpy(xi[1], v[1]);
  along.axpy(xi[2], v[2]);
  VectorField out = v;
  for (int k = 0; k < 3; ++k) out[k].axpy(-xi[k], along);
  return out;
}

/// Physical samples of Q = B e^{i k.x} + c.c. on an m^3 grid.
std::array<AlignedVector<double>, 3> wave_samples(const Direction& d, int lambda, int m) {
  const Wavevector k = d.frequency(lambda);
  std::array<std::vector<Complex>, 3> phase;
  for (int ax = 0; ax < 3; ++ax) {
    phase[ax].resize(m);
    for (int j = 0; j < m; ++j) phase[ax][j] = std::polar(1.0, 2.0 * std::numbers::pi * double(k[ax]) * j / m);
  }
  std::array<AlignedVector<double>, 3> out;
  for (auto& o : out) o.resize(std::size_t(m) * m * m);
  std::size_t q = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Complex e01 = phase[0][i] * phase[1][j];
      for (int l = 0; l < m; ++l, ++q) {
        const Complex e = e01 * phase[2][l];
        for (int c = 0; c < 3; ++c) out[c][q] = 2.0 * (d.b[c] * e).real();
      }
    }
  return out;
}

ComponentNorms component_norms(std::string name, const SymTensorField& t, double p) {
  const std::array<double, 2> ps{1.0, p};
  const auto v = lebesgue_norms(t, ps);
  return {std::move(name), v[0], l2_norm(t), v[1]};
}

}  // namespace

SymTensorField StressDecomposition::total(int n) const {
  SymTensorField out = linear.resized(n);
  out += corrector.resized(n);
  out += oscillation.resized(n);
  return out;
}

SymTensorField linear_error(const PerturbationParts& parts, const VectorField& velocity, const WaveParams& wp,
                            double theta, double nu) {
  const VectorField w = parts.total();
  VectorField forcing = nu * fractional_laplacian(w, theta);
  forcing.axpy(1.0 / wp.lambda, curl(parts.principal_dt));
  SymTensorField out = anti_div(forcing);
  const int band = velocity[0].empty() ? w.band() : velocity.band() + w.band();
  const int n = fit_grid(std::max(band, out.band()));
  out = out.resized(n);
  if (!velocity[0].empty() && max_coeff(velocity) > 0) out += symmetric_product(velocity, w, n);
  return out;
}

SymTensorField corrector_error(const PerturbationParts& parts) {
  const VectorField x = parts.corrector + parts.temporal;
  const int n = fit_grid(x.band() + std::max(x.band(), parts.principal.band()));
  SymTensorField out = outer_square(x, n);
  out += symmetric_product(x, parts.principal, n);
  return out;
}

OscillationError oscillation_error(const WaveBank& bank, const AmplitudeSample& amps, const PerturbationParts& parts,
                                   const SymTensorField& stress, bool keep_families) {
  const WaveParams& wp = bank.params;
  const VectorField& u = parts.principal;
  const int band_hi = 2 * u.band();
  const int n_osc = fit_grid(band_hi);
  const ProductGrid grid(band_hi, n_osc);
  const std::size_t size = grid.size();
  const int m = grid.m();

  // High-band products, evaluated on one alias-free collocation grid.
  std::array<AlignedVector<double>, 3> up;
  for (int k = 0; k < 3; ++k) up[k] = grid.physical(u[k]);
  AlignedVector<double> dsum(size, 0.0), gsum(size, 0.0);
  std::array<std::array<AlignedVector<double>, 3>, 4> hi;
  for (auto& fam : hi)
    for (auto& c : fam) c.assign(size, 0.0);

  for (int i = 0; i < 6; ++i) {
    const FamilyFields& f = parts.family[i];
    const Direction& d = bank.phases[i].direction();
    const auto a = grid.physical(f.a);
    const auto eta = grid.physical(f.eta);
    std::array<AlignedVector<double>, 3> ga, ge;
    for (int k = 0; k < 3; ++k) {
      ga[k] = grid.physical(partial(f.a, k));
      ge[k] = grid.physical(partial(f.eta, k));
    }
    const auto q = wave_samples(d, wp.lambda, m);
    for (std::size_t x = 0; x < size; ++x) {
      double qa = 0, qe = 0, s = 0, ue = 0, uq = 0;
      for (int k = 0; k < 3; ++k) {
        qa += q[k][x] * ga[k][x];
        qe += q[k][x] * ge[k][x];
        s += up[k][x] * ga[k][x];
        ue += up[k][x] * ge[k][x];
        uq += up[k][x] * q[k][x];
      }
      dsum[x] += eta[x] * qa;
      gsum[x] += a[x] * qe;
      for (int k = 0; k < 3; ++k) {
        hi[0][k][x] += eta[x] * s * q[k][x];
        hi[1][k][x] += a[x] * ue * q[k][x];
        hi[2][k][x] -= eta[x] * uq * ga[k][x];
        hi[3][k][x] -= a[x] * uq * ge[k][x];
      }
    }
  }
  AlignedVector<double> kinetic(size);
  for (std::size_t x = 0; x < size; ++x) {
    double uu = 0;
    for (int k = 0; k < 3; ++k) {
      uu += up[k][x] * up[k][x];
      hi[0][k][x] += up[k][x] * dsum[x];
      hi[1][k][x] += up[k][x] * gsum[x];
    }
    kinetic[x] = 0.5 * uu;
  }
  dsum = {};
  gsum = {};
  up = {};

  std::array<VectorField, 6> fam;
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 3; ++k) {
      fam[j][k] = grid.spectral(hi[j][k]);
      hi[j][k] = {};
    }
  }
  ScalarField cross = grid.spectral(kinetic);
  kinetic = {};

  // Products of band at most 2 K + band(eta^2), kept spectral on a small grid.
  const int n_lo = fit_grid(bank.temporal_band());
  std::array<VectorField, 6> lo;
  for (auto& v : lo) v = zero_vector(n_lo);
  ScalarField concentration(n_lo, 0), low_cross(n_lo, 0);
  VectorField energy_dt = zero_vector(n_lo);
  SymTensorField interp = zero_tensor(n_lo);
  const double inv_mu = 1.0 / wp.mu;
  for (int i = 0; i < 6; ++i) {
    const FamilyFields& f = parts.family[i];
    const Vec3& xi = bank.phases[i].direction().xi;
    const ScalarField a2 = multiply_dealiased(f.a, f.a, n_lo);
    const VectorField grad_a2 = gradient(a2);
    const VectorField grad_eta2 = gradient(f.eta2);
    const VectorField a2_grad_eta2 = multiply_dealiased(a2, grad_eta2, n_lo);
    const VectorField eta2_grad_a2 = multiply_dealiased(f.eta2, grad_a2, n_lo);
    const ScalarField a2_eta2 = multiply_dealiased(a2, f.eta2, n_lo);
    const ScalarField da2 = 2.0 * multiply_dealiased(f.a, f.a_dt, n_lo);
    const ScalarField da2_eta2 = multiply_dealiased(da2, f.eta2, n_lo);
    ScalarField de = da2_eta2;
    de += multiply_dealiased(a2, f.eta2_dt, n_lo);

    lo[0] -= transverse(grad_a2, xi);
    lo[1] -= transverse(a2_grad_eta2, xi);
    lo[2] += eta2_grad_a2;
    lo[3] += a2_grad_eta2;
    lo[4] -= eta2_grad_a2 - grad_a2;
    for (int k = 0; k < 3; ++k) {
      lo[5][k].axpy(inv_mu * xi[k], da2_eta2);
      energy_dt[k].axpy(xi[k], de);
    }
    concentration += a2_eta2 - a2;
    low_cross -= a2_eta2;
    const Sym3 xx = outer_sym3(xi, xi);
    const Sym3 id = identity_sym3();
    for (int s = 0; s < 6; ++s) interp.c[s].axpy(id[s] - xx[s], a2);
  }
  ScalarField minus_rho = -amps.rho.resized(n_lo);
  interp.add_identity(minus_rho);
  interp += stress.resized(n_lo);

  static const std::array<const char*, 6> names{"amplitude_gradient", "phase_gradient",       "amplitude_cross",
                                                "phase_cross",        "amplitude_concentration", "amplitude_time"};
  OscillationError out;
  out.tensor = interp.resized(n_osc);
  Vec3 means{};
  for (int j = 0; j < 6; ++j) {
    if (j < 4)
      fam[j] += lo[j].resized(n_osc);
    else
      fam[j] = lo[j].resized(n_osc);
    const AntiDivResult r = anti_divergence(fam[j]);
    for (int k = 0; k < 3; ++k) means[k] += r.mean_removed[k];
    out.tensor += r.tensor;
    if (keep_families) out.families.emplace_back(names[j], std::move(fam[j]));
    fam[j] = {};
  }
  // The forcing families carry the mean of mu^{-1} dt sum a^2 eta^2 xi, which the projection in w^(t) drops.
  const Vec3 expected = energy_dt.mean();
  double defect = 0.0;
  for (int k = 0; k < 3; ++k) defect += std::pow(means[k] - inv_mu * expected[k], 2);
  out.family_mean_defect = std::sqrt(defect);
  out.interpolation = std::move(interp);

  // Pi = rho + (|u|^2 / 2 - sum a^2 eta^2) + sum a^2 (eta^2 - 1) - mu^{-1} Delta^{-1} div sum dt(a^2 eta^2) xi.
  cross += low_cross.resized(n_osc);
  const ScalarField time_pressure = (-inv_mu) * inverse_laplacian(divergence(energy_dt));
  out.pressure = amps.rho.resized(n_osc);
  out.pressure += cross;
  out.pressure += concentration.resized(n_osc);
  out.pressure += time_pressure.resized(n_osc);
  out.pressures.emplace_back("rho", amps.rho);
  out.pressures.emplace_back("cross", std::move(cross));
  out.pressures.emplace_back("concentration", std::move(concentration));
  out.pressures.emplace_back("time", time_pressure);
  return out;
}

StressDecomposition assemble_new_stress(const WaveBank& bank, const AmplitudeSample& amps,
                                        const PerturbationParts& parts, const FlowSample& previous, double theta,
                                        double nu, double p) {
  StressDecomposition dec;
  dec.t = parts.t;
  dec.linear = linear_error(parts, previous.velocity, bank.params, theta, nu);
  dec.corrector = corrector_error(parts);
  OscillationError osc = oscillation_error(bank, amps, parts, previous.stress, true);
  dec.family_mean_defect = osc.family_mean_defect;
  dec.pressure_increment = -osc.pressure;

  dec.components.push_back(component_norms("linear", dec.linear, p));
  dec.components.push_back(component_norms("corrector", dec.corrector, p));
  dec.components.push_back(component_norms("oscillation.interpolation", osc.interpolation, p));
  for (const auto& [name, f] : osc.families)
    dec.components.push_back(component_norms("oscillation." + name, anti_div(f), p));
  for (const auto& [name, f] : osc.pressures) {
    const std::array<double, 2> ps{1.0, p};
    const auto v = lebesgue_norms(f, ps);
    dec.components.push_back({"pressure." + name, v[0], l2_norm(f), v[1]});
  }
  dec.oscillation = std::move(osc.tensor);
  dec.components.push_back(component_norms("oscillation", dec.oscillation, p));
  return dec;
}

std::vector<double> hyperviscous_stress_norms(const WaveBank& bank, const AmplitudeSample& amps, double theta,
                                              double nu, std::span<const double> ps) {
  const WaveParams& wp = bank.params;
  const int n = bank.perturbation_grid;
  const int band = bank.perturbation_band();
  VectorField principal = zero_vector(n), source = zero_vector(n);
  for (int i = 0; i < 6; ++i) {
    const IntermittentPhase& ph = bank.phases[i];
    const Direction& d = ph.direction();
    const ScalarField& a = amps.a[i];
    const ScalarField g = multiply_dealiased(a, ph.field(amps.t, fit_grid(ph.band())), fit_grid(a.band() + ph.band()));
    const Wavevector k0 = d.frequency(wp.lambda);
    for (int k = 0; k < 3; ++k) principal[k] += modulate(g, k0, d.b[k], n);
    const ScalarField energy =
        multiply_dealiased(multiply_dealiased(a, a, fit_grid(2 * a.band())), ph.squared(amps.t, fit_grid(ph.squared_band())), n);
    for (int k = 0; k < 3; ++k) source[k].axpy(d.xi[k], energy);
  }

  // w = lambda^{-1} curl w^(p) + mu^{-1} P_H P_{!=0} source, then R(nu |k|^{2 theta} w), one component at a time.
  const std::array<double, 6> weights{1, 2, 2, 1, 2, 1};
  AlignedVector<double> squared(std::size_t(n) * n * n, 0.0);
  const Complex I(0.0, 1.0);
  for (int s = 0; s < 6; ++s) {
    ScalarField comp(n, band);
    auto out = comp.data();
    for (int kx = -band; kx <= band; ++kx)
      for (int ky = -band; ky <= band; ++ky)
        for (int kz = 0; kz <= band; ++kz) {
          const Wavevector k{kx, ky, kz};
          const double kk = double(kx) * kx + double(ky) * ky + double(kz) * kz;
          if (kk == 0) continue;
          const std::size_t idx = comp.index(kx, ky, kz);
          CVec3 p, src;
          for (int c = 0; c < 3; ++c) {
            p[c] = principal[c].data()[idx];
            src[c] = source[c].data()[idx];
          }
          const Complex ks = (double(kx) * src[0] + double(ky) * src[1] + double(kz) * src[2]) / kk;
          CVec3 w;
          for (int c = 0; c < 3; ++c) {
            const int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
            w[c] = I * (double(k[c1]) * p[c2] - double(k[c2]) * p[c1]) / double(wp.lambda) +
                   (src[c] - double(k[c]) * ks) / wp.mu;
            w[c] *= nu * std::pow(kk, theta);
          }
          out[idx] = anti_divergence_mode(k, w)[s];
        }
    comp.enforce_hermitian();
    const auto phys = comp.to_physical();
    for (std::size_t q = 0; q < squared.size(); ++q) squared[q] += weights[s] * phys[q] * phys[q];
  }
  std::vector<double> norms;
  for (double p : ps) {
    long double acc = 0;
    if (std::isinf(p)) {
      for (double v : squared) acc = std::max<long double>(acc, v);
      norms.push_back(std::sqrt(double(acc)));
      continue;
    }
    for (double v : squared) acc += std::pow((long double)v, (long double)(0.5 * p));
    norms.push_back(double(std::pow(acc / squared.size(), 1.0L / p)));
  }
  return norms;
}

double momentum_residual(const FlowSample& s, double theta, double nu) {
  int n = 0;
  for (const ScalarField* f : {&s.velocity[0], &s.velocity_dt[0], &s.pressure, &s.stress.c[0]})
    if (!f->empty()) n = std::max(n, f->n());
  if (n == 0) return 0.0;
  auto on_grid = [n](const VectorField& v) { return v[0].empty() ? zero_vector(n) : v.resized(n); };

  const VectorField v = on_grid(s.velocity);
  VectorField res = on_grid(s.velocity_dt);
  double scale = l2_norm(res);
  auto add = [&](const VectorField& term, double sign) {
    scale += l2_norm(term);
    res.axpy(sign, term);
  };
  if (max_coeff(v) > 0) {
    add(divergence(outer_square(v, n)), 1.0);
    add(nu * fractional_laplacian(v, theta), 1.0);
  }
  if (!s.pressure.empty()) add(gradient(s.pressure.resized(n)), 1.0);
  if (!s.stress.c[0].empty()) add(divergence(s.stress.resized(n)), -1.0);
  const double r = l2_norm(res);
  return scale > 0 ? r / scale : r;
}

NormReport residual_check(const FlowState& state, double theta, double nu, std::span<const double> times,
                          double tolerance) {
  NormReport rep;
  double worst = 0.0;
  for (double t : times) {
    const double r = momentum_residual(state.sample(t), theta, nu);
    std::ostringstream name;
    name << "residual.t=" << t;
    rep.add_norm(name.str(), r);
    worst = std::max(worst, r);
  }
  rep.add_certificate("momentum_residual", worst, tolerance);
  return rep;
}

// ---- one iteration round -------------------------------------------------------------

StepState::StepState(std::shared_ptr<const FlowState> previous, WaveBank bank, AmplitudeBuilder amplitudes,
                     double theta, double nu, double norm_exponent)
    : previous_(std::move(previous)),
      bank_(std::move(bank)),
      amplitudes_(std::move(amplitudes)),
      theta_(theta),
      nu_(nu),
      p_(norm_exponent) {}

IntervalSet StepState::velocity_support() const {
  return previous_->velocity_support().united(amplitudes_.cutoff().psi_support());
}

IntervalSet StepState::stress_support() const {
  return previous_->stress_support().united(amplitudes_.cutoff().psi_support());
}

StepState::Evaluation StepState::evaluate(double t) const {
  const int n = bank_.state_grid;
  Evaluation e;
  FlowSample prev = previous_->sample(t);
  e.amplitudes = amplitudes_.at(t);
  e.sample.t = t;
  if (e.amplitudes.psi == 0.0) {
    e.decomposition.t = t;
    e.decomposition.linear = zero_tensor(n);
    e.decomposition.corrector = zero_tensor(n);
    e.decomposition.oscillation = prev.stress.c[0].empty() ? zero_tensor(n) : prev.stress.resized(n);
    e.decomposition.pressure_increment = ScalarField(n, 0);
    e.sample = std::move(prev);
    e.sample.stress = e.decomposition.oscillation;
    return e;
  }
  e.parts = build_perturbation(bank_, e.amplitudes);
  e.decomposition = assemble_new_stress(bank_, e.amplitudes, e.parts, prev, theta_, nu_, p_);
  e.sample.velocity = prev.velocity.resized(n) + e.parts.total().resized(n);
  e.sample.velocity_dt = prev.velocity_dt.resized(n) + e.parts.total_dt().resized(n);
  e.sample.pressure = prev.pressure.resized(n) + e.decomposition.pressure_increment.resized(n);
  e.sample.stress = e.decomposition.total(n);
  return e;
}

}  // namespace hvci
