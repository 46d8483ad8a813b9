#include "hvci/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hvci/anti_divergence.hpp"
#include "hvci/geometry.hpp"
#include "hvci/schedule.hpp"

namespace hvci {
namespace {

std::string tagged(const std::string& stem, double value) {
  std::ostringstream os;
  os << stem << value;
  return os.str();
}

ScalarField directional_derivative(const ScalarField& f, const Vec3& dir) {
  ScalarField out = dir[0] * partial(f, 0);
  out.axpy(dir[1], partial(f, 1));
  out.axpy(dir[2], partial(f, 2));
  return out;
}

/// Random real field with modes in the cube of radius `band`, amplitude |k|^{-decay}.
ScalarField random_field(std::mt19937_64& rng, int n, int band, double decay) {
  std::normal_distribution<double> gauss;
  ScalarField f(n, band);
  for (int kx = -band; kx <= band; ++kx)
    for (int ky = -band; ky <= band; ++ky)
      for (int kz = 0; kz <= band; ++kz) {
        if (kz == 0 && (ky < 0 || (ky == 0 && kx <= 0))) continue;
        const Wavevector k{kx, ky, kz};
        const double scale = std::pow(norm(k), -decay);
        f.set_coeff(k, scale * Complex(gauss(rng), gauss(rng)));
      }
  return f;
}

}  // namespace

NormReport beltrami_suite(std::span<const int> lambdas, double tolerance) {
  NormReport report;
  double curl_worst = 0.0, div_worst = 0.0;
  for (int lambda : lambdas) {
    const int n = fit_grid(lambda);
    for (const Direction& d : directions()) {
      const VectorField w = beltrami_wave(d, lambda, n);
      const double size = l2_norm(w);
      const VectorField defect = curl(w) - double(lambda) * w;
      curl_worst = std::max(curl_worst, l2_norm(defect) / size);
      div_worst = std::max(div_worst, l2_norm(divergence(w)) / size);
    }
  }
  report.add_certificate("beltrami.curl_eigen", curl_worst, tolerance);
  report.add_certificate("beltrami.divergence", div_worst, tolerance);
  return report;
}

NormReport geometry_suite(int samples, std::uint64_t seed, double tolerance) {
  NormReport report;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  const double radius = 0.5 * epsilon_gamma();
  double worst = 0.0, min_c = INFINITY;
  for (int i = 0; i < samples; ++i) {
    Sym3 e;
    for (double& x : e) x = gauss(rng);
    const double scale = radius * std::cbrt(unit(rng)) / frobenius_norm(e);
    Sym3 r = identity_sym3();
    for (int j = 0; j < 6; ++j) r[j] += scale * e[j];
    const GammaSolution sol = gamma_coefficients(r);
    const Sym3 back = gamma_map().reconstruct(sol.c);
    Sym3 diff;
    for (int j = 0; j < 6; ++j) diff[j] = back[j] - r[j];
    worst = std::max(worst, frobenius_norm(diff) / frobenius_norm(r));
    min_c = std::min(min_c, *std::min_element(sol.c.begin(), sol.c.end()));
  }
  report.add_certificate("geometry.reconstruction", worst, tolerance);
  report.add_norm("geometry.min_coefficient", min_c);

  const GammaSolution id = gamma_coefficients(identity_sym3());
  double asym = 0.0, quarter = 0.0;
  for (const Direction& d : directions()) {
    asym = std::max(asym, std::abs(id.gamma_of(d) - id.gamma_of(antipode(d))));
    quarter = std::max(quarter, std::abs(id.gamma_of(d) * id.gamma_of(d) - 0.25));
  }
  report.add_certificate("geometry.antipodal", asym, 0.0);
  report.add_certificate("geometry.identity_quarter", quarter, 0.0);
  report.add_norm("geometry.epsilon_gamma", epsilon_gamma());
  return report;
}

NormReport intermittency_suite(const WaveParams& wp, std::span<const double> times, double mean_tolerance,
                               double transport_tolerance) {
  NormReport report;
  std::vector<IntermittentPhase> phases;
  for (const Direction& d : directions()) phases.emplace_back(d, wp);
  const int n = fit_grid(phases.front().squared_band());
  double mean_closed = 0.0, mean_product = 0.0, transport = 0.0, leak = 0.0, tensor_leak = 0.0;
  double tensor_min = INFINITY;
  for (double t : times) {
    for (const auto& eta : phases) {
      mean_closed = std::max(mean_closed, std::abs(eta.squared(t, n).mean() - 1.0));
      const ScalarField f = eta.field(t, n);
      mean_product = std::max(mean_product, std::abs(multiply_dealiased(f, f, n).mean() - 1.0));

      const ScalarField lhs = (1.0 / wp.mu) * eta.time_derivative(t, n);
      const ScalarField rhs = double(eta.direction().sign) * directional_derivative(f, eta.direction().xi);
      const double scale = std::max(max_coeff(lhs), 1e-300);
      transport = std::max(transport, max_coeff(lhs - rhs) / scale);

      leak = std::max(leak, band_leak(eta, t, 0.5 * wp.lambda, 2.0 * wp.lambda));
    }
    for (const auto& a : phases)
      for (const auto& b : phases) {
        if (b.direction().index == antipode(a.direction()).index) continue;
        tensor_leak = std::max(tensor_leak, tensor_band_leak(a, b, t, 0.2 * wp.lambda, 4.0 * wp.lambda));
        tensor_min = std::min(tensor_min, tensor_min_frequency(a, b, t));
      }
  }
  report.add_certificate("intermittency.eta2_mean_closed_form", mean_closed, mean_tolerance);
  report.add_certificate("intermittency.eta2_mean_product", mean_product, mean_tolerance);
  report.add_certificate("intermittency.transport", transport, transport_tolerance);
  report.add_certificate("intermittency.band_support", leak, 0.0);
  report.add_certificate("intermittency.tensor_band_support", tensor_leak, 0.0, false);
  report.add_norm("intermittency.tensor_min_frequency", tensor_min, "tensor band needs >= lambda/5");
  return report;
}

NormReport dirichlet_suite(std::span<const int> rs, std::span<const double> ps, double relative_tolerance) {
  ScalingFamily family;
  family.name = "dirichlet";
  family.variable = "r";
  family.measure = [](double r, std::span<const double> exps) {
    const int ri = int(std::lround(r));
    const ScalarField d = dirichlet_kernel(ri, fit_grid(ri));
    return lebesgue_norms(d, exps, good_fft_size(8 * ri));
  };
  family.predicted_exponent = [](double p) { return 1.5 - 3.0 / p; };
  family.relative_tolerance = relative_tolerance;
  std::vector<double> xs(rs.begin(), rs.end());
  return measure_norm_scaling(family, ps, xs);
}

NormReport anti_divergence_suite(int samples, std::uint64_t seed, double tolerance, double slope_tolerance) {
  NormReport report;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> band_dist(1, 7);
  double inversion = 0.0, trace = 0.0, symmetry = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int band = band_dist(rng);
    const int n = fit_grid(band);
    VectorField u;
    for (int c = 0; c < 3; ++c) {
      u[c] = random_field(rng, n, band, 0.0);
      u[c].set_coeff({0, 0, 0}, Complex(0.3 * (c + 1), 0.0));
    }
    const SymTensorField r = anti_div(u);
    const double size = l2_norm(u);
    inversion = std::max(inversion, l2_norm(divergence(r) - remove_mean(u)) / size);
    trace = std::max(trace, l2_norm(r(0, 0) + r(1, 1) + r(2, 2)) / size);
    // r(i, j) and r(j, i) address one stored component; compare through the mode formula instead.
    for (int probe = 0; probe < 4; ++probe) {
      const Wavevector k{1 + probe, -probe, 2};
      const CVec3 c{u[0].coeff(k), u[1].coeff(k), u[2].coeff(k)};
      const auto m = anti_divergence_mode(k, c);
      const Complex t = m[0] + m[3] + m[5];
      const CVec3 div{Complex(0, 1) * (double(k[0]) * m[0] + double(k[1]) * m[1] + double(k[2]) * m[2]),
                      Complex(0, 1) * (double(k[0]) * m[1] + double(k[1]) * m[3] + double(k[2]) * m[4]),
                      Complex(0, 1) * (double(k[0]) * m[2] + double(k[1]) * m[4] + double(k[2]) * m[5])};
      double err = std::abs(t);
      for (int j = 0; j < 3; ++j) err = std::max(err, std::abs(div[j] - c[j]));
      symmetry = std::max(symmetry, err / std::max(size, 1e-300));
    }
  }
  report.add_certificate("anti_div.inversion", inversion, tolerance);
  report.add_certificate("anti_div.trace_free", trace, tolerance);
  report.add_certificate("anti_div.mode_formula", symmetry, tolerance);

  std::mt19937_64 probe_rng(seed + 1);
  const int f_band = 48;
  const int n = fit_grid(f_band + 2);
  ScalarField a = random_field(probe_rng, fit_grid(2), 2, 0.0);
  a.set_coeff({0, 0, 0}, 1.0);
  a = a.resized(n);
  const ScalarField f = random_field(probe_rng, n, f_band, 1.5).resized(n);
  const std::vector<double> ks{4.0, 8.0, 16.0};
  NormReport probe = commutator_decay_probe(a, f, ks, 2.0, slope_tolerance);
  report.merge(probe, "commutator.");
  return report;
}

NormReport scheduler_suite() {
  NormReport report;
  report.add_certificate("schedule.alpha_theta_1", std::abs(choose_alpha(1.0) - 5.0 / 6.0), 1e-15);
  report.add_certificate("schedule.alpha_theta_1.2", std::abs(choose_alpha(1.2) - (14.0 / 15.0 + 1.0) / 2.0), 1e-15);
  report.add_certificate("schedule.alpha_theta_0.5", std::abs(choose_alpha(0.5) - 0.5), 0.0);
  for (double theta : {1.25, 1.3}) {
    bool rejected = false;
    try {
      (void)choose_alpha(theta);
    } catch (const ParamRejected&) {
      rejected = true;
    }
    report.add_certificate(tagged("schedule.rejects_theta_", theta), rejected ? 0.0 : 1.0, 0.0);
  }
  const PInequalities in = check_p_inequalities(0.75, 1.0, 1.01);
  double worst = -INFINITY;
  for (int k = 0; k < 4; ++k) {
    report.add_norm(tagged("schedule.slack_", k), in.slack[k]);
    worst = std::max(worst, in.slack[k]);
  }
  report.add_certificate("schedule.p_inequalities", in.pass ? 0.0 : 1.0, 0.0);
  report.add_norm("schedule.max_slack", worst);
  double seq = 0.0;
  for (int q = 1; q <= 20; ++q) seq = std::max(seq, std::abs(delta_sequence(q, 0.1) - 0.1 / std::pow(2.0, q)));
  report.add_certificate("schedule.delta_sequence", seq, 0.0);
  return report;
}

NormReport cutoff_suite(const TimeCutoff& psi, double slope_bound) {
  NormReport report;
  double off_one = 0.0, outside = 0.0;
  for (const auto& part : psi.support().intervals()) {
    const double lo = part.lo.convert_to<double>(), hi = part.hi.convert_to<double>();
    for (int i = 0; i <= 200; ++i) off_one = std::max(off_one, std::abs(psi(lo + (hi - lo) * i / 200.0) - 1.0));
  }
  const IntervalSet shell = psi.support().neighborhood(Rational(psi.delta()));
  if (!psi.support().empty()) {
    const double lo = shell.lower().convert_to<double>(), hi = shell.upper().convert_to<double>();
    for (int i = 1; i <= 100; ++i) {
      outside = std::max(outside, std::abs(psi(lo - i * 0.01 * psi.delta())));
      outside = std::max(outside, std::abs(psi(hi + i * 0.01 * psi.delta())));
    }
  }
  report.add_certificate("psi.one_on_support", off_one, 0.0);
  report.add_certificate("psi.zero_outside_neighborhood", outside, 0.0);
  report.add_certificate("psi.support_inside_neighborhood", shell.contains(psi.psi_support()) ? 0.0 : 1.0, 0.0);
  report.add_certificate("psi.slope_times_delta", psi.max_slope_times_delta(), slope_bound);
  return report;
}

}  // namespace hvci
