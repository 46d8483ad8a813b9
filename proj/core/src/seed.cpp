#include "hvci/seed.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <sstream>

#include "hvci/anti_divergence.hpp"
#include "hvci/geometry.hpp"
#include "hvci/stress.hpp"
#include "hvci/waves.hpp"

namespace hvci {

double TimeBump::operator()(double t) const {
  const double s = (2.0 * t - t0 - t1) / (t1 - t0);
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double TimeBump::derivative(double t) const {
  const double s = (2.0 * t - t0 - t1) / (t1 - t0);
  if (std::abs(s) >= 1.0) return 0.0;
  const double d = 1.0 - s * s;
  return (*this)(t) * (-2.0 * s / (d * d)) * 2.0 / (t1 - t0);
}

SeedState::SeedState(VectorField u0, TimeBump bump, double theta, double nu)
    : bump_(bump), theta_(theta), nu_(nu), grid_(u0.n()) {
  if (!(bump_.t1 > bump_.t0)) throw ParamRejected("seed bump needs t0 < t1");
  const bool zero = max_coeff(u0) == 0.0;
  if (!zero) support_ = IntervalSet::from_doubles(bump_.t0, bump_.t1);
  // Everything lives on the smallest grid holding the quadratic terms.
  const int n = fit_grid(2 * u0.band());
  u0_ = u0.resized(n);
  transport_ = anti_div(u0_);
  viscous_ = anti_div(fractional_laplacian(u0_, theta_));
  quadratic_ = outer_square(u0_, n);
  energy_ = dot_dealiased(u0_, u0_, n);
  ScalarField third = (-1.0 / 3.0) * energy_;
  quadratic_.add_identity(third);
}

SymTensorField SeedState::stress(double t) const {
  const double phi = bump_(t), dphi = bump_.derivative(t);
  SymTensorField r = quadratic_;
  r *= phi * phi;
  r.axpy(dphi, transport_);
  r.axpy(nu_ * phi, viscous_);
  return r;
}

FlowSample SeedState::sample(double t) const {
  const double phi = bump_(t);
  FlowSample s;
  s.t = t;
  s.velocity = phi * u0_;
  s.velocity_dt = bump_.derivative(t) * u0_;
  s.pressure = (-phi * phi / 3.0) * energy_;
  s.stress = stress(t);
  return s;
}

double SeedState::stress_l1_sup(int samples) const {
  if (support_.empty()) return 0.0;
  const int band = std::max(1, stress(0.5 * (bump_.t0 + bump_.t1)).band());
  const int m = good_fft_size(8 * band + 1);
  auto l1 = [&](double t) { return lebesgue_norm(stress(t), 1.0, m); };
  double best_t = bump_.t0, best = 0.0;
  const double step = (bump_.t1 - bump_.t0) / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    const double t = bump_.t0 + i * step;
    const double v = l1(t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  const double lo = std::max(bump_.t0, best_t - step), hi = std::min(bump_.t1, best_t + step);
  const auto [t_star, neg] = boost::math::tools::brent_find_minima([&](double t) { return -l1(t); }, lo, hi, 40);
  return std::max(best, -neg);
}

VectorField beltrami_profile(int direction, int wavenumber, double amplitude, int n) {
  return (0.5 * amplitude) * beltrami_wave(directions().at(direction), wavenumber, n);
}

SeedResult initialize_seed(const VectorField& u0, const TimeBump& bump, double theta, double nu,
                           std::span<const double> check_times, double tolerance) {
  const double scale = std::max(max_coeff(u0), 1e-300);
  const Vec3 mean = u0.mean();
  const double mean_size = std::max({std::abs(mean[0]), std::abs(mean[1]), std::abs(mean[2])});
  if (mean_size > 1e-12 * scale) {
    std::ostringstream os;
    os << "seed profile has nonzero mean (" << mean_size << ")";
    throw ParamRejected(os.str());
  }
  const double div = max_coeff(divergence(u0));
  if (div > 1e-12 * scale * std::max(1, u0.band())) {
    std::ostringstream os;
    os << "seed profile is not divergence-free (max divergence coefficient " << div << ")";
    throw ParamRejected(os.str());
  }

  auto seed = std::make_shared<SeedState>(u0, bump, theta, nu);
  SeedResult out;
  out.report = residual_check(*seed, theta, nu, check_times, tolerance);
  const double delta = seed->stress_l1_sup();
  out.report.add_norm("delta_1", delta, "sup_t ||R_0(t)||_L1");

  // v (x) v + p Id is trace-free pointwise.
  double trace = 0.0;
  for (double t : check_times) {
    const FlowSample s = seed->sample(t);
    SymTensorField q = outer_square(s.velocity, fit_grid(2 * s.velocity.band()));
    q = q.resized(s.pressure.n());
    q.add_identity(s.pressure);
    trace = std::max(trace, max_coeff(q(0, 0) + q(1, 1) + q(2, 2)));
  }
  out.report.add_certificate("seed.trace_free", trace, 1e-12 * std::max(1.0, scale * scale));

  out.state.flow = seed;
  out.state.q = 0;
  out.state.theta = theta;
  out.state.nu = nu;
  out.state.delta_next = delta;
  return out;
}

}  // namespace hvci
