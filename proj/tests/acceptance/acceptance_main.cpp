#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "hvci/anti_divergence.hpp"
#include "hvci/driver.hpp"
#include "hvci/geometry.hpp"
#include "hvci/suites.hpp"
#include "hvci/waves.hpp"

using namespace hvci;

namespace {

/// Tolerances, one block per criterion.
namespace tol {
constexpr double beltrami = 1e-12;
constexpr double beltrami_seconds = 1.0;
constexpr double geometry = 1e-12;
constexpr double eta_mean = 1e-12;
constexpr double transport = 1e-13;
constexpr double dirichlet_relative = 0.10;
constexpr double dirichlet_seconds = 30.0;
constexpr double anti_div = 1e-12;
constexpr double commutator_lo = -1.2;
constexpr double commutator_hi = -0.8;
constexpr double perturbation = 1e-10;
constexpr double residual = 1e-6;
constexpr double step_seconds = 600.0;
constexpr double memory_gb = 16.0;
constexpr double hyperviscous_relative = 0.25;
constexpr double psi_slope = 2.0;
constexpr double slack_agreement = 1e-15;
}  // namespace tol

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double peak_rss_gb() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line))
    if (line.rfind("VmHWM:", 0) == 0) return std::stod(line.substr(6)) / (1024.0 * 1024.0);
  return 0.0;
}

int failures = 0;

void verdict(int id, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << id << "  " << name << "  " << detail
            << std::endl;
  failures += !pass;
}

std::string fmt(std::initializer_list<std::pair<const char*, double>> items) {
  std::ostringstream os;
  os << std::setprecision(3);
  bool first = true;
  for (const auto& [k, v] : items) {
    os << (first ? "" : ", ") << k << "=" << v;
    first = false;
  }
  return os.str();
}

/// Runs a criterion, turning an exception into a failure line.
void guarded(int id, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    verdict(id, name, false, std::string("exception: ") + e.what());
  }
}

WaveParams desk_params() {
  WaveParams wp;
  wp.lambda = 25;
  wp.sigma_inv = 5;
  wp.r = 2;
  wp.mu = 4.0;
  return wp;
}

void beltrami() {
  const auto t0 = Clock::now();
  double curl_err = 0, div_err = 0;
  for (int lambda : {5, 25, 100})
    for (const Direction& d : directions()) {
      const VectorMode m = beltrami_mode(d, lambda);
      // i k x B - lambda B and k . B on the single mode, relative to |B| = 1.
      const Complex i(0.0, 1.0);
      const auto& k = m.k;
      const CVec3 ck{i * (double(k[1]) * m.c[2] - double(k[2]) * m.c[1]), i * (double(k[2]) * m.c[0] - double(k[0]) * m.c[2]),
                     i * (double(k[0]) * m.c[1] - double(k[1]) * m.c[0])};
      for (int j = 0; j < 3; ++j) curl_err = std::max(curl_err, std::abs(ck[j] - double(lambda) * m.c[j]));
      div_err = std::max(div_err, std::abs(double(k[0]) * m.c[0] + double(k[1]) * m.c[1] + double(k[2]) * m.c[2]));
    }
  const int fields[] = {5, 25};
  const NormReport rep = beltrami_suite(fields, tol::beltrami);
  curl_err = std::max(curl_err, rep.certificate("beltrami.curl_eigen").value);
  div_err = std::max(div_err, rep.certificate("beltrami.divergence").value);
  const double secs = seconds_since(t0);
  verdict(1, "beltrami", curl_err <= tol::beltrami && div_err <= tol::beltrami && secs < tol::beltrami_seconds,
          fmt({{"curl", curl_err}, {"div", div_err}, {"seconds", secs}}));
}

void geometry() {
  const NormReport rep = geometry_suite(1000, 2024, tol::geometry);
  const double rec = rep.certificate("geometry.reconstruction").value;
  const double anti = rep.certificate("geometry.antipodal").value;
  const double quarter = rep.certificate("geometry.identity_quarter").value;
  verdict(2, "geometric lemma", rec <= tol::geometry && anti == 0.0 && quarter == 0.0,
          fmt({{"reconstruction", rec}, {"antipodal", anti}, {"identity-1/4", quarter}}));
}

void intermittency() {
  const double times[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const NormReport rep = intermittency_suite(desk_params(), times, tol::eta_mean, tol::transport);
  const double mean = std::max(rep.certificate("intermittency.eta2_mean_closed_form").value,
                               rep.certificate("intermittency.eta2_mean_product").value);
  const double transport = rep.certificate("intermittency.transport").value;
  const double leak = rep.certificate("intermittency.band_support").value;
  const double tensor_leak = rep.certificate("intermittency.tensor_band_support").value;
  const bool pass = mean <= tol::eta_mean && transport <= tol::transport && leak == 0.0 && tensor_leak == 0.0;
  verdict(3, "intermittency", pass,
          fmt({{"mean", mean},
               {"transport", transport},
               {"band_leak", leak},
               {"tensor_leak", tensor_leak},
               {"tensor_min_|k|", rep.norm("intermittency.tensor_min_frequency")}}));
}

void dirichlet() {
  const auto t0 = Clock::now();
  const int rs[] = {4, 6, 8, 12, 16, 24, 32};
  const double ps[] = {1.5, 2.0, 3.0, 6.0};
  const NormReport rep = dirichlet_suite(rs, ps, tol::dirichlet_relative);
  const double secs = seconds_since(t0);
  bool pass = secs < tol::dirichlet_seconds;
  std::ostringstream detail;
  detail << std::setprecision(4);
  for (const auto& f : rep.fits()) {
    pass = pass && f.pass;
    detail << f.name << " slope " << f.slope << " vs " << f.predicted << (f.pass ? "; " : " (off); ");
  }
  detail << "seconds=" << std::setprecision(3) << secs;
  verdict(4, "dirichlet scaling", pass, detail.str());
}

void anti_divergence_check() {
  const NormReport rep = anti_divergence_suite(100, 99, tol::anti_div, 0.2);
  const double inv = rep.certificate("anti_div.inversion").value;
  const double trace = rep.certificate("anti_div.trace_free").value;
  const double slope = rep.fits().front().slope;
  const bool pass = inv <= tol::anti_div && trace <= tol::anti_div && slope >= tol::commutator_lo &&
                    slope <= tol::commutator_hi;
  verdict(5, "anti-divergence", pass, fmt({{"inversion", inv}, {"trace", trace}, {"commutator_slope", slope}}));
}

void desk_step() {
  const auto t0 = Clock::now();
  const Config cfg;  // theta = 1, lambda = 25, sigma = 1/5, r = 2, mu = 4, N = 192, five samples
  std::vector<double> literal;
  for (const auto& s : cfg.time_samples)
    if (s.kind == TimeSpec::Kind::Value) literal.push_back(s.value);
  const SeedResult seed = build_seed(cfg, literal);
  const auto times = resolve_times(cfg.time_samples, seed.state.flow->stress_support(), seed.state.delta_next);
  const NormReport seed_check = residual_check(*seed.state.flow, cfg.theta, cfg.nu, times, tol::residual);
  const Schedule schedule = schedule_for(cfg, seed.state.delta_next, cfg.theta);
  const WaveChoice wave = wave_for_round(cfg, schedule, 0);
  StepOptions opts;
  opts.residual_tolerance = tol::residual;
  opts.exact_tolerance = tol::perturbation;
  opts.slope_bound = tol::psi_slope;
  opts.norm_suite = false;
  const StepOutcome step = iteration_step(seed.state, schedule, wave.params, cfg.time_samples, opts);
  const double secs = seconds_since(t0);
  const NormReport& rep = step.report;

  const double div = rep.certificate("w.divergence").value;
  const double mean = rep.certificate("w.mean").value;
  const double curl = rep.certificate("w.curl_identity").value;
  const double identity = rep.certificate("amplitude.identity").value;
  verdict(6, "perturbation certificates",
          div <= tol::perturbation && mean <= tol::perturbation && curl <= tol::perturbation &&
              identity <= tol::perturbation,
          fmt({{"div", div}, {"mean", mean}, {"curl_identity", curl}, {"pointwise_identity", identity}}));

  const double seed_res = seed_check.certificate("momentum_residual").value;
  const double step_res = rep.certificate("momentum_residual").value;
  const double mem = peak_rss_gb();
  verdict(7, "residual after seed and step",
          seed_res <= tol::residual && step_res <= tol::residual && secs <= tol::step_seconds && mem <= tol::memory_gb,
          fmt({{"seed", seed_res}, {"step", step_res}, {"seconds", secs}, {"peak_GB", mem},
               {"R_next/delta_2", rep.norm("R_next.L1_over_delta_after")}}));

  const bool supports = rep.certificate("support.velocity").pass && rep.certificate("support.stress").pass &&
                        rep.certificate("support.psi_from_stress").pass;
  const bool psi_one = rep.certificate("psi.one_on_support").pass && rep.certificate("psi.zero_outside_neighborhood").pass;
  const double slope = rep.certificate("psi.slope_times_delta").value;
  verdict(9, "support bookkeeping", supports && psi_one && slope <= tol::psi_slope,
          fmt({{"supports_exact", supports ? 1.0 : 0.0}, {"psi_one", psi_one ? 1.0 : 0.0}, {"psi_slope_delta", slope}}));
}

void hyperviscous() {
  Config cfg;
  cfg.lambda_list = {25, 50, 100};
  cfg.tolerances["hyperviscous_rel"] = tol::hyperviscous_relative;
  bool pass = true;
  std::ostringstream detail;
  detail << std::setprecision(4);
  for (double theta : {1.0, 1.2}) {
    const NormReport rep = hyperviscous_probe(cfg, theta);
    const ScalingFit& f = rep.fits().front();
    const bool ok = std::abs(f.slope - 1.0) <= tol::hyperviscous_relative;
    pass = pass && ok;
    detail << "theta=" << theta << " slope " << f.slope << (ok ? "; " : " (off); ");
  }
  for (double theta : {1.25, 1.3}) {
    bool rejected = false;
    try {
      (void)make_schedule(theta, 1.0, 0.1, 1.0, {25});
    } catch (const ParamRejected&) {
      rejected = true;
    }
    pass = pass && rejected;
    detail << "theta=" << theta << (rejected ? " rejected; " : " ACCEPTED; ");
  }
  verdict(8, "hyperviscous scaling probe", pass, detail.str());
}

void scheduler() {
  using Q = boost::multiprecision::cpp_rational;
  const Q a(3, 4), p(101, 100), one(1);
  // Independent evaluation of the four displays in exact arithmetic.
  const std::array<Q, 4> exact{-(a + 1) / 2 + (5 * a + 1) / 4 + (Q(5, 2) - 3 / p) * a, (Q(3, 2) - 3 / p) * a + one,
                               -(5 * a + 1) / 4 + (Q(9, 2) - 3 / p) * a, -(1 - a) / 2 + (3 - 3 / p) * a};
  const std::array<Q, 4> limit{(a - 1) / 4, 1 - 3 * a / 2, (a - 1) / 4, (a - 1) / 2};
  const Q correction = 3 * a * (1 - 1 / p);
  const PInequalities in = check_p_inequalities(0.75, 1.0, 1.01);
  double agreement = 0, worst = -INFINITY;
  bool hand = true;
  for (int k = 0; k < 4; ++k) {
    agreement = std::max(agreement, std::abs(in.slack[k] - exact[k].convert_to<double>()));
    worst = std::max(worst, in.slack[k]);
    hand = hand && exact[k] == limit[k] + correction && limit[k] < 0;
  }
  verdict(10, "scheduler arithmetic", in.pass && worst < 0 && hand && agreement <= tol::slack_agreement,
          fmt({{"max_slack", worst}, {"agreement", agreement}, {"hand_forms", hand ? 1.0 : 0.0}}));
}

}  // namespace

int main() {
  guarded(1, "beltrami", beltrami);
  guarded(2, "geometric lemma", geometry);
  guarded(3, "intermittency", intermittency);
  guarded(4, "dirichlet scaling", dirichlet);
  guarded(5, "anti-divergence", anti_divergence_check);
  guarded(10, "scheduler arithmetic", scheduler);
  guarded(6, "desk step (criteria 6, 7, 9)", desk_step);
  guarded(8, "hyperviscous scaling probe", hyperviscous);
  std::cout << failures << " criteria failed" << std::endl;
  return failures ? 1 : 0;
}
