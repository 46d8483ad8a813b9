#include "hvci/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <semaphore>
#include <sstream>

#include "hvci/anti_divergence.hpp"
#include "hvci/field_io.hpp"
#include "hvci/geometry.hpp"
#include "hvci/suites.hpp"
#include "hvci/threads.hpp"
#include "json.hpp"

namespace hvci {

using nlohmann::json;

// ---- configuration ----------------------------------------------------------------------

std::map<std::string, double> Config::default_tolerances() {
  return {{"residual", 1e-6},      {"seed_residual", 1e-8}, {"exact", 1e-10},         {"psi_slope", 2.0},
          {"beltrami", 1e-12},     {"geometry", 1e-12},     {"eta_mean", 1e-12},      {"transport", 1e-13},
          {"anti_div", 1e-12},     {"commutator_slope", 0.2}, {"dirichlet_rel", 0.1}, {"hyperviscous_rel", 0.25}};
}

double Config::tolerance(const std::string& key) const {
  const auto it = tolerances.find(key);
  if (it == tolerances.end()) throw ConfigError("unknown tolerance key '" + key + "'");
  return it->second;
}

namespace {

/// Walks a JSON object, remembering the path for error messages.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail("expected an object");
  }

  [[noreturn]] void fail(const std::string& what, const std::string& key = {}) const {
    throw ConfigError((key.empty() ? path_ : child(key)) + ": " + what);
  }
  std::string child(const std::string& key) const { return path_ + "/" + key; }

  void reject_unknown(std::initializer_list<const char*> known) const {
    for (const auto& [key, value] : node_.items())
      if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
        fail("unknown key", key);
  }

  const json* find(const char* key) const {
    const auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  void number(const char* key, double& out) const {
    if (const json* v = find(key)) {
      if (!v->is_number()) fail("expected a number", key);
      out = v->get<double>();
    }
  }
  void integer(const char* key, int& out) const {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) fail("expected an integer", key);
      out = v->get<int>();
    }
  }
  void optional_number(const char* key, std::optional<double>& out) const {
    if (const json* v = find(key)) {
      if (v->is_null()) {
        out.reset();
        return;
      }
      if (!v->is_number()) fail("expected a number or null", key);
      out = v->get<double>();
    }
  }
  template <class T>
  void list(const char* key, std::vector<T>& out) const {
    if (const json* v = find(key)) {
      if (!v->is_array()) fail("expected an array", key);
      out.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        const json& e = (*v)[i];
        const bool ok = std::is_integral_v<T> ? e.is_number_integer() : e.is_number();
        if (!ok) fail(std::is_integral_v<T> ? "expected an integer" : "expected a number", key + ("/" + std::to_string(i)));
        out.push_back(e.get<T>());
      }
    }
  }

 private:
  const json& node_;
  std::string path_;
};

void positive(double value, const std::string& path) {
  if (!(value > 0)) throw ConfigError(path + ": must be positive");
}

}  // namespace

Config parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("/: malformed JSON: ") + e.what());
  }
  Config cfg;
  const Reader top(root, "");
  top.reject_unknown({"theta", "nu", "epsilon0", "grid_size", "lambda_list", "time_samples", "seed", "wave", "alpha",
                      "p_exponent", "amplitude_band", "tolerances", "sweep", "output_dir", "threads"});
  top.number("theta", cfg.theta);
  top.number("nu", cfg.nu);
  top.number("epsilon0", cfg.epsilon0);
  top.integer("grid_size", cfg.grid_size);
  top.list("lambda_list", cfg.lambda_list);
  top.optional_number("alpha", cfg.alpha);
  top.optional_number("p_exponent", cfg.p_exponent);
  top.integer("amplitude_band", cfg.amplitude_band);
  top.integer("threads", cfg.threads);
  positive(cfg.theta, "/theta");
  if (cfg.nu < 0) throw ConfigError("/nu: must be non-negative");
  positive(cfg.epsilon0, "/epsilon0");
  if (cfg.grid_size < 8 || cfg.grid_size % 2) throw ConfigError("/grid_size: must be an even integer >= 8");
  if (cfg.lambda_list.empty()) throw ConfigError("/lambda_list: must not be empty");
  if (cfg.threads < 1) throw ConfigError("/threads: must be >= 1");

  if (const json* ts = top.find("time_samples")) {
    if (!ts->is_array() || ts->empty()) top.fail("expected a non-empty array", "time_samples");
    cfg.time_samples.clear();
    for (std::size_t i = 0; i < ts->size(); ++i) {
      const json& e = (*ts)[i];
      TimeSpec spec;
      if (e.is_number()) {
        spec.value = e.get<double>();
      } else if (e == "ramp-") {
        spec.kind = TimeSpec::Kind::RampLeft;
      } else if (e == "ramp+") {
        spec.kind = TimeSpec::Kind::RampRight;
      } else {
        throw ConfigError("/time_samples/" + std::to_string(i) + ": expected a number, \"ramp-\" or \"ramp+\"");
      }
      cfg.time_samples.push_back(spec);
    }
  }

  if (const json* s = top.find("seed")) {
    const Reader seed(*s, "/seed");
    seed.reject_unknown({"direction", "wavenumber", "amplitude", "t0", "t1"});
    seed.integer("direction", cfg.seed.direction);
    seed.integer("wavenumber", cfg.seed.wavenumber);
    seed.number("amplitude", cfg.seed.amplitude);
    seed.number("t0", cfg.seed.t0);
    seed.number("t1", cfg.seed.t1);
    if (cfg.seed.direction < 0 || cfg.seed.direction > 11) seed.fail("must lie in 0..11", "direction");
    if (cfg.seed.wavenumber <= 0 || cfg.seed.wavenumber % 5) seed.fail("must be a positive multiple of 5", "wavenumber");
    if (!(cfg.seed.t1 > cfg.seed.t0)) seed.fail("must exceed t0", "t1");
  }

  if (const json* w = top.find("wave")) {
    if (w->is_null()) {
      cfg.wave.reset();
    } else {
      const Reader wave(*w, "/wave");
      wave.reject_unknown({"sigma_inv", "r", "mu"});
      WaveOverride o;
      wave.integer("sigma_inv", o.sigma_inv);
      wave.integer("r", o.r);
      wave.number("mu", o.mu);
      for (const char* key : {"sigma_inv", "r", "mu"})
        if (!wave.find(key)) wave.fail("required", key);
      cfg.wave = o;
    }
  }

  if (const json* t = top.find("tolerances")) {
    if (!t->is_object()) top.fail("expected an object", "tolerances");
    for (const auto& [key, value] : t->items()) {
      if (!cfg.tolerances.contains(key)) throw ConfigError("/tolerances/" + key + ": unknown key");
      if (!value.is_number()) throw ConfigError("/tolerances/" + key + ": expected a number");
      cfg.tolerances[key] = value.get<double>();
    }
  }

  if (const json* s = top.find("sweep")) {
    const Reader sweep(*s, "/sweep");
    sweep.reject_unknown({"thetas", "r_values", "exponents"});
    sweep.list("thetas", cfg.sweep.thetas);
    sweep.list("r_values", cfg.sweep.r_values);
    sweep.list("exponents", cfg.sweep.exponents);
  }

  if (const json* o = top.find("output_dir")) {
    if (!o->is_string()) top.fail("expected a string", "output_dir");
    cfg.output_dir = o->get<std::string>();
  }
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void apply_tolerance_override(Config& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("--tol-override expects KEY=VALUE");
  const std::string key(assignment.substr(0, eq));
  const std::string value(assignment.substr(eq + 1));
  if (!cfg.tolerances.contains(key)) throw ConfigError("/tolerances/" + key + ": unknown key");
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    cfg.tolerances[key] = v;
  } catch (const std::logic_error&) {
    throw ConfigError("/tolerances/" + key + ": '" + value + "' is not a number");
  }
}

std::string config_to_json(const Config& cfg) {
  json j;
  j["theta"] = cfg.theta;
  j["nu"] = cfg.nu;
  j["epsilon0"] = cfg.epsilon0;
  j["grid_size"] = cfg.grid_size;
  j["lambda_list"] = cfg.lambda_list;
  json times = json::array();
  for (const auto& t : cfg.time_samples) {
    if (t.kind == TimeSpec::Kind::RampLeft)
      times.push_back("ramp-");
    else if (t.kind == TimeSpec::Kind::RampRight)
      times.push_back("ramp+");
    else
      times.push_back(t.value);
  }
  j["time_samples"] = times;
  j["seed"] = {{"direction", cfg.seed.direction},
               {"wavenumber", cfg.seed.wavenumber},
               {"amplitude", cfg.seed.amplitude},
               {"t0", cfg.seed.t0},
               {"t1", cfg.seed.t1}};
  j["wave"] = cfg.wave ? json{{"sigma_inv", cfg.wave->sigma_inv}, {"r", cfg.wave->r}, {"mu", cfg.wave->mu}} : json();
  j["alpha"] = cfg.alpha ? json(*cfg.alpha) : json();
  j["p_exponent"] = cfg.p_exponent ? json(*cfg.p_exponent) : json();
  j["amplitude_band"] = cfg.amplitude_band;
  j["tolerances"] = cfg.tolerances;
  j["sweep"] = {{"thetas", cfg.sweep.thetas}, {"r_values", cfg.sweep.r_values}, {"exponents", cfg.sweep.exponents}};
  j["output_dir"] = cfg.output_dir.string();
  j["threads"] = cfg.threads;
  return j.dump(2);
}

// ---- orchestration ----------------------------------------------------------------------

std::vector<double> resolve_times(std::span<const TimeSpec> specs, const IntervalSet& support, double delta) {
  std::vector<double> out;
  const bool ramps = std::any_of(specs.begin(), specs.end(), [](const TimeSpec& s) { return s.kind != TimeSpec::Kind::Value; });
  std::optional<TimeCutoff> psi;
  if (ramps) {
    if (support.empty() || !(delta > 0)) throw ParamRejected("ramp sample times need a non-empty stress support");
    psi.emplace(support, delta);
  }
  for (const auto& s : specs) {
    switch (s.kind) {
      case TimeSpec::Kind::Value: out.push_back(s.value); break;
      case TimeSpec::Kind::RampLeft: out.push_back(psi->ramp_midpoint(-1)); break;
      case TimeSpec::Kind::RampRight: out.push_back(psi->ramp_midpoint(1)); break;
    }
  }
  return out;
}

SeedResult build_seed(const Config& cfg, std::span<const double> check_times) {
  const VectorField u0 = beltrami_profile(cfg.seed.direction, cfg.seed.wavenumber, cfg.seed.amplitude, cfg.grid_size);
  const TimeBump bump{cfg.seed.t0, cfg.seed.t1};
  return initialize_seed(u0, bump, cfg.theta, cfg.nu, check_times, cfg.tolerance("seed_residual"));
}

Schedule schedule_for(const Config& cfg, double delta1, double theta) {
  return make_schedule(theta, cfg.nu, cfg.epsilon0, delta1, cfg.lambda_list, cfg.alpha.value_or(NAN),
                       cfg.p_exponent.value_or(NAN));
}

WaveChoice wave_for_round(const Config& cfg, const Schedule& schedule, int round) {
  const int lambda = schedule.lambda_list.at(std::size_t(round));
  if (round > 0 || !cfg.wave) return make_wave_params(lambda, schedule);
  WaveChoice out;
  WaveParams& wp = out.params;
  wp.lambda = lambda;
  wp.sigma_inv = cfg.wave->sigma_inv;
  wp.r = cfg.wave->r;
  wp.mu = cfg.wave->mu;
  wp.alpha = schedule.alpha;
  wp.theta = schedule.theta;
  wp.nu = schedule.nu;
  wp.p_exponent = schedule.p_exponent;
  out.r_target = std::pow(double(lambda), schedule.alpha);
  out.sigma_inv_target = std::pow(double(lambda), (schedule.alpha + 1) / 2);
  out.mu_target = std::pow(double(lambda), (5 * schedule.alpha + 1) / 4);
  out.flags = check_wave_params(wp);
  require_admissible(wp);
  return out;
}

namespace {

std::string time_tag(double t) {
  std::ostringstream os;
  os.precision(6);
  os << "t=" << t;
  return os.str();
}

void record_flags(NormReport& report, const WaveFlags& f) {
  report.add_certificate("wave.periodic", f.periodic ? 0 : 1, 0);
  report.add_certificate("wave.r_above_one", f.r_above_one ? 0 : 1, 0);
  report.add_certificate("wave.sigma_r_below_one", f.sigma_r_below_one ? 0 : 1, 0);
  report.add_certificate("wave.band_support", f.band_support ? 0 : 1, 0);
  report.add_certificate("wave.strengthened_band", f.strengthened_band ? 0 : 1, 0, false);
  report.add_certificate("wave.chain", f.chain ? 0 : 1, 0, false);
  report.add_certificate("wave.mu_above_r32", f.mu_above_r32 ? 0 : 1, 0, false);
}

void record_params(NormReport& report, const WaveParams& wp) {
  report.add_norm("param.lambda", wp.lambda);
  report.add_norm("param.sigma_inv", wp.sigma_inv);
  report.add_norm("param.r", wp.r);
  report.add_norm("param.mu", wp.mu);
  report.add_norm("param.alpha", wp.alpha);
  report.add_norm("param.p", wp.p_exponent);
}

int band_at_support(const FlowState& flow) {
  const IntervalSet s = flow.stress_support();
  if (s.empty()) return 1;
  const double mid = 0.5 * (s.lower() + s.upper()).convert_to<double>();
  return std::max(1, flow.stress(mid).band());
}

}  // namespace

StepOutcome iteration_step(const IterationState& state, const Schedule& schedule, const WaveParams& wp,
                           std::span<const TimeSpec> time_specs, const StepOptions& options) {
  if (!state.flow) throw std::invalid_argument("iteration_step needs a state");
  const FlowState& prev = *state.flow;
  const double delta = state.delta_next;
  const double theta = state.theta, nu = state.nu;
  const IntervalSet stress_support = prev.stress_support();
  const IntervalSet velocity_support = prev.velocity_support();

  StepOutcome out;
  out.params = wp;
  record_params(out.report, wp);
  record_flags(out.report, check_wave_params(wp));

  const int grid = prev.grid_size();
  const int velocity_band = [&] {
    if (velocity_support.empty()) return 0;
    const double mid = 0.5 * (velocity_support.lower() + velocity_support.upper()).convert_to<double>();
    return prev.sample(mid).velocity.band();
  }();
  const int stress_band = band_at_support(prev);
  const int band = options.amplitude_band < 0 ? max_amplitude_band(wp, grid, velocity_band) : options.amplitude_band;
  WaveBank bank = make_wave_bank(wp, grid, band, velocity_band);
  out.report.add_norm("bank.amplitude_band", bank.amplitude_band);
  out.report.add_norm("bank.stress_band", stress_band);
  out.report.add_norm("bank.perturbation_grid", bank.perturbation_grid);
  out.report.add_certificate("bank.amplitude_band_covers_stress", bank.amplitude_band >= stress_band ? 0 : 1, 0,
                             false);

  TimeCutoff psi(stress_support, delta);
  AmplitudeBuilder builder(state.flow, psi, delta, epsilon_gamma(), bank.amplitude_band);
  auto next = std::make_shared<StepState>(state.flow, std::move(bank), builder, theta, nu, schedule.p_exponent);

  NormReport cut = cutoff_suite(psi, options.slope_bound);
  out.report.merge(cut);

  // Supports, checked exactly on rational endpoints.
  const IntervalSet hood = velocity_support.united(stress_support).neighborhood(Rational(delta));
  out.report.add_certificate("support.velocity", hood.contains(next->velocity_support()) ? 0 : 1, 0);
  out.report.add_certificate("support.stress", hood.contains(next->stress_support()) ? 0 : 1, 0);
  out.report.add_certificate("support.psi_from_stress",
                             stress_support.neighborhood(Rational(delta)).contains(psi.psi_support()) ? 0 : 1, 0);
  out.report.add_norm("support.previous_velocity", 0, velocity_support.to_string());
  out.report.add_norm("support.previous_stress", 0, stress_support.to_string());
  out.report.add_norm("support.next_velocity", 0, next->velocity_support().to_string());
  out.report.add_norm("support.next_stress", 0, next->stress_support().to_string());

  const std::vector<double> times = resolve_times(time_specs, stress_support, delta);
  const double delta_after = schedule.delta(state.q + 2);
  const double lambda = wp.lambda;
  double residual = 0, div = 0, mean = 0, curl_id = 0, identity = 0, stress_ratio = 0, min_coeff = INFINITY;
  double w_l2 = 0, w_sobolev = 0, new_l1 = 0, mean_defect = 0;
  for (double t : times) {
    const auto e = next->evaluate(t);
    const std::string tag = time_tag(t);
    const double r = momentum_residual(e.sample, theta, nu);
    out.report.add_norm("residual." + tag, r);
    residual = std::max(residual, r);

    const double l1 = lebesgue_norm(e.sample.stress, 1.0);
    out.report.add_norm("R_next.L1." + tag, l1);
    new_l1 = std::max(new_l1, l1);
    out.report.add_norm("psi." + tag, e.amplitudes.psi);
    if (e.amplitudes.psi == 0.0) continue;

    identity = std::max(identity, e.amplitudes.identity_residual);
    stress_ratio = std::max(stress_ratio, e.amplitudes.max_stress_ratio);
    min_coeff = std::min(min_coeff, e.amplitudes.min_coefficient);
    mean_defect = std::max(mean_defect, e.decomposition.family_mean_defect);

    const VectorField w = e.parts.total();
    const double wsize = std::max(l2_norm(w), 1e-300);
    div = std::max(div, l2_norm(divergence(w)) / (lambda * wsize));
    const Vec3 m = w.mean();
    mean = std::max(mean, std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]) / wsize);
    const VectorField lifted = (1.0 / lambda) * curl(e.parts.principal);
    const double psize = std::max(l2_norm(e.parts.principal), 1e-300);
    curl_id = std::max(curl_id, l2_norm(e.parts.principal + e.parts.corrector - lifted) / psize);

    w_l2 = std::max(w_l2, wsize);
    w_sobolev = std::max(w_sobolev, sobolev_norm(w, 2 * theta - 1, 1.0));
    for (const auto& c : e.decomposition.components) {
      out.report.add_norm(c.name + ".L1." + tag, c.l1);
      out.report.add_norm(c.name + ".L2." + tag, c.l2);
      out.report.add_norm(c.name + ".Lp." + tag, c.lp);
    }
    if (options.norm_suite)
      out.report.merge(perturbation_norm_suite(e.parts, wp, e.amplitudes, schedule.p_exponent, delta), tag + ".");
  }
  out.report.add_certificate("momentum_residual", residual, options.residual_tolerance);
  out.report.add_certificate("w.divergence", div, options.exact_tolerance);
  out.report.add_certificate("w.mean", mean, options.exact_tolerance);
  out.report.add_certificate("w.curl_identity", curl_id, options.exact_tolerance);
  out.report.add_certificate("amplitude.identity", identity, options.exact_tolerance);
  out.report.add_norm("amplitude.max_stress_ratio", stress_ratio);
  out.report.add_norm("amplitude.min_coefficient", std::isfinite(min_coeff) ? min_coeff : 0.0);
  out.report.add_norm("oscillation.family_mean_defect", mean_defect);
  out.report.add_norm("w.L2", w_l2);
  out.report.add_norm("w.L2_over_sqrt_delta", w_l2 / std::sqrt(delta), "measured constant C");
  out.report.add_norm("w.W^{2theta-1,1}", w_sobolev);
  out.report.add_norm("delta_next", delta);
  out.report.add_norm("delta_after", delta_after);
  out.report.add_norm("R_next.L1", new_l1);
  out.report.add_norm("R_next.L1_over_delta_after", new_l1 / delta_after, "contraction target 1, reported only");

  out.next.flow = next;
  out.next.q = state.q + 1;
  out.next.theta = theta;
  out.next.nu = nu;
  out.next.delta_next = delta_after;
  return out;
}

NormReport hyperviscous_probe(const Config& cfg, double theta, std::ostream* log) {
  const std::vector<double> check{0.5 * (cfg.seed.t0 + cfg.seed.t1)};
  Config local = cfg;
  local.theta = theta;
  const SeedResult seed = build_seed(local, check);
  const Schedule schedule = schedule_for(local, seed.state.delta_next, theta);
  const int band = band_at_support(*seed.state.flow);
  const double t = check.front();
  const double p = schedule.p_exponent;

  struct Point {
    WaveParams wp;
    double measured = 0, predicted = 0, seconds = 0;
  };
  std::vector<Point> points(schedule.lambda_list.size());
  auto measure = [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    Point& pt = points[i];
    pt.wp = make_wave_params(schedule.lambda_list[i], schedule).params;
    const WaveBank bank = make_wave_bank(pt.wp, 0, band);
    TimeCutoff psi(seed.state.flow->stress_support(), seed.state.delta_next);
    AmplitudeBuilder builder(seed.state.flow, psi, seed.state.delta_next, epsilon_gamma(), band);
    const AmplitudeSample amps = builder.at(t);
    const std::vector<double> ps{p};
    pt.measured = hyperviscous_stress_norms(bank, amps, theta, cfg.nu, ps).front();
    pt.predicted = std::pow(double(pt.wp.r), 1.5 - 3.0 / p) * std::pow(double(pt.wp.lambda), 2 * theta - 1);
    pt.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  if (cfg.threads > 1) {
    std::counting_semaphore<> slots(cfg.threads);
    std::vector<std::future<void>> jobs;
    for (std::size_t i = 0; i < points.size(); ++i)
      jobs.push_back(std::async(std::launch::async, [&, i] {
        slots.acquire();
        try {
          measure(i);
        } catch (...) {
          slots.release();
          throw;
        }
        slots.release();
      }));
    for (auto& j : jobs) j.get();
  } else {
    for (std::size_t i = 0; i < points.size(); ++i) measure(i);
  }

  NormReport report;
  std::vector<double> xs, ys;
  std::ostringstream stem;
  stem << "hyperviscous.theta=" << theta;
  for (const auto& pt : points) {
    const std::string tag = stem.str() + ".lambda=" + std::to_string(pt.wp.lambda);
    report.add_norm(tag + ".measured", pt.measured);
    report.add_norm(tag + ".predicted", pt.predicted);
    report.add_norm(tag + ".r", pt.wp.r);
    report.add_norm(tag + ".sigma_inv", pt.wp.sigma_inv);
    report.add_norm(tag + ".mu", pt.wp.mu);
    report.add_norm(tag + ".seconds", pt.seconds);
    xs.push_back(pt.predicted);
    ys.push_back(pt.measured);
    if (log)
      *log << "  lambda=" << pt.wp.lambda << " r=" << pt.wp.r << " sigma=1/" << pt.wp.sigma_inv << " mu=" << pt.wp.mu
           << " measured=" << pt.measured << " predicted=" << pt.predicted << " (" << pt.seconds << " s)\n";
  }
  report.add_norm(stem.str() + ".p", p);
  report.add_fit(make_fit(stem.str(), "predicted", xs, ys, 1.0, cfg.tolerance("hyperviscous_rel")));
  return report;
}

// ---- subcommands ------------------------------------------------------------------------

namespace {

std::vector<double> literal_times(const Config& cfg) {
  std::vector<double> out;
  for (const auto& s : cfg.time_samples)
    if (s.kind == TimeSpec::Kind::Value) out.push_back(s.value);
  if (out.empty()) out.push_back(0.5 * (cfg.seed.t0 + cfg.seed.t1));
  return out;
}

StepOptions step_options(const Config& cfg) {
  StepOptions o;
  o.amplitude_band = cfg.amplitude_band;
  o.residual_tolerance = cfg.tolerance("residual");
  o.exact_tolerance = cfg.tolerance("exact");
  o.slope_bound = cfg.tolerance("psi_slope");
  return o;
}

struct Initialized {
  SeedResult seed;
  Schedule schedule;
  std::vector<double> times;
};

Initialized initialize(const Config& cfg, std::ostream& log) {
  Initialized out{build_seed(cfg, literal_times(cfg)), {}, {}};
  const auto& flow = *out.seed.state.flow;
  out.times = resolve_times(cfg.time_samples, flow.stress_support(), out.seed.state.delta_next);
  out.seed.report.merge(residual_check(flow, cfg.theta, cfg.nu, out.times, cfg.tolerance("seed_residual")),
                        "resolved.");
  out.schedule = schedule_for(cfg, out.seed.state.delta_next, cfg.theta);
  log << "seed: delta_1 = " << out.seed.state.delta_next << ", alpha = " << out.schedule.alpha
      << ", p = " << out.schedule.p_exponent << "\n";
  return out;
}

void dump_sample(const std::filesystem::path& dir, const std::string& stem, const FlowSample& s) {
  write_field(dir / (stem + "_velocity"), s.velocity, s.t);
  write_field(dir / (stem + "_pressure"), s.pressure, s.t);
  write_field(dir / (stem + "_stress"), s.stress, s.t);
}

int finish(const NormReport& report, const Config& cfg, const std::string& stem, std::ostream& log) {
  report.write(cfg.output_dir, stem);
  int failed = 0;
  for (const auto& c : report.certificates()) {
    if (c.pass) continue;
    log << (c.hard ? "FAIL " : "soft-fail ") << c.name << ": " << c.value << " > " << c.tolerance << "\n";
    failed += c.hard;
  }
  for (const auto& f : report.fits())
    log << "fit " << f.name << " vs " << f.variable << ": slope " << f.slope << " predicted " << f.predicted
        << " +- " << f.tolerance << (f.pass ? " ok" : " off") << "\n";
  log << stem << ": " << report.certificates().size() << " certificates, " << failed << " hard failures; report in "
      << (cfg.output_dir / (stem + ".json")).string() << "\n";
  return failed ? 1 : 0;
}

int run_validate(const Config& cfg, std::ostream& log) {
  NormReport report;
  const std::vector<int> lambdas{5, 25, 100};
  report.merge(beltrami_suite(lambdas, cfg.tolerance("beltrami")));
  report.merge(geometry_suite(1000, 7, cfg.tolerance("geometry")));
  report.merge(anti_divergence_suite(100, 11, cfg.tolerance("anti_div"), cfg.tolerance("commutator_slope")));
  report.merge(scheduler_suite());
  report.merge(dirichlet_suite(cfg.sweep.r_values, cfg.sweep.exponents, cfg.tolerance("dirichlet_rel")));
  log << "module suites done\n";

  const Initialized init = initialize(cfg, log);
  report.merge(init.seed.report, "seed.");
  const WaveChoice wave = wave_for_round(cfg, init.schedule, 0);
  record_flags(report, wave.flags);
  report.merge(intermittency_suite(wave.params, init.times, cfg.tolerance("eta_mean"), cfg.tolerance("transport")));
  report.merge(cutoff_suite(TimeCutoff(init.seed.state.flow->stress_support(), init.seed.state.delta_next),
                            cfg.tolerance("psi_slope")));
  return finish(report, cfg, "validate", log);
}

int run_init(const Config& cfg, std::ostream& log) {
  const Initialized init = initialize(cfg, log);
  NormReport report = init.seed.report;
  for (std::size_t i = 0; i < init.times.size(); ++i)
    dump_sample(cfg.output_dir / "fields", "seed_" + std::to_string(i), init.seed.state.flow->sample(init.times[i]));
  return finish(report, cfg, "init", log);
}

std::pair<Initialized, StepOutcome> first_step(const Config& cfg, std::ostream& log) {
  Initialized init = initialize(cfg, log);
  const WaveChoice wave = wave_for_round(cfg, init.schedule, 0);
  log << "round 1: lambda=" << wave.params.lambda << " sigma=1/" << wave.params.sigma_inv << " r=" << wave.params.r
      << " mu=" << wave.params.mu << "\n";
  StepOutcome step = iteration_step(init.seed.state, init.schedule, wave.params, cfg.time_samples, step_options(cfg));
  return {std::move(init), std::move(step)};
}

int run_step(const Config& cfg, std::ostream& log) {
  auto [init, step] = first_step(cfg, log);
  step.report.merge(init.seed.report, "seed.");
  return finish(step.report, cfg, "step", log);
}

int run_export(const Config& cfg, std::ostream& log) {
  auto [init, step] = first_step(cfg, log);
  const auto dir = cfg.output_dir / "fields";
  for (std::size_t i = 0; i < init.times.size(); ++i) {
    const double t = init.times[i];
    dump_sample(dir, "seed_" + std::to_string(i), init.seed.state.flow->sample(t));
    dump_sample(dir, "step_" + std::to_string(i), step.next.flow->sample(t));
  }
  log << "fields written to " << dir.string() << "\n";
  return finish(step.report, cfg, "export", log);
}

int run_sweep(const Config& cfg, std::ostream& log) {
  NormReport report;
  std::vector<double> thetas = cfg.sweep.thetas.empty() ? std::vector<double>{cfg.theta} : cfg.sweep.thetas;
  for (double theta : thetas) {
    try {
      (void)choose_alpha(theta);
    } catch (const ParamRejected& e) {
      log << "theta=" << theta << ": rejected (" << e.what() << ")\n";
      std::ostringstream name;
      name << "schedule.rejects_theta=" << theta;
      report.add_certificate(name.str(), theta >= kThetaThreshold ? 0 : 1, 0);
      continue;
    }
    log << "theta=" << theta << "\n";
    report.merge(hyperviscous_probe(cfg, theta, &log));
  }
  report.merge(dirichlet_suite(cfg.sweep.r_values, cfg.sweep.exponents, cfg.tolerance("dirichlet_rel")));
  return finish(report, cfg, "sweep", log);
}

int run_norms(const Config& cfg, std::ostream& log) {
  const auto dir = cfg.output_dir / "fields";
  if (!std::filesystem::is_directory(dir)) throw std::runtime_error("no stored fields under " + dir.string());
  std::vector<std::filesystem::path> sidecars;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") sidecars.push_back(entry.path());
  std::sort(sidecars.begin(), sidecars.end());
  NormReport report;
  const std::vector<double> ps{1.0, 2.0, INFINITY};
  for (const auto& side : sidecars) {
    const auto base = side.parent_path() / side.stem();
    const LoadedField f = read_field(base);
    std::vector<double> values;
    if (f.kind == "scalar")
      values = lebesgue_norms(f.scalar, ps, f.grid_size);
    else if (f.kind == "vector")
      values = lebesgue_norms(f.vector, ps, f.grid_size);
    else
      values = lebesgue_norms(f.tensor, ps, f.grid_size);
    const std::string stem = side.stem().string();
    report.add_norm(stem + ".L1", values[0], time_tag(f.time));
    report.add_norm(stem + ".L2", values[1], time_tag(f.time));
    report.add_norm(stem + ".Linf", values[2], time_tag(f.time));
    log << stem << " (" << time_tag(f.time) << "): L1=" << values[0] << " L2=" << values[1] << " Linf=" << values[2]
        << "\n";
  }
  return finish(report, cfg, "norms", log);
}

}  // namespace

int run(const std::string& command, const Config& cfg, std::ostream& log) {
  set_fft_threads(cfg.threads);
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream(cfg.output_dir / "config.json") << config_to_json(cfg) << '\n';
  try {
    if (command == "validate") return run_validate(cfg, log);
    if (command == "init") return run_init(cfg, log);
    if (command == "step") return run_step(cfg, log);
    if (command == "sweep") return run_sweep(cfg, log);
    if (command == "norms") return run_norms(cfg, log);
    if (command == "export") return run_export(cfg, log);
  } catch (const ParamRejected& e) {
    log << "rejected: " << e.what() << "\n";
    return 3;
  } catch (const OutsideBall& e) {
    log << "rejected: " << e.what() << "\n";
    return 3;
  } catch (const BandwidthOverflow& e) {
    log << "rejected: " << e.what() << "\n";
    return 3;
  }
  throw ConfigError("unknown command '" + command + "'");
}

}  // namespace hvci
