#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hvci/report.hpp"
#include "hvci/schedule.hpp"
#include "hvci/seed.hpp"
#include "hvci/state.hpp"
#include "hvci/stress.hpp"

namespace hvci {

/// A sample time: a literal value, or the midpoint of the left or right ramp of the cutoff.
struct TimeSpec {
  enum class Kind { Value, RampLeft, RampRight };
  Kind kind = Kind::Value;
  double value = 0.0;
};

struct SeedConfig {
  int direction = 0;
  int wavenumber = 5;
  double amplitude = 1.0;
  double t0 = 0.25;
  double t1 = 0.75;
};

/// Explicit (sigma, r, mu) for the first round instead of the scheduled rounding.
struct WaveOverride {
  int sigma_inv = 0;
  int r = 0;
  double mu = 0.0;
};

struct SweepConfig {
  std::vector<double> thetas;  ///< empty: the config theta
  std::vector<int> r_values{4, 6, 8, 12, 16, 24, 32};
  std::vector<double> exponents{1.5, 2.0, 3.0, 6.0};
};

struct Config {
  double theta = 1.0;
  double nu = 1.0;
  double epsilon0 = 0.1;
  int grid_size = 192;
  std::vector<int> lambda_list{25};
  std::vector<TimeSpec> time_samples{{TimeSpec::Kind::RampLeft, 0.0},
                                     {TimeSpec::Kind::Value, 0.4},
                                     {TimeSpec::Kind::Value, 0.5},
                                     {TimeSpec::Kind::Value, 0.6},
                                     {TimeSpec::Kind::RampRight, 0.0}};
  SeedConfig seed;
  std::optional<WaveOverride> wave{WaveOverride{5, 2, 4.0}};
  std::optional<double> alpha;
  std::optional<double> p_exponent;
  int amplitude_band = -1;  ///< -1: largest band the state grid holds
  std::map<std::string, double> tolerances = default_tolerances();
  SweepConfig sweep;
  std::filesystem::path output_dir = "hvci_out";
  int threads = 1;

  static std::map<std::string, double> default_tolerances();
  double tolerance(const std::string& key) const;
};

/// Parses a JSON config; unknown keys and type mismatches raise ConfigError naming the JSON path.
Config parse_config(std::string_view json_text);
Config load_config(const std::filesystem::path& path);
/// Applies "key=value" to the tolerance table; the key must already exist.
void apply_tolerance_override(Config& cfg, std::string_view assignment);
std::string config_to_json(const Config& cfg);

/// Resolves ramp markers against the cutoff built from `support` and `delta`.
std::vector<double> resolve_times(std::span<const TimeSpec> specs, const IntervalSet& support, double delta);

/// Seed velocity and its certificates for the configured Beltrami profile.
SeedResult build_seed(const Config& cfg, std::span<const double> check_times);

Schedule schedule_for(const Config& cfg, double delta1, double theta);

/// Parameters for round q (0-based index into lambda_list); round 0 honours the wave override.
WaveChoice wave_for_round(const Config& cfg, const Schedule& schedule, int round);

struct StepOptions {
  int amplitude_band = -1;
  double residual_tolerance = 1e-6;
  double exact_tolerance = 1e-10;
  double slope_bound = 2.0;
  bool norm_suite = true;
};

struct StepOutcome {
  IterationState next;
  WaveParams params;
  NormReport report;
};

/// One perturbation round at `times`. Exact identities and support inclusions become hard
/// certificates; the contraction towards delta_{q+2} is only reported.
StepOutcome iteration_step(const IterationState& state, const Schedule& schedule, const WaveParams& wp,
                           std::span<const TimeSpec> times, const StepOptions& options = {});

/// Fits of the hyperviscous stress against the predicted combination over the config lambdas for one theta.
NormReport hyperviscous_probe(const Config& cfg, double theta, std::ostream* log = nullptr);

/// Executes a subcommand; returns 0 iff every hard certificate passes, 1 otherwise, 3 on rejected parameters.
int run(const std::string& command, const Config& cfg, std::ostream& log);

}  // namespace hvci
