#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hvci/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Convex integration rounds for the hyperviscous Navier-Stokes system on the 3-torus"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  int threads = 0;
  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides output_dir)");
  app.add_option("--tol-override", overrides, "KEY=VALUE tolerance override, repeatable");
  app.add_option("--threads", threads, "FFT threads and concurrent sweep points")->check(CLI::PositiveNumber);

  const std::vector<std::pair<const char*, const char*>> commands{
      {"validate", "run every invariant suite"},
      {"init", "build and certify the seed state"},
      {"step", "run one perturbation round"},
      {"sweep", "scaling fits over lambda and r"},
      {"norms", "report norms of stored fields"},
      {"export", "dump seed and first-round fields"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  hvci::Config cfg;
  try {
    if (!config_path.empty()) cfg = hvci::load_config(config_path);
    for (const auto& o : overrides) hvci::apply_tolerance_override(cfg, o);
  } catch (const hvci::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (threads > 0) cfg.threads = threads;

  try {
    return hvci::run(command, cfg, std::cout);
  } catch (const hvci::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
