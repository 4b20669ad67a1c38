// Batch driver: minnaert <scenario> --config <path> [--out <dir>] [--jobs N]
//
// Exit status: 0 success, 1 usage error, 2 invalid configuration,
// 3 numerical failure. Nothing is written unless the scenario succeeds.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "minnaert/config.hpp"
#include "minnaert/errors.hpp"
#include "minnaert/scenarios.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Minnaert resonance toolkit"};
  std::string scenario, config_path, out_dir = "out";
  int jobs = 0;
  app.add_option("scenario", scenario, "capacitance | resonance | simulate | oracle | sweep | features | invert")
      ->required();
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory (default: out)");
  app.add_option("--jobs", jobs, "worker threads (default: config value, else 1)")->check(CLI::NonNegativeNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // --help exits 0
  }

  try {
    const minnaert::RunConfig cfg = minnaert::load_config(config_path, scenario);
    const auto artifacts = minnaert::run_scenario(cfg, jobs > 0 ? jobs : cfg.jobs);
    minnaert::write_artifacts(out_dir, artifacts);
    for (const auto& a : artifacts) std::printf("%s/%s\n", out_dir.c_str(), a.name.c_str());
    return 0;
  } catch (const minnaert::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const minnaert::Error& e) {
    std::fprintf(stderr, "%s: %s\n", e.module().c_str(), e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
