// gias: run IAS experiments from a JSON config.
//
//   gias solve --config run.json [--jobs N] [--out dir]
//   gias sweep --config run.json --theta-grid 1e-3,1e-2,... [--jobs N] [--out dir]
//   gias diagnose --run dir
//
// Exit codes: 0 success, 1 configuration error, 2 solver failure.

#include <CLI11.hpp>

#include <iostream>

#include "gias/cli.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kSolverError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized IAS reconstructions"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string grid;
  std::string run_dir;
  unsigned jobs = 1;

  auto* solve = app.add_subcommand("solve", "Run the experiment described by a config file");
  solve->add_option("--config", config_path, "JSON config")->required();
  solve->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  solve->add_option("--out", out_dir, "Output directory (overrides the config)");

  auto* sweep = app.add_subcommand("sweep", "Run a 1D experiment over a vartheta grid");
  sweep->add_option("--config", config_path, "JSON config")->required();
  sweep->add_option("--theta-grid", grid, "Comma-separated vartheta values")->required();
  sweep->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_dir, "Output directory (overrides the config)");

  auto* diag = app.add_subcommand("diagnose", "Summarize a finished run directory");
  diag->add_option("--run", run_dir, "Run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*diag) {
      std::cout << gias::cli::diagnose(run_dir);
      return 0;
    }
    gias::cli::ExperimentConfig config = gias::cli::load_config(config_path);
    if (*sweep) {
      if (config.experiment == gias::cli::ExperimentKind::ct) {
        throw gias::cli::ConfigError("sweep: only supported for 1D experiments");
      }
      config.sweep = gias::cli::parse_grid(grid);
    }
    const std::size_t count = gias::cli::run_experiment(config, {out_dir, jobs});
    std::cout << "wrote " << count << " reconstruction(s)\n";
    return 0;
  } catch (const gias::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const gias::ParameterError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const gias::DimensionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverError;
  }
}
