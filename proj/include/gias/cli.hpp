#pragma once

// Configuration-driven experiment runner behind the `gias` executable.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gias/ias.hpp"

namespace gias::cli {

/// Raised for malformed or inconsistent configuration (exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PriorParams {
  double r = 1.0;
  double beta = 1.5 + 1e-3;
  double vartheta = 1e-1;
};

struct DenoiseParams {
  Index n = 1000;
  double noise_variance = 10.0;
  double tikhonov_lambda = 1.0;
  /// Also run the plain solver and report its iteration count and time.
  bool compare_plain = false;
};

struct CtParams {
  Index n = 64;
  Index detectors = 92;
  Index angles = 30;
  int fine_factor = 3;
  double noise_fraction = 0.03;
  double tikhonov_lambda = 30.0;
  PriorParams second_prior{-1.0, 1.0, 5e-5};
};

struct CustomParams {
  std::filesystem::path data;
  std::optional<std::filesystem::path> truth;
  double tikhonov_lambda = 1.0;
};

enum class ExperimentKind { denoise, ct, custom };

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::denoise;
  std::string transform = "d1";
  PriorParams hyper_prior;
  PriorParams noise_prior{-1.0, 1.0, 1e-4};
  IasConfig ias;
  std::vector<double> sweep;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> output;
  DenoiseParams denoise;
  CtParams ct;
  CustomParams custom;
};

/// Parses and validates a JSON document. Unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Header: outer_iter,objective,nu,inner_iters,pinv_iters,theta_min,theta_max,theta_change,nu_change
std::string emit_diagnostics(const std::vector<IterationRecord>& history);

struct RunOptions {
  std::filesystem::path out_dir;
  unsigned jobs = 1;
};

/// Each returns the number of reconstructions written.
std::size_t run_denoise(const ExperimentConfig& config, const RunOptions& options);
std::size_t run_ct(const ExperimentConfig& config, const RunOptions& options);

/// Dispatches on config.experiment.
std::size_t run_experiment(const ExperimentConfig& config, const RunOptions& options);

/// Human-readable summary of a finished run directory.
std::string diagnose(const std::filesystem::path& run_dir);

/// "1e-3,1e-2" -> {1e-3, 1e-2}. Throws ConfigError on malformed input.
std::vector<double> parse_grid(const std::string& text);

}  // namespace gias::cli
