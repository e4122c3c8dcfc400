#include "gias/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "gias/forward_models.hpp"
#include "gias/io.hpp"
#include "gias/metrics.hpp"

namespace gias::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// --- config parsing ---------------------------------------------------------

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) throw ConfigError(where + ": unknown key \"" + item.key() + "\"");
  }
}

template <class T>
void read(const json& obj, const char* key, T& dst, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    dst = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

void read_prior(const json& obj, PriorParams& p, const std::string& where) {
  check_keys(obj, {"r", "beta", "vartheta"}, where);
  read(obj, "r", p.r, where);
  read(obj, "beta", p.beta, where);
  read(obj, "vartheta", p.vartheta, where);
}

InitKind parse_init(const std::string& s) {
  if (s == "zeros") return InitKind::zeros;
  if (s == "ones") return InitKind::ones;
  if (s == "tikhonov") return InitKind::tikhonov;
  throw ConfigError("ias.init: expected zeros, ones or tikhonov, got \"" + s + "\"");
}

void read_ias(const json& obj, IasConfig& c) {
  const std::string w = "ias";
  check_keys(obj,
             {"eps_ias", "eps_cgls", "delta_pinv", "max_outer", "max_inner", "priorconditioned", "learn_nu",
              "fixed_nu", "nonneg_projection", "init", "pinv_method", "pinv_tol", "pinv_maxit"},
             w);
  read(obj, "eps_ias", c.eps_ias, w);
  read(obj, "eps_cgls", c.eps_cgls, w);
  read(obj, "delta_pinv", c.delta_pinv, w);
  read(obj, "max_outer", c.max_outer, w);
  read(obj, "max_inner", c.max_inner, w);
  read(obj, "priorconditioned", c.priorconditioned, w);
  read(obj, "learn_nu", c.learn_nu, w);
  read(obj, "nonneg_projection", c.nonneg_projection, w);
  read(obj, "pinv_maxit", c.pinv_maxit, w);
  if (obj.contains("fixed_nu") && !obj["fixed_nu"].is_null()) {
    double v = 0.0;
    read(obj, "fixed_nu", v, w);
    c.fixed_nu = v;
  }
  if (obj.contains("pinv_tol") && !obj["pinv_tol"].is_null()) {
    double v = 0.0;
    read(obj, "pinv_tol", v, w);
    c.pinv_tol = v;
  }
  std::string init = "tikhonov";
  read(obj, "init", init, w);
  c.init.kind = parse_init(init);
  std::string method = "auto";
  read(obj, "pinv_method", method, w);
  if (method == "banded_cholesky") {
    c.pinv_method = PinvMethod::banded_cholesky;
  } else if (method == "conjugate_gradient") {
    c.pinv_method = PinvMethod::conjugate_gradient;
  } else if (method != "auto") {
    throw ConfigError("ias.pinv_method: expected auto, banded_cholesky or conjugate_gradient");
  }
}

void validate(const ExperimentConfig& c) {
  const std::string& t = c.transform;
  const bool one_d = t == "d1" || t == "d2" || t == "d3";
  if (c.experiment == ExperimentKind::ct && t != "neumann2d") {
    throw ConfigError("transform: the ct experiment uses neumann2d");
  }
  if (c.experiment != ExperimentKind::ct && !one_d) {
    throw ConfigError("transform: expected d1, d2 or d3 for 1D experiments, got \"" + t + "\"");
  }
  if (c.experiment == ExperimentKind::ct && !c.sweep.empty()) {
    throw ConfigError("sweep: only supported for 1D experiments");
  }
  for (double v : c.sweep) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("sweep: vartheta values must be positive");
  }
  if (c.experiment == ExperimentKind::denoise) {
    if (c.denoise.n < 16) throw ConfigError("denoise.n: need at least 16 points");
    if (!(c.denoise.noise_variance >= 0.0)) throw ConfigError("denoise.noise_variance: must be nonnegative");
  }
  if (c.experiment == ExperimentKind::ct) {
    const CtParams& p = c.ct;
    if (p.n < 16 || p.detectors < 1 || p.angles < 1 || p.fine_factor < 1) {
      throw ConfigError("ct: need n >= 16 and positive detectors, angles and fine_factor");
    }
    if (!(p.noise_fraction >= 0.0)) throw ConfigError("ct.noise_fraction: must be nonnegative");
  }
  if (c.experiment == ExperimentKind::custom && c.custom.data.empty()) {
    throw ConfigError("custom.data: a data file is required");
  }
  // Prior admissibility (the noise prior needs M, checked again at run time).
  try {
    (void)HyperPriorSpec(c.hyper_prior.r, c.hyper_prior.beta, c.hyper_prior.vartheta);
    if (c.experiment == ExperimentKind::ct) {
      const PriorParams& s = c.ct.second_prior;
      (void)HyperPriorSpec(s.r, s.beta, s.vartheta);
    }
    IasConfig ias = c.ias;
    if (!ias.learn_nu && !ias.fixed_nu) ias.fixed_nu = 1.0;  // filled in per experiment
    ias.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
}

// --- output helpers ----------------------------------------------------------

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  return io::format_double(v);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << text;
}

// Runs fn(0..count-1) on up to `jobs` threads and rethrows the first failure.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SparsifyingTransform make_transform(const std::string& name, Index n) {
  if (name == "d1") return derivative_operator(1, n);
  if (name == "d2") return derivative_operator(2, n);
  if (name == "d3") return derivative_operator(3, n);
  throw ConfigError("transform: unsupported \"" + name + "\"");
}

Index total_inner(const IasState& s) {
  Index total = 0;
  for (const auto& rec : s.history) total += rec.inner_iterations;
  return total;
}

Index total_pinv(const IasState& s) {
  Index total = 0;
  for (const auto& rec : s.history) total += rec.pinv_iterations;
  return total;
}

fs::path resolve_out(const ExperimentConfig& config, const RunOptions& options) {
  fs::path out = options.out_dir;
  if (out.empty()) out = config.output.value_or("gias_out");
  fs::create_directories(out);
  return out;
}

// --- 1D experiments -------------------------------------------------------------

struct SweepRow {
  double vartheta = 0.0;
  IasState state;
  double seconds = 0.0;
  std::optional<Index> inner_plain;
  double seconds_plain = 0.0;
};

std::size_t run_signal(const ExperimentConfig& config, const RunOptions& options, const Vector& y,
                       const std::optional<Vector>& truth, double lambda, std::optional<double> default_nu,
                       json run_info) {
  const fs::path out = resolve_out(config, options);
  const Index n = y.size();
  const SparsifyingTransform transform = make_transform(config.transform, n);
  const Problem problem{identity(n), transform, y};

  std::vector<double> grid = config.sweep;
  if (grid.empty()) grid.push_back(config.hyper_prior.vartheta);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  IasConfig ias = config.ias;
  ias.init.lambda = lambda;
  if (!ias.learn_nu && !ias.fixed_nu) {
    if (!default_nu) throw ConfigError("ias.fixed_nu: required when learn_nu is false");
    ias.fixed_nu = *default_nu;
  }
  std::optional<NoisePriorSpec> noise;
  try {
    noise.emplace(config.noise_prior.r, config.noise_prior.beta, config.noise_prior.vartheta, n);
  } catch (const ParameterError& e) {
    if (ias.learn_nu) throw ConfigError(e.what());
  }

  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), options.jobs, [&](std::size_t i) {
    const HyperPriorSpec hp(config.hyper_prior.r, config.hyper_prior.beta, grid[i]);
    const Priors priors{hp, noise};
    SweepRow& row = rows[i];
    row.vartheta = grid[i];
    auto t0 = std::chrono::steady_clock::now();
    row.state = run_ias(problem, priors, ias);
    row.seconds = seconds_since(t0);
    if (config.denoise.compare_plain && config.experiment == ExperimentKind::denoise) {
      IasConfig plain = ias;
      plain.priorconditioned = !ias.priorconditioned;
      t0 = std::chrono::steady_clock::now();
      row.inner_plain = total_inner(run_ias(problem, priors, plain));
      row.seconds_plain = seconds_since(t0);
    }
  });

  const bool compare = config.denoise.compare_plain && config.experiment == ExperimentKind::denoise;
  std::ostringstream sweep;
  std::ostringstream timing;
  sweep << "vartheta,nu_hat,outer_iters,inner_iters" << (compare ? ",inner_iters_other" : "")
        << ",converged,rre,ssim,dp\n";
  timing << "vartheta,wall_seconds" << (compare ? ",wall_seconds_other,time_ratio" : "") << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    const IasState& s = r.state;
    const double dp = dp_residual(problem.forward, s.x, y, s.nu);
    sweep << fmt(r.vartheta) << ',' << fmt(s.nu) << ',' << s.iteration << ',' << total_inner(s);
    if (compare) sweep << ',' << *r.inner_plain;
    sweep << ',' << (s.converged ? 1 : 0) << ',';
    if (truth) {
      sweep << fmt(rre(s.x, *truth)) << ',' << fmt(ssim(s.x, *truth));
    } else {
      sweep << ',';
    }
    sweep << ',' << fmt(dp) << '\n';
    timing << fmt(r.vartheta) << ',' << fmt(r.seconds);
    if (compare) timing << ',' << fmt(r.seconds_plain) << ',' << fmt(r.seconds / r.seconds_plain);
    timing << '\n';
    io::write_csv_vector(out / ("reconstruction_" + std::to_string(i) + ".csv"), s.x);
    write_text(out / ("diagnostics_" + std::to_string(i) + ".csv"), emit_diagnostics(s.history));
  }
  write_text(out / "sweep.csv", sweep.str());
  write_text(out / "timing.csv", timing.str());
  io::write_csv_vector(out / "data.csv", y);
  if (truth) io::write_csv_vector(out / "truth.csv", *truth);
  run_info["transform"] = config.transform;
  run_info["seed"] = config.seed;
  run_info["grid"] = grid;
  write_text(out / "run.json", run_info.dump(2) + "\n");
  return rows.size();
}

// --- CT ------------------------------------------------------------------------

struct CtRun {
  std::string name;
  int prior_row = 1;
  bool learn_nu = false;
  std::string init;
  IasState state;
  double seconds = 0.0;
};

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  ExperimentConfig c;
  check_keys(doc,
             {"experiment", "transform", "hyper_prior", "noise_prior", "ias", "sweep", "seed", "output",
              "denoise", "ct", "custom"},
             "config");
  std::string experiment = "denoise";
  read(doc, "experiment", experiment, "config");
  if (experiment == "denoise") {
    c.experiment = ExperimentKind::denoise;
  } else if (experiment == "ct") {
    c.experiment = ExperimentKind::ct;
    c.transform = "neumann2d";
    c.ias.nonneg_projection = true;
  } else if (experiment == "custom") {
    c.experiment = ExperimentKind::custom;
  } else {
    throw ConfigError("experiment: expected denoise, ct or custom");
  }
  read(doc, "transform", c.transform, "config");
  read(doc, "seed", c.seed, "config");
  read(doc, "sweep", c.sweep, "config");
  if (doc.contains("output")) {
    std::string o;
    read(doc, "output", o, "config");
    c.output = o;
  }
  if (doc.contains("hyper_prior")) read_prior(doc["hyper_prior"], c.hyper_prior, "hyper_prior");
  if (doc.contains("noise_prior")) read_prior(doc["noise_prior"], c.noise_prior, "noise_prior");
  if (doc.contains("ias")) read_ias(doc["ias"], c.ias);
  if (doc.contains("denoise")) {
    const json& d = doc["denoise"];
    check_keys(d, {"n", "noise_variance", "tikhonov_lambda", "compare_plain"}, "denoise");
    read(d, "n", c.denoise.n, "denoise");
    read(d, "noise_variance", c.denoise.noise_variance, "denoise");
    read(d, "tikhonov_lambda", c.denoise.tikhonov_lambda, "denoise");
    read(d, "compare_plain", c.denoise.compare_plain, "denoise");
  }
  if (doc.contains("ct")) {
    const json& d = doc["ct"];
    check_keys(d,
               {"n", "detectors", "angles", "fine_factor", "noise_fraction", "tikhonov_lambda", "second_prior"},
               "ct");
    read(d, "n", c.ct.n, "ct");
    read(d, "detectors", c.ct.detectors, "ct");
    read(d, "angles", c.ct.angles, "ct");
    read(d, "fine_factor", c.ct.fine_factor, "ct");
    read(d, "noise_fraction", c.ct.noise_fraction, "ct");
    read(d, "tikhonov_lambda", c.ct.tikhonov_lambda, "ct");
    if (d.contains("second_prior")) read_prior(d["second_prior"], c.ct.second_prior, "ct.second_prior");
  }
  if (doc.contains("custom")) {
    const json& d = doc["custom"];
    check_keys(d, {"data", "truth", "tikhonov_lambda"}, "custom");
    std::string data;
    read(d, "data", data, "custom");
    c.custom.data = data;
    if (d.contains("truth")) {
      std::string truth;
      read(d, "truth", truth, "custom");
      c.custom.truth = truth;
    }
    read(d, "tikhonov_lambda", c.custom.tikhonov_lambda, "custom");
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config");
  std::stringstream buf;
  buf << in.rdbuf();
  ExperimentConfig c = parse_config(buf.str());
  // Relative custom data paths are taken relative to the config file.
  const fs::path base = path.parent_path();
  if (!c.custom.data.empty() && c.custom.data.is_relative()) c.custom.data = base / c.custom.data;
  if (c.custom.truth && c.custom.truth->is_relative()) c.custom.truth = base / *c.custom.truth;
  return c;
}

std::string emit_diagnostics(const std::vector<IterationRecord>& history) {
  std::ostringstream out;
  out << "outer_iter,objective,nu,inner_iters,pinv_iters,theta_min,theta_max,theta_change,nu_change\n";
  for (const IterationRecord& r : history) {
    out << r.iteration << ',' << fmt(r.objective_x) << ',' << fmt(r.nu) << ',' << r.inner_iterations << ','
        << r.pinv_iterations << ',' << fmt(r.theta_min) << ',' << fmt(r.theta_max) << ','
        << fmt(r.theta_change) << ',' << fmt(r.nu_change) << '\n';
  }
  return out.str();
}

std::size_t run_denoise(const ExperimentConfig& config, const RunOptions& options) {
  const Vector truth = piecewise_signal(config.denoise.n);
  const Vector y = synthesize_data(identity(truth.size()), truth,
                                   SynthesisSpec{1, config.denoise.noise_variance, config.seed});
  json info;
  info["experiment"] = "denoise";
  info["nu_bar"] = config.denoise.noise_variance;
  return run_signal(config, options, y, truth, config.denoise.tikhonov_lambda, config.denoise.noise_variance,
                    info);
}

namespace {

std::size_t run_custom(const ExperimentConfig& config, const RunOptions& options) {
  const Vector y = io::read_csv_vector(config.custom.data);
  std::optional<Vector> truth;
  if (config.custom.truth) {
    truth = io::read_csv_vector(*config.custom.truth);
    if (truth->size() != y.size()) throw ConfigError("custom.truth: length differs from the data");
  }
  json info;
  info["experiment"] = "custom";
  info["data"] = config.custom.data.string();
  return run_signal(config, options, y, truth, config.custom.tikhonov_lambda, std::nullopt, info);
}

}  // namespace

std::size_t run_ct(const ExperimentConfig& config, const RunOptions& options) {
  const fs::path out = resolve_out(config, options);
  const CtParams& p = config.ct;
  const Index n = p.n;
  const Index fine_n = n * p.fine_factor;
  const LinearOperator fine =
      radon_parallel(ParallelBeamGeometry{fine_n, p.detectors, p.angles, static_cast<double>(n)});
  const LinearOperator forward = radon_parallel(n, p.detectors, p.angles);
  const Vector x_fine = shepp_logan(fine_n).pixels;
  const Vector truth = block_average(x_fine, fine_n, p.fine_factor);
  const double nu_bar = ct_noise_variance(fine.apply(x_fine), p.noise_fraction);
  const Vector y = synthesize_data(fine, x_fine, SynthesisSpec{p.fine_factor, nu_bar, config.seed});

  const SparsifyingTransform transform = neumann_gradient_2d(n, n);
  const Problem problem{forward, transform, y};
  if (!common_kernel_check(forward, transform)) throw CommonKernelError();
  const Vector x_tik = tikhonov_init(forward, transform, p.tikhonov_lambda, y, config.ias.eps_cgls,
                                     config.ias.max_inner);

  NoisePriorSpec noise(config.noise_prior.r, config.noise_prior.beta, config.noise_prior.vartheta, y.size());
  const HyperPriorSpec row1(config.hyper_prior.r, config.hyper_prior.beta, config.hyper_prior.vartheta);
  const HyperPriorSpec row2(p.second_prior.r, p.second_prior.beta, p.second_prior.vartheta);

  std::vector<CtRun> runs = {
      {"row1_fixed_tikhonov", 1, false, "tikhonov", {}, 0.0},
      {"row1_learned_tikhonov", 1, true, "tikhonov", {}, 0.0},
      {"row2_fixed_ones", 2, false, "ones", {}, 0.0},
      {"row2_learned_ones", 2, true, "ones", {}, 0.0},
      {"row2_fixed_previous", 2, false, "previous", {}, 0.0},
      {"row2_learned_previous", 2, true, "previous", {}, 0.0},
  };
  auto solve = [&](CtRun& run, const Vector* previous) {
    IasConfig c = config.ias;
    c.learn_nu = run.learn_nu;
    c.fixed_nu = nu_bar;
    if (run.init == "tikhonov") {
      c.init.kind = InitKind::custom;
      c.init.custom = x_tik;
    } else if (run.init == "ones") {
      c.init.kind = InitKind::ones;
    } else {
      c.init.kind = InitKind::custom;
      c.init.custom = *previous;
    }
    const Priors priors{run.prior_row == 1 ? row1 : row2, noise};
    const auto t0 = std::chrono::steady_clock::now();
    run.state = run_ias(problem, priors, c);
    run.seconds = seconds_since(t0);
  };
  // Stage 1 is independent; stage 2 starts from the first-row solutions.
  parallel_for(4, options.jobs, [&](std::size_t i) { solve(runs[i], nullptr); });
  parallel_for(2, options.jobs, [&](std::size_t i) { solve(runs[4 + i], &runs[i].state.x); });

  const SsimOptions image{n, std::nullopt};
  std::ostringstream summary;
  std::ostringstream timing;
  summary << "run,prior_row,learn_nu,init,nu_hat,outer_iters,inner_iters,pinv_iters,converged,rre,ssim,dp\n";
  summary << "tikhonov,,,," << ",,,,," << fmt(rre(x_tik, truth)) << ',' << fmt(ssim(x_tik, truth, image))
          << ",\n";
  timing << "run,wall_seconds\n";
  for (const CtRun& r : runs) {
    const IasState& s = r.state;
    summary << r.name << ',' << r.prior_row << ',' << (r.learn_nu ? 1 : 0) << ',' << r.init << ','
            << fmt(s.nu) << ',' << s.iteration << ',' << total_inner(s) << ',' << total_pinv(s) << ','
            << (s.converged ? 1 : 0) << ',' << fmt(rre(s.x, truth)) << ',' << fmt(ssim(s.x, truth, image))
            << ',' << fmt(dp_residual(forward, s.x, y, s.nu)) << '\n';
    timing << r.name << ',' << fmt(r.seconds) << '\n';
    io::write_pgm(out / (r.name + ".pgm"), io::Image{n, n, s.x});
    write_text(out / ("diagnostics_" + r.name + ".csv"), emit_diagnostics(s.history));
  }
  write_text(out / "summary.csv", summary.str());
  write_text(out / "timing.csv", timing.str());
  io::write_pgm(out / "truth.pgm", io::Image{n, n, truth});
  io::write_pgm(out / "tikhonov.pgm", io::Image{n, n, x_tik});
  io::write_pgm(out / "sinogram.pgm", io::Image{p.detectors, p.angles, y});
  io::write_csv_vector(out / "data.csv", y);

  json info;
  info["experiment"] = "ct";
  info["seed"] = config.seed;
  info["nu_bar"] = nu_bar;
  info["grid"] = n;
  info["detectors"] = p.detectors;
  info["angles"] = p.angles;
  info["fine_factor"] = p.fine_factor;
  write_text(out / "run.json", info.dump(2) + "\n");
  return runs.size();
}

std::size_t run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  switch (config.experiment) {
    case ExperimentKind::denoise:
      return run_denoise(config, options);
    case ExperimentKind::ct:
      return run_ct(config, options);
    case ExperimentKind::custom:
      return run_custom(config, options);
  }
  return 0;
}

namespace {

std::vector<std::vector<std::string>> read_csv_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open");
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string format_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (r.size() > width.size()) width.resize(r.size(), 0);
    for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
  }
  std::ostringstream out;
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      out << std::setw(static_cast<int>(width[j])) << r[j] << (j + 1 < r.size() ? "  " : "");
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string diagnose(const fs::path& run_dir) {
  if (!fs::is_directory(run_dir)) throw ConfigError(run_dir.string() + ": not a run directory");
  std::ostringstream out;
  bool found = false;
  for (const char* name : {"sweep.csv", "summary.csv"}) {
    const fs::path p = run_dir / name;
    if (!fs::exists(p)) continue;
    found = true;
    out << "== " << name << '\n' << format_table(read_csv_table(p)) << '\n';
  }
  std::vector<fs::path> diags;
  for (const auto& e : fs::directory_iterator(run_dir)) {
    const std::string f = e.path().filename().string();
    if (f.rfind("diagnostics_", 0) == 0 && e.path().extension() == ".csv") diags.push_back(e.path());
  }
  std::sort(diags.begin(), diags.end());
  if (!diags.empty()) {
    found = true;
    std::vector<std::vector<std::string>> table{
        {"file", "outer_iters", "final_objective", "final_nu", "inner_total", "objective_increases"}};
    for (const fs::path& p : diags) {
      const auto rows = read_csv_table(p);
      long inner = 0;
      int increases = 0;
      double prev = std::numeric_limits<double>::infinity();
      for (std::size_t i = 1; i < rows.size(); ++i) {
        inner += std::stol(rows[i].at(3));
        const double obj = std::stod(rows[i].at(1));
        if (obj > prev) ++increases;
        prev = obj;
      }
      const auto& last = rows.back();
      table.push_back({p.filename().string(), std::to_string(rows.size() - 1), rows.size() > 1 ? last[1] : "",
                       rows.size() > 1 ? last[2] : "", std::to_string(inner), std::to_string(increases)});
    }
    out << "== diagnostics\n" << format_table(table);
  }
  if (!found) throw ConfigError(run_dir.string() + ": no sweep.csv, summary.csv or diagnostics files");
  return out.str();
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw ConfigError("theta grid: empty entry");
    tok = tok.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ConfigError("theta grid: \"" + tok + "\" is not a number");
    }
    if (used != tok.size() || !(v > 0.0)) throw ConfigError("theta grid: \"" + tok + "\" is not a positive number");
    grid.push_back(v);
  }
  if (grid.empty()) throw ConfigError("theta grid: no values");
  return grid;
}

}  // namespace gias::cli
