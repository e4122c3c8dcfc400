#pragma once

// The generalized IAS algorithm: block coordinate descent on
//   G(x, theta, nu) = |F x - y|^2 / (2 nu) + 1/2 |D_theta^{-1/2} R x|^2
//                     + sum (theta_i / vartheta_i)^r - eta sum log theta_i
//                     + (nu / vartheta~)^r~ - eta~ log nu
// alternating theta, nu and x updates.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gias/krylov.hpp"
#include "gias/operators.hpp"
#include "gias/priorcond.hpp"
#include "gias/transforms.hpp"
#include "gias/updates.hpp"

namespace gias {

struct Problem {
  LinearOperator forward;
  SparsifyingTransform transform;
  Vector y;
};

struct Priors {
  HyperPriorSpec theta;
  /// Absent when nu is fixed.
  std::optional<NoisePriorSpec> noise;
};

/// G at (x, theta, nu); +infinity when theta or nu is not strictly positive.
/// Without a noise prior the nu terms are dropped.
double objective(const Problem& problem, const Priors& priors, const Vector& x, const Vector& theta,
                 double nu);

enum class InitKind { zeros, ones, tikhonov, custom };

struct InitSpec {
  InitKind kind = InitKind::zeros;
  double lambda = 1.0;  ///< tikhonov weight
  Vector custom;
};

/// Floor for the coupled inner tolerance; tighter CG solves on weighted
/// gradients mostly burn iterations without gaining accuracy.
inline constexpr double kMinCoupledPinvTol = 1e-12;

struct IasConfig {
  double eps_ias = 1e-3;
  double eps_cgls = 1e-4;
  double delta_pinv = 1e-8;
  Index max_outer = 200;
  Index max_inner = 2000;
  bool priorconditioned = true;
  bool learn_nu = true;
  std::optional<double> fixed_nu;
  bool nonneg_projection = false;
  InitSpec init;
  /// Unset: banded Cholesky for banded 1D transforms, DCT-preconditioned CG
  /// for 2D gradients, plain CG otherwise.
  std::optional<PinvMethod> pinv_method;
  /// Unset: 1e-8 * eps_cgls / 1e-4, but never below kMinCoupledPinvTol.
  std::optional<double> pinv_tol;
  Index pinv_maxit = 20000;

  /// Throws ParameterError for nonpositive tolerances or a missing fixed nu.
  void validate() const;
  double effective_pinv_tol() const;
};

/// Diagnostics for one outer iteration k. The objective is recorded after
/// every block update.
struct IterationRecord {
  Index iteration = 0;
  double objective_start = 0.0;
  double objective_theta = 0.0;
  double objective_nu = 0.0;
  double objective_x = 0.0;
  double nu = 0.0;
  Index inner_iterations = 0;
  Index pinv_iterations = 0;
  double theta_min = 0.0;
  double theta_max = 0.0;
  /// |theta_k - theta_{k-1}| / |theta_{k-1}|, NaN on the first iteration.
  double theta_change = std::numeric_limits<double>::quiet_NaN();
  double nu_change = std::numeric_limits<double>::quiet_NaN();
  Termination inner_termination = Termination::converged;
};

struct IasState {
  Vector x;
  Vector theta;
  double nu = 0.0;
  Index iteration = 0;
  bool converged = false;
  std::vector<IterationRecord> history;
};

struct RelativeChanges {
  double theta = 0.0;
  double nu = 0.0;
};

RelativeChanges relative_changes(const Vector& theta_prev, double nu_prev, const Vector& theta,
                                 double nu);

/// Both relative changes below eps. With nu fixed the nu clause holds trivially.
bool stopping_check(const IasState& prev, const IasState& curr, double eps);

/// argmin |F x - y|^2 + lambda |R x|^2 by CGLS from zero.
Vector tikhonov_init(const LinearOperator& forward, const SparsifyingTransform& transform, double lambda,
                     const Vector& y, double tol, Index maxit = 5000);

/// The pseudoinverse strategy run_ias would use for this transform.
PinvStrategy default_pinv_strategy(const SparsifyingTransform& transform, const IasConfig& config);

/// Runs until stopping_check holds or max_outer iterations. Throws
/// ParameterError for an inadmissible configuration and CommonKernelError when
/// F and R share a kernel direction.
IasState run_ias(const Problem& problem, const Priors& priors, const IasConfig& config);

enum class Convexity { global_strict, local, none };

std::string_view to_string(Convexity c);

struct ConvexityReport {
  Convexity regime = Convexity::none;
  /// Local convexity holds where theta < theta_threshold (componentwise) and
  /// nu < nu_threshold.
  std::optional<Vector> theta_threshold;
  std::optional<double> nu_threshold;
};

/// Convexity regime of G given the priors; a missing noise prior means nu
/// is fixed. `k` sizes the threshold vector.
ConvexityReport classify_convexity(const HyperPriorSpec& prior, const std::optional<NoisePriorSpec>& noise,
                                   Index k);

/// |F x - y|^2 - tau nu M
double dp_residual(const LinearOperator& forward, const Vector& x, const Vector& y, double nu,
                   double tau = 1.01);

}  // namespace gias
