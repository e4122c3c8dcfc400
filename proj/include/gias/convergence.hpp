#pragma once

// Numerical checks of the descent, stationarity and convexity properties of
// the IAS iteration.

#include <optional>
#include <vector>

#include "gias/ias.hpp"

namespace gias {

/// Relative optimality residuals of each block at a point.
struct CoordinateResiduals {
  /// |theta - update_theta(R x)| / |theta|
  double theta = 0.0;
  /// |nu - update_nu(|F x - y|)| / nu, zero when nu is fixed
  double nu = 0.0;
  /// |x - x*|_H / |x*|_H with H = F^T F / nu + R^T D^{-1} R and x* the exact
  /// x-block minimizer, i.e. the normal-equation residual H x - F^T y / nu
  /// measured in the H^{-1} norm relative to F^T y / nu. This is independent of
  /// the metric the x-solver worked in.
  double x = 0.0;
  /// Euclidean |H x - F^T y / nu| / |F^T y / nu| (informational).
  double x_normal = 0.0;

  /// Largest of theta, nu and x.
  double max() const;
};

/// Tolerance for the reference x-block solve inside the residual check.
inline constexpr double kReferenceSolveTol = 1e-11;

CoordinateResiduals check_coordinatewise_minimizer(const Problem& problem, const Priors& priors,
                                                   const Vector& x, const Vector& theta, double nu);
CoordinateResiduals check_coordinatewise_minimizer(const IasState& state, const Problem& problem,
                                                   const Priors& priors);

/// Gradient of G in (x, theta[, nu]); nu is included only with a noise prior.
Vector objective_gradient(const Problem& problem, const Priors& priors, const Vector& x,
                          const Vector& theta, double nu);

/// Smallest eigenvalue of the Hessian of G in (x, theta[, nu]), from central
/// differences of the analytic gradient with steps 1e-5 * max(|z_i|, 1e-3).
/// Throws ParameterError when theta or nu is not strictly positive and
/// DimensionError beyond kHessianMaxVariables unknowns.
double check_hessian_psd(const Problem& problem, const Priors& priors, const Vector& x, const Vector& theta,
                         double nu);

inline constexpr Index kHessianMaxVariables = 400;

/// True when theta (and nu, if thresholded) lie strictly below the local
/// convexity thresholds of `report`.
bool inside_thresholds(const ConvexityReport& report, const Vector& theta, double nu);

/// Objective values after each block update, in order.
struct DescentTrace {
  std::vector<double> values;

  /// Indices j with values[j] > values[j-1] + slack * |values[j-1]|.
  std::vector<std::size_t> violations(double slack) const;
};

/// With `include_nu`, the value after the nu update is part of the trace.
DescentTrace descent_trace(const std::vector<IterationRecord>& history, bool include_nu = true);

}  // namespace gias
