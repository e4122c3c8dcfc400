#pragma once

// Coordinate updates for the prior variances theta and the noise variance nu.
//
// Both updates minimize a scalar function of the form
//   s^2 / (2 v) + (v / c)^r - eta log v
// whose minimizer is v = c * phi(s / sqrt(c)), where phi solves
//   phi'(t) = 2 t phi / (2 r^2 phi^(r+1) + t^2),  phi(0) = (eta / r)^(1/r).

#include "gias/operators.hpp"

namespace gias {

/// Generalized gamma hyper-prior GG(r, beta, vartheta) on theta.
class HyperPriorSpec {
 public:
  /// vartheta of length 1 is broadcast to every component.
  HyperPriorSpec(double r, double beta, Vector vartheta);
  HyperPriorSpec(double r, double beta, double vartheta);

  double r() const { return r_; }
  double beta() const { return beta_; }
  /// r * beta - 3/2
  double eta() const { return eta_; }
  const Vector& vartheta() const { return vartheta_; }
  bool broadcast() const { return vartheta_.size() == 1; }
  /// vartheta expanded to length k. Throws DimensionError when it does not fit.
  Vector vartheta_for(Index k) const;

 private:
  double r_;
  double beta_;
  double eta_;
  Vector vartheta_;
};

/// Generalized gamma hyper-prior on the noise variance nu with M observations.
class NoisePriorSpec {
 public:
  NoisePriorSpec(double r, double beta, double vartheta, Index m);

  double r() const { return r_; }
  double beta() const { return beta_; }
  double vartheta() const { return vartheta_; }
  Index m() const { return m_; }
  /// r * beta - (M + 2) / 2
  double eta() const { return eta_; }

 private:
  double r_;
  double beta_;
  double vartheta_;
  Index m_;
  double eta_;
};

/// Throws ParameterError unless (r > 0, eta > 0) or (r < 0, eta < 0).
void check_admissible(double r, double eta);

/// phi at every entry of an ascending, nonnegative t grid, from one adaptive
/// Dormand-Prince sweep (absolute 1e-12, relative 1e-10 on log phi).
Vector phi_solve(const Vector& t_values, double r, double eta);

/// (eta / r)^(1/r), the value of phi at t = 0 and its minimum.
double phi_floor(double r, double eta);

/// theta_i = vartheta_i * phi(|[Rx]_i| / sqrt(vartheta_i)). Closed forms are
/// used for r = 1 and r = -1.
Vector update_theta(const Vector& rx, const HyperPriorSpec& prior);

/// vartheta_i (eta / r)^(1/r), a lower bound for every theta update.
Vector theta_lower_bound(const HyperPriorSpec& prior, Index k);

/// Minimizer over nu of s^2/(2 nu) + (nu/vartheta)^r - eta log nu, with s the
/// residual norm |F x - y|.
double update_nu(double residual_norm, const NoisePriorSpec& prior);

/// vartheta (eta / r)^(1/r), the smallest value update_nu can return.
double nu_lower_bound(const NoisePriorSpec& prior);

}  // namespace gias
