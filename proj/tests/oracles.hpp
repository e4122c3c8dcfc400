#pragma once

// Reference computations used only by the tests. Everything here is dense
// and deliberately naive.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <random>

#include "gias/operators.hpp"

namespace oracle {

using gias::DenseMatrix;
using gias::Index;
using gias::Vector;

/// Moore-Penrose pseudoinverse from a full SVD with a relative cutoff.
inline DenseMatrix pinv(const DenseMatrix& a, double rcond = 1e-12) {
  const Eigen::JacobiSVD<DenseMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double cut = s.size() > 0 ? rcond * s[0] : 0.0;
  Vector inv = Vector::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    if (s[i] > cut) inv[i] = 1.0 / s[i];
  }
  return svd.matrixV().leftCols(s.size()) * inv.asDiagonal() * svd.matrixU().leftCols(s.size()).transpose();
}

/// Minimizer of s^2/(2v) + (v/c)^r - eta log v by golden-section search on
/// u = log v. Comparisons use term-wise differences so they stay accurate
/// near the flat minimum.
inline double scalar_argmin(double s, double c, double r, double eta) {
  const double lc = std::log(c);
  // f(a) - f(b)
  auto diff = [&](double a, double b) {
    const double t1 = 0.5 * s * s * std::exp(-b) * std::expm1(b - a);
    const double t2 = std::exp(r * (b - lc)) * std::expm1(r * (a - b));
    return t1 + t2 - eta * (a - b);
  };
  // The minimizer is at least c (eta/r)^(1/r), so start left of that and
  // walk right with doubling steps until f increases.
  double prev = lc + std::log(eta / r) / r - 2.0;
  double lo = prev;
  double step = 0.5;
  double hi = prev + step;
  while (diff(hi, prev) < 0.0) {
    lo = prev;
    prev = hi;
    step *= 2.0;
    hi = prev + step;
  }
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
    if (diff(x1, x2) < 0.0) {
      b = x2;
      x2 = x1;
      x1 = b - g * (b - a);
    } else {
      a = x1;
      x1 = x2;
      x2 = a + g * (b - a);
    }
  }
  return std::exp(0.5 * (a + b));
}

/// Solves (F^T F / nu + R^T D^{-1} R) x = F^T y / nu densely.
inline Vector dense_x_update(const DenseMatrix& f, const DenseMatrix& r, const Vector& theta, double nu,
                             const Vector& y) {
  const DenseMatrix h = f.transpose() * f / nu + r.transpose() * theta.cwiseInverse().asDiagonal() * r;
  return h.ldlt().solve(f.transpose() * y / nu);
}

inline Vector uniform_vector(std::mt19937_64& rng, Index n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

inline Vector normal_vector(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

inline double rel(const Vector& a, const Vector& b) { return (a - b).norm() / std::max(b.norm(), 1e-300); }

}  // namespace oracle
