#pragma once

// x-updates: the plain stacked least squares solve and the priorconditioned
// (whitened) solve through the oblique pseudoinverse
//   R_theta^# = (I - W (F W)^+ F) R_theta^+.

#include <memory>

#include "gias/krylov.hpp"
#include "gias/operators.hpp"
#include "gias/transforms.hpp"

namespace gias {

/// Economic QR of F W, computed once and reused for every theta.
struct KernelFactorization {
  DenseMatrix w;  ///< N x P
  DenseMatrix q;  ///< M x P, orthonormal columns
  DenseMatrix r;  ///< P x P, upper triangular and invertible

  Index kernel_dim() const { return w.cols(); }
  /// (F W)^+ u = R^{-1} Q^T u
  Vector fw_pinv(const Vector& u) const;
  /// ((F W)^+)^T v = Q R^{-T} v
  Vector fw_pinv_adjoint(const Vector& v) const;
};

/// Throws CommonKernelError when F W is numerically rank deficient.
KernelFactorization precompute_kernel_qr(const LinearOperator& forward, const DenseMatrix& kernel);

/// W (F W)^+ y
Vector x_kernel_component(const KernelFactorization& kf, const Vector& y);

enum class PinvMethod { banded_cholesky, conjugate_gradient };

struct PinvStrategy {
  PinvMethod method = PinvMethod::banded_cholesky;
  double delta = 1e-8;           ///< shift for banded_cholesky
  double tol = 1e-8;             ///< relative residual for conjugate_gradient
  Index maxit = 10000;
  /// Spectral preconditioner for 2D Neumann transforms (conjugate_gradient only).
  std::shared_ptr<const SpectralPreconditioner> precond;
};

std::shared_ptr<const PseudoInverse> make_pseudo_inverse(const WeightedTransform& r,
                                                          const PinvStrategy& strategy);

class ObliquePinv {
 public:
  ObliquePinv(LinearOperator forward, std::shared_ptr<const KernelFactorization> kf,
              std::shared_ptr<const PseudoInverse> pinv);

  Index rows() const { return n_; }
  /// R_theta^# w
  Vector apply(const Vector& w) const;
  /// (R_theta^#)^T v
  Vector apply_adjoint(const Vector& v) const;
  const KernelFactorization& factorization() const { return *kf_; }
  const PseudoInverse& pinv() const { return *pinv_; }

 private:
  LinearOperator forward_;
  std::shared_ptr<const KernelFactorization> kf_;
  std::shared_ptr<const PseudoInverse> pinv_;
  Index n_;
};

struct XUpdate {
  Vector x;
  SolveReport report;
  /// Pseudoinverse CG iterations spent inside this update (0 when direct).
  Index pinv_iterations = 0;
};

/// CGLS on [nu^{-1/2} F R^#; I] w = [nu^{-1/2} y; 0] from w0 = R_theta x_prev,
/// then x = x_ker + R^# w.
XUpdate whitened_x_update(const LinearOperator& forward, const WeightedTransform& r_theta,
                          const ObliquePinv& oblique, double nu, const Vector& y, double tol,
                          Index maxit, const Vector& x_prev);

/// CGLS on [nu^{-1/2} F; R_theta] x = [nu^{-1/2} y; 0] warm-started at x0.
XUpdate plain_x_update(const LinearOperator& forward, const WeightedTransform& r_theta, double nu,
                       const Vector& y, double tol, Index maxit, const Vector& x0);

}  // namespace gias
