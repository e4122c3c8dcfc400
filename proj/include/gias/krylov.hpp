#pragma once

// Krylov solvers and pseudoinverse appliers for R_theta.

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "gias/operators.hpp"
#include "gias/transforms.hpp"

namespace gias {

enum class Termination { converged, max_iter, breakdown };

std::string_view to_string(Termination t);

struct SolveReport {
  Index iterations = 0;
  double final_relative_residual = 0.0;
  Termination termination = Termination::converged;
};

struct SolveResult {
  Vector x;
  SolveReport report;
};

using Applier = std::function<Vector(const Vector&)>;

/// pAp <= kBreakdownRatio * |p|^2 is treated as breakdown.
inline constexpr double kBreakdownRatio = 1e-14;

/// (Preconditioned) conjugate gradients for symmetric PSD A. Stops when
/// |b - A x| / |b| <= tol.
SolveResult cg(const LinearOperator& a, const Vector& b, const Vector& x0, double tol, Index maxit,
               const Applier& precond = {});

/// |A^T r| <= kCglsFloor * |A| * |r| ends CGLS with a breakdown report.
inline constexpr double kCglsFloor = 1e-12;

/// CGLS for min |A x - b|. Stops when |A^T (b - A x)| / |A^T b| <= tol, or
/// with a breakdown report once |A^T r| reaches the rounding floor.
/// `on_iteration(k, |b - A x_k|)` is called after every step.
SolveResult cgls(const LinearOperator& a, const Vector& b, const Vector& x0, double tol, Index maxit,
                 const std::function<void(Index, double)>& on_iteration = {});

/// PCG for a singular symmetric PSD system A x = b with b in col(A), using a
/// singular preconditioner M^+ with col(M) = col(A). With x0 in col(A) the
/// iterates converge to A^+ b. This is the standard recurrence with M^+ in
/// place of M^{-1}; a start outside col(A) is not detected.
SolveResult pcg_singular(const LinearOperator& a, const Vector& b, const Applier& pinv_precond,
                         const Vector& x0, double tol, Index maxit);

/// Pseudo-inverse of the unweighted 2D Neumann Laplacian R^T R = B^T L B,
/// where B is the orthonormal type-II 2D DCT.
class SpectralPreconditioner {
 public:
  SpectralPreconditioner(Index n1, Index n2);

  Index n1() const { return n1_; }
  Index n2() const { return n2_; }
  /// Diagonal of L in DCT ordering (row-major n1 x n2 frequencies).
  const Vector& eigenvalues() const { return eigenvalues_; }
  const Vector& pseudo_eigenvalues() const { return pseudo_; }

  /// B v
  Vector forward_dct(const Vector& v) const;
  /// B^T v
  Vector inverse_dct(const Vector& v) const;
  /// B^T L^+ B v
  Vector apply(const Vector& v) const;

 private:
  struct Plans;
  Index n1_;
  Index n2_;
  std::shared_ptr<const Plans> plans_;
  Vector eigenvalues_;
  Vector pseudo_;
};

SpectralPreconditioner dct_preconditioner(Index n1, Index n2);

/// R_theta^+ v: CG on R_theta^T R_theta z = R_theta^T v from z0 = 0.
SolveResult pinv_apply(const WeightedTransform& r, const Vector& v,
                       const SpectralPreconditioner* precond, double tol, Index maxit);

/// (R_theta^+)^T v = R_theta u with R_theta^T R_theta u = (I - W W^T) v.
/// Reuses the same preconditioner as pinv_apply.
SolveResult pinv_adjoint_apply(const WeightedTransform& r, const Vector& v, const DenseMatrix& kernel,
                               const SpectralPreconditioner* precond, double tol, Index maxit);

/// Matrix-vector products with R_theta^+ and its transpose.
class PseudoInverse {
 public:
  virtual ~PseudoInverse() = default;
  virtual Vector apply(const Vector& w) const = 0;
  virtual Vector apply_adjoint(const Vector& v) const = 0;
  /// Inner iterations spent so far (0 for direct methods).
  virtual Index inner_iterations() const { return 0; }
};

/// Exact pseudoinverse up to the CG tolerance.
class IterativePinv final : public PseudoInverse {
 public:
  IterativePinv(WeightedTransform r, std::shared_ptr<const SpectralPreconditioner> precond,
                double tol, Index maxit);
  Vector apply(const Vector& w) const override;
  Vector apply_adjoint(const Vector& v) const override;
  Index inner_iterations() const override { return iterations_.load(); }
  /// Inner solves that stopped without meeting the tolerance.
  Index unconverged_solves() const { return unconverged_.load(); }

 private:
  void record(const SolveReport& rep) const;
  WeightedTransform r_;
  std::shared_ptr<const SpectralPreconditioner> precond_;
  double tol_;
  Index maxit_;
  mutable std::atomic<Index> iterations_{0};
  mutable std::atomic<Index> unconverged_{0};
};

/// Cholesky factor of a symmetric positive definite band matrix.
class BandedCholesky {
 public:
  /// Only the lower band |i - j| <= bandwidth of `a` is read; entries outside
  /// the band must be zero. Throws SolverError if `a` is not positive definite.
  BandedCholesky(const SparseMatrix& a, Index bandwidth);

  Index size() const { return n_; }
  Index bandwidth() const { return p_; }
  Vector solve(const Vector& b) const;

 private:
  double& at(Index i, Index k) { return band_[static_cast<std::size_t>(i * (p_ + 1) + (i - k))]; }
  double at(Index i, Index k) const { return band_[static_cast<std::size_t>(i * (p_ + 1) + (i - k))]; }
  Index n_;
  Index p_;
  std::vector<double> band_;
};

/// R_theta^+ ~ (R_theta^T R_theta + delta I)^{-1} R_theta^T and
/// (R_theta^+)^T ~ R_theta (R_theta^T R_theta + delta I)^{-1}, with a banded
/// Cholesky factorization (O(p^2 N)).
class BandedDeltaPinv final : public PseudoInverse {
 public:
  BandedDeltaPinv(WeightedTransform r, double delta);
  Vector apply(const Vector& w) const override;
  Vector apply_adjoint(const Vector& v) const override;
  double delta() const { return delta_; }
  Index bandwidth() const { return chol_.bandwidth(); }

 private:
  WeightedTransform r_;
  double delta_;
  BandedCholesky chol_;
};

/// Throws ParameterError when the transform has no bandwidth or delta <= 0.
BandedDeltaPinv banded_delta_pinv(const WeightedTransform& r, double delta);

}  // namespace gias
