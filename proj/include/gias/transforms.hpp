#pragma once

// Sparsifying transforms R together with an orthonormal basis W of ker(R).

#include <Eigen/SparseCore>

#include <memory>
#include <optional>
#include <string>

#include "gias/operators.hpp"

namespace gias {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Image grid that a 2D transform acts on; vectors are row-major n1 x n2.
struct GridShape {
  Index n1 = 0;
  Index n2 = 0;
};

class SparsifyingTransform {
 public:
  SparsifyingTransform(std::string name, SparseMatrix matrix, DenseMatrix kernel,
                       std::optional<Index> bandwidth, std::optional<GridShape> grid = {});

  const std::string& name() const { return *name_; }
  const LinearOperator& op() const { return op_; }
  const SparseMatrix& matrix() const { return *matrix_; }
  /// N x P with orthonormal columns spanning ker(R).
  const DenseMatrix& kernel() const { return *kernel_; }

  Index rows() const { return matrix_->rows(); }
  Index cols() const { return matrix_->cols(); }
  Index kernel_dim() const { return kernel_->cols(); }
  /// Half-bandwidth of R^T R, when R^T R is banded in the natural ordering.
  std::optional<Index> bandwidth() const { return bandwidth_; }
  std::optional<GridShape> grid() const { return grid_; }

 private:
  std::shared_ptr<const std::string> name_;
  std::shared_ptr<const SparseMatrix> matrix_;
  std::shared_ptr<const DenseMatrix> kernel_;
  LinearOperator op_;
  std::optional<Index> bandwidth_;
  std::optional<GridShape> grid_;
};

/// R_theta = D_theta^{-1/2} R.
class WeightedTransform {
 public:
  WeightedTransform(SparsifyingTransform base, Vector theta);

  const SparsifyingTransform& base() const { return base_; }
  const Vector& theta() const { return theta_; }
  /// theta_i^{-1/2}
  const Vector& row_scale() const { return row_scale_; }
  const LinearOperator& op() const { return op_; }

  Vector apply(const Vector& x) const { return op_.apply(x); }
  Vector apply_adjoint(const Vector& w) const { return op_.apply_adjoint(w); }

  /// R_theta^T R_theta as a sparse matrix.
  SparseMatrix gram() const;

 private:
  SparsifyingTransform base_;
  Vector theta_;
  Vector row_scale_;
  LinearOperator op_;
};

/// Difference stencils [-1,1], [-1,2,-1], [-1,3,-3,1] on N points.
SparsifyingTransform derivative_operator(int order, Index n);

/// First differences padded with a trailing zero row (L x L).
SparsifyingTransform neumann_gradient_1d(Index length);

/// [R_{N1} (x) I_{N2}; I_{N1} (x) R_{N2}] for a row-major N1 x N2 image.
SparsifyingTransform neumann_gradient_2d(Index n1, Index n2);

/// R = I_N (the classical, trivial-kernel setting).
SparsifyingTransform identity_transform(Index n);

/// Any explicit R. The kernel basis comes from a dense SVD, so this is
/// meant for modest N.
SparsifyingTransform transform_from_matrix(std::string name, const DenseMatrix& r);

WeightedTransform weight(const SparsifyingTransform& base, const Vector& theta);

/// True when ker(F) and ker(R) intersect only in 0.
bool common_kernel_check(const LinearOperator& forward, const SparsifyingTransform& transform);

}  // namespace gias
