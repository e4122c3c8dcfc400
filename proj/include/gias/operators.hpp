#pragma once

// Matrix-free linear operators.
//
// A LinearOperator is an immutable pair of maps v -> A v and u -> A^T u with
// fixed shape. Composition helpers return new operators that share the state
// of their parts, so operators are cheap to copy and safe to read from
// several threads at once.

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <memory>
#include <string>

#include "gias/errors.hpp"

namespace gias {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;

class LinearOperator {
 public:
  /// out is sized by the caller; implementations overwrite it.
  using Kernel = std::function<void(const Vector& in, Vector& out)>;

  LinearOperator() = default;
  LinearOperator(Index rows, Index cols, Kernel apply, Kernel apply_adjoint);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  /// A v. Throws DimensionError when v.size() != cols().
  Vector apply(const Vector& v) const;
  /// A^T u. Throws DimensionError when u.size() != rows().
  Vector apply_adjoint(const Vector& u) const;

  /// The operator A^T, sharing state with this one.
  LinearOperator transpose() const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::shared_ptr<const Kernel> apply_;
  std::shared_ptr<const Kernel> adjoint_;
};

LinearOperator identity(Index n);
LinearOperator zero_operator(Index rows, Index cols);
LinearOperator from_dense(DenseMatrix matrix);
LinearOperator diagonal(Vector d);

/// s * A
LinearOperator scaled(const LinearOperator& op, double s);

/// A B (apply B first).
LinearOperator compose(const LinearOperator& a, const LinearOperator& b);

/// [top_weight * top; bottom_weight * bottom]
LinearOperator stack_scaled(const LinearOperator& top, double top_weight,
                            const LinearOperator& bottom, double bottom_weight);

/// (A (x) B) v without forming the Kronecker product. v is the row-major
/// vectorization of a (A.cols x B.cols) array X, and the result is the
/// row-major vectorization of A X B^T.
Vector kron_apply(const LinearOperator& a, const LinearOperator& b, const Vector& v);

/// A (x) B as an operator; its adjoint is A^T (x) B^T.
LinearOperator kron(const LinearOperator& a, const LinearOperator& b);

/// Largest rows*cols accepted by to_dense.
inline constexpr std::size_t kDenseEntryLimit = 4'000'000;

/// Dense matrix whose j-th column is A e_j. Test-oracle use only.
DenseMatrix to_dense(const LinearOperator& op);

}  // namespace gias
