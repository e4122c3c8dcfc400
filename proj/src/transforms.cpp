#include "gias/transforms.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <vector>

namespace gias {

namespace {

LinearOperator sparse_operator(std::shared_ptr<const SparseMatrix> m) {
  return {m->rows(), m->cols(), [m](const Vector& in, Vector& out) { out.noalias() = *m * in; },
          [m](const Vector& in, Vector& out) { out.noalias() = m->transpose() * in; }};
}

DenseMatrix orthonormalize(const DenseMatrix& basis) {
  if (basis.cols() == 0) return basis;
  Eigen::HouseholderQR<DenseMatrix> qr(basis);
  return qr.householderQ() * DenseMatrix::Identity(basis.rows(), basis.cols());
}

// Half-bandwidth of R^T R: two columns interact iff some row touches both.
Index gram_bandwidth(const SparseMatrix& r) {
  Index p = 0;
  for (Index row = 0; row < r.outerSize(); ++row) {
    Index lo = r.cols();
    Index hi = -1;
    for (SparseMatrix::InnerIterator it(r, row); it; ++it) {
      if (it.value() == 0.0) continue;
      lo = std::min<Index>(lo, it.col());
      hi = std::max<Index>(hi, it.col());
    }
    if (hi >= lo) p = std::max(p, hi - lo);
  }
  return p;
}

SparseMatrix first_difference(Index rows, Index cols) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(2 * rows);
  for (Index i = 0; i < rows; ++i) {
    t.emplace_back(i, i, -1.0);
    t.emplace_back(i, i + 1, 1.0);
  }
  SparseMatrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

SparsifyingTransform::SparsifyingTransform(std::string name, SparseMatrix matrix, DenseMatrix kernel,
                                           std::optional<Index> bandwidth,
                                           std::optional<GridShape> grid)
    : name_(std::make_shared<const std::string>(std::move(name))),
      matrix_(std::make_shared<const SparseMatrix>(std::move(matrix))),
      kernel_(std::make_shared<const DenseMatrix>(std::move(kernel))),
      op_(sparse_operator(matrix_)),
      bandwidth_(bandwidth),
      grid_(grid) {
  if (kernel_->rows() != matrix_->cols()) {
    throw DimensionError("SparsifyingTransform: kernel basis has " + std::to_string(kernel_->rows()) +
                         " rows, R has " + std::to_string(matrix_->cols()) + " columns");
  }
}

WeightedTransform::WeightedTransform(SparsifyingTransform base, Vector theta)
    : base_(std::move(base)), theta_(std::move(theta)) {
  if (theta_.size() != base_.rows()) {
    throw DimensionError("weight: theta has length " + std::to_string(theta_.size()) +
                         ", transform has " + std::to_string(base_.rows()) + " rows");
  }
  if (!(theta_.array() > 0.0).all() || !theta_.allFinite()) {
    throw ParameterError("weight: theta must be finite and strictly positive");
  }
  row_scale_ = theta_.cwiseSqrt().cwiseInverse();
  auto scale = std::make_shared<const Vector>(row_scale_);
  const LinearOperator r = base_.op();
  op_ = LinearOperator(
      r.rows(), r.cols(),
      [r, scale](const Vector& in, Vector& out) { out = scale->cwiseProduct(r.apply(in)); },
      [r, scale](const Vector& in, Vector& out) {
        out = r.apply_adjoint(scale->cwiseProduct(in));
      });
}

SparseMatrix WeightedTransform::gram() const {
  const Vector inv_theta = theta_.cwiseInverse();
  SparseMatrix weighted = inv_theta.asDiagonal() * base_.matrix();
  SparseMatrix g = SparseMatrix(base_.matrix().transpose()) * weighted;
  g.prune(0.0);
  return g;
}

WeightedTransform weight(const SparsifyingTransform& base, const Vector& theta) {
  return WeightedTransform(base, theta);
}

SparsifyingTransform derivative_operator(int order, Index n) {
  if (order < 1 || order > 3) throw ParameterError("derivative_operator: order must be 1, 2 or 3");
  if (n <= order + 1) {
    throw ParameterError("derivative_operator: need N > order + 1, got N = " + std::to_string(n));
  }
  static const std::vector<std::vector<double>> stencils = {
      {-1.0, 1.0}, {-1.0, 2.0, -1.0}, {-1.0, 3.0, -3.0, 1.0}};
  // The order-2 stencil [-1, 2, -1] is the negated second difference; it has
  // the same kernel and R^T R as the usual [1, -2, 1].
  const auto& s = stencils[order - 1];
  const Index rows = n - order;
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(rows * s.size());
  for (Index i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) t.emplace_back(i, i + static_cast<Index>(j), s[j]);
  }
  SparseMatrix r(rows, n);
  r.setFromTriplets(t.begin(), t.end());

  // Polynomials of degree < order on a centred, scaled grid.
  DenseMatrix poly(n, order);
  for (Index i = 0; i < n; ++i) {
    const double u = (static_cast<double>(i) - 0.5 * static_cast<double>(n - 1)) / static_cast<double>(n);
    double p = 1.0;
    for (int k = 0; k < order; ++k) {
      poly(i, k) = p;
      p *= u;
    }
  }
  return {"d" + std::to_string(order), std::move(r), orthonormalize(poly), Index{order}};
}

SparsifyingTransform neumann_gradient_1d(Index length) {
  if (length < 2) throw ParameterError("neumann_gradient_1d: need L >= 2");
  SparseMatrix r = first_difference(length - 1, length);
  r.conservativeResize(length, length);
  DenseMatrix w = DenseMatrix::Constant(length, 1, 1.0 / std::sqrt(static_cast<double>(length)));
  return {"neumann1d", std::move(r), std::move(w), Index{1}};
}

SparsifyingTransform neumann_gradient_2d(Index n1, Index n2) {
  if (n1 < 2 || n2 < 2) throw ParameterError("neumann_gradient_2d: need N1, N2 >= 2");
  const Index n = n1 * n2;
  // Row block 1: R_{N1} (x) I_{N2}, differences between vertically adjacent
  // pixels. Row block 2: I_{N1} (x) R_{N2}, horizontal differences. The
  // padded zero rows of R_L are kept so that K = 2N.
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(4 * n);
  for (Index i = 0; i + 1 < n1; ++i) {
    for (Index j = 0; j < n2; ++j) {
      const Index row = i * n2 + j;
      t.emplace_back(row, i * n2 + j, -1.0);
      t.emplace_back(row, (i + 1) * n2 + j, 1.0);
    }
  }
  for (Index i = 0; i < n1; ++i) {
    for (Index j = 0; j + 1 < n2; ++j) {
      const Index row = n + i * n2 + j;
      t.emplace_back(row, i * n2 + j, -1.0);
      t.emplace_back(row, i * n2 + j + 1, 1.0);
    }
  }
  SparseMatrix r(2 * n, n);
  r.setFromTriplets(t.begin(), t.end());
  DenseMatrix w = DenseMatrix::Constant(n, 1, 1.0 / std::sqrt(static_cast<double>(n)));
  return {"neumann2d", std::move(r), std::move(w), n2, GridShape{n1, n2}};
}

SparsifyingTransform identity_transform(Index n) {
  if (n < 1) throw ParameterError("identity_transform: need N >= 1");
  SparseMatrix r(n, n);
  r.setIdentity();
  return {"identity", std::move(r), DenseMatrix(n, 0), Index{0}};
}

SparsifyingTransform transform_from_matrix(std::string name, const DenseMatrix& r) {
  if (!r.allFinite()) throw ParameterError("transform_from_matrix: non-finite entry");
  Eigen::JacobiSVD<DenseMatrix> svd(r, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s.maxCoeff() : 0.0;
  const double tol = std::max<double>(r.rows(), r.cols()) * smax * 1e-13;
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) rank += s[i] > tol ? 1 : 0;
  DenseMatrix kernel = svd.matrixV().rightCols(r.cols() - rank);
  SparseMatrix sparse = r.sparseView();
  const Index p = gram_bandwidth(sparse);
  return {std::move(name), std::move(sparse), std::move(kernel), p};
}

bool common_kernel_check(const LinearOperator& forward, const SparsifyingTransform& transform) {
  if (forward.cols() != transform.cols()) return false;
  const Index n = forward.cols();
  const auto stacked_entries =
      static_cast<std::size_t>(forward.rows() + transform.rows()) * static_cast<std::size_t>(n);
  try {
    if (n <= 400 && stacked_entries <= kDenseEntryLimit) {
      DenseMatrix stacked(forward.rows() + transform.rows(), n);
      stacked.topRows(forward.rows()) = to_dense(forward);
      stacked.bottomRows(transform.rows()) = DenseMatrix(transform.matrix());
      Eigen::JacobiSVD<DenseMatrix> svd(stacked);
      const auto& s = svd.singularValues();
      if (s.size() < n) return false;
      return s[n - 1] > 1e-8 * s[0];
    }
    // ker(F) and ker(R) = col(W) meet only in 0 iff F W has full column rank.
    const DenseMatrix& w = transform.kernel();
    if (w.cols() == 0) return true;
    DenseMatrix fw(forward.rows(), w.cols());
    for (Index j = 0; j < w.cols(); ++j) fw.col(j) = forward.apply(w.col(j));
    Eigen::JacobiSVD<DenseMatrix> svd(fw);
    const auto& s = svd.singularValues();
    if (s.size() < w.cols()) return false;
    return s[0] > 0.0 && s[w.cols() - 1] > 1e-8 * s[0];
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace gias
