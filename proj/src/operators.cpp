#include "gias/operators.hpp"

#include <utility>

namespace gias {

namespace {

void check_size(Index got, Index want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(want) +
                         ", got " + std::to_string(got));
  }
}

}  // namespace

LinearOperator::LinearOperator(Index rows, Index cols, Kernel apply, Kernel apply_adjoint)
    : rows_(rows),
      cols_(cols),
      apply_(std::make_shared<const Kernel>(std::move(apply))),
      adjoint_(std::make_shared<const Kernel>(std::move(apply_adjoint))) {
  if (rows < 0 || cols < 0) throw DimensionError("LinearOperator: negative shape");
}

Vector LinearOperator::apply(const Vector& v) const {
  check_size(v.size(), cols_, "LinearOperator::apply");
  Vector out = Vector::Zero(rows_);
  if (rows_ > 0) (*apply_)(v, out);
  return out;
}

Vector LinearOperator::apply_adjoint(const Vector& u) const {
  check_size(u.size(), rows_, "LinearOperator::apply_adjoint");
  Vector out = Vector::Zero(cols_);
  if (cols_ > 0) (*adjoint_)(u, out);
  return out;
}

LinearOperator LinearOperator::transpose() const {
  LinearOperator t;
  t.rows_ = cols_;
  t.cols_ = rows_;
  t.apply_ = adjoint_;
  t.adjoint_ = apply_;
  return t;
}

LinearOperator identity(Index n) {
  auto copy = [](const Vector& in, Vector& out) { out = in; };
  return {n, n, copy, copy};
}

LinearOperator zero_operator(Index rows, Index cols) {
  auto zero = [](const Vector&, Vector& out) { out.setZero(); };
  return {rows, cols, zero, zero};
}

LinearOperator from_dense(DenseMatrix matrix) {
  if (!matrix.allFinite()) throw ParameterError("from_dense: non-finite entry");
  auto m = std::make_shared<const DenseMatrix>(std::move(matrix));
  return {m->rows(), m->cols(), [m](const Vector& in, Vector& out) { out.noalias() = *m * in; },
          [m](const Vector& in, Vector& out) { out.noalias() = m->transpose() * in; }};
}

LinearOperator diagonal(Vector d) {
  auto diag = std::make_shared<const Vector>(std::move(d));
  auto k = [diag](const Vector& in, Vector& out) { out = diag->cwiseProduct(in); };
  return {diag->size(), diag->size(), k, k};
}

LinearOperator scaled(const LinearOperator& op, double s) {
  return {op.rows(), op.cols(), [op, s](const Vector& in, Vector& out) { out = s * op.apply(in); },
          [op, s](const Vector& in, Vector& out) { out = s * op.apply_adjoint(in); }};
}

LinearOperator compose(const LinearOperator& a, const LinearOperator& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("compose: inner dimensions differ (" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + ")");
  }
  return {a.rows(), b.cols(), [a, b](const Vector& in, Vector& out) { out = a.apply(b.apply(in)); },
          [a, b](const Vector& in, Vector& out) {
            out = b.apply_adjoint(a.apply_adjoint(in));
          }};
}

LinearOperator stack_scaled(const LinearOperator& top, double top_weight,
                            const LinearOperator& bottom, double bottom_weight) {
  if (top.cols() != bottom.cols()) {
    throw DimensionError("stack_scaled: column counts differ (" + std::to_string(top.cols()) +
                         " vs " + std::to_string(bottom.cols()) + ")");
  }
  const Index m1 = top.rows();
  const Index m2 = bottom.rows();
  auto fwd = [=](const Vector& in, Vector& out) {
    out.head(m1) = top_weight * top.apply(in);
    out.tail(m2) = bottom_weight * bottom.apply(in);
  };
  auto adj = [=](const Vector& in, Vector& out) {
    out = top_weight * top.apply_adjoint(in.head(m1)) +
          bottom_weight * bottom.apply_adjoint(in.tail(m2));
  };
  return {m1 + m2, top.cols(), fwd, adj};
}

namespace {

// Row-major X (p x q) -> row-major A X B^T (a.rows x b.rows).
Vector kron_kernel(const LinearOperator& a, const LinearOperator& b, const Vector& v, bool adjoint) {
  const Index p = adjoint ? a.rows() : a.cols();
  const Index q = adjoint ? b.rows() : b.cols();
  const Index p_out = adjoint ? a.cols() : a.rows();
  const Index q_out = adjoint ? b.cols() : b.rows();
  // Y = X B^T: transform each row of X by B.
  DenseMatrix y(p, q_out);
  for (Index i = 0; i < p; ++i) {
    Vector row = v.segment(i * q, q);
    y.row(i) = (adjoint ? b.apply_adjoint(row) : b.apply(row)).transpose();
  }
  // Z = A Y: transform each column of Y by A.
  Vector out(p_out * q_out);
  for (Index j = 0; j < q_out; ++j) {
    Vector col = y.col(j);
    Vector z = adjoint ? a.apply_adjoint(col) : a.apply(col);
    for (Index i = 0; i < p_out; ++i) out[i * q_out + j] = z[i];
  }
  return out;
}

}  // namespace

Vector kron_apply(const LinearOperator& a, const LinearOperator& b, const Vector& v) {
  check_size(v.size(), a.cols() * b.cols(), "kron_apply");
  return kron_kernel(a, b, v, false);
}

LinearOperator kron(const LinearOperator& a, const LinearOperator& b) {
  return {a.rows() * b.rows(), a.cols() * b.cols(),
          [a, b](const Vector& in, Vector& out) { out = kron_kernel(a, b, in, false); },
          [a, b](const Vector& in, Vector& out) { out = kron_kernel(a, b, in, true); }};
}

DenseMatrix to_dense(const LinearOperator& op) {
  const auto entries = static_cast<std::size_t>(op.rows()) * static_cast<std::size_t>(op.cols());
  if (entries > kDenseEntryLimit) {
    throw DimensionError("to_dense: " + std::to_string(entries) + " entries exceeds the limit of " +
                         std::to_string(kDenseEntryLimit));
  }
  DenseMatrix m(op.rows(), op.cols());
  Vector e = Vector::Zero(op.cols());
  for (Index j = 0; j < op.cols(); ++j) {
    e[j] = 1.0;
    m.col(j) = op.apply(e);
    e[j] = 0.0;
  }
  return m;
}

}  // namespace gias
