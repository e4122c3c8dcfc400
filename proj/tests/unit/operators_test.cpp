#include <gtest/gtest.h>

#include <random>

#include "gias/operators.hpp"
#include "oracles.hpp"

namespace gias {
namespace {

TEST(LinearOperator, DenseRoundTripAndAdjoint) {
  std::mt19937_64 rng(3);
  const DenseMatrix a = DenseMatrix::Random(7, 4);
  const LinearOperator op = from_dense(a);
  EXPECT_EQ(op.rows(), 7);
  EXPECT_EQ(op.cols(), 4);
  EXPECT_LT((to_dense(op) - a).norm(), 1e-15);
  const Vector x = oracle::normal_vector(rng, 4);
  const Vector u = oracle::normal_vector(rng, 7);
  EXPECT_NEAR(u.dot(op.apply(x)), op.apply_adjoint(u).dot(x), 1e-12);
  EXPECT_LT((to_dense(op.transpose()) - a.transpose()).norm(), 1e-15);
}

TEST(LinearOperator, RejectsWrongLengths) {
  const LinearOperator op = identity(3);
  EXPECT_THROW(op.apply(Vector::Zero(4)), DimensionError);
  EXPECT_THROW(op.apply_adjoint(Vector::Zero(2)), DimensionError);
}

TEST(LinearOperator, CompositionStackingAndScaling) {
  const DenseMatrix a = DenseMatrix::Random(5, 3);
  const DenseMatrix b = DenseMatrix::Random(3, 6);
  const DenseMatrix c = DenseMatrix::Random(2, 6);
  EXPECT_LT((to_dense(compose(from_dense(a), from_dense(b))) - a * b).norm(), 1e-13);
  EXPECT_THROW(compose(from_dense(b), from_dense(b)), DimensionError);
  EXPECT_LT((to_dense(scaled(from_dense(a), -2.5)) - (-2.5) * a).norm(), 1e-14);

  DenseMatrix stacked(5, 6);
  stacked << 0.5 * b, 3.0 * c;
  const LinearOperator s = stack_scaled(from_dense(b), 0.5, from_dense(c), 3.0);
  EXPECT_LT((to_dense(s) - stacked).norm(), 1e-13);
  EXPECT_LT((to_dense(s.transpose()) - stacked.transpose()).norm(), 1e-13);
}

TEST(LinearOperator, DiagonalAndZero) {
  const Vector d = (Vector(3) << 1.0, -2.0, 4.0).finished();
  EXPECT_EQ((to_dense(diagonal(d)) - DenseMatrix(d.asDiagonal())).norm(), 0.0);
  EXPECT_EQ(zero_operator(2, 3).apply(Vector::Ones(3)).norm(), 0.0);
}

TEST(Kron, MatchesExplicitKroneckerProduct) {
  const DenseMatrix a = DenseMatrix::Random(3, 2);
  const DenseMatrix b = DenseMatrix::Random(4, 5);
  DenseMatrix k(12, 10);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 2; ++j) k.block(4 * i, 5 * j, 4, 5) = a(i, j) * b;
  }
  EXPECT_LT((to_dense(kron(from_dense(a), from_dense(b))) - k).norm(), 1e-13);
  EXPECT_LT((to_dense(kron(from_dense(a), from_dense(b)).transpose()) - k.transpose()).norm(), 1e-13);
  const Vector v = Vector::Random(10);
  EXPECT_LT((kron_apply(from_dense(a), from_dense(b), v) - k * v).norm(), 1e-13);
}

}  // namespace
}  // namespace gias
