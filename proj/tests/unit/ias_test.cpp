#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "gias/convergence.hpp"
#include "gias/forward_models.hpp"
#include "gias/ias.hpp"
#include "oracles.hpp"

namespace gias {
namespace {

const SparsifyingTransform& unit_transform() {
  static const SparsifyingTransform t = transform_from_matrix("one", DenseMatrix::Ones(1, 1));
  return t;
}

// Sum of the theta-dependent hyper-prior terms, written out directly.
double hyper_terms(const Vector& theta, double r, double eta, double c) {
  double s = 0.0;
  for (double t : theta) s += std::pow(t / c, r) - eta * std::log(t);
  return s;
}

TEST(Objective, HandComputedPoint) {
  const Problem p{from_dense(DenseMatrix::Ones(1, 1)), unit_transform(), Vector::Constant(1, 1.0)};
  const Priors priors{HyperPriorSpec(1.0, 2.0, 1.0), NoisePriorSpec(1.0, 2.0, 1.0, 1)};
  // (2-1)^2/(2*0.5) + 4/(2*2) + 2 - 0.5 log 2 + 0.5 - 0.5 log 0.5
  EXPECT_NEAR(objective(p, priors, Vector::Constant(1, 2.0), Vector::Constant(1, 2.0), 0.5), 4.5, 1e-14);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(objective(p, priors, Vector::Ones(1), Vector::Zero(1), 1.0), inf);
  EXPECT_EQ(objective(p, priors, Vector::Ones(1), Vector::Ones(1), 0.0), inf);
  EXPECT_EQ(objective(p, priors, Vector::Ones(1), -Vector::Ones(1), 1.0), inf);
}

TEST(Objective, FixedNuDropsOnlyTheNoiseTerms) {
  std::mt19937_64 rng(40);
  const Index n = 20;
  const Problem p{identity(n), derivative_operator(2, n), oracle::normal_vector(rng, n)};
  const HyperPriorSpec hp(-1.0, 1.0, 0.3);
  const NoisePriorSpec np(-1.0, 1.0, 1e-4, n);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = oracle::normal_vector(rng, n);
    const Vector theta = oracle::uniform_vector(rng, n - 2, 0.01, 2.0);
    const double nu = oracle::uniform_vector(rng, 1, 0.1, 5.0)[0];
    const Vector rx = p.transform.op().apply(x);
    const double direct = (x - p.y).squaredNorm() / (2.0 * nu) + 0.5 * rx.cwiseAbs2().cwiseQuotient(theta).sum() +
                          hyper_terms(theta, -1.0, hp.eta(), 0.3);
    const double fixed = objective(p, Priors{hp, std::nullopt}, x, theta, nu);
    EXPECT_NEAR(fixed, direct, 1e-12 * std::abs(direct));
    const double learned = objective(p, Priors{hp, np}, x, theta, nu);
    EXPECT_NEAR(learned - fixed, std::pow(nu / 1e-4, -1.0) - np.eta() * std::log(nu), 1e-9 * std::abs(learned));
  }
}

TEST(StoppingCheck, Examples) {
  IasState a;
  a.theta = Vector::Ones(4);
  a.nu = 2.0;
  IasState b = a;
  EXPECT_TRUE(stopping_check(a, b, 1e-3));
  b.theta[0] += 2e-2;  // |dtheta| / |theta| = 1e-2
  EXPECT_FALSE(stopping_check(a, b, 1e-3));
  b.theta = a.theta;
  b.theta[0] += 2e-4;
  EXPECT_TRUE(stopping_check(a, b, 1e-3));
  b.nu = 2.0 * (1.0 + 1e-2);
  EXPECT_FALSE(stopping_check(a, b, 1e-3));
  const RelativeChanges c = relative_changes(a.theta, a.nu, b.theta, b.nu);
  EXPECT_NEAR(c.theta, 1e-4, 1e-15);
  EXPECT_NEAR(c.nu, 1e-2, 1e-15);
}

TEST(TikhonovInit, DenseAndLimits) {
  std::mt19937_64 rng(41);
  const Index n = 30;
  DenseMatrix f(n, n);
  for (Index j = 0; j < n; ++j) f.col(j) = oracle::normal_vector(rng, n);
  f += 6.0 * DenseMatrix::Identity(n, n);
  const SparsifyingTransform d1 = derivative_operator(1, n);
  const DenseMatrix r = to_dense(d1.op());
  const Vector y = oracle::normal_vector(rng, n);
  const Vector x = tikhonov_init(from_dense(f), d1, 2.0, y, 1e-13, 5000);
  const Vector dense = (f.transpose() * f + 2.0 * r.transpose() * r).ldlt().solve(f.transpose() * y);
  EXPECT_LT(oracle::rel(x, dense), 1e-8);
  EXPECT_LT(oracle::rel(tikhonov_init(from_dense(f), d1, 1e-12, y, 1e-14, 5000), f.lu().solve(y)), 1e-8);
  const Vector flat = tikhonov_init(identity(n), d1, 1e8, y, 1e-14, 20000);
  EXPECT_LT(oracle::rel(flat, Vector::Constant(n, y.mean())), 1e-5);
  EXPECT_THROW(tikhonov_init(identity(n), d1, 0.0, y, 1e-8), ParameterError);
}

TEST(ClassifyConvexity, Examples) {
  EXPECT_EQ(classify_convexity(HyperPriorSpec(1.0, 1.501, 0.1), std::nullopt, 5).regime, Convexity::global_strict);
  EXPECT_EQ(classify_convexity(HyperPriorSpec(1.0, 1.501, 0.1), NoisePriorSpec(-1.0, 1.0, 1e-4, 10), 5).regime,
            Convexity::none);
  const ConvexityReport local = classify_convexity(HyperPriorSpec(-1.0, 1.0, 1.0), std::nullopt, 3);
  ASSERT_EQ(local.regime, Convexity::local);
  ASSERT_TRUE(local.theta_threshold);
  for (double t : *local.theta_threshold) EXPECT_NEAR(t, 0.8, 1e-15);
  const ConvexityReport both =
      classify_convexity(HyperPriorSpec(-1.0, 1.0, 2.0), NoisePriorSpec(-1.0, 1.0, 1e-4, 4), 2);
  ASSERT_EQ(both.regime, Convexity::local);
  EXPECT_NEAR((*both.theta_threshold)[1], 1.6, 1e-15);
  // nu < vartheta~ (eta~ / (r~ |r~ - 1|))^(1/r~) = 1e-4 * (-4 / -2)^-1
  EXPECT_NEAR(*both.nu_threshold, 5e-5, 1e-18);
  EXPECT_EQ(classify_convexity(HyperPriorSpec(2.0, 1.0, 1.0), std::nullopt, 1).regime, Convexity::global_strict);
  EXPECT_EQ(classify_convexity(HyperPriorSpec(0.5, 4.0, 1.0), std::nullopt, 1).regime, Convexity::local);
  EXPECT_EQ(to_string(Convexity::global_strict), "global_strict");
}

TEST(DpResidual, Examples) {
  const Vector y = (Vector(4) << 1.0, 2.0, 3.0, 4.0).finished();
  // |F x - y|^2 = 4 = nu M with nu = 1, M = 4.
  EXPECT_NEAR(dp_residual(identity(4), y + Vector::Ones(4), y, 1.0, 1.0), 0.0, 1e-14);
  EXPECT_NEAR(dp_residual(identity(4), y, y, 2.0), -1.01 * 2.0 * 4.0, 1e-14);
  std::mt19937_64 rng(42);
  DenseMatrix f(6, 3);
  for (Index j = 0; j < 3; ++j) f.col(j) = oracle::normal_vector(rng, 6);
  const Vector x = oracle::normal_vector(rng, 3);
  const Vector yy = oracle::normal_vector(rng, 6);
  EXPECT_NEAR(dp_residual(from_dense(f), x, yy, 0.3, 1.2), (f * x - yy).squaredNorm() - 1.2 * 0.3 * 6.0, 1e-12);
  EXPECT_THROW(dp_residual(identity(4), y, y, 0.0), ParameterError);
}

Problem denoise_problem(Index n, double noise_variance, std::uint64_t seed, int order = 1) {
  const Vector truth = piecewise_signal(n);
  return {identity(n), derivative_operator(order, n), synthesize_data(identity(n), truth, {1, noise_variance, seed})};
}

// Alternating exact block minimization with dense x solves.
std::pair<Vector, Vector> dense_alternating(const Problem& p, const HyperPriorSpec& hp, double nu) {
  const DenseMatrix f = to_dense(p.forward);
  const DenseMatrix r = to_dense(p.transform.op());
  Vector x = Vector::Zero(f.cols());
  Vector theta = theta_lower_bound(hp, r.rows());
  for (int it = 0; it < 100000; ++it) {
    theta = update_theta(r * x, hp);
    const Vector next = oracle::dense_x_update(f, r, theta, nu, p.y);
    const double change = (next - x).norm() / std::max(next.norm(), 1e-300);
    x = next;
    if (change < 1e-13) break;
  }
  return {x, theta};
}

TEST(RunIas, ConvexRegimeMatchesDenseMinimizerFromAnyStart) {
  const Problem p = denoise_problem(80, 10.0, 3);
  // r = 1 with eta = 1.5: strictly convex, and the alternation contracts fast
  // enough for the dense reference to reach rounding level.
  const Priors priors{HyperPriorSpec(1.0, 3.0, 1.0), std::nullopt};
  IasConfig cfg;
  cfg.learn_nu = false;
  cfg.fixed_nu = 10.0;
  cfg.eps_ias = 1e-10;
  cfg.eps_cgls = 1e-12;
  cfg.max_outer = 20000;
  cfg.max_inner = 20000;
  cfg.pinv_method = PinvMethod::conjugate_gradient;
  const auto [x_ref, theta_ref] = dense_alternating(p, priors.theta, 10.0);
  const IasState zeros = run_ias(p, priors, cfg);
  cfg.init.kind = InitKind::ones;
  const IasState ones = run_ias(p, priors, cfg);
  ASSERT_TRUE(zeros.converged);
  ASSERT_TRUE(ones.converged);
  EXPECT_LT(oracle::rel(zeros.x, ones.x), 1e-4);
  EXPECT_LT(oracle::rel(zeros.x, x_ref), 1e-6);
  EXPECT_LT(oracle::rel(zeros.theta, theta_ref), 1e-6);
}

TEST(RunIas, NoiselessIdentityRecoversTheSignal) {
  const Index n = 60;
  const Vector truth = piecewise_signal(n);
  const Problem p{identity(n), derivative_operator(1, n), truth};
  const Priors priors{HyperPriorSpec(1.0, 1.5 + 1e-3, 1e4), std::nullopt};
  IasConfig cfg;
  cfg.learn_nu = false;
  cfg.fixed_nu = 1e-8;
  const IasState s = run_ias(p, priors, cfg);
  EXPECT_LT(oracle::rel(s.x, truth), 1e-3);
}

TEST(RunIas, LearnedNuDenoisingInvariants) {
  const Index n = 1000;
  const Problem p = denoise_problem(n, 10.0, 1);
  const Priors priors{HyperPriorSpec(1.0, 1.5 + 1e-3, 1e-1), NoisePriorSpec(-1.0, 1.0, 1e-4, n)};
  IasConfig cfg;
  cfg.init.kind = InitKind::tikhonov;
  const IasState s = run_ias(p, priors, cfg);
  EXPECT_TRUE(s.converged);
  EXPECT_EQ(static_cast<Index>(s.history.size()), s.iteration);
  EXPECT_GT(s.nu, 5.0);
  EXPECT_LT(s.nu, 20.0);
  const Vector lb = theta_lower_bound(priors.theta, n - 1);
  EXPECT_TRUE((s.theta.array() >= lb.array()).all());
  EXPECT_GE(s.nu, nu_lower_bound(*priors.noise));
  const DescentTrace trace = descent_trace(s.history);
  EXPECT_TRUE(trace.violations(10.0 * cfg.eps_cgls).empty());
  for (std::size_t k = 1; k < s.history.size(); ++k) {
    EXPECT_LE(s.history[k].objective_x,
              s.history[k - 1].objective_x + 10.0 * cfg.eps_cgls * std::abs(s.history[k - 1].objective_x));
  }
  const CoordinateResiduals res = check_coordinatewise_minimizer(s, p, priors);
  EXPECT_LE(res.max(), 10.0 * cfg.eps_ias);
}

TEST(RunIas, ProjectionAndErrors) {
  const Problem p = denoise_problem(100, 10.0, 2);
  const Priors priors{HyperPriorSpec(1.0, 1.5 + 1e-3, 1e-1), NoisePriorSpec(-1.0, 1.0, 1e-4, 100)};
  IasConfig cfg;
  cfg.nonneg_projection = true;
  cfg.max_outer = 5;
  EXPECT_GE(run_ias(p, priors, cfg).x.minCoeff(), 0.0);

  IasConfig no_nu;
  EXPECT_THROW(run_ias(p, Priors{priors.theta, std::nullopt}, no_nu), ParameterError);
  IasConfig bad;
  bad.eps_ias = 0.0;
  EXPECT_THROW(run_ias(p, priors, bad), ParameterError);
  const SparsifyingTransform d1 = derivative_operator(1, 100);
  const Problem shared{d1.op(), d1, Vector::Zero(99)};
  EXPECT_THROW(run_ias(shared, Priors{priors.theta, NoisePriorSpec(-1.0, 1.0, 1e-4, 99)}, IasConfig{}),
               CommonKernelError);
}

TEST(RunIas, PlainAndPriorconditionedReachTheSameLimit) {
  const Problem p = denoise_problem(100, 10.0, 4, 2);
  const Priors priors{HyperPriorSpec(1.0, 3.0, 1.0), NoisePriorSpec(-1.0, 1.0, 1e-4, 100)};
  IasConfig cfg;
  cfg.eps_ias = 1e-7;
  cfg.eps_cgls = 1e-10;
  cfg.max_outer = 2000;
  cfg.max_inner = 100000;
  cfg.pinv_method = PinvMethod::conjugate_gradient;
  const IasState a = run_ias(p, priors, cfg);
  cfg.priorconditioned = false;
  const IasState b = run_ias(p, priors, cfg);
  ASSERT_TRUE(a.converged);
  ASSERT_TRUE(b.converged);
  EXPECT_LT(oracle::rel(a.x, b.x), 1e-4);
  EXPECT_NEAR(a.nu, b.nu, 1e-4 * a.nu);
}

}  // namespace
}  // namespace gias
