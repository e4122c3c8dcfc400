#include "gias/ias.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace gias {

double objective(const Problem& problem, const Priors& priors, const Vector& x, const Vector& theta,
                 double nu) {
  const SparsifyingTransform& t = problem.transform;
  if (x.size() != problem.forward.cols() || theta.size() != t.rows()) {
    throw DimensionError("objective: x or theta has the wrong length");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (!(nu > 0.0) || (theta.array() <= 0.0).any()) return inf;

  const HyperPriorSpec& hp = priors.theta;
  const Vector c = hp.vartheta_for(theta.size());
  const Vector rx = t.op().apply(x);
  double g = 0.5 * (problem.forward.apply(x) - problem.y).squaredNorm() / nu;
  g += 0.5 * (rx.array().square() / theta.array()).sum();
  g += (theta.array() / c.array()).pow(hp.r()).sum();
  g -= hp.eta() * theta.array().log().sum();
  if (priors.noise) {
    const NoisePriorSpec& np = *priors.noise;
    g += std::pow(nu / np.vartheta(), np.r()) - np.eta() * std::log(nu);
  }
  return g;
}

void IasConfig::validate() const {
  if (!(eps_ias > 0.0) || !(eps_cgls > 0.0) || !(delta_pinv > 0.0)) {
    throw ParameterError("IAS config: tolerances must be positive");
  }
  if (pinv_tol && !(*pinv_tol > 0.0)) throw ParameterError("IAS config: pinv_tol must be positive");
  if (max_outer < 1 || max_inner < 1 || pinv_maxit < 1) {
    throw ParameterError("IAS config: iteration limits must be positive");
  }
  if (!learn_nu && !(fixed_nu && *fixed_nu > 0.0)) {
    throw ParameterError("IAS config: a positive fixed_nu is required when nu is not learned");
  }
  if (init.kind == InitKind::tikhonov && !(init.lambda > 0.0)) {
    throw ParameterError("IAS config: tikhonov lambda must be positive");
  }
}

double IasConfig::effective_pinv_tol() const {
  if (pinv_tol) return *pinv_tol;
  return std::max(1e-8 * (eps_cgls / 1e-4), kMinCoupledPinvTol);
}

RelativeChanges relative_changes(const Vector& theta_prev, double nu_prev, const Vector& theta,
                                 double nu) {
  RelativeChanges c;
  const double tn = theta_prev.norm();
  c.theta = tn > 0.0 ? (theta - theta_prev).norm() / tn : (theta.norm() > 0.0 ? 1.0 : 0.0);
  c.nu = nu_prev > 0.0 ? std::abs(nu - nu_prev) / nu_prev : 0.0;
  return c;
}

bool stopping_check(const IasState& prev, const IasState& curr, double eps) {
  const RelativeChanges c = relative_changes(prev.theta, prev.nu, curr.theta, curr.nu);
  return c.theta < eps && c.nu < eps;
}

Vector tikhonov_init(const LinearOperator& forward, const SparsifyingTransform& transform, double lambda,
                     const Vector& y, double tol, Index maxit) {
  if (!(lambda > 0.0)) throw ParameterError("tikhonov_init: lambda must be positive");
  if (y.size() != forward.rows()) throw DimensionError("tikhonov_init: y has the wrong length");
  const LinearOperator a = stack_scaled(forward, 1.0, transform.op(), std::sqrt(lambda));
  Vector b = Vector::Zero(a.rows());
  b.head(y.size()) = y;
  return cgls(a, b, Vector::Zero(forward.cols()), tol, maxit).x;
}

PinvStrategy default_pinv_strategy(const SparsifyingTransform& transform, const IasConfig& config) {
  PinvStrategy s;
  s.delta = config.delta_pinv;
  s.tol = config.effective_pinv_tol();
  s.maxit = config.pinv_maxit;
  const auto grid = transform.grid();
  if (config.pinv_method) {
    s.method = *config.pinv_method;
  } else if (grid || !transform.bandwidth()) {
    s.method = PinvMethod::conjugate_gradient;
  } else {
    s.method = PinvMethod::banded_cholesky;
  }
  if (s.method == PinvMethod::conjugate_gradient && grid && transform.name() == "neumann2d") {
    s.precond = std::make_shared<SpectralPreconditioner>(grid->n1, grid->n2);
  }
  return s;
}

namespace {

Vector initial_x(const Problem& p, const IasConfig& config) {
  const Index n = p.forward.cols();
  switch (config.init.kind) {
    case InitKind::zeros:
      return Vector::Zero(n);
    case InitKind::ones:
      return Vector::Ones(n);
    case InitKind::tikhonov:
      return tikhonov_init(p.forward, p.transform, config.init.lambda, p.y, config.eps_cgls,
                           config.max_inner);
    case InitKind::custom:
      if (config.init.custom.size() != n) throw DimensionError("IAS init: custom x has the wrong length");
      return config.init.custom;
  }
  return Vector::Zero(n);
}

}  // namespace

IasState run_ias(const Problem& problem, const Priors& priors, const IasConfig& config) {
  config.validate();
  const LinearOperator& f = problem.forward;
  const SparsifyingTransform& t = problem.transform;
  if (f.cols() != t.cols()) throw DimensionError("run_ias: F and R act on different spaces");
  if (problem.y.size() != f.rows()) throw DimensionError("run_ias: y has the wrong length");
  check_admissible(priors.theta.r(), priors.theta.eta());
  (void)priors.theta.vartheta_for(t.rows());
  if (config.learn_nu) {
    if (!priors.noise) throw ParameterError("run_ias: learning nu requires a noise prior");
    if (priors.noise->m() != f.rows()) throw DimensionError("run_ias: noise prior M differs from len(y)");
  }
  // Evaluate G without the noise terms when nu is fixed.
  const Priors g_priors{priors.theta, config.learn_nu ? priors.noise : std::nullopt};

  auto kf = std::make_shared<const KernelFactorization>(precompute_kernel_qr(f, t.kernel()));
  const PinvStrategy strategy = default_pinv_strategy(t, config);

  IasState s;
  s.x = initial_x(problem, config);
  s.nu = config.learn_nu ? nu_lower_bound(*priors.noise) : *config.fixed_nu;
  s.theta = theta_lower_bound(priors.theta, t.rows());

  for (Index k = 1; k <= config.max_outer; ++k) {
    IterationRecord rec;
    rec.iteration = k;
    rec.objective_start = k == 1 ? std::numeric_limits<double>::quiet_NaN()
                                 : objective(problem, g_priors, s.x, s.theta, s.nu);
    const Vector theta_prev = s.theta;
    const double nu_prev = s.nu;

    s.theta = update_theta(t.op().apply(s.x), priors.theta);
    rec.objective_theta = objective(problem, g_priors, s.x, s.theta, s.nu);
    if (config.learn_nu) s.nu = update_nu((f.apply(s.x) - problem.y).norm(), *priors.noise);
    rec.objective_nu = objective(problem, g_priors, s.x, s.theta, s.nu);

    const WeightedTransform rt = weight(t, s.theta);
    XUpdate xu;
    if (config.priorconditioned) {
      const ObliquePinv ob(f, kf, make_pseudo_inverse(rt, strategy));
      xu = whitened_x_update(f, rt, ob, s.nu, problem.y, config.eps_cgls, config.max_inner, s.x);
    } else {
      xu = plain_x_update(f, rt, s.nu, problem.y, config.eps_cgls, config.max_inner, s.x);
    }
    s.x = std::move(xu.x);
    if (config.nonneg_projection) s.x = s.x.cwiseMax(0.0);
    rec.objective_x = objective(problem, g_priors, s.x, s.theta, s.nu);
    rec.nu = s.nu;
    rec.inner_iterations = xu.report.iterations;
    rec.pinv_iterations = xu.pinv_iterations;
    rec.inner_termination = xu.report.termination;
    rec.theta_min = s.theta.minCoeff();
    rec.theta_max = s.theta.maxCoeff();
    s.iteration = k;

    bool stop = false;
    if (k > 1) {
      const RelativeChanges c = relative_changes(theta_prev, nu_prev, s.theta, s.nu);
      rec.theta_change = c.theta;
      rec.nu_change = c.nu;
      stop = c.theta < config.eps_ias && c.nu < config.eps_ias;
    }
    s.history.push_back(rec);
    if (stop) {
      s.converged = true;
      break;
    }
  }
  return s;
}

std::string_view to_string(Convexity c) {
  switch (c) {
    case Convexity::global_strict:
      return "global_strict";
    case Convexity::local:
      return "local";
    case Convexity::none:
      return "none";
  }
  return "none";
}

namespace {

enum class BlockRegime { global, local, none };

BlockRegime block_regime(double r, double eta) {
  if (r >= 1.0 && eta > 0.0) return BlockRegime::global;
  if ((r > 0.0 && r < 1.0 && eta > 0.0) || r < 0.0) return BlockRegime::local;
  return BlockRegime::none;
}

double local_threshold(double r, double eta) { return std::pow(eta / (r * std::abs(r - 1.0)), 1.0 / r); }

}  // namespace

ConvexityReport classify_convexity(const HyperPriorSpec& prior, const std::optional<NoisePriorSpec>& noise,
                                   Index k) {
  ConvexityReport rep;
  const BlockRegime a = block_regime(prior.r(), prior.eta());
  if (!noise) {
    if (a == BlockRegime::global) {
      rep.regime = Convexity::global_strict;
    } else if (a == BlockRegime::local) {
      rep.regime = Convexity::local;
      rep.theta_threshold = prior.vartheta_for(k) * local_threshold(prior.r(), prior.eta());
    }
    return rep;
  }
  const BlockRegime b = block_regime(noise->r(), noise->eta());
  // The mixed cases (one block globally, the other only locally convex) are
  // not covered and report `none`.
  if (a == BlockRegime::global && b == BlockRegime::global) {
    rep.regime = Convexity::global_strict;
  } else if (a == BlockRegime::local && b == BlockRegime::local) {
    rep.regime = Convexity::local;
    rep.theta_threshold = prior.vartheta_for(k) * local_threshold(prior.r(), prior.eta());
    rep.nu_threshold = noise->vartheta() * local_threshold(noise->r(), noise->eta());
  }
  return rep;
}

double dp_residual(const LinearOperator& forward, const Vector& x, const Vector& y, double nu, double tau) {
  if (!(nu > 0.0)) throw ParameterError("dp_residual: nu must be positive");
  if (y.size() != forward.rows()) throw DimensionError("dp_residual: y has the wrong length");
  return (forward.apply(x) - y).squaredNorm() - tau * nu * static_cast<double>(forward.rows());
}

}  // namespace gias
