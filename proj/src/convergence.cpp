#include "gias/convergence.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace gias {

double CoordinateResiduals::max() const { return std::max({theta, nu, x}); }

CoordinateResiduals check_coordinatewise_minimizer(const Problem& problem, const Priors& priors,
                                                   const Vector& x, const Vector& theta, double nu) {
  const LinearOperator& f = problem.forward;
  const LinearOperator& r = problem.transform.op();
  CoordinateResiduals res;
  const Vector rx = r.apply(x);
  res.theta = (theta - update_theta(rx, priors.theta)).norm() / theta.norm();
  const Vector misfit = f.apply(x) - problem.y;
  if (priors.noise) res.nu = std::abs(nu - update_nu(misfit.norm(), *priors.noise)) / nu;

  const Vector fty = f.apply_adjoint(problem.y) / nu;
  const Vector normal = f.apply_adjoint(misfit) / nu + r.apply_adjoint(rx.cwiseQuotient(theta));
  const double scale = fty.norm();
  res.x_normal = scale > 0.0 ? normal.norm() / scale : normal.norm();

  const WeightedTransform rt = weight(problem.transform, theta);
  const Vector x_star = plain_x_update(f, rt, nu, problem.y, kReferenceSolveTol, 100000, x).x;
  auto energy = [&](const Vector& v) {
    return std::sqrt(f.apply(v).squaredNorm() / nu + rt.apply(v).squaredNorm());
  };
  const double e_star = energy(x_star);
  const double e_diff = energy(x - x_star);
  res.x = e_star > 0.0 ? e_diff / e_star : e_diff;
  return res;
}

CoordinateResiduals check_coordinatewise_minimizer(const IasState& state, const Problem& problem,
                                                   const Priors& priors) {
  return check_coordinatewise_minimizer(problem, priors, state.x, state.theta, state.nu);
}

Vector objective_gradient(const Problem& problem, const Priors& priors, const Vector& x,
                          const Vector& theta, double nu) {
  const LinearOperator& f = problem.forward;
  const LinearOperator& r = problem.transform.op();
  const Index n = x.size();
  const Index k = theta.size();
  const bool with_nu = priors.noise.has_value();
  Vector g(n + k + (with_nu ? 1 : 0));

  const Vector misfit = f.apply(x) - problem.y;
  const Vector rx = r.apply(x);
  g.head(n) = f.apply_adjoint(misfit) / nu + r.apply_adjoint(rx.cwiseQuotient(theta));

  const HyperPriorSpec& hp = priors.theta;
  const Vector c = hp.vartheta_for(k);
  for (Index i = 0; i < k; ++i) {
    const double t = theta[i];
    g[n + i] = -0.5 * rx[i] * rx[i] / (t * t) + hp.r() * std::pow(t, hp.r() - 1.0) / std::pow(c[i], hp.r()) -
               hp.eta() / t;
  }
  if (with_nu) {
    const NoisePriorSpec& np = *priors.noise;
    g[n + k] = -0.5 * misfit.squaredNorm() / (nu * nu) +
               np.r() * std::pow(nu, np.r() - 1.0) / std::pow(np.vartheta(), np.r()) - np.eta() / nu;
  }
  return g;
}

double check_hessian_psd(const Problem& problem, const Priors& priors, const Vector& x, const Vector& theta,
                         double nu) {
  if ((theta.array() <= 0.0).any() || !(nu > 0.0)) {
    throw ParameterError("check_hessian_psd: point outside the domain of G");
  }
  const Index n = x.size();
  const Index k = theta.size();
  const bool with_nu = priors.noise.has_value();
  const Index d = n + k + (with_nu ? 1 : 0);
  if (d > kHessianMaxVariables) throw DimensionError("check_hessian_psd: too many unknowns");

  Vector z(d);
  z.head(n) = x;
  z.segment(n, k) = theta;
  if (with_nu) z[d - 1] = nu;
  auto grad = [&](const Vector& p) {
    return objective_gradient(problem, priors, p.head(n), p.segment(n, k), with_nu ? p[d - 1] : nu);
  };

  DenseMatrix h(d, d);
  for (Index i = 0; i < d; ++i) {
    const double step = 1e-5 * std::max(std::abs(z[i]), 1e-3);
    Vector zp = z;
    Vector zm = z;
    zp[i] += step;
    zm[i] -= step;
    h.col(i) = (grad(zp) - grad(zm)) / (2.0 * step);
  }
  const DenseMatrix sym = 0.5 * (h + h.transpose());
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

bool inside_thresholds(const ConvexityReport& report, const Vector& theta, double nu) {
  if (report.theta_threshold) {
    if (report.theta_threshold->size() != theta.size()) throw DimensionError("inside_thresholds: theta length");
    if (!(theta.array() < report.theta_threshold->array()).all()) return false;
  }
  if (report.nu_threshold && !(nu < *report.nu_threshold)) return false;
  return true;
}

std::vector<std::size_t> DescentTrace::violations(double slack) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j] > values[j - 1] + slack * std::abs(values[j - 1])) out.push_back(j);
  }
  return out;
}

DescentTrace descent_trace(const std::vector<IterationRecord>& history, bool include_nu) {
  DescentTrace t;
  for (const IterationRecord& rec : history) {
    t.values.push_back(rec.objective_theta);
    if (include_nu) t.values.push_back(rec.objective_nu);
    t.values.push_back(rec.objective_x);
  }
  return t;
}

}  // namespace gias
