#include "gias/updates.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace gias {

namespace {

constexpr double kOdeAbsTol = 1e-12;
constexpr double kOdeRelTol = 1e-10;

void check_vartheta(const Vector& v) {
  if (v.size() == 0) throw ParameterError("hyper-prior: vartheta is empty");
  for (Index i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
      throw ParameterError("hyper-prior: vartheta must be positive and finite");
    }
  }
}

// Minimizer of s^2/(2v) + (v/c)^r - eta log v for r = +-1, clamped so that
// rounding never puts it below c * phi_floor.
double closed_form(double r, double eta, double c, double s) {
  const double v = r == 1.0 ? 0.5 * c * (eta + std::sqrt(eta * eta + 2.0 * s * s / c))
                            : (0.5 * s * s + c) / std::abs(eta);
  return std::max(v, c * std::pow(eta / r, 1.0 / r));
}

}  // namespace

void check_admissible(double r, double eta) {
  const bool ok = (r > 0.0 && eta > 0.0) || (r < 0.0 && eta < 0.0);
  if (!ok || !std::isfinite(r) || !std::isfinite(eta)) {
    throw ParameterError("inadmissible hyper-prior: r = " + std::to_string(r) +
                         ", eta = " + std::to_string(eta));
  }
}

HyperPriorSpec::HyperPriorSpec(double r, double beta, Vector vartheta)
    : r_(r), beta_(beta), eta_(r * beta - 1.5), vartheta_(std::move(vartheta)) {
  if (r == 0.0) throw ParameterError("hyper-prior: r must be nonzero");
  if (!(beta > 0.0)) throw ParameterError("hyper-prior: beta must be positive");
  check_vartheta(vartheta_);
  if (r > 0.0) {
    check_admissible(r_, eta_);
  } else if (!(eta_ < -1.5)) {
    throw ParameterError("hyper-prior: r < 0 requires eta < -3/2");
  }
}

HyperPriorSpec::HyperPriorSpec(double r, double beta, double vartheta)
    : HyperPriorSpec(r, beta, Vector::Constant(1, vartheta)) {}

Vector HyperPriorSpec::vartheta_for(Index k) const {
  if (broadcast()) return Vector::Constant(k, vartheta_[0]);
  if (vartheta_.size() != k) {
    throw DimensionError("hyper-prior: vartheta has length " + std::to_string(vartheta_.size()) +
                         ", expected " + std::to_string(k));
  }
  return vartheta_;
}

NoisePriorSpec::NoisePriorSpec(double r, double beta, double vartheta, Index m)
    : r_(r), beta_(beta), vartheta_(vartheta), m_(m),
      eta_(r * beta - 0.5 * static_cast<double>(m + 2)) {
  if (r == 0.0) throw ParameterError("noise prior: r must be nonzero");
  if (!(beta > 0.0)) throw ParameterError("noise prior: beta must be positive");
  if (!(vartheta > 0.0) || !std::isfinite(vartheta)) {
    throw ParameterError("noise prior: vartheta must be positive and finite");
  }
  if (m < 1) throw ParameterError("noise prior: need at least one observation");
  if (r > 0.0) {
    check_admissible(r_, eta_);
  } else if (!(eta_ < -0.5 * static_cast<double>(m + 2))) {
    throw ParameterError("noise prior: r < 0 requires eta < -(M+2)/2");
  }
}

double phi_floor(double r, double eta) {
  check_admissible(r, eta);
  return std::pow(eta / r, 1.0 / r);
}

Vector phi_solve(const Vector& t_values, double r, double eta) {
  const double phi0 = phi_floor(r, eta);
  const Index n = t_values.size();
  for (Index i = 0; i < n; ++i) {
    if (!(t_values[i] >= 0.0) || !std::isfinite(t_values[i])) {
      throw ParameterError("phi_solve: t values must be finite and nonnegative");
    }
    if (i > 0 && t_values[i] < t_values[i - 1]) throw ParameterError("phi_solve: t values must be sorted");
  }
  Vector out(n);
  if (n == 0) return out;

  // Integrate u = log(phi) so the tolerances act on relative accuracy of phi.
  using State = std::array<double, 1>;
  const double two_r2 = 2.0 * r * r;
  auto rhs = [&](const State& u, State& du, double t) {
    const double phi_r1 = std::exp((r + 1.0) * u[0]);
    du[0] = 2.0 * t / (two_r2 * phi_r1 + t * t);
  };

  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(n) + 1);
  times.push_back(0.0);
  for (Index i = 0; i < n; ++i) {
    if (t_values[i] > times.back()) times.push_back(t_values[i]);
  }
  std::vector<double> u_at(times.size(), std::log(phi0));
  if (times.size() > 1) {
    namespace odeint = boost::numeric::odeint;
    State u{std::log(phi0)};
    // Natural time scale: where t^2 matches 2 r^2 phi0^(r+1).
    const double t_scale = std::sqrt(two_r2 * std::pow(phi0, r + 1.0));
    const double h0 = std::min(times[1], std::max(1e-3 * t_scale, 1e-12));
    std::size_t k = 0;
    odeint::integrate_times(
        odeint::make_dense_output(kOdeAbsTol, kOdeRelTol, odeint::runge_kutta_dopri5<State>()), rhs, u,
        times.begin(), times.end(), h0, [&](const State& s, double) { u_at[k++] = s[0]; });
  }
  std::size_t k = 0;
  for (Index i = 0; i < n; ++i) {
    while (times[k] < t_values[i]) ++k;
    out[i] = std::max(phi0, std::exp(u_at[k]));
  }
  return out;
}

Vector theta_lower_bound(const HyperPriorSpec& prior, Index k) {
  return prior.vartheta_for(k) * phi_floor(prior.r(), prior.eta());
}

Vector update_theta(const Vector& rx, const HyperPriorSpec& prior) {
  const Index k = rx.size();
  const Vector c = prior.vartheta_for(k);
  const double r = prior.r();
  const double eta = prior.eta();
  check_admissible(r, eta);
  Vector theta(k);
  if (r == 1.0 || r == -1.0) {
    for (Index i = 0; i < k; ++i) theta[i] = closed_form(r, eta, c[i], rx[i]);
    return theta;
  }

  Vector t(k);
  for (Index i = 0; i < k; ++i) t[i] = std::abs(rx[i]) / std::sqrt(c[i]);
  std::vector<Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return t[a] < t[b]; });
  Vector sorted(k);
  for (Index i = 0; i < k; ++i) sorted[i] = t[order[static_cast<std::size_t>(i)]];
  const Vector phi = phi_solve(sorted, r, eta);
  for (Index i = 0; i < k; ++i) {
    const Index j = order[static_cast<std::size_t>(i)];
    theta[j] = c[j] * phi[i];
  }
  return theta;
}

double nu_lower_bound(const NoisePriorSpec& prior) {
  return prior.vartheta() * phi_floor(prior.r(), prior.eta());
}

double update_nu(double residual_norm, const NoisePriorSpec& prior) {
  if (!(residual_norm >= 0.0) || !std::isfinite(residual_norm)) {
    throw ParameterError("update_nu: residual norm must be finite and nonnegative");
  }
  const double r = prior.r();
  const double eta = prior.eta();
  const double c = prior.vartheta();
  check_admissible(r, eta);
  if (r == 1.0 || r == -1.0) return closed_form(r, eta, c, residual_norm);
  const Vector t = Vector::Constant(1, residual_norm / std::sqrt(c));
  return c * phi_solve(t, r, eta)[0];
}

}  // namespace gias
