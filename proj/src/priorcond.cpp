#include "gias/priorcond.hpp"

#include <algorithm>
#include <cmath>

namespace gias {

Vector KernelFactorization::fw_pinv(const Vector& u) const {
  if (kernel_dim() == 0) return Vector::Zero(0);
  return r.triangularView<Eigen::Upper>().solve(q.transpose() * u);
}

Vector KernelFactorization::fw_pinv_adjoint(const Vector& v) const {
  if (kernel_dim() == 0) return Vector::Zero(q.rows());
  return q * r.transpose().triangularView<Eigen::Lower>().solve(v);
}

namespace {

// A few power iterations on F^T F from a fixed start; a lower bound on |F|.
double operator_norm_estimate(const LinearOperator& f) {
  Vector v = Vector::LinSpaced(f.cols(), 1.0, 2.0);
  for (Index i = 1; i < v.size(); i += 2) v[i] = -v[i];
  v.normalize();
  double est = 0.0;
  for (int it = 0; it < 20; ++it) {
    const Vector u = f.apply(v);
    est = std::max(est, u.norm());
    const Vector w = f.apply_adjoint(u);
    const double wn = w.norm();
    if (!(wn > 0.0)) break;
    v = w / wn;
  }
  return est;
}

}  // namespace

KernelFactorization precompute_kernel_qr(const LinearOperator& forward, const DenseMatrix& kernel) {
  if (kernel.rows() != forward.cols()) throw DimensionError("precompute_kernel_qr: W has the wrong row count");
  KernelFactorization kf;
  kf.w = kernel;
  const Index p = kernel.cols();
  if (p == 0) {
    kf.q = DenseMatrix::Zero(forward.rows(), 0);
    kf.r = DenseMatrix::Zero(0, 0);
    return kf;
  }
  if (p > forward.rows()) throw CommonKernelError();
  DenseMatrix fw(forward.rows(), p);
  for (Index j = 0; j < p; ++j) fw.col(j) = forward.apply(kernel.col(j));

  // Rank is judged against |F| as well as |F W|, otherwise a single kernel
  // column mapped to rounding noise would pass a purely relative test.
  const Eigen::JacobiSVD<DenseMatrix> svd(fw);
  const Vector& s = svd.singularValues();
  const double scale = std::max(s[0], operator_norm_estimate(forward));
  if (!(scale > 0.0) || !(s[p - 1] > 1e-10 * scale)) throw CommonKernelError();

  const Eigen::HouseholderQR<DenseMatrix> qr(fw);
  kf.q = qr.householderQ() * DenseMatrix::Identity(fw.rows(), p);
  kf.r = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  return kf;
}

Vector x_kernel_component(const KernelFactorization& kf, const Vector& y) {
  if (y.size() != kf.q.rows()) throw DimensionError("x_kernel_component: y has the wrong length");
  if (kf.kernel_dim() == 0) return Vector::Zero(kf.w.rows());
  return kf.w * kf.fw_pinv(y);
}

std::shared_ptr<const PseudoInverse> make_pseudo_inverse(const WeightedTransform& r,
                                                          const PinvStrategy& strategy) {
  if (strategy.method == PinvMethod::banded_cholesky) {
    return std::make_shared<BandedDeltaPinv>(r, strategy.delta);
  }
  return std::make_shared<IterativePinv>(r, strategy.precond, strategy.tol, strategy.maxit);
}

ObliquePinv::ObliquePinv(LinearOperator forward, std::shared_ptr<const KernelFactorization> kf,
                         std::shared_ptr<const PseudoInverse> pinv)
    : forward_(std::move(forward)), kf_(std::move(kf)), pinv_(std::move(pinv)), n_(forward_.cols()) {
  if (!kf_ || !pinv_) throw ParameterError("ObliquePinv: missing factorization or pseudoinverse");
  if (kf_->w.rows() != n_) throw DimensionError("ObliquePinv: kernel basis does not match F");
}

Vector ObliquePinv::apply(const Vector& w) const {
  Vector z = pinv_->apply(w);
  if (kf_->kernel_dim() > 0) z -= kf_->w * kf_->fw_pinv(forward_.apply(z));
  return z;
}

Vector ObliquePinv::apply_adjoint(const Vector& v) const {
  if (v.size() != n_) throw DimensionError("ObliquePinv::apply_adjoint: wrong length");
  if (kf_->kernel_dim() == 0) return pinv_->apply_adjoint(v);
  const Vector u = v - forward_.apply_adjoint(kf_->fw_pinv_adjoint(kf_->w.transpose() * v));
  return pinv_->apply_adjoint(u);
}

namespace {

void check_nu(double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ParameterError("x-update: nu must be positive and finite");
}

Vector stacked_rhs(const Vector& y, double scale, Index pad) {
  Vector b = Vector::Zero(y.size() + pad);
  b.head(y.size()) = scale * y;
  return b;
}

}  // namespace

XUpdate whitened_x_update(const LinearOperator& forward, const WeightedTransform& r_theta,
                          const ObliquePinv& oblique, double nu, const Vector& y, double tol,
                          Index maxit, const Vector& x_prev) {
  check_nu(nu);
  if (y.size() != forward.rows()) throw DimensionError("whitened_x_update: y has the wrong length");
  const Index k = r_theta.op().rows();
  const Index before = oblique.pinv().inner_iterations();

  // F R^# as an operator M x K.
  const ObliquePinv* ob = &oblique;
  const LinearOperator fr(
      forward.rows(), k, [&forward, ob](const Vector& w, Vector& out) { out = forward.apply(ob->apply(w)); },
      [&forward, ob](const Vector& u, Vector& out) { out = ob->apply_adjoint(forward.apply_adjoint(u)); });
  const double s = 1.0 / std::sqrt(nu);
  const LinearOperator a = stack_scaled(fr, s, identity(k), 1.0);

  XUpdate out;
  SolveResult w = cgls(a, stacked_rhs(y, s, k), r_theta.apply(x_prev), tol, maxit);
  out.x = x_kernel_component(oblique.factorization(), y) + oblique.apply(w.x);
  out.report = w.report;
  out.pinv_iterations = oblique.pinv().inner_iterations() - before;
  return out;
}

XUpdate plain_x_update(const LinearOperator& forward, const WeightedTransform& r_theta, double nu,
                       const Vector& y, double tol, Index maxit, const Vector& x0) {
  check_nu(nu);
  if (y.size() != forward.rows()) throw DimensionError("plain_x_update: y has the wrong length");
  const double s = 1.0 / std::sqrt(nu);
  const LinearOperator a = stack_scaled(forward, s, r_theta.op(), 1.0);
  SolveResult res = cgls(a, stacked_rhs(y, s, r_theta.op().rows()), x0, tol, maxit);
  return {std::move(res.x), res.report, 0};
}

}  // namespace gias
