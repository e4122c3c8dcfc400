#include "gias/krylov.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <vector>

namespace gias {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::converged:
      return "converged";
    case Termination::max_iter:
      return "max_iter";
    case Termination::breakdown:
      return "breakdown";
  }
  return "unknown";
}

namespace {

void check_tolerance(double tol, Index maxit, const char* who) {
  if (!(tol > 0.0) || maxit < 0) {
    throw ParameterError(std::string(who) + ": tolerance must be positive and maxit nonnegative");
  }
}

}  // namespace

SolveResult cg(const LinearOperator& a, const Vector& b, const Vector& x0, double tol, Index maxit,
               const Applier& precond) {
  check_tolerance(tol, maxit, "cg");
  if (a.rows() != a.cols()) throw DimensionError("cg: operator is not square");
  if (b.size() != a.rows() || x0.size() != a.cols()) throw DimensionError("cg: vector sizes");

  SolveResult out{x0, {}};
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    out.x.setZero();
    return out;
  }
  Vector& x = out.x;
  Vector r = b - a.apply(x);
  double rel = r.norm() / bnorm;
  if (rel <= tol) {
    out.report.final_relative_residual = rel;
    return out;
  }
  Vector z = precond ? precond(r) : r;
  Vector p = z;
  double rz = r.dot(z);
  Index k = 0;
  out.report.termination = Termination::max_iter;
  while (k < maxit) {
    const Vector ap = a.apply(p);
    const double pap = p.dot(ap);
    if (!(pap > kBreakdownRatio * p.squaredNorm())) {
      out.report.termination = Termination::breakdown;
      break;
    }
    const double alpha = rz / pap;
    x += alpha * p;
    r -= alpha * ap;
    ++k;
    rel = r.norm() / bnorm;
    if (rel <= tol) {
      out.report.termination = Termination::converged;
      break;
    }
    z = precond ? precond(r) : r;
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  out.report.iterations = k;
  out.report.final_relative_residual = rel;
  return out;
}

SolveResult cgls(const LinearOperator& a, const Vector& b, const Vector& x0, double tol, Index maxit,
                 const std::function<void(Index, double)>& on_iteration) {
  check_tolerance(tol, maxit, "cgls");
  if (b.size() != a.rows() || x0.size() != a.cols()) throw DimensionError("cgls: vector sizes");

  SolveResult out{x0, {}};
  const double atb_norm = a.apply_adjoint(b).norm();
  if (atb_norm == 0.0) {
    out.x.setZero();
    return out;
  }
  Vector& x = out.x;
  Vector r = b - a.apply(x);
  Vector s = a.apply_adjoint(r);
  double gamma = s.squaredNorm();
  double rel = std::sqrt(gamma) / atb_norm;
  if (rel <= tol) {
    out.report.final_relative_residual = rel;
    return out;
  }
  Vector p = s;
  Index k = 0;
  // Running lower bound on |A|, for the attainable-accuracy floor below.
  double a_norm = 0.0;
  out.report.termination = Termination::max_iter;
  while (k < maxit) {
    const Vector q = a.apply(p);
    const double qq = q.squaredNorm();
    if (!(qq > 0.0)) {
      out.report.termination = Termination::breakdown;
      break;
    }
    a_norm = std::max(a_norm, std::sqrt(qq) / p.norm());
    const double alpha = gamma / qq;
    x += alpha * p;
    r -= alpha * q;
    ++k;
    if (on_iteration) on_iteration(k, r.norm());
    s = a.apply_adjoint(r);
    const double gamma_next = s.squaredNorm();
    rel = std::sqrt(gamma_next) / atb_norm;
    if (rel <= tol) {
      out.report.termination = Termination::converged;
      break;
    }
    // A^T b at rounding level (b nearly orthogonal to the range of A) makes
    // the relative test unreachable; stop once |A^T r| is down to roundoff.
    if (std::sqrt(gamma_next) <= kCglsFloor * a_norm * r.norm()) {
      out.report.termination = Termination::breakdown;
      break;
    }
    p = s + (gamma_next / gamma) * p;
    gamma = gamma_next;
  }
  out.report.iterations = k;
  out.report.final_relative_residual = rel;
  return out;
}

SolveResult pcg_singular(const LinearOperator& a, const Vector& b, const Applier& pinv_precond,
                         const Vector& x0, double tol, Index maxit) {
  return cg(a, b, x0, tol, maxit, pinv_precond);
}

// --- DCT spectral preconditioner -------------------------------------------

struct SpectralPreconditioner::Plans {
  fftw_plan forward = nullptr;  // REDFT10 (unnormalized DCT-II) in both axes
  fftw_plan inverse = nullptr;  // REDFT01 (unnormalized DCT-III)
  Vector forward_scale;         // orthonormalization of REDFT10 output
  Vector inverse_scale;         // pre-scaling of REDFT01 input
  ~Plans() {
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

namespace {

// FFTW's planner is not reentrant; execution with new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Orthonormal DCT-II coefficient scale s_k, k = 0..n-1.
Vector dct_scale(Index n) {
  Vector s(n);
  for (Index k = 0; k < n; ++k) s[k] = std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n));
  return s;
}

}  // namespace

SpectralPreconditioner::SpectralPreconditioner(Index n1, Index n2) : n1_(n1), n2_(n2) {
  if (n1 < 2 || n2 < 2) throw ParameterError("dct_preconditioner: need N1, N2 >= 2");
  auto plans = std::make_shared<Plans>();
  const Index n = n1 * n2;
  {
    std::lock_guard lock(planner_mutex());
    std::vector<double> a(static_cast<std::size_t>(n));
    std::vector<double> b(static_cast<std::size_t>(n));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans->forward = fftw_plan_r2r_2d(static_cast<int>(n1), static_cast<int>(n2), a.data(), b.data(),
                                      FFTW_REDFT10, FFTW_REDFT10, flags);
    plans->inverse = fftw_plan_r2r_2d(static_cast<int>(n1), static_cast<int>(n2), a.data(), b.data(),
                                      FFTW_REDFT01, FFTW_REDFT01, flags);
  }
  if (!plans->forward || !plans->inverse) throw SolverError("dct_preconditioner: FFTW planning failed");

  // REDFT10 returns 2 * sum x_j cos(.) per axis; REDFT01 expects the k = 0
  // term unhalved and the rest halved.
  const Vector s1 = dct_scale(n1);
  const Vector s2 = dct_scale(n2);
  plans->forward_scale.resize(n);
  plans->inverse_scale.resize(n);
  for (Index i = 0; i < n1; ++i) {
    for (Index j = 0; j < n2; ++j) {
      plans->forward_scale[i * n2 + j] = 0.25 * s1[i] * s2[j];
      const double t1 = i == 0 ? s1[i] : 0.5 * s1[i];
      const double t2 = j == 0 ? s2[j] : 0.5 * s2[j];
      plans->inverse_scale[i * n2 + j] = t1 * t2;
    }
  }
  plans_ = plans;

  // Eigenvalues of M = R^T R = B^T L B via L = (B M B^T v) / v with v = 1.
  const SparsifyingTransform r = neumann_gradient_2d(n1, n2);
  const Vector ones = Vector::Ones(n);
  const Vector mv = r.op().apply_adjoint(r.op().apply(inverse_dct(ones)));
  eigenvalues_ = forward_dct(mv).cwiseQuotient(ones);
  const double top = eigenvalues_.cwiseAbs().maxCoeff();
  pseudo_ = Vector::Zero(n);
  for (Index k = 0; k < n; ++k) {
    if (eigenvalues_[k] <= 1e-12 * top) {
      eigenvalues_[k] = 0.0;
    } else {
      pseudo_[k] = 1.0 / eigenvalues_[k];
    }
  }
}

Vector SpectralPreconditioner::forward_dct(const Vector& v) const {
  if (v.size() != n1_ * n2_) throw DimensionError("forward_dct: size mismatch");
  Vector in = v;
  Vector out(v.size());
  fftw_execute_r2r(plans_->forward, in.data(), out.data());
  return out.cwiseProduct(plans_->forward_scale);
}

Vector SpectralPreconditioner::inverse_dct(const Vector& v) const {
  if (v.size() != n1_ * n2_) throw DimensionError("inverse_dct: size mismatch");
  Vector in = v.cwiseProduct(plans_->inverse_scale);
  Vector out(v.size());
  fftw_execute_r2r(plans_->inverse, in.data(), out.data());
  return out;
}

Vector SpectralPreconditioner::apply(const Vector& v) const {
  return inverse_dct(forward_dct(v).cwiseProduct(pseudo_));
}

SpectralPreconditioner dct_preconditioner(Index n1, Index n2) { return {n1, n2}; }

// --- pseudoinverse products ---------------------------------------------------

namespace {

LinearOperator gram_operator(const WeightedTransform& r) {
  const LinearOperator op = r.op();
  auto k = [op](const Vector& in, Vector& out) { out = op.apply_adjoint(op.apply(in)); };
  return {op.cols(), op.cols(), k, k};
}

void check_preconditioner(const WeightedTransform& r, const SpectralPreconditioner* precond) {
  if (!precond) return;
  const auto grid = r.base().grid();
  if (!grid || grid->n1 != precond->n1() || grid->n2 != precond->n2()) {
    throw DimensionError("spectral preconditioner grid does not match the transform");
  }
}

// Remove the ker(R) component that rounding leaves in the iterate.
void project_out_kernel(Vector& z, const DenseMatrix& kernel) {
  if (kernel.cols() > 0) z -= kernel * (kernel.transpose() * z);
}

}  // namespace

SolveResult pinv_apply(const WeightedTransform& r, const Vector& v,
                       const SpectralPreconditioner* precond, double tol, Index maxit) {
  if (v.size() != r.op().rows()) throw DimensionError("pinv_apply: expected a length-K vector");
  check_preconditioner(r, precond);
  const Vector b = r.apply_adjoint(v);
  Applier m;
  if (precond) m = [precond](const Vector& x) { return precond->apply(x); };
  SolveResult res = pcg_singular(gram_operator(r), b, m, Vector::Zero(r.op().cols()), tol, maxit);
  project_out_kernel(res.x, r.base().kernel());
  return res;
}

SolveResult pinv_adjoint_apply(const WeightedTransform& r, const Vector& v, const DenseMatrix& kernel,
                               const SpectralPreconditioner* precond, double tol, Index maxit) {
  if (v.size() != r.op().cols()) throw DimensionError("pinv_adjoint_apply: expected a length-N vector");
  if (kernel.rows() != v.size()) throw DimensionError("pinv_adjoint_apply: kernel basis size");
  check_preconditioner(r, precond);
  Vector b = v;
  project_out_kernel(b, kernel);
  Applier m;
  if (precond) m = [precond](const Vector& x) { return precond->apply(x); };
  SolveResult res = pcg_singular(gram_operator(r), b, m, Vector::Zero(v.size()), tol, maxit);
  project_out_kernel(res.x, kernel);
  res.x = r.apply(res.x);
  return res;
}

IterativePinv::IterativePinv(WeightedTransform r, std::shared_ptr<const SpectralPreconditioner> precond,
                             double tol, Index maxit)
    : r_(std::move(r)), precond_(std::move(precond)), tol_(tol), maxit_(maxit) {
  check_tolerance(tol, maxit, "IterativePinv");
  check_preconditioner(r_, precond_.get());
}

void IterativePinv::record(const SolveReport& rep) const {
  iterations_ += rep.iterations;
  if (rep.termination != Termination::converged) ++unconverged_;
}

Vector IterativePinv::apply(const Vector& w) const {
  SolveResult res = pinv_apply(r_, w, precond_.get(), tol_, maxit_);
  record(res.report);
  return std::move(res.x);
}

Vector IterativePinv::apply_adjoint(const Vector& v) const {
  SolveResult res = pinv_adjoint_apply(r_, v, r_.base().kernel(), precond_.get(), tol_, maxit_);
  record(res.report);
  return std::move(res.x);
}

// --- banded Cholesky ----------------------------------------------------------

BandedCholesky::BandedCholesky(const SparseMatrix& a, Index bandwidth)
    : n_(a.rows()), p_(bandwidth), band_(static_cast<std::size_t>(a.rows() * (bandwidth + 1)), 0.0) {
  if (a.rows() != a.cols()) throw DimensionError("BandedCholesky: matrix is not square");
  if (bandwidth < 0) throw ParameterError("BandedCholesky: negative bandwidth");
  for (Index i = 0; i < a.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(a, i); it; ++it) {
      const Index j = it.col();
      if (j > i) continue;
      if (i - j > p_) {
        if (it.value() != 0.0) throw ParameterError("BandedCholesky: entry outside the declared band");
        continue;
      }
      at(i, j) = it.value();
    }
  }
  for (Index j = 0; j < n_; ++j) {
    const Index k0 = std::max<Index>(0, j - p_);
    double d = at(j, j);
    for (Index k = k0; k < j; ++k) d -= at(j, k) * at(j, k);
    if (!(d > 0.0)) throw SolverError("BandedCholesky: matrix is not positive definite");
    const double ljj = std::sqrt(d);
    at(j, j) = ljj;
    const Index i_end = std::min<Index>(n_ - 1, j + p_);
    for (Index i = j + 1; i <= i_end; ++i) {
      double s = at(i, j);
      for (Index k = std::max<Index>(k0, i - p_); k < j; ++k) s -= at(i, k) * at(j, k);
      at(i, j) = s / ljj;
    }
  }
}

Vector BandedCholesky::solve(const Vector& b) const {
  if (b.size() != n_) throw DimensionError("BandedCholesky::solve: size mismatch");
  Vector y = b;
  for (Index i = 0; i < n_; ++i) {
    double s = y[i];
    for (Index k = std::max<Index>(0, i - p_); k < i; ++k) s -= at(i, k) * y[k];
    y[i] = s / at(i, i);
  }
  for (Index i = n_ - 1; i >= 0; --i) {
    double s = y[i];
    const Index end = std::min<Index>(n_ - 1, i + p_);
    for (Index k = i + 1; k <= end; ++k) s -= at(k, i) * y[k];
    y[i] = s / at(i, i);
  }
  return y;
}

namespace {

BandedCholesky factor_shifted_gram(const WeightedTransform& r, double delta) {
  if (!(delta > 0.0)) throw ParameterError("banded_delta_pinv: delta must be positive");
  const auto p = r.base().bandwidth();
  if (!p) throw ParameterError("banded_delta_pinv: transform " + r.base().name() + " is not banded");
  SparseMatrix g = r.gram();
  SparseMatrix shift(g.rows(), g.cols());
  shift.setIdentity();
  g += delta * shift;
  return {g, *p};
}

}  // namespace

BandedDeltaPinv::BandedDeltaPinv(WeightedTransform r, double delta)
    : r_(std::move(r)), delta_(delta), chol_(factor_shifted_gram(r_, delta)) {}

Vector BandedDeltaPinv::apply(const Vector& w) const { return chol_.solve(r_.apply_adjoint(w)); }

Vector BandedDeltaPinv::apply_adjoint(const Vector& v) const { return r_.apply(chol_.solve(v)); }

BandedDeltaPinv banded_delta_pinv(const WeightedTransform& r, double delta) { return {r, delta}; }

}  // namespace gias
