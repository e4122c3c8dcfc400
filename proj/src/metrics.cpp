#include "gias/metrics.hpp"

#include <cmath>

namespace gias {

double rre(const Vector& x, const Vector& truth) {
  if (x.size() != truth.size()) throw DimensionError("rre: size mismatch");
  const double tn = truth.norm();
  if (!(tn > 0.0)) throw ParameterError("rre: truth must be nonzero");
  return (x - truth).norm() / tn;
}

namespace {

constexpr Index kTaps = 11;
constexpr double kSigma = 1.5;
constexpr double kK1 = 0.01;
constexpr double kK2 = 0.03;

Vector gaussian_window() {
  Vector w(kTaps);
  const double mid = 0.5 * static_cast<double>(kTaps - 1);
  for (Index i = 0; i < kTaps; ++i) {
    const double d = static_cast<double>(i) - mid;
    w[i] = std::exp(-0.5 * d * d / (kSigma * kSigma));
  }
  return w / w.sum();
}

// Valid-mode correlation of a row-major h x w array with g along each axis.
DenseMatrix filter_valid(const DenseMatrix& a, const Vector& g, bool rows, bool cols) {
  DenseMatrix cur = a;
  if (rows) {
    DenseMatrix out(cur.rows() - kTaps + 1, cur.cols());
    for (Index i = 0; i < out.rows(); ++i) out.row(i) = g.transpose() * cur.middleRows(i, kTaps);
    cur = out;
  }
  if (cols) {
    DenseMatrix out(cur.rows(), cur.cols() - kTaps + 1);
    for (Index j = 0; j < out.cols(); ++j) out.col(j) = cur.middleCols(j, kTaps) * g;
    cur = out;
  }
  return cur;
}

}  // namespace

double ssim(const Vector& x, const Vector& truth, const SsimOptions& options) {
  if (x.size() != truth.size()) throw DimensionError("ssim: size mismatch");
  Index h = 1;
  Index w = x.size();
  if (options.height) {
    h = *options.height;
    if (h < 1 || x.size() % h != 0) throw DimensionError("ssim: size is not a multiple of the height");
    w = x.size() / h;
  }
  const bool two_d = options.height.has_value();
  if (w < kTaps || (two_d && h < kTaps)) throw DimensionError("ssim: input smaller than the 11-tap window");

  const double range = options.data_range ? *options.data_range : truth.maxCoeff() - truth.minCoeff();
  const double c1 = (kK1 * range) * (kK1 * range);
  const double c2 = (kK2 * range) * (kK2 * range);

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const DenseMatrix a = Eigen::Map<const RowMajor>(x.data(), h, w);
  const DenseMatrix b = Eigen::Map<const RowMajor>(truth.data(), h, w);
  const Vector g = gaussian_window();
  auto filt = [&](const DenseMatrix& m) { return filter_valid(m, g, two_d, true); };

  const DenseMatrix mu_a = filt(a);
  const DenseMatrix mu_b = filt(b);
  const DenseMatrix saa = filt(a.cwiseProduct(a)) - mu_a.cwiseProduct(mu_a);
  const DenseMatrix sbb = filt(b.cwiseProduct(b)) - mu_b.cwiseProduct(mu_b);
  const DenseMatrix sab = filt(a.cwiseProduct(b)) - mu_a.cwiseProduct(mu_b);

  const auto num = (2.0 * mu_a.array() * mu_b.array() + c1) * (2.0 * sab.array() + c2);
  const auto den = (mu_a.array().square() + mu_b.array().square() + c1) * (saa.array() + sbb.array() + c2);
  return (num / den).mean();
}

}  // namespace gias
